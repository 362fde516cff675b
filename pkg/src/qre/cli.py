"""Command-line interface.

Subcommands: ``synthesize`` (emit estimator matrices), ``bode`` (frequency
responses of both filters), ``sweep`` (peak gains across the uncertainty
window), ``reproduce`` (run a named benchmark preset and check its
assertions).  Exit codes: 0 success, 2 configuration error, 3 synthesis
failure, 4 analysis failure, 5 failed acceptance assertion.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import frequency_response, hinf_norm
from .errors import (
    CareFailure,
    DomainError,
    NotPhysicallyRealizable,
    QreError,
    ScalingTooLarge,
)
from .linalg import max_singular_value
from .presets import (
    build_study,
    feedback_benchmark_config,
    series_benchmark_config,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SYNTHESIS = 3
EXIT_ANALYSIS = 4
EXIT_ACCEPTANCE = 5

PRESETS = {
    "fig3": ("series", "bode"),
    "fig4": ("series", "sweep"),
    "fig6": ("feedback", "bode"),
    "fig7": ("feedback", "sweep"),
}


def matrix_to_json(m):
    """Nested arrays of [re, im] pairs."""
    m = np.atleast_2d(m)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def _load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from exc
    if "topology" not in cfg:
        raise ValueError("config missing 'topology'")
    if cfg["topology"] not in (
        "classical",
        "coherent_classical",
        "classical_fb",
        "coherent_classical_fb",
    ):
        raise ValueError(f"unknown topology {cfg['topology']!r}")
    return cfg


def _write_meta(outdir, command, config, extra=None):
    meta = {
        "tool": "qre",
        "version": __version__,
        "command": command,
        "config": config,
    }
    if extra:
        meta.update(extra)
    (outdir / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True))


def _frequency_grid(config):
    g = config.get("frequency_grid", {})
    return np.logspace(
        np.log10(float(g.get("min", 1e-2))),
        np.log10(float(g.get("max", 1e2))),
        int(g.get("points", 400)),
    )


def _delta_grid(config):
    g = config.get("delta_grid", {})
    return np.linspace(
        float(g.get("min", -1.0)), float(g.get("max", 1.0)), int(g.get("points", 21))
    )


def _estimator_record(est, name):
    return {
        "name": name,
        "A_K": matrix_to_json(est.A_K),
        "B_K": matrix_to_json(est.B_K),
        "C_K": matrix_to_json(est.C_K),
        "gamma": est.gamma,
        "eps1": est.eps1,
        "eps2": est.eps2,
        "residual_x": est.residual_x,
        "residual_y": est.residual_y,
        "spectral_abscissa": est.spectral_abscissa,
        "stable": est.stable,
        "coupling_condition": est.coupling_condition,
        "gain_convention": est.gain_convention,
    }


def cmd_synthesize(config, outdir):
    study = build_study(config)
    records = []
    if study.has_controller:
        est = study.coherent_estimator()
        records.append(_estimator_record(est, "coherent"))
    else:
        est = study.classical_estimator()
        records.append(_estimator_record(est, "classical"))
    payload = records[0] if len(records) == 1 else records
    (outdir / "estimator.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True)
    )
    _write_meta(outdir, "synthesize", config)
    print(
        f"residual_x={est.residual_x:.3e} residual_y={est.residual_y:.3e} "
        f"spectral_abscissa={est.spectral_abscissa:.6f} stable={est.stable}"
    )
    print(f"wrote {outdir / 'estimator.json'}")
    return EXIT_OK


def cmd_bode(config, outdir):
    study = build_study(config)
    if not study.has_controller:
        raise ValueError("bode needs a coherent_classical* topology (two curves)")
    omegas = _frequency_grid(config)
    delta = study.delta_design
    rows = []
    for label, loop in (
        ("classical", study.classical_closed_loop(delta)),
        ("coherent", study.coherent_closed_loop(delta)),
    ):
        for w, g in zip(omegas, frequency_response(loop, omegas)):
            mag = max_singular_value(g)
            if not np.isfinite(mag):
                raise QreError(f"non-finite gain at omega={w}")
            rows.append((w, mag, 20 * np.log10(mag) if mag > 0 else -np.inf, label))
    with open(outdir / "bode.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["omega_rad_s", "mag_abs", "mag_db", "label"])
        for w, mag, db, label in rows:
            writer.writerow([f"{w:.12g}", f"{mag:.12g}", f"{db:.12g}", label])
    _write_meta(
        outdir,
        "bode",
        config,
        {"delta": delta, "n_frequencies": len(omegas)},
    )
    print(f"wrote {outdir / 'bode.csv'}")
    return EXIT_OK


def _run_sweep(study, config):
    deltas = _delta_grid(config)
    classical, coherent = study.sweep(deltas)
    return deltas, classical, coherent


def _write_sweep_csv(outdir, deltas, classical, coherent):
    cls = np.asarray(classical.norms)
    coh = np.asarray(coherent.norms)
    with open(outdir / "sweep.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["delta", "hinf_classical", "hinf_coherent"])
        for d, a, b in zip(deltas, cls, coh):
            writer.writerow([f"{d:.12g}", f"{a:.12g}", f"{b:.12g}"])
        writer.writerow(["max", f"{cls.max():.12g}", f"{coh.max():.12g}"])
        writer.writerow(["min", f"{cls.min():.12g}", f"{coh.min():.12g}"])
        writer.writerow(
            ["spread", f"{cls.max() - cls.min():.12g}", f"{coh.max() - coh.min():.12g}"]
        )
    return cls, coh


def cmd_sweep(config, outdir):
    study = build_study(config)
    if not study.has_controller:
        raise ValueError("sweep needs a coherent_classical* topology (two columns)")
    deltas, classical, coherent = _run_sweep(study, config)
    _write_sweep_csv(outdir, deltas, classical, coherent)
    _write_meta(outdir, "sweep", config, {"n_deltas": len(deltas)})
    print(f"wrote {outdir / 'sweep.csv'}")
    return EXIT_OK


def cmd_reproduce(preset, outdir):
    which, kind = PRESETS[preset]
    config = (
        series_benchmark_config() if which == "series" else feedback_benchmark_config()
    )
    study = build_study(config)
    failures = []
    if kind == "bode":
        cmd_bode(config, outdir)
        delta = study.delta_design
        n_cls = hinf_norm(study.classical_closed_loop(delta), allow_unstable=True)
        n_coh = hinf_norm(study.coherent_closed_loop(delta), allow_unstable=True)
        if not n_coh < n_cls:
            failures.append(
                f"coherent peak gain {n_coh:.4g} not below classical {n_cls:.4g} "
                f"at delta={delta}"
            )
    else:
        deltas, classical, coherent = _run_sweep(study, config)
        cls, coh = _write_sweep_csv(outdir, deltas, classical, coherent)
        _write_meta(outdir, f"reproduce:{preset}", config, {"n_deltas": len(deltas)})
        if not np.all(coh < cls):
            failures.append("coherent peak gain not below classical at every delta")
        if which == "feedback":
            if not (coh.max() - coh.min()) < (cls.max() - cls.min()):
                failures.append("coherent norm spread not below classical spread")
    if failures:
        print(f"FAIL: {failures[0]}", file=sys.stderr)
        return EXIT_ACCEPTANCE
    print(f"{preset}: all assertions passed")
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="qre",
        description="Robust estimator synthesis and analysis for uncertain "
        "linear quantum systems",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("synthesize", "bode", "sweep"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON configuration file")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument(
            "--strict-pr",
            action="store_true",
            help="reject physically unrealizable plant/controller parameters",
        )
        sp.add_argument(
            "--tol", type=float, default=1e-6, help="relative norm tolerance"
        )
    rp = sub.add_parser("reproduce")
    rp.add_argument("--preset", required=True, help="fig3|fig4|fig6|fig7")
    rp.add_argument("--out", default=".", help="output directory")

    args = parser.parse_args(argv)
    try:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        if args.command == "reproduce":
            if args.preset not in PRESETS:
                print(f"unknown preset {args.preset!r}", file=sys.stderr)
                return EXIT_CONFIG
            return cmd_reproduce(args.preset, outdir)
        config = _load_config(args.config)
        if args.strict_pr:
            config["strict_pr"] = True
        if args.command == "synthesize":
            return cmd_synthesize(config, outdir)
        if args.command == "bode":
            return cmd_bode(config, outdir)
        return cmd_sweep(config, outdir)
    except ScalingTooLarge as exc:
        print(f"config error: scaling not positive definite: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, KeyError, NotPhysicallyRealizable, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CareFailure as exc:
        print(f"synthesis error: {exc}", file=sys.stderr)
        return EXIT_SYNTHESIS
    except QreError as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
