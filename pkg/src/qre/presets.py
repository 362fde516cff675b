"""End-to-end study pipelines.

A *study* bundles an uncertain squeezer plant, a coherent controller, the
homodyne map and the scaling parameters, and exposes the two competing
filters: the purely classical estimator (driven by the measured plant
output) and the coherent-classical estimator (driven by the measured output
of the plant/controller interconnection).  Two benchmark parameter sets are
provided, one for the series topology and one for the coherent-feedback
topology.
"""

from dataclasses import dataclass, field

import numpy as np

from .analysis import closed_loop_error_system, delta_sweep
from .augmentation import augment, augment_feedback, lift_uncertainty, lifted_deltas
from .quantum import (
    feedback_squeezer_controller,
    feedback_squeezer_plant,
    homodyne_matrix,
    squeezer_controller,
    squeezer_plant,
)
from .synthesis import (
    assemble_augmented,
    assemble_classical,
    assemble_feedback_classical,
    synthesize,
)
from .uncertainty import evaluate_deltas, squeezer_uncertainty

__all__ = [
    "Study",
    "series_benchmark_config",
    "feedback_benchmark_config",
    "build_study",
]


def series_benchmark_config():
    """Series-topology benchmark: single-input squeezer plant monitored
    through a squeezer controller, homodyne angle 10 degrees."""
    return {
        "topology": "coherent_classical",
        "plant": {"beta": 4.0, "kappa": 4.0, "chi": 0.5, "L": [0.1, -0.1]},
        "controller": {"beta_c": 4.0, "kappa_c": 4.0, "chi_c": -1.0},
        "homodyne_angles_deg": [10.0],
        "mu": 0.1,
        "delta_design": -1.0,
        "gamma": 0.65,
        "eps1": 0.19,
        "eps2": 0.81,
        "frequency_grid": {"min": 1e-2, "max": 1e2, "points": 400},
        "delta_grid": {"min": -1.0, "max": 1.0, "points": 21},
    }


def feedback_benchmark_config():
    """Feedback-topology benchmark: two-input squeezer plant with a
    coherent-feedback squeezer controller, homodyne angle 80 degrees."""
    return {
        "topology": "coherent_classical_fb",
        "plant": {
            "beta": 4.0,
            "kappa1": 2.0,
            "kappa2": 2.0,
            "chi": -1.0,
            "L": [0.1, -0.1],
        },
        "controller": {
            "beta_c": 4.0,
            "kappa_c1": 2.0,
            "kappa_c2": 2.0,
            "chi_c": 0.5,
        },
        "homodyne_angles_deg": [80.0],
        "mu": 0.1,
        "delta_design": -1.0,
        "gamma": 0.65,
        "eps1": 0.2,
        "eps2": 0.6,
        "frequency_grid": {"min": 1e-2, "max": 1e2, "points": 400},
        "delta_grid": {"min": -1.0, "max": 1.0, "points": 21},
    }


@dataclass
class Study:
    """A fully assembled estimation study."""

    config: dict
    topology: str
    plant: object
    controller: object
    uncertainty: object
    S: np.ndarray
    gamma: float
    eps1: float
    eps2: float
    delta_design: float
    classical_problem: object = None
    coherent_problem: object = None
    augmented: object = None
    lifted: object = None
    _classical_estimator: object = field(default=None, repr=False)
    _coherent_estimator: object = field(default=None, repr=False)

    @property
    def has_controller(self):
        return self.controller is not None

    def classical_estimator(self, **kwargs):
        if kwargs:
            return synthesize(self.classical_problem, **kwargs)
        if self._classical_estimator is None:
            self._classical_estimator = synthesize(self.classical_problem)
        return self._classical_estimator

    def coherent_estimator(self, **kwargs):
        if self.coherent_problem is None:
            raise ValueError("study has no coherent controller")
        if kwargs:
            return synthesize(self.coherent_problem, **kwargs)
        if self._coherent_estimator is None:
            self._coherent_estimator = synthesize(self.coherent_problem)
        return self._coherent_estimator

    def classical_closed_loop(self, delta, estimator=None):
        """Disturbance-to-error system of the classical filter at one delta."""
        est = estimator if estimator is not None else self.classical_estimator()
        d = evaluate_deltas(self.uncertainty, delta)
        p = self.plant
        return closed_loop_error_system(
            p.A, p.B, p.C, p.D, p.L, self.S, est, deltas=d
        )

    def coherent_closed_loop(self, delta, estimator=None):
        """Disturbance-to-error system of the coherent-classical filter."""
        est = estimator if estimator is not None else self.coherent_estimator()
        d = lifted_deltas(self.lifted, delta)
        a = self.augmented
        return closed_loop_error_system(
            a.A_a, a.B_a, a.C_a, a.D_a, a.L_a, self.S, est, deltas=d
        )

    def sweep(self, deltas, rel_tol=1e-6):
        """Classical and coherent-classical peak gains over a delta grid."""
        classical = delta_sweep(
            self.classical_closed_loop, deltas, label="classical", rel_tol=rel_tol
        )
        coherent = delta_sweep(
            self.coherent_closed_loop, deltas, label="coherent", rel_tol=rel_tol
        )
        return classical, coherent


def build_study(config, strict_pr=False):
    """Assemble a Study from a configuration mapping.

    The configuration uses the same schema as the CLI: a ``topology``
    discriminator plus plant/controller parameter groups, homodyne angles
    in degrees, and the scaling parameters gamma, eps1, eps2.
    """
    strict_pr = strict_pr or bool(config.get("strict_pr", False))
    topology = config["topology"]
    pc = config["plant"]
    angles = np.deg2rad(np.atleast_1d(config["homodyne_angles_deg"]))
    S = homodyne_matrix(angles)
    mu = float(config["mu"])
    gamma = float(config["gamma"])
    eps1 = float(config["eps1"])
    eps2 = float(config["eps2"])

    feedback = topology in ("classical_fb", "coherent_classical_fb")
    if feedback:
        plant = feedback_squeezer_plant(
            pc["beta"], pc["kappa1"], pc["kappa2"], pc["chi"], pc["L"],
            strict=strict_pr,
        )
        alpha = np.sqrt(pc["kappa1"])
    else:
        plant = squeezer_plant(
            pc["beta"], pc["kappa"], pc["chi"], pc["L"], strict=strict_pr
        )
        alpha = np.sqrt(pc["kappa"])
    u = squeezer_uncertainty(alpha, mu)

    controller = None
    if topology in ("coherent_classical", "coherent_classical_fb"):
        cc = config["controller"]
        if feedback:
            controller = feedback_squeezer_controller(
                cc["beta_c"], cc["kappa_c1"], cc["kappa_c2"], cc["chi_c"],
                strict=strict_pr,
            )
        else:
            controller = squeezer_controller(
                cc["beta_c"], cc["kappa_c"], cc["chi_c"], strict=strict_pr
            )

    if feedback:
        classical_problem = assemble_feedback_classical(
            plant, u, S, gamma, eps1, eps2
        )
    else:
        classical_problem = assemble_classical(plant, u, S, gamma, eps1, eps2)

    augmented = lifted = coherent_problem = None
    if controller is not None:
        if feedback:
            augmented = augment_feedback(plant, controller)
            lifted = lift_uncertainty(u, controller, "feedback", plant=plant)
        else:
            augmented = augment(plant, controller)
            lifted = lift_uncertainty(u, controller, "no_feedback")
        coherent_problem = assemble_augmented(
            augmented, lifted, S, gamma, eps1, eps2
        )

    return Study(
        config=dict(config),
        topology=topology,
        plant=plant,
        controller=controller,
        uncertainty=u,
        S=S,
        gamma=gamma,
        eps1=eps1,
        eps2=eps2,
        delta_design=float(config.get("delta_design", -1.0)),
        classical_problem=classical_problem,
        coherent_problem=coherent_problem,
        augmented=augmented,
        lifted=lifted,
    )
