"""Structured norm-bounded uncertainty.

The uncertain blocks are factored as dA = H1 F1(delta) E, dB = H2 F2(delta) G,
dC = H3 F1(delta) E with contractions F1, F2 (largest singular value at most
one over the uncertainty window delta in [-1, 1]).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeMismatch
from .linalg import as_cmatrix, max_singular_value

__all__ = [
    "UncertaintyModel",
    "DeltaTriple",
    "ContractionReport",
    "squeezer_uncertainty",
    "evaluate_deltas",
    "contraction_check",
]

#: slack allowed on the unit contraction bound
CONTRACTION_TOL = 1e-12


@dataclass(frozen=True)
class DeltaTriple:
    """Perturbations of the state, input and output maps at one delta."""

    dA: np.ndarray
    dB: np.ndarray
    dC: np.ndarray

    def __post_init__(self):
        for name in ("dA", "dB", "dC"):
            object.__setattr__(self, name, as_cmatrix(getattr(self, name)))


@dataclass(frozen=True)
class UncertaintyModel:
    """Factor matrices plus the delta-parameterized contraction maps.

    f1 and f2 map a scalar delta in [-1, 1] to the contraction blocks;
    they are stored as diagonal exponent patterns (entry k of the diagonal
    is delta**exponent[k]) so the contraction bound can be checked exactly.
    """

    H1: np.ndarray
    H2: np.ndarray
    H3: np.ndarray
    E: np.ndarray
    G: np.ndarray
    f1_exponents: tuple
    f2_exponents: tuple
    f1_scale: float = 1.0
    f2_scale: float = 1.0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("H1", "H2", "H3", "E", "G"):
            object.__setattr__(self, name, as_cmatrix(getattr(self, name)))
        object.__setattr__(self, "f1_exponents", tuple(self.f1_exponents))
        object.__setattr__(self, "f2_exponents", tuple(self.f2_exponents))
        if self.H1.shape[1] != len(self.f1_exponents) or self.E.shape[0] != len(
            self.f1_exponents
        ):
            raise ShapeMismatch("H1, E must conform with the F1 block")
        if self.H3.shape[1] != len(self.f1_exponents):
            raise ShapeMismatch("H3 must conform with the F1 block")
        if self.H2.shape[1] != len(self.f2_exponents) or self.G.shape[0] != len(
            self.f2_exponents
        ):
            raise ShapeMismatch("H2, G must conform with the F2 block")

    def f1(self, delta):
        """Contraction block F1(delta) = diag(delta**e for e in pattern)."""
        return self.f1_scale * np.diag(
            [complex(delta) ** e for e in self.f1_exponents]
        )

    def f2(self, delta):
        """Contraction block F2(delta)."""
        return self.f2_scale * np.diag(
            [complex(delta) ** e for e in self.f2_exponents]
        )


def squeezer_uncertainty(alpha, mu):
    """Uncertainty in the squeezer coupling amplitude alpha = sqrt(kappa).

    A relative perturbation mu*delta of alpha yields perturbations that
    factor with H1 = [[2 mu a^2, 0, mu^2 a^2, 0], [0, 2 mu a^2, 0, mu^2 a^2]],
    H2 = -mu a I, H3 = [[-2 mu a, 0, 0, 0], [0, -2 mu a, 0, 0]], E a 4x2
    matrix of -1/2 entries, G = I, F1(delta) = diag(delta, delta, delta^2,
    delta^2), F2(delta) = delta I.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if not 0 <= mu < 1:
        raise DomainError("mu must lie in [0, 1)")
    a2 = alpha * alpha
    H1 = np.array(
        [
            [2 * mu * a2, 0, mu**2 * a2, 0],
            [0, 2 * mu * a2, 0, mu**2 * a2],
        ],
        dtype=complex,
    )
    H2 = -mu * alpha * np.eye(2)
    H3 = np.array(
        [
            [-2 * mu * alpha, 0, 0, 0],
            [0, -2 * mu * alpha, 0, 0],
        ],
        dtype=complex,
    )
    E = np.array(
        [[-0.5, 0], [0, -0.5], [-0.5, 0], [0, -0.5]], dtype=complex
    )
    return UncertaintyModel(
        H1=H1,
        H2=H2,
        H3=H3,
        E=E,
        G=np.eye(2),
        f1_exponents=(1, 1, 2, 2),
        f2_exponents=(1, 1),
        params={"alpha": alpha, "mu": mu},
    )


def evaluate_deltas(u, delta):
    """Perturbation triple at one point of the uncertainty window:
    dA = H1 F1 E, dB = H2 F2 G, dC = H3 F1 E."""
    if abs(delta) > 1:
        raise DomainError(f"delta={delta} outside [-1, 1]")
    f1 = u.f1(delta)
    f2 = u.f2(delta)
    return DeltaTriple(
        dA=u.H1 @ f1 @ u.E,
        dB=u.H2 @ f2 @ u.G,
        dC=u.H3 @ f1 @ u.E,
    )


@dataclass(frozen=True)
class ContractionReport:
    """Per-delta largest singular values of the contraction blocks."""

    deltas: tuple
    f1_norms: tuple
    f2_norms: tuple
    passed: bool


def contraction_check(u, grid):
    """Verify the unit contraction bound on F1, F2 over a delta grid."""
    grid = tuple(float(d) for d in grid)
    if any(abs(d) > 1 for d in grid):
        raise DomainError("grid must lie inside [-1, 1]")
    f1_norms = tuple(max_singular_value(u.f1(d)) for d in grid)
    f2_norms = tuple(max_singular_value(u.f2(d)) for d in grid)
    passed = all(v <= 1 + CONTRACTION_TOL for v in f1_norms + f2_norms)
    return ContractionReport(grid, f1_norms, f2_norms, passed)
