"""Doubled-up quantum state-space models.

Builders and validators for annihilation/creation doubled-up systems: the
conjugate-block operator structure, homodyne measurement matrices, and the
dynamic-squeezer plant/controller realizations (with and without a coherent
feedback channel).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NotPhysicallyRealizable, ShapeMismatch
from .linalg import as_cmatrix

__all__ = [
    "DoubledOperator",
    "omega",
    "HomodyneConfig",
    "homodyne_matrix",
    "QuantumPlant",
    "CoherentController",
    "squeezer_plant",
    "squeezer_controller",
    "feedback_squeezer_plant",
    "feedback_squeezer_controller",
]

#: absolute tolerance for the conjugate-block structure check
DOUBLED_STRUCTURE_TOL = 1e-12
#: tolerance for the squeezer trace (realizability) conditions
REALIZABILITY_TOL = 1e-12


@dataclass(frozen=True)
class DoubledOperator:
    """A 2p x 2q matrix with the conjugate-block structure
    [[m1, m2], [conj(m2), conj(m1)]]."""

    m1: np.ndarray
    m2: np.ndarray

    def __post_init__(self):
        m1 = as_cmatrix(self.m1)
        m2 = as_cmatrix(self.m2)
        if m1.shape != m2.shape:
            raise ShapeMismatch(
                f"blocks must share a shape; got {m1.shape} and {m2.shape}"
            )
        object.__setattr__(self, "m1", m1)
        object.__setattr__(self, "m2", m2)

    @property
    def realization(self):
        """The full 2p x 2q matrix."""
        return np.block([[self.m1, self.m2], [self.m2.conj(), self.m1.conj()]])

    @classmethod
    def from_realization(cls, m):
        """Split a 2p x 2q matrix into blocks, verifying the structure."""
        m = as_cmatrix(m)
        if m.shape[0] % 2 or m.shape[1] % 2:
            raise ShapeMismatch(f"realization must have even dimensions: {m.shape}")
        p, q = m.shape[0] // 2, m.shape[1] // 2
        m1, m2 = m[:p, :q], m[:p, q:]
        lower = np.block([[m2.conj(), m1.conj()]])
        scale = max(np.linalg.norm(m), 1.0)
        if np.linalg.norm(m[p:, :] - lower) > DOUBLED_STRUCTURE_TOL * scale:
            raise ShapeMismatch("matrix lacks the conjugate-block structure")
        return cls(m1, m2)


def omega(m1, m2):
    """Build the doubled operator [[m1, m2], [m2#, m1#]]."""
    return DoubledOperator(m1, m2)


def deinterleave(m):
    """Reorder from mode-interleaved doubled coordinates (a1, a1#, a2,
    a2#, ...) to block coordinates (a1, a2, ..., a1#, a2#, ...).

    Composite systems built from per-mode doubled blocks carry the
    conjugate-block structure in the interleaved ordering; this permutation
    exposes it to :func:`is_doubled`.
    """
    m = as_cmatrix(m)
    if m.shape[0] % 2 or m.shape[1] % 2:
        raise ShapeMismatch(f"dimensions must be even: {m.shape}")
    rows = np.r_[np.arange(0, m.shape[0], 2), np.arange(1, m.shape[0], 2)]
    cols = np.r_[np.arange(0, m.shape[1], 2), np.arange(1, m.shape[1], 2)]
    return m[np.ix_(rows, cols)]


def is_doubled(m, tol=1e-10):
    """True when m has the conjugate-block structure to tolerance."""
    m = as_cmatrix(m)
    if m.shape[0] % 2 or m.shape[1] % 2:
        return False
    p, q = m.shape[0] // 2, m.shape[1] // 2
    scale = max(np.linalg.norm(m), 1.0)
    err = max(
        np.linalg.norm(m[p:, q:] - m[:p, :q].conj()),
        np.linalg.norm(m[p:, :q] - m[:p, q:].conj()),
    )
    return bool(err <= tol * scale)


@dataclass(frozen=True)
class HomodyneConfig:
    """Quadrature measurement angles, in radians."""

    angles: tuple

    def __post_init__(self):
        angles = tuple(float(a) for a in np.atleast_1d(self.angles))
        if not all(np.isfinite(angles)):
            raise DomainError("homodyne angles must be finite")
        object.__setattr__(self, "angles", angles)


def homodyne_matrix(cfg):
    """Measurement map S = [S1 S2] with S1 = diag(e^{-i theta}/sqrt(2)),
    S2 = diag(e^{i theta}/sqrt(2)); rows are orthonormal (S S^dag = I)."""
    if not isinstance(cfg, HomodyneConfig):
        cfg = HomodyneConfig(tuple(np.atleast_1d(cfg)))
    th = np.asarray(cfg.angles)
    s1 = np.diag(np.exp(-1j * th) / np.sqrt(2))
    s2 = np.diag(np.exp(1j * th) / np.sqrt(2))
    return np.hstack([s1, s2])


@dataclass(frozen=True)
class QuantumPlant:
    """Doubled-up plant realization.

    B1 drives the disturbance field; B2, when present, is a control input
    fed by a coherent-feedback controller.  D1 is the feedthrough from the
    first input block (the second block has no feedthrough).
    """

    A: np.ndarray
    B1: np.ndarray
    C: np.ndarray
    D1: np.ndarray
    L: np.ndarray
    B2: np.ndarray = None
    physically_realizable: bool = True
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("A", "B1", "C", "D1", "L"):
            object.__setattr__(self, name, as_cmatrix(getattr(self, name)))
        if self.B2 is not None:
            object.__setattr__(self, "B2", as_cmatrix(self.B2))
        n2 = self.A.shape[0]
        if self.A.shape != (n2, n2) or self.B1.shape[0] != n2:
            raise ShapeMismatch("A must be square and conform with B1")
        if self.C.shape[1] != n2 or self.L.shape[1] != n2:
            raise ShapeMismatch("C and L must have a column per state")

    @property
    def has_control_input(self):
        return self.B2 is not None

    @property
    def B(self):
        """Full input matrix: disturbance block, then control block if any."""
        if self.B2 is None:
            return self.B1
        return np.hstack([self.B1, self.B2])

    @property
    def D(self):
        """Full feedthrough matching the columns of B."""
        if self.B2 is None:
            return self.D1
        return np.hstack([self.D1, np.zeros((self.D1.shape[0], self.B2.shape[1]))])


@dataclass(frozen=True)
class CoherentController:
    """Doubled-up coherent controller realization.

    A feedback-capable controller has two input blocks (its own vacuum
    field B_c1 and the plant output B_c2) and two outputs: a monitored
    field (Ct_c, Dt_c1, Dt_c2) routed to homodyne detection, and a control
    field (C_c, D_c1, D_c2) routed back to the plant.
    """

    A_c: np.ndarray
    B_c1: np.ndarray
    C_c: np.ndarray
    feedback_capable: bool = False
    B_c2: np.ndarray = None
    Ct_c: np.ndarray = None
    D_c: np.ndarray = None
    Dt_c1: np.ndarray = None
    Dt_c2: np.ndarray = None
    D_c1: np.ndarray = None
    D_c2: np.ndarray = None
    physically_realizable: bool = True
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("A_c", "B_c1", "C_c"):
            object.__setattr__(self, name, as_cmatrix(getattr(self, name)))
        for name in ("B_c2", "Ct_c", "D_c", "Dt_c1", "Dt_c2", "D_c1", "D_c2"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, as_cmatrix(v))


def _check_realizable(lhs, rhs, strict, what):
    ok = abs(lhs - rhs) <= REALIZABILITY_TOL * max(1.0, abs(lhs), abs(rhs))
    if strict and not ok:
        raise NotPhysicallyRealizable(f"{what}: {lhs} != {rhs}")
    return ok


def squeezer_plant(beta, kappa, chi, L, strict=False):
    """Single-input dynamic squeezer: A = omega(-beta/2, -chi),
    B = -sqrt(kappa) I, C = sqrt(kappa) I, D = I.

    Physically realizable iff beta equals kappa; in strict mode a
    violation raises, otherwise it is recorded on the result.
    """
    if beta <= 0 or kappa <= 0:
        raise DomainError("beta and kappa must be positive")
    ok = _check_realizable(beta, kappa, strict, "squeezer loss/coupling mismatch")
    rk = np.sqrt(kappa)
    return QuantumPlant(
        A=omega(-beta / 2 * np.eye(1), -chi * np.eye(1)).realization,
        B1=-rk * np.eye(2),
        C=rk * np.eye(2),
        D1=np.eye(2),
        L=np.atleast_2d(np.asarray(L, dtype=complex)),
        physically_realizable=ok,
        params={"beta": beta, "kappa": kappa, "chi": chi},
    )


def squeezer_controller(beta_c, kappa_c, chi_c, strict=False):
    """Dynamic-squeezer coherent controller (no feedback output):
    A_c = omega(-beta_c/2, -chi_c), B_c = -sqrt(kappa_c) I,
    C_c = sqrt(kappa_c) I, D_c = I; realizable iff beta_c = kappa_c."""
    if beta_c <= 0 or kappa_c <= 0:
        raise DomainError("beta_c and kappa_c must be positive")
    ok = _check_realizable(
        beta_c, kappa_c, strict, "controller loss/coupling mismatch"
    )
    rk = np.sqrt(kappa_c)
    return CoherentController(
        A_c=omega(-beta_c / 2 * np.eye(1), -chi_c * np.eye(1)).realization,
        B_c1=-rk * np.eye(2),
        C_c=rk * np.eye(2),
        D_c=np.eye(2),
        feedback_capable=False,
        physically_realizable=ok,
        params={"beta_c": beta_c, "kappa_c": kappa_c, "chi_c": chi_c},
    )


def feedback_squeezer_plant(beta, kappa1, kappa2, chi, L, strict=False):
    """Two-input dynamic squeezer with a control port:
    B = [-sqrt(kappa1) I, -sqrt(kappa2) I], C = sqrt(kappa1) I,
    D = [I, 0]; realizable iff beta = kappa1 + kappa2."""
    if beta <= 0:
        raise DomainError("beta must be positive")
    if kappa1 < 0 or kappa2 < 0:
        raise DomainError("couplings must be nonnegative")
    ok = _check_realizable(
        beta, kappa1 + kappa2, strict, "squeezer loss/coupling-sum mismatch"
    )
    return QuantumPlant(
        A=omega(-beta / 2 * np.eye(1), -chi * np.eye(1)).realization,
        B1=-np.sqrt(kappa1) * np.eye(2),
        B2=-np.sqrt(kappa2) * np.eye(2),
        C=np.sqrt(kappa1) * np.eye(2),
        D1=np.eye(2),
        L=np.atleast_2d(np.asarray(L, dtype=complex)),
        physically_realizable=ok,
        params={"beta": beta, "kappa1": kappa1, "kappa2": kappa2, "chi": chi},
    )


def feedback_squeezer_controller(beta_c, kappa_c1, kappa_c2, chi_c, strict=False):
    """Dynamic-squeezer controller with a feedback output.

    The monitored output carries the controller's own field plus its vacuum
    input (Ct_c = sqrt(kappa_c1) I, Dt_c1 = I, Dt_c2 = 0); the feedback
    output carries the controller field plus the plant output passed
    through (C_c = sqrt(kappa_c2) I, D_c1 = 0, D_c2 = I).  Realizable iff
    beta_c = kappa_c1 + kappa_c2.
    """
    if beta_c <= 0:
        raise DomainError("beta_c must be positive")
    if kappa_c1 < 0 or kappa_c2 < 0:
        raise DomainError("couplings must be nonnegative")
    ok = _check_realizable(
        beta_c, kappa_c1 + kappa_c2, strict, "controller loss/coupling-sum mismatch"
    )
    return CoherentController(
        A_c=omega(-beta_c / 2 * np.eye(1), -chi_c * np.eye(1)).realization,
        B_c1=-np.sqrt(kappa_c1) * np.eye(2),
        B_c2=-np.sqrt(kappa_c2) * np.eye(2),
        Ct_c=np.sqrt(kappa_c1) * np.eye(2),
        C_c=np.sqrt(kappa_c2) * np.eye(2),
        Dt_c1=np.eye(2),
        Dt_c2=np.zeros((2, 2)),
        D_c1=np.zeros((2, 2)),
        D_c2=np.eye(2),
        feedback_capable=True,
        physically_realizable=ok,
        params={
            "beta_c": beta_c,
            "kappa_c1": kappa_c1,
            "kappa_c2": kappa_c2,
            "chi_c": chi_c,
        },
    )
