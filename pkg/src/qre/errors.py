"""Exception hierarchy for the qre package."""


class QreError(Exception):
    """Base class for all qre errors."""


class ShapeMismatch(QreError):
    """Operands do not conform dimensionally."""


class DomainError(QreError):
    """A scalar argument is outside its admissible range."""


class NotPositiveDefinite(QreError):
    """A matrix required to be Hermitian positive definite is not."""


class ImaginaryAxisEigenvalue(QreError):
    """The Riccati Hamiltonian has an eigenvalue too close to the imaginary axis."""


class SingularU1(QreError):
    """The stable invariant subspace is not complementary to the graph subspace."""


class ResidualTooLarge(QreError):
    """Riccati residual exceeds the acceptance gate after refinement."""


class NotPhysicallyRealizable(QreError):
    """A squeezer trace condition (loss = sum of couplings) is violated."""


class WrongTopology(QreError):
    """Plant/controller pair does not match the requested interconnection."""


class ScalingTooLarge(QreError):
    """(I - eps2^2 G^dag G) is not positive definite; eps2 is too large."""


class SingularE2(QreError):
    """The measurement weighting matrix is singular."""


class CareFailure(QreError):
    """An ARE solve failed; carries which equation (X or Y) was involved."""

    def __init__(self, which, cause):
        super().__init__(f"ARE for {which} failed: {cause}")
        self.which = which
        self.cause = cause


class CouplingSingular(QreError):
    """(I - YX) is numerically singular."""


class UnstableEstimator(QreError):
    """Synthesized estimator dynamics are not Hurwitz."""


class ChannelOutOfRange(QreError):
    """Requested input-column selection exceeds the available columns."""


class SingularAtFrequency(QreError):
    """i*omega coincides with an eigenvalue of the state matrix."""


class UnstableSystem(QreError):
    """H-infinity norm requested for an unstable state-space system."""
