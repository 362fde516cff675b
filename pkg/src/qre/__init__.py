"""Robust H-infinity estimator synthesis and analysis for uncertain linear
quantum systems.

The package builds doubled-up state-space models of optical squeezer plants
and coherent controllers, factors structured norm-bounded uncertainty,
assembles and solves the scaled H-infinity estimation problem via two
algebraic Riccati equations, and analyses the resulting filters across the
uncertainty window.
"""

__version__ = "0.1.0"

from .analysis import (
    StateSpace,
    SweepResult,
    closed_loop_error_system,
    delta_sweep,
    frequency_response,
    grid_peak_gain,
    hinf_norm,
)
from .augmentation import (
    AugmentedSystem,
    AugmentedUncertainty,
    augment,
    augment_feedback,
    lift_uncertainty,
    lifted_deltas,
)
from .errors import QreError
from .linalg import (
    CareInstance,
    CareSolution,
    adjoint,
    hermitian_inv_sqrt,
    max_singular_value,
    solve_care,
)
from .presets import (
    Study,
    build_study,
    feedback_benchmark_config,
    series_benchmark_config,
)
from .quantum import (
    CoherentController,
    DoubledOperator,
    HomodyneConfig,
    QuantumPlant,
    feedback_squeezer_controller,
    feedback_squeezer_plant,
    homodyne_matrix,
    omega,
    squeezer_controller,
    squeezer_plant,
)
from .synthesis import (
    Estimator,
    ScaledProblem,
    assemble_augmented,
    assemble_classical,
    assemble_feedback_classical,
    eps_grid_search,
    synthesize,
)
from .uncertainty import (
    DeltaTriple,
    UncertaintyModel,
    contraction_check,
    evaluate_deltas,
    squeezer_uncertainty,
)

__all__ = [
    "__version__",
    "QreError",
    "adjoint",
    "hermitian_inv_sqrt",
    "max_singular_value",
    "CareInstance",
    "CareSolution",
    "solve_care",
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
    "UncertaintyModel",
    "DeltaTriple",
    "squeezer_uncertainty",
    "evaluate_deltas",
    "contraction_check",
    "AugmentedSystem",
    "AugmentedUncertainty",
    "augment",
    "augment_feedback",
    "lift_uncertainty",
    "lifted_deltas",
    "ScaledProblem",
    "Estimator",
    "assemble_classical",
    "assemble_feedback_classical",
    "assemble_augmented",
    "synthesize",
    "eps_grid_search",
    "StateSpace",
    "SweepResult",
    "closed_loop_error_system",
    "frequency_response",
    "hinf_norm",
    "grid_peak_gain",
    "delta_sweep",
    "Study",
    "build_study",
    "series_benchmark_config",
    "feedback_benchmark_config",
]
