"""Precision bounds for joint estimation of two successive squeezings
separated by a phase-shift scrambler.

Closed forms live in :mod:`.bounds`, :mod:`.gaussian` and
:mod:`.generaldyne`; :mod:`.fock_oracle` recomputes them from a truncated
Fock-space simulation.
"""
from .bounds import (
    InfoMatrices,
    ScalarBounds,
    StepwiseBounds,
    asymptotic_cq,
    asymptotic_R,
    asymptotic_T,
    cq_optimal_closed,
    info_closed,
    qfim_closed,
    scalar_bounds,
    stepwise_bounds,
    stepwise_optimal,
    uhlmann_closed,
    weighted_cq,
)
from .errors import (
    ConvergenceError,
    DomainError,
    OptimizationError,
    SingularMatrixError,
    TailError,
)
from .gaussian import GaussianState, evolve_moments
from .generaldyne import (
    GeneralDyneSetting,
    c_g,
    cfi_matrix,
    cg_asymptotic,
    holevo_ratio_band,
    optimal_cfi_closed,
    optimize_setting,
    outcome_covariance,
)
from .params import ModelParams, NumericsConfig, default_numerics
from .report import BoundReport, ScanSpec, build_report, scan

__version__ = "0.1.0"
