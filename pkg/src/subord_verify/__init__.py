"""Numerical verification of sharp differential-subordination constants for the nephroid."""

from ._series import BACKEND, use_backend
from .errors import (
    AmbiguityError,
    BracketError,
    ConvergenceError,
    DiscrepancyError,
    DivergenceError,
    NumericError,
    ParameterError,
    PoleError,
)
from .nephroid import BoundaryCurve, PlanePoint, contains, d1, nephroid_implicit, phi_ne, sample_boundary
from .specfun import (
    HyperParams,
    SeriesValue,
    gamma,
    gauss_2f1,
    gauss_2f1_derivative,
    gauss_2f1_euler_integral,
    kummer_1f1,
    kummer_1f1_derivative,
    kummer_1f1_integral,
    pochhammer,
)
from .subord import (
    BetaRoot,
    ContainmentReport,
    SolutionCurve,
    StarlikenessCheck,
    SubordCase,
    coefficient_C,
    containment_scan,
    d,
    d2,
    delta,
    g_operator,
    kustner_bounds,
    mm_condition,
    mm_N,
    mu,
    numeric_starlikeness_scan,
    ode_residual,
    rho,
    solution_value,
    solve_sharp_beta,
    target_membership,
    tau,
)

__version__ = "0.1.0"
