"""Numerical verification of the regional fractional Laplacian on an
interval and of the sharp fractional Hardy inequalities with remainder
terms, at desk scale."""

from .convex import (
    ConvexCheck,
    Disk,
    MCConfig,
    ProductBump2D,
    RadialBump2D,
    Rectangle,
    hardy_check_convex,
)
from .errors import DomainError, NonConvergenceError
from .forms import (
    FormBreakdown,
    HardyCheck1D,
    Interval,
    KilledCheck,
    energy_ground_state,
    energy_regional,
    hardy_check_1d,
    hardy_weight,
    inv_one_minus_x2_pow,
    killed_check,
    killing_weight,
    phi_lower_bound_check,
    phi_weight,
    verify_gsr_identity,
    weighted_l2,
)
from .functions import (
    AffineImage,
    Hat,
    PolyCutoff,
    PowerFunction,
    SmoothBump,
    TestFunction1D,
    TruncatedGroundState,
)
from .sharpness import (
    DiscreteForm,
    Grid,
    RayleighResult,
    SweepPoint,
    assemble,
    graded_grid,
    limit_constant,
    min_rayleigh,
    sharpness_sweep,
)
from .laplacian import (
    I_pv,
    ground_state_potential,
    lap_power_at_zero,
    laplacian_power_closed,
    regional_laplacian_pv,
)
from .quadrature import PVResult, QuadConfig
from .specfun import (
    Alpha,
    ConstantReport,
    beta,
    constant_report,
    kappa,
    log_gamma,
    phi,
    remainder_coeff_1d,
    remainder_coeff_nd,
)

__version__ = "0.1.0"

__all__ = [
    "Alpha",
    "AffineImage",
    "ConstantReport",
    "ConvexCheck",
    "DiscreteForm",
    "Disk",
    "DomainError",
    "FormBreakdown",
    "Grid",
    "HardyCheck1D",
    "Hat",
    "I_pv",
    "Interval",
    "KilledCheck",
    "MCConfig",
    "NonConvergenceError",
    "PVResult",
    "PolyCutoff",
    "PowerFunction",
    "ProductBump2D",
    "QuadConfig",
    "RadialBump2D",
    "RayleighResult",
    "Rectangle",
    "SmoothBump",
    "SweepPoint",
    "TestFunction1D",
    "TruncatedGroundState",
    "assemble",
    "beta",
    "constant_report",
    "energy_ground_state",
    "energy_regional",
    "graded_grid",
    "ground_state_potential",
    "hardy_check_1d",
    "hardy_check_convex",
    "hardy_weight",
    "inv_one_minus_x2_pow",
    "kappa",
    "killed_check",
    "killing_weight",
    "lap_power_at_zero",
    "laplacian_power_closed",
    "limit_constant",
    "log_gamma",
    "min_rayleigh",
    "phi",
    "phi_lower_bound_check",
    "phi_weight",
    "regional_laplacian_pv",
    "remainder_coeff_1d",
    "remainder_coeff_nd",
    "sharpness_sweep",
    "verify_gsr_identity",
    "weighted_l2",
]
