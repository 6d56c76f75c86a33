from loguru import logger

from pyhalfstrip._base import (
    BaseHalfStripError,
    CapabilityError,
    ConfigurationError,
    DegenerateInputError,
    ModeRangeError,
    ParameterError,
    UnknownFunctionError,
)
from pyhalfstrip.config import Settings, get_settings
from pyhalfstrip.diagnostics import CheckRecord, Report, SuiteConfig, convergence_order, fd_laplacian, run_suite
from pyhalfstrip.harmonic_solver import (
    CompatibilityReport,
    Convention,
    HarmonicSolution,
    StripGrid,
    apriori_ratio,
    boundary_residuals,
    check_compatibility,
    eval_partial,
    eval_solution,
    mixed_norm,
    solve,
    trace_error,
)
from pyhalfstrip.rootbasis import (
    ExponentialCoefficients,
    RootCoefficients,
    TrigCoefficients,
    gram_matrix,
    hausdorff_young_gap,
    projector_cos,
    projector_sin,
    reconstruct,
    riesz_projection,
    root_coeffs,
    spectral_residual,
    trig_coeffs,
)
from pyhalfstrip.vectorfn import (
    Catalog,
    FunctionOnI,
    NormParams,
    QuadratureRule,
    catalog,
    lp_norm,
    make_quadrature,
    sobolev2_norm,
)

__version__ = "0.1.0"
__author__ = "Ivan Koldakov"
__all__ = [
    "BaseHalfStripError",
    "CapabilityError",
    "Catalog",
    "CheckRecord",
    "CompatibilityReport",
    "ConfigurationError",
    "Convention",
    "DegenerateInputError",
    "ExponentialCoefficients",
    "FunctionOnI",
    "HarmonicSolution",
    "ModeRangeError",
    "NormParams",
    "ParameterError",
    "QuadratureRule",
    "Report",
    "RootCoefficients",
    "Settings",
    "StripGrid",
    "SuiteConfig",
    "TrigCoefficients",
    "UnknownFunctionError",
    "apriori_ratio",
    "boundary_residuals",
    "catalog",
    "check_compatibility",
    "convergence_order",
    "eval_partial",
    "eval_solution",
    "fd_laplacian",
    "get_settings",
    "gram_matrix",
    "hausdorff_young_gap",
    "lp_norm",
    "make_quadrature",
    "mixed_norm",
    "projector_cos",
    "projector_sin",
    "reconstruct",
    "riesz_projection",
    "root_coeffs",
    "run_suite",
    "sobolev2_norm",
    "solve",
    "spectral_residual",
    "trace_error",
    "trig_coeffs",
]

logger.disable("pyhalfstrip")
