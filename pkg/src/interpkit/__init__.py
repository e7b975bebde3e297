"""Rearrangement-invariant function spaces, real/complex interpolation, and
heat/Schrodinger decay numerics on simple functions and periodic grids."""

__version__ = "0.1.0"

from .measure_core import (
    INF, DomainError, Quadrature, SampledFunction, StructuralError, conjugate_exponent,
    function_from_spec, integrate, lebesgue_norm,
)
from .rearrange import (
    RearrangementProfile, decreasing_rearrangement, distribution_function, maximal_average,
)
from .lorentz import LorentzIndex, lorentz_norm, nesting_report, weak_norm
from .operators import (
    DiscreteConvolution, HardyOperator, IdentityOperator, NormEstimate, convolve,
    estimate_operator_norm, hardy_apply, hardy_ratio_sweep,
)
from .interpolate import (
    EndpointBound, InterpIndex, k_exact, k_optimized, lorentz_equivalence_report,
    real_interp_norm, riesz_thorin_exponents, verify_geometric_mean_bound,
)
from .evolve import (
    DecayFit, GridSpec, HeatOperator, SpectralField, dispersive_estimate_check,
    fit_decay_exponent, heat_kernel_norm, heat_kernel_value, heat_propagate,
    mixed_spacetime_norm, schrodinger_propagate, sup_norm_decay_check,
    weak_space_smoothing_check,
)

__all__ = [
    "__version__",
    "INF",
    "DomainError",
    "Quadrature",
    "SampledFunction",
    "StructuralError",
    "conjugate_exponent",
    "function_from_spec",
    "integrate",
    "lebesgue_norm",
    "RearrangementProfile",
    "decreasing_rearrangement",
    "distribution_function",
    "maximal_average",
    "LorentzIndex",
    "lorentz_norm",
    "nesting_report",
    "weak_norm",
    "DiscreteConvolution",
    "HardyOperator",
    "IdentityOperator",
    "NormEstimate",
    "convolve",
    "estimate_operator_norm",
    "hardy_apply",
    "hardy_ratio_sweep",
    "EndpointBound",
    "InterpIndex",
    "k_exact",
    "k_optimized",
    "lorentz_equivalence_report",
    "real_interp_norm",
    "riesz_thorin_exponents",
    "verify_geometric_mean_bound",
    "DecayFit",
    "GridSpec",
    "HeatOperator",
    "SpectralField",
    "dispersive_estimate_check",
    "fit_decay_exponent",
    "heat_kernel_norm",
    "heat_kernel_value",
    "heat_propagate",
    "mixed_spacetime_norm",
    "schrodinger_propagate",
    "sup_norm_decay_check",
    "weak_space_smoothing_check",
]
