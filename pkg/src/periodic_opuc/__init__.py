"""Orthogonal polynomials on the unit circle with periodic Verblunsky coefficients.

Closed forms through Chebyshev polynomials of the discriminant, band
structure, singular points of the Szegő asymptotics, Christoffel–Darboux
kernel universality limits, and Schur/Wall/Carathéodory functions.
"""

__version__ = "0.1.0"

from .bands import BandStructure, Edge, RegimeLabel, band_structure, classify_point, v_density
from .chebyshev import ChebEval, cheb_eval, cheb_u, cheb_u_normalized
from .equilibrium import (
    BandCdf,
    SingularPoint,
    band_cdf,
    critical_alpha,
    find_singular_points,
    make_spike_family,
)
from .errors import (
    ArgumentError,
    ConsistencyError,
    DomainError,
    NumericError,
    OpucError,
    PropertyViolation,
    UnsupportedCaseError,
)
from .kernels import (
    bessel_jstar,
    cd_kernel_direct,
    cd_kernel_fast,
    predicted_limit,
    sinc_kernel,
    universality_ratio,
)
from .periodic import Discriminant, closed_form_phi, discriminant, gamma_pm, szego_asymptotics
from .poly import ComplexPoly, LaurentPoly, roots
from .schur import (
    caratheodory_F,
    cheb_period_identity_residual,
    classify_zeros_phi_diff,
    generating_function_residual,
    ratio_asymptotic,
    schur_f,
    wall_polys,
)
from .szego import TransferMatrix, VerblunskyPeriod, eval_quad_at, iterate_polys

__all__ = [
    "ArgumentError", "BandCdf", "BandStructure", "ChebEval", "ComplexPoly", "ConsistencyError",
    "Discriminant", "DomainError", "Edge", "LaurentPoly", "NumericError", "OpucError",
    "PropertyViolation", "RegimeLabel", "SingularPoint", "TransferMatrix",
    "UnsupportedCaseError", "VerblunskyPeriod", "band_cdf", "band_structure", "bessel_jstar",
    "caratheodory_F", "cd_kernel_direct", "cd_kernel_fast", "cheb_eval",
    "cheb_period_identity_residual", "cheb_u", "cheb_u_normalized", "classify_point",
    "classify_zeros_phi_diff", "closed_form_phi", "critical_alpha", "discriminant",
    "eval_quad_at", "find_singular_points", "gamma_pm", "generating_function_residual",
    "iterate_polys", "make_spike_family", "predicted_limit", "ratio_asymptotic", "roots",
    "schur_f", "sinc_kernel", "szego_asymptotics", "universality_ratio", "v_density",
    "wall_polys",
]
