"""Relativistic hydrogen-like levels on a noncommutative phase space."""

from .dirac import DomainError, Level, PhysicalConstants, RadialSolution, energy, kappa_of, radial_g_f, radial_params
from .ncps import (
    CorrectionBreakdown,
    NcParams,
    alpha_from_constraint,
    corrections,
    delta_E_alpha,
    rho,
    rho_bar,
    spacings,
    theta_matrix,
    thetabar_matrix,
)
from .numerics import SecularMatrix, hermitian_eigen, integrate_radial, integrate_sphere
from .report import RunConfig, emit, parse_config, run
from .special_functions import SphericalSpinor, cg_spinor_coeffs, confluent_phi, gamma_fn, spherical_harmonic, spinor_eval

__version__ = "0.1.0"

__all__ = [
    "CorrectionBreakdown",
    "DomainError",
    "Level",
    "NcParams",
    "PhysicalConstants",
    "RadialSolution",
    "RunConfig",
    "SecularMatrix",
    "SphericalSpinor",
    "alpha_from_constraint",
    "cg_spinor_coeffs",
    "confluent_phi",
    "corrections",
    "delta_E_alpha",
    "emit",
    "energy",
    "gamma_fn",
    "hermitian_eigen",
    "integrate_radial",
    "integrate_sphere",
    "kappa_of",
    "parse_config",
    "radial_g_f",
    "radial_params",
    "rho",
    "rho_bar",
    "run",
    "spacings",
    "spherical_harmonic",
    "spinor_eval",
    "theta_matrix",
    "thetabar_matrix",
]
