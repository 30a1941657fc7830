"""Fractional calculus operators and the special functions built from them."""

from .bessel_frac import BesselSolution, bessel_coeffs, bessel_eval, nu_surface, solve_rho
from .errors import *  # noqa: F401,F403
from .frac_ops import (
    FracSeries,
    QuadConfig,
    caputo_numeric,
    caputo_power,
    caputo_series,
    frac_taylor,
    rl_integral_power,
    rl_integral_series,
)
from .gamma_core import SignedLogValue, gamma_ratio, gamma_squared_ratio, lgamma_signed
from .hypergeom_frac import (
    HypergeomParams,
    conf_hyper_frac,
    conf_hyper_residual,
    gauss_hyper_frac,
    gauss_hyper_residual,
    pochhammer_frac,
)
from .legendre_frac import LegendreProblem, legendre_coeffs, legendre_eval, legendre_ode_solve
from .roots import RootScan
from .vector_calc import (
    AngularFn,
    SeparableField2D,
    SeparableField3D,
    effective_metric,
    grad_spherical,
    div_spherical,
    laplacian_spherical,
    radial_laplacian,
    polar_radial_laplacian,
    radial_eigen_exponents,
    laplace_residual_3d,
    heat_solution_assemble,
)

__version__ = "0.1.0"
