"""Fractional gradient, divergence and Laplacian in spherical and polar
coordinates, with the Caputo derivative acting on the radius only.

Radial factors are :class:`FracSeries` and are differentiated exactly;
angular factors are ordinary functions with analytic derivatives (central
differences with h = 1e-5 as a fallback).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .bessel_frac import BesselSolution
from .errors import DomainError, NoRootError, SingularPointError
from .frac_ops import FracSeries, caputo_series
from .gamma_core import gamma_ratio_limit
from .legendre_frac import LegendreProblem, legendre_coeffs
from .roots import RootScan, index_roots, scan_roots

FD_STEP = 1e-5
_SIN_TOL = 1e-14

__all__ = [
    "AngularFn",
    "RootScan",
    "SeparableField2D",
    "SeparableField3D",
    "HeatMode",
    "effective_metric",
    "grad_spherical",
    "grad_fields",
    "div_spherical",
    "laplacian_spherical",
    "radial_laplacian",
    "polar_radial_laplacian",
    "grad_polar",
    "div_polar",
    "laplacian_polar",
    "radial_eigen_exponents",
    "eigen_residual",
    "laplace_residual_3d",
    "assemble_laplace_solution",
    "heat_solution_assemble",
]


@dataclass(frozen=True)
class AngularFn:
    """A function of one angle with optional analytic derivatives."""

    f: Callable[[float], float]
    df: Callable[[float], float] | None = None
    d2f: Callable[[float], float] | None = None

    @classmethod
    def constant(cls, value: float = 1.0) -> AngularFn:
        return cls(lambda t: value, lambda t: 0.0, lambda t: 0.0)

    def __call__(self, t: float) -> float:
        return self.f(t)

    def d1(self, t: float) -> float:
        if self.df is not None:
            return self.df(t)
        return (self.f(t + FD_STEP) - self.f(t - FD_STEP)) / (2 * FD_STEP)

    def d2(self, t: float) -> float:
        if self.d2f is not None:
            return self.d2f(t)
        if self.df is not None:
            return (self.df(t + FD_STEP) - self.df(t - FD_STEP)) / (2 * FD_STEP)
        return (self.f(t + FD_STEP) - 2 * self.f(t) + self.f(t - FD_STEP)) / FD_STEP**2


def _azimuthal(kind: str, m: int, phi: float, order: int = 0) -> float:
    # derivatives of cos(m phi) / sin(m phi)
    phase = {"cos": 0.0, "sin": -0.5 * math.pi}[kind] + 0.5 * math.pi * order
    return m**order * math.cos(m * phi + phase)


@dataclass(frozen=True)
class SeparableField3D:
    """u = R(r) Theta(theta) Phi(phi) with Phi = cos(m phi) or sin(m phi)."""

    radial: FracSeries
    theta_fn: AngularFn
    m_azimuthal: int = 0
    alpha: float = field(default=None)  # type: ignore[assignment]
    lam: float = 0.0
    azimuthal: str = "cos"

    def __post_init__(self):
        if self.alpha is None:
            object.__setattr__(self, "alpha", self.radial.alpha)
        if not math.isclose(self.radial.alpha, self.alpha, abs_tol=1e-12):
            raise DomainError("radial series step must equal the field's alpha")
        if self.m_azimuthal < 0:
            raise DomainError("m_azimuthal must be non-negative")
        if self.azimuthal not in ("cos", "sin"):
            raise DomainError("azimuthal must be 'cos' or 'sin'")

    def phi(self, phi: float, order: int = 0) -> float:
        return _azimuthal(self.azimuthal, self.m_azimuthal, phi, order)

    def __call__(self, r: float, theta: float, phi: float) -> float:
        return self.radial(r) * self.theta_fn(theta) * self.phi(phi)


def _check_point(r: float, theta: float | None = None) -> None:
    if not r > 0:
        raise SingularPointError(f"operators are singular at r={r!r}")
    if theta is not None and not (0 < theta < math.pi and math.sin(theta) > _SIN_TOL):
        raise SingularPointError(f"theta={theta!r} is on the polar axis")


def _sin_pow(theta: float, alpha: float) -> float:
    return math.exp(alpha * math.log(math.sin(theta)))


def effective_metric(r: float, theta: float, alpha: float) -> tuple[float, float, float]:
    """Radial length and arc factors r^a/G, r^a/G, r^a sin^a(theta)/G with G = Gamma(a+1)."""
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r!r}")
    if not 0 < theta < math.pi:
        raise DomainError(f"theta must lie in (0, pi), got {theta!r}")
    g = math.gamma(alpha + 1.0)
    radial = r**alpha / g
    return radial, radial, radial * _sin_pow(theta, alpha)


def _radial_caputo_at(R: FracSeries, r: float) -> float:
    # D^a R evaluated pointwise; r^a D^a R never has negative exponents
    return caputo_series(R, shift=R.alpha).eval_scaled(r, -R.alpha)


def grad_spherical(u: SeparableField3D, point: Sequence[float]) -> tuple[float, float, float]:
    r, theta, phi = point
    _check_point(r, theta)
    a = u.alpha
    g = math.gamma(a + 1.0)
    R = u.radial(r)
    th, ph = u.theta_fn(theta), u.phi(phi)
    g_r = _radial_caputo_at(u.radial, r) * th * ph
    g_t = g / r**a * R * u.theta_fn.d1(theta) * ph
    g_p = g / (r**a * _sin_pow(theta, a)) * R * th * u.phi(phi, 1)
    return g_r, g_t, g_p


def grad_fields(u: SeparableField3D) -> tuple[SeparableField3D, SeparableField3D, SeparableField3D]:
    """Gradient components as separable fields (needs R's exponents >= alpha for the angular parts)."""
    a = u.alpha
    g = math.gamma(a + 1.0)
    th = u.theta_fn
    radial_r = caputo_series(u.radial)
    radial_ang = u.radial.shift(-a).scale(g)
    f_r = replace(u, radial=radial_r)
    f_t = replace(u, radial=radial_ang, theta_fn=AngularFn(th.d1, th.d2))

    def t_phi(t):
        return th(t) / _sin_pow(t, a)

    def dt_phi(t):
        s, c = math.sin(t), math.cos(t)
        return (th.d1(t) - a * th(t) * c / s) / _sin_pow(t, a)

    if u.azimuthal == "cos":
        kind, sgn = "sin", -1.0
    else:
        kind, sgn = "cos", 1.0
    f_p = replace(
        u,
        radial=radial_ang.scale(sgn * u.m_azimuthal),
        theta_fn=AngularFn(t_phi, dt_phi),
        azimuthal=kind,
    )
    return f_r, f_t, f_p


def div_spherical(A: Sequence[SeparableField3D], point: Sequence[float]) -> float:
    r, theta, phi = point
    _check_point(r, theta)
    A_r, A_t, A_p = A
    a = A_r.alpha
    g = math.gamma(a + 1.0)
    cot = math.cos(theta) / math.sin(theta)
    # 1/(r^2a sin^a) D(r^2a sin^a A_r): the sin factor passes through D_r
    t1 = caputo_series(A_r.radial.shift(2 * a)).eval_scaled(r, -2 * a) * A_r.theta_fn(theta) * A_r.phi(phi)
    # G/(r^2a sin^a) d/dtheta(r^a sin^a A_t)
    t2 = (
        g * A_t.radial.eval_scaled(r, -a) * A_t.phi(phi)
        * (a * cot * A_t.theta_fn(theta) + A_t.theta_fn.d1(theta))
    )
    t3 = g * A_p.radial.eval_scaled(r, -a) / _sin_pow(theta, a) * A_p.theta_fn(theta) * A_p.phi(phi, 1)
    return t1 + t2 + t3


def _radial_laplacian_numerator(R: FracSeries) -> FracSeries:
    return caputo_series(caputo_series(R, shift=2 * R.alpha))


def laplacian_spherical(u: SeparableField3D, point: Sequence[float]) -> float:
    """Full fractional Laplacian of a separable field at one point."""
    r, theta, phi = point
    _check_point(r, theta)
    a = u.alpha
    g2 = math.gamma(a + 1.0) ** 2
    th = u.theta_fn
    R = u.radial(r)
    radial = _radial_laplacian_numerator(u.radial).eval_scaled(r, -2 * a) * th(theta) * u.phi(phi)
    cot = math.cos(theta) / math.sin(theta)
    polar = g2 * R / r ** (2 * a) * (a * cot * th.d1(theta) + th.d2(theta)) * u.phi(phi)
    azim = g2 * R / (r ** (2 * a) * _sin_pow(theta, 2 * a)) * th(theta) * u.phi(phi, 2)
    return radial + polar + azim


def radial_laplacian(R: FracSeries) -> FracSeries:
    """r^(-2a) D(r^(2a) D R), term-wise: r^(m a) -> q r^((m-2) a)."""
    return caputo_series(caputo_series(R, shift=2 * R.alpha), shift=-2 * R.alpha)


def polar_radial_laplacian(R: FracSeries) -> FracSeries:
    """r^(-a) D(r^a D R)."""
    return caputo_series(caputo_series(R, shift=R.alpha), shift=-R.alpha)


@dataclass(frozen=True)
class SeparableField2D:
    """u = R(r) Theta(theta) in the plane."""

    radial: FracSeries
    theta_fn: AngularFn

    @property
    def alpha(self) -> float:
        return self.radial.alpha

    def __call__(self, r: float, theta: float) -> float:
        return self.radial(r) * self.theta_fn(theta)


def grad_polar(u: SeparableField2D, point: Sequence[float]) -> tuple[float, float]:
    r, theta = point
    _check_point(r)
    a = u.alpha
    return (
        _radial_caputo_at(u.radial, r) * u.theta_fn(theta),
        math.gamma(a + 1.0) / r**a * u.radial(r) * u.theta_fn.d1(theta),
    )


def div_polar(A: Sequence[SeparableField2D], point: Sequence[float]) -> float:
    r, theta = point
    _check_point(r)
    A_r, A_t = A
    a = A_r.alpha
    t1 = caputo_series(A_r.radial.shift(a)).eval_scaled(r, -a) * A_r.theta_fn(theta)
    t2 = math.gamma(a + 1.0) * A_t.radial.eval_scaled(r, -a) * A_t.theta_fn.d1(theta)
    return t1 + t2


def laplacian_polar(u: SeparableField2D, point: Sequence[float]) -> float:
    r, theta = point
    _check_point(r)
    a = u.alpha
    num = caputo_series(caputo_series(u.radial, shift=a))
    radial = num.eval_scaled(r, -a) * u.theta_fn(theta)
    ang = math.gamma(a + 1.0) ** 2 / r ** (2 * a) * u.radial(r) * u.theta_fn.d2(theta)
    return radial + ang


def eigen_residual(m: float, lam: float, alpha: float) -> float:
    """Gamma(m a + a + 1)/Gamma(m a - a + 1) - lam Gamma(a + 1)^2."""
    return gamma_ratio_limit(m * alpha + alpha + 1.0, m * alpha - alpha + 1.0) - lam * math.gamma(alpha + 1.0) ** 2


def radial_eigen_exponents(lam: float, alpha: float, scan: RootScan | None = None) -> list[float]:
    """Exponent indices m (R = r^(m alpha)) of the radial fractional Laplace equation."""
    lam, alpha = float(lam), float(alpha)
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    def fn(m):
        return eigen_residual(m, lam, alpha)

    target = lam * math.gamma(alpha + 1.0) ** 2
    # absolute for small lam, relative to lam G^2 beyond 1
    tol = (scan.tol if scan else RootScan().tol) * max(1.0, abs(target))
    if scan is not None:
        return scan_roots(fn, replace(scan, tol=tol))
    roots = index_roots(fn, alpha, math.sqrt(abs(target)), positive=lam > 0, tol=tol)
    if not roots:
        raise NoRootError(f"no exponent for lam={lam!r}, alpha={alpha!r}")
    return roots


def _legendre_angular(series) -> AngularFn:
    def f(t):
        return series(math.cos(t))

    def df(t):
        return -math.sin(t) * series.derivative(math.cos(t), 1)

    def d2f(t):
        x, s = math.cos(t), math.sin(t)
        return -x * series.derivative(x, 1) + s * s * series.derivative(x, 2)

    return AngularFn(f, df, d2f)


def assemble_laplace_solution(
    lam: float,
    alpha: float,
    parity: str = "even",
    n_terms: int = 600,
    scan: RootScan | None = None,
) -> SeparableField3D:
    """u = r^(m alpha) p(cos theta) with the largest non-negative eigen-exponent m."""
    roots = [m for m in radial_eigen_exponents(lam, alpha, scan) if m >= -1e-12]
    if not roots:
        raise DomainError(f"no non-negative eigen-exponent for lam={lam!r}, alpha={alpha!r}")
    m = max(roots)
    series = legendre_coeffs(LegendreProblem(alpha, lam, 0, parity, n_terms))
    return SeparableField3D(FracSeries.monomial(max(m, 0.0) * alpha, alpha), _legendre_angular(series), 0, alpha, lam)


def laplace_residual_3d(u: SeparableField3D, points: Iterable[Sequence[float]]) -> float:
    return max(abs(laplacian_spherical(u, p)) for p in points)


@dataclass(frozen=True)
class HeatMode:
    """u(t, r, theta) = A exp(-a^2 k^2 t) cos(nu theta + phase) R_rho(r)."""

    bessel: BesselSolution
    amplitude: float = 1.0
    phase: float = 0.0
    diffusivity: float = 1.0

    @property
    def decay(self) -> float:
        return (self.diffusivity * self.bessel.k) ** 2

    def spatial(self) -> SeparableField2D:
        nu, ph = self.bessel.nu, self.phase
        ang = AngularFn(
            lambda t: math.cos(nu * t + ph),
            lambda t: -nu * math.sin(nu * t + ph),
            lambda t: -nu * nu * math.cos(nu * t + ph),
        )
        return SeparableField2D(self.bessel.as_series().scale(self.amplitude), ang)

    def __call__(self, t: float, r: float, theta: float) -> float:
        return math.exp(-self.decay * t) * self.amplitude * math.cos(self.bessel.nu * theta + self.phase) * self.bessel(r)

    def residual(self, t: float, r: float, theta: float) -> float:
        """du/dt - a^2 Laplacian(u), both evaluated analytically."""
        lap = laplacian_polar(self.spatial(), (r, theta)) * math.exp(-self.decay * t)
        return -self.decay * self(t, r, theta) - self.diffusivity**2 * lap


def heat_solution_assemble(
    alpha: float,
    k: float,
    nu: float,
    amplitude: float = 1.0,
    phase: float = 0.0,
    diffusivity: float = 1.0,
    rho: float | None = None,
    n_terms: int = 80,
) -> HeatMode:
    if nu < 0 or abs(nu - round(nu)) > 1e-12:
        raise DomainError(f"nu must be a non-negative integer for a periodic mode, got {nu!r}")
    return HeatMode(BesselSolution.build(alpha, nu, k, rho, n_terms), amplitude, phase, diffusivity)
