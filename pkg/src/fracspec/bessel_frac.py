"""Fractional Bessel equation from the polar fractional Laplacian.

The radial equation

    r^a D^a (r^a D^a R) / G^2 + k^2 r^(2a) R / G^2 - nu^2 R = 0,  G = Gamma(a+1),

has the series solution ``R = r^(a rho) sum_n (-1)^n d_n k^(2n) r^(2 a n)``
where ``q(s) = Gamma(a s + 1)/Gamma(a s - a + 1)`` and the index rho solves
``q(rho)^2 = nu^2 G^2``.  At a = 1 this is Gamma(nu+1) (2/k)^nu J_nu(k r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DegenerateDenominatorError, DomainError, FracSpecError, NoRootError, ToleranceError
from .frac_ops import FracSeries
from .gamma_core import gamma_ratio_limit
from .roots import RootScan, index_roots, scan_roots

DENOM_TOL = 1e-10
TRUNC_REL = 1e-12


def index_ratio(s: float, alpha: float) -> float:
    """q(s) = Gamma(alpha s + 1)/Gamma(alpha s - alpha + 1), pole pairs by their limit."""
    return gamma_ratio_limit(alpha * s + 1.0, alpha * s - alpha + 1.0)


def index_residual(rho: float, nu: float, alpha: float) -> float:
    g = math.gamma(alpha + 1.0)
    return index_ratio(rho, alpha) ** 2 - (nu * g) ** 2


def solve_rho(nu: float, alpha: float, scan: RootScan | None = None) -> list[float]:
    """Indices rho, ascending.

    The equation is scanned as ``(q - nu G)(q + nu G)``, or as ``q`` itself
    when nu = 0, so every root is a simple sign change.  Without an
    explicit ``scan`` the regular root on the right is always found and the
    left side is scanned to a depth growing with nu.
    """
    nu, alpha = float(nu), float(alpha)
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu!r}")
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    target = nu * math.gamma(alpha + 1.0)
    # absolute below nu G ~ 1, relative above: lgamma carries ~1e-16 relative error
    tol = (scan.tol if scan else RootScan().tol) * max(1.0, target * target)
    if target > 0:
        # (q - t)(q + t): both branches in one pass, every root still simple
        def fn(s):
            q = index_ratio(s, alpha)
            return (q - target) * (q + target)
    else:
        def fn(s):
            return index_ratio(s, alpha)

    if scan is None:
        roots = index_roots(fn, alpha, target, positive=target > 0, tol=tol)
    else:
        try:
            roots = scan_roots(fn, replace(scan, tol=tol))
        except NoRootError:
            roots = []
    roots = [r for r in roots if abs(index_residual(r, nu, alpha)) < tol]
    if not roots:
        where = f" in [{scan.lo!r}, {scan.hi!r}]" if scan else ""
        raise NoRootError(f"no index rho for nu={nu!r}, alpha={alpha!r}{where}")
    out: list[float] = []
    for r in sorted(roots):
        if not out or abs(r - out[-1]) > 1e-8 * max(1.0, abs(r)):
            out.append(r)
    return out


def default_rho(roots: Sequence[float]) -> float:
    """Largest non-negative root (the solution regular at r = 0)."""
    nonneg = [r for r in roots if r >= -1e-12]
    if not nonneg:
        raise NoRootError("no non-negative index among the roots")
    return max(nonneg)


def bessel_denominators(rho: float, nu: float, alpha: float, N: int) -> np.ndarray:
    """q(rho + 2n)^2 - nu^2 G^2 for n = 1..N, as (q - nu G)(q + nu G)."""
    g = math.gamma(alpha + 1.0)
    out = np.empty(N)
    for n in range(1, N + 1):
        q = index_ratio(rho + 2 * n, alpha)
        den = (q - nu * g) * (q + nu * g)
        if not abs(den) > DENOM_TOL:
            raise DegenerateDenominatorError(n)
        out[n - 1] = den
    return out


def bessel_coeffs(rho: float, nu: float, alpha: float, N: int) -> np.ndarray:
    """d_0..d_N of the fractional Bessel series, with d_0 = 1.

    The running product is kept as a plain float: the denominators grow like
    n^(4 alpha), so the only failure mode is harmless underflow, and a float
    recurrence keeps a few ulp of relative accuracy per term where exp(log)
    would lose |log d_n| ulp.
    """
    if N < 0:
        raise DomainError("N must be >= 0")
    d = np.empty(N + 1)
    d[0] = 1.0
    for n, den in enumerate(bessel_denominators(rho, nu, alpha, N), start=1):
        d[n] = d[n - 1] / den
    return d


@dataclass(frozen=True)
class BesselSolution:
    alpha: float
    nu: float
    k: float
    rho: float
    d_coeffs: np.ndarray

    @classmethod
    def build(cls, alpha: float, nu: float, k: float, rho: float | None = None, N: int = 80,
              scan: RootScan | None = None) -> BesselSolution:
        if k <= 0:
            raise DomainError(f"k must be positive, got {k!r}")
        if rho is None:
            rho = default_rho(solve_rho(nu, alpha, scan))
        return cls(alpha, nu, k, rho, bessel_coeffs(rho, nu, alpha, N))

    def term_coeffs(self) -> np.ndarray:
        """Coefficients of r^(alpha rho + 2 alpha n): (-1)^n d_n k^(2n)."""
        n = np.arange(len(self.d_coeffs))
        return (-1.0) ** n * self.d_coeffs * self.k ** (2 * n)

    def as_series(self) -> FracSeries:
        """The radial function as a FracSeries on the alpha grid (odd slots zero)."""
        tc = self.term_coeffs()
        coeffs = np.zeros(2 * len(tc) - 1)
        coeffs[::2] = tc
        return FracSeries(self.alpha, self.alpha * self.rho, tuple(coeffs))

    def __call__(self, r: float) -> float:
        return bessel_eval(self, r)


def bessel_eval(sol: BesselSolution, r: float) -> float:
    """Sum the alternating series at r >= 0.

    Raises :class:`ToleranceError` (with a suggested term count) when the last
    retained term is not below 1e-12 of the partial sum.  Cancellation is not
    detected: the sum loses about log10(sum |term| / |sum|) digits, which at
    alpha = 1 stays below 8 for k r <= 20 but grows like k r / ln 10 beyond.
    """
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r!r}")
    a, rho = sol.alpha, sol.rho
    if r == 0:
        if abs(rho) <= 1e-12:
            return float(sol.d_coeffs[0])
        if rho > 0:
            return 0.0
        raise DomainError("negative index is singular at r = 0")
    x = r ** (2 * a)
    step = -sol.k**2 * x
    dens = bessel_denominators(rho, sol.nu, a, len(sol.d_coeffs) - 1)
    terms = [float(sol.d_coeffs[0])]
    for den in dens:
        terms.append(terms[-1] * step / den)
    total = math.fsum(terms)
    last = abs(terms[-1])
    if last > TRUNC_REL * abs(total) and last != 0.0:
        # terms fall roughly like (k^2 x)^n / n!^2 once past the peak
        grow = max(1.0, sol.k ** 2 * x)
        suggest = len(terms)
        while suggest < 10_000 and grow ** suggest / math.gamma(suggest + 1) ** 2 > TRUNC_REL:
            suggest += 1
        raise ToleranceError(
            f"series truncated too early at r={r!r}: last term {last:.3e}, sum {total:.3e}",
            suggested_terms=max(suggest, 2 * len(terms)),
        )
    return r ** (a * rho) * total


def nu_surface(alpha_grid: Sequence[float], rho_grid: Sequence[float]) -> np.ndarray:
    """nu(alpha, rho) = |q(rho)| / Gamma(alpha + 1); NaN where q hits a pole."""
    out = np.full((len(alpha_grid), len(rho_grid)), np.nan)
    for i, a in enumerate(alpha_grid):
        g = math.gamma(a + 1.0)
        for j, rho in enumerate(rho_grid):
            try:
                out[i, j] = abs(index_ratio(rho, a)) / g
            except (FracSpecError, OverflowError):
                pass
    return out
