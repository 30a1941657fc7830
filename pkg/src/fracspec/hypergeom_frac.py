"""Fractional Pochhammer symbol and fractional confluent / Gauss
hypergeometric series

    y(z) = sum_k (a)_k (b)_k / (c)_k  z^(alpha k) / Gamma(k alpha + 1),

with the symbolic residual checks of the fractional ODEs they solve.

The step of the fractional Pochhammer symbol is
``h(j) = Gamma(j alpha + 1)/Gamma(j alpha - alpha + 1)`` for j >= 1 and
``h(0) = 0``, so ``(a)_1 = a`` exactly.  The zero at j = 0 is the Caputo
annihilation of constants; the bare gamma quotient would give
``1/Gamma(1 - alpha)`` there.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateDenominatorError, DomainError, NoConvergenceError
from .frac_ops import FracSeries, caputo_series
from .gamma_core import gamma_ratio

DEFAULT_MAX_TERMS = 500
DENOM_TOL = 1e-12


def max_terms_default() -> int:
    """Series cap, overridable through FRACSPEC_MAX_TERMS."""
    raw = os.environ.get("FRACSPEC_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"FRACSPEC_MAX_TERMS must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("FRACSPEC_MAX_TERMS must be positive")
    return value


def step(j: int, alpha: float) -> float:
    """Increment h(j) of the fractional Pochhammer symbol."""
    if j == 0:
        return 0.0
    return gamma_ratio(j * alpha + 1.0, j * alpha - alpha + 1.0)


def pochhammer_frac(a: float, k: int, alpha: float) -> float:
    """(a)^alpha_k = prod_{j=0}^{k-1} (a + h(j)); equals the rising factorial at alpha = 1."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k!r}")
    p = 1.0
    for j in range(k):
        p *= a + step(j, alpha)
    return p


@dataclass(frozen=True)
class HypergeomParams:
    a: float
    c: float
    alpha: float
    b: float = 1.0
    max_terms: int | None = None
    tol: float = 1e-15

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if self.max_terms is None:
            object.__setattr__(self, "max_terms", max_terms_default())
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")
        for j in range(self.max_terms):
            den = self.c + step(j, self.alpha)
            if abs(den) <= DENOM_TOL * max(1.0, abs(self.c)):
                raise DegenerateDenominatorError(j, f"c + h({j}) vanishes for c={self.c!r}, alpha={self.alpha!r}")


class SeriesSum(NamedTuple):
    value: float
    terms: int


def _coeff_ratio(p: HypergeomParams, k: int, gauss: bool) -> float:
    h = step(k, p.alpha)
    num = (p.a + h) * ((p.b + h) if gauss else 1.0)
    return num / (p.c + h) * gamma_ratio(k * p.alpha + 1.0, k * p.alpha + p.alpha + 1.0)


def series_coeffs(p: HypergeomParams, N: int, gauss: bool = False) -> list[float]:
    """c_0..c_N of the confluent (or Gauss) series in powers z^(alpha k)."""
    c = [1.0]
    for k in range(N):
        c.append(c[-1] * _coeff_ratio(p, k, gauss))
    return c


def _sum(p: HypergeomParams, z: float, gauss: bool) -> SeriesSum:
    if z < 0:
        raise DomainError(f"z must be >= 0, got {z!r}")
    if z == 0:
        return SeriesSum(1.0, 1)
    za = z**p.alpha
    term, running = 1.0, 1.0
    terms = [term]
    prev = running
    small = 0
    for k in range(p.max_terms - 1):
        term *= _coeff_ratio(p, k, gauss) * za
        terms.append(term)
        prev, running = running, running + term
        if not math.isfinite(running):
            break
        # two consecutive negligible terms guard against an accidental zero factor
        small = small + 1 if abs(term) <= p.tol * abs(running) else 0
        if small >= 2:
            return SeriesSum(math.fsum(terms), len(terms))
    raise NoConvergenceError(f"series did not converge within {p.max_terms} terms at z={z!r}", (prev, running))


def conf_hyper_frac(p: HypergeomParams, z: float) -> SeriesSum:
    """Fractional confluent hypergeometric series at z >= 0."""
    return _sum(p, z, gauss=False)


def gauss_hyper_frac(p: HypergeomParams, z: float) -> SeriesSum:
    """Fractional Gauss hypergeometric series at z >= 0."""
    return _sum(p, z, gauss=True)


def _series(p: HypergeomParams, N: int, gauss: bool) -> FracSeries:
    return FracSeries(p.alpha, 0.0, tuple(series_coeffs(p, N, gauss)))


def _z_alpha_D(y: FracSeries) -> FracSeries:
    return caputo_series(y, shift=y.alpha)


def conf_hyper_residual(p: HypergeomParams, N: int) -> FracSeries:
    """z^a D^2 y + (c - z^a) D y - a y for the series truncated at k = N.

    Coefficients below z^(alpha N) vanish up to rounding.
    """
    y = _series(p, N, gauss=False)
    dy = caputo_series(y)
    res = _z_alpha_D(dy) + p.c * dy - _z_alpha_D(y) - p.a * y
    return res


def gauss_hyper_residual(p: HypergeomParams, N: int) -> FracSeries:
    """ab y + (a+b) z^a D y + z^a D(z^a D y) - c D y - z^a D^2 y, truncated at k = N."""
    y = _series(p, N, gauss=True)
    dy = caputo_series(y)
    zdy = _z_alpha_D(y)
    lhs = p.a * p.b * y + (p.a + p.b) * zdy + _z_alpha_D(zdy)
    rhs = p.c * dy + _z_alpha_D(dy)
    return lhs - rhs
