"""Caputo derivative and Riemann-Liouville integral with base point 0.

Two independent routes are provided: exact term-wise action on fractional
power series (:class:`FracSeries`) and a quadrature of the defining memory
integral (:func:`caputo_numeric`) that serves as an oracle for the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, GridError, SingularTermError, ToleranceError
from .gamma_core import gamma_ratio

# Exponents closer than this to an integer (or to zero) are treated as exact.
EXPONENT_TOL = 1e-12


def _is_annihilated(beta: float, alpha: float) -> bool:
    # Caputo derivative of order alpha kills x**j for integers 0 <= j < alpha.
    j = round(beta)
    return abs(beta - j) <= EXPONENT_TOL and j < alpha - EXPONENT_TOL


@dataclass(frozen=True)
class FracSeries:
    """Truncated fractional power series ``sum_m c_m r**(offset + m*alpha)``."""

    alpha: float
    offset: float
    coeffs: tuple[float, ...]

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")
        if self.offset < 0:
            raise SingularTermError(self.offset, f"offset {self.offset!r} is negative")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, exponent: float, alpha: float, coeff: float = 1.0) -> FracSeries:
        return cls(alpha, exponent, (coeff,))

    @classmethod
    def zero(cls, alpha: float) -> FracSeries:
        return cls(alpha, 0.0, ())

    @property
    def n_terms(self) -> int:
        return len(self.coeffs)

    def exponents(self) -> np.ndarray:
        return self.offset + self.alpha * np.arange(len(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coeffs)

    def __call__(self, r: float) -> float:
        if r < 0:
            raise DomainError(f"fractional series are defined for r >= 0, got {r!r}")
        if r == 0:
            if self.coeffs and abs(self.offset) <= EXPONENT_TOL:
                return self.coeffs[0]
            return 0.0
        logr = math.log(r)
        return math.fsum(
            c * math.exp((self.offset + m * self.alpha) * logr)
            for m, c in enumerate(self.coeffs)
            if c != 0.0
        )

    def eval_scaled(self, r: float, power: float) -> float:
        """Evaluate ``r**power * self(r)`` for r > 0; ``power`` may be negative."""
        if r <= 0:
            raise DomainError(f"scaled evaluation needs r > 0, got {r!r}")
        logr = math.log(r)
        return math.fsum(
            c * math.exp((self.offset + power + m * self.alpha) * logr)
            for m, c in enumerate(self.coeffs)
            if c != 0.0
        )

    def scale(self, factor: float) -> FracSeries:
        return FracSeries(self.alpha, self.offset, tuple(factor * c for c in self.coeffs))

    def __mul__(self, factor: float) -> FracSeries:
        return self.scale(factor)

    __rmul__ = __mul__

    def __neg__(self) -> FracSeries:
        return self.scale(-1.0)

    def shift(self, power: float) -> FracSeries:
        """Multiply by ``r**power``; leading zero terms are dropped if needed."""
        return _normalise(self.alpha, self.offset + power, list(self.coeffs))

    def trim(self) -> FracSeries:
        """Drop leading and trailing zero coefficients."""
        coeffs = list(self.coeffs)
        offset = self.offset
        while coeffs and coeffs[0] == 0.0:
            coeffs.pop(0)
            offset += self.alpha
        while coeffs and coeffs[-1] == 0.0:
            coeffs.pop()
        if not coeffs:
            return FracSeries.zero(self.alpha)
        return FracSeries(self.alpha, offset, tuple(coeffs))

    def _aligned(self, other: FracSeries) -> tuple[float, list[float], list[float]]:
        if not math.isclose(self.alpha, other.alpha, rel_tol=0, abs_tol=EXPONENT_TOL):
            raise GridError(f"step mismatch: {self.alpha!r} vs {other.alpha!r}")
        if not self.coeffs:
            return other.offset, [0.0] * len(other.coeffs), list(other.coeffs)
        if not other.coeffs:
            return self.offset, list(self.coeffs), [0.0] * len(self.coeffs)
        base = min(self.offset, other.offset)
        out = []
        for s in (self, other):
            k = (s.offset - base) / self.alpha
            ki = round(k)
            if abs(k - ki) > 1e-9:
                raise GridError(
                    f"offsets {self.offset!r} and {other.offset!r} differ by a non-multiple of {self.alpha!r}"
                )
            out.append([0.0] * ki + list(s.coeffs))
        n = max(len(out[0]), len(out[1]))
        a = out[0] + [0.0] * (n - len(out[0]))
        b = out[1] + [0.0] * (n - len(out[1]))
        return base, a, b

    def __add__(self, other: FracSeries) -> FracSeries:
        base, a, b = self._aligned(other)
        return FracSeries(self.alpha, base, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: FracSeries) -> FracSeries:
        return self + (-other)

    def coefficient_at(self, exponent: float) -> float:
        """Coefficient of ``r**exponent`` (0 when the exponent is off the stored range)."""
        k = (exponent - self.offset) / self.alpha
        ki = round(k)
        if abs(k - ki) > 1e-9:
            raise GridError(f"exponent {exponent!r} is not on the grid of this series")
        if 0 <= ki < len(self.coeffs):
            return self.coeffs[ki]
        return 0.0


def _normalise(alpha: float, offset: float, coeffs: list[float]) -> FracSeries:
    # Drop leading zero terms sitting at negative exponents; reject the rest.
    while coeffs and offset < -EXPONENT_TOL and coeffs[0] == 0.0:
        coeffs.pop(0)
        offset += alpha
    if not coeffs:
        return FracSeries.zero(alpha)
    if offset < -EXPONENT_TOL:
        raise SingularTermError(offset)
    return FracSeries(alpha, max(offset, 0.0), tuple(coeffs))


@dataclass(frozen=True)
class QuadConfig:
    """Settings for the quadrature oracle of the Caputo derivative."""

    alpha: float
    nodes: int = 33
    tol: float = 1e-10
    max_doublings: int = 7
    order_A: int = field(init=False)

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise DomainError(f"quadrature supports alpha in (0, 1], got {self.alpha!r}")
        if self.nodes < 3:
            raise DomainError("nodes must be at least 3")
        object.__setattr__(self, "order_A", math.floor(self.alpha) + 1)


def caputo_power(beta: float, alpha: float) -> tuple[float, float]:
    """Caputo derivative of ``x**beta``: returns (coefficient, exponent).

    Integer powers below the order are annihilated explicitly; the gamma
    quotient alone would give a nonzero value for them when alpha is not an
    integer.
    """
    if beta < 0:
        raise DomainError(f"beta must be >= 0, got {beta!r}")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if _is_annihilated(beta, alpha):
        return 0.0, 0.0
    return gamma_ratio(beta + 1, beta - alpha + 1), beta - alpha


def rl_integral_power(beta: float, alpha: float) -> tuple[float, float]:
    """Riemann-Liouville integral of ``x**beta``: returns (coefficient, exponent)."""
    if beta < 0:
        raise DomainError(f"beta must be >= 0, got {beta!r}")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    return gamma_ratio(beta + 1, beta + alpha + 1), beta + alpha


def caputo_series(f: FracSeries, shift: float = 0.0) -> FracSeries:
    """Term-wise Caputo derivative of order ``f.alpha``, times ``r**shift``.

    ``shift`` lets composite operators such as ``r**a D(...)`` check the
    non-negativity of the final exponents only.
    """
    coeffs = []
    for beta, c in zip(f.exponents(), f.coeffs):
        k, _ = caputo_power(float(beta), f.alpha)
        coeffs.append(c * k)
    return _normalise(f.alpha, f.offset - f.alpha + shift, coeffs)


def rl_integral_series(f: FracSeries, times: int = 1) -> FracSeries:
    """Apply the Riemann-Liouville integral of order ``f.alpha`` ``times`` times."""
    out = f
    for _ in range(times):
        coeffs = [c * rl_integral_power(float(beta), out.alpha)[0] for beta, c in zip(out.exponents(), out.coeffs)]
        out = FracSeries(out.alpha, out.offset + out.alpha, tuple(coeffs))
    return out


def _tanh_sinh(n: int, span: float = 4.5):
    """Tanh-sinh nodes on [0, 1] with accurate distances to both ends."""
    u = np.linspace(-span, span, n)
    h = u[1] - u[0]
    q = 0.5 * math.pi * np.sinh(u)
    # y = 1/(1+exp(-2q)); 1-y = 1/(1+exp(2q)); both exact near their endpoints
    left = 1.0 / (1.0 + np.exp(-2.0 * q))
    right = 1.0 / (1.0 + np.exp(2.0 * q))
    e = np.exp(-2.0 * np.abs(q))
    sech2 = 4.0 * e / (1.0 + e) ** 2
    w = h * 0.5 * sech2 * 0.5 * math.pi * np.cosh(u)
    return left, right, w


def _apply(fn: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(fn(xs), dtype=float)
        if out.shape == xs.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([fn(float(x)) for x in xs], dtype=float)


def _numeric_derivative(f: Callable[[float], float], x: float) -> Callable:
    h = max(1e-5, 1e-5 * x)

    def df(xi):
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        out = np.empty_like(xi)
        for i, v in enumerate(xi):
            if v - h >= 0:
                out[i] = (f(v + h) - f(v - h)) / (2 * h)
            else:
                out[i] = (-3 * f(v) + 4 * f(v + h) - f(v + 2 * h)) / (2 * h)
        return out

    return df


def _caputo_quad(df: Callable, alpha: float, x: float, n: int) -> float:
    left, right, w = _tanh_sinh(n)
    p = 1.0 / (1.0 - alpha)
    half = 0.5 * x
    # [x/2, x]: x - xi = t**p turns (x - xi)**(-alpha) dxi into p dt / ... exactly
    T = half ** (1.0 - alpha)
    xi_a = x - (T * left) ** p
    part_a = T / (1.0 - alpha) * np.dot(w, _apply(df, xi_a))
    # [0, x/2]: kernel is smooth, nodes cluster at xi = 0 for singular df
    xi_b = half * left
    kern = (x - xi_b) ** (-alpha)
    part_b = half * np.dot(w, kern * _apply(df, xi_b))
    return (part_a + part_b) / math.gamma(1.0 - alpha)


def caputo_numeric(
    f: Callable[[float], float],
    alpha: float,
    x: float,
    cfg: QuadConfig | None = None,
    df: Callable | None = None,
) -> float:
    """Caputo derivative of order ``alpha`` in (0, 1) at ``x`` by quadrature.

    The memory integral is split at x/2.  Near the upper end the substitution
    ``xi = x - t**(1/(1-alpha))`` removes the kernel singularity exactly; near
    zero a tanh-sinh rule absorbs algebraic singularities of ``f'``.  The node
    count is doubled until two successive results agree to ``cfg.tol``
    (relative, absolute below magnitude 1).

    ``df`` is the analytic derivative of ``f``; without it a central difference
    with step ``max(1e-5, 1e-5 x)`` is used (one-sided near 0).
    """
    if not 0 < alpha < 1:
        raise DomainError(f"quadrature oracle needs alpha in (0, 1), got {alpha!r}")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    cfg = cfg or QuadConfig(alpha)
    deriv = df if df is not None else _numeric_derivative(f, x)
    n = cfg.nodes
    prev = _caputo_quad(deriv, alpha, x, n)
    change = math.inf
    for _ in range(cfg.max_doublings):
        n = 2 * (n - 1) + 1
        cur = _caputo_quad(deriv, alpha, x, n)
        change = abs(cur - prev)
        if change <= cfg.tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise ToleranceError(
        f"Caputo quadrature at x={x!r}, alpha={alpha!r} did not settle to {cfg.tol!r} "
        f"after {cfg.max_doublings} doublings (last change {change:.3e})"
    )


def frac_taylor(derivs: Sequence[float], alpha: float, x: float) -> float:
    """Fractional Taylor sum ``sum_m d_m x**(m alpha) / Gamma(m alpha + 1)``."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x!r}")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    terms = []
    for m, d in enumerate(derivs):
        if d == 0:
            continue
        if m == 0:
            terms.append(float(d))
        elif x > 0:
            e = m * alpha
            terms.append(d * math.exp(e * math.log(x) - math.lgamma(e + 1)))
    return math.fsum(terms)
