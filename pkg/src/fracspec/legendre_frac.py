"""Variant Legendre equation

    (1 - x^2) p'' - (1 + alpha) x p' + [lam - m^2 / (1 - x^2)^alpha] p = 0,

solved by its two-term power-series recurrence (m = 0) and by fixed-step RK4
integration from x = 0 (any m).  At alpha = 1 it is the associated Legendre
equation.

Normalisation: even solutions start with c_0 = 1, odd ones with c_1 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, StiffnessError

#: Largest |x| at which a non-terminating series is evaluated.
SERIES_X_MAX = 0.999
ODE_STEP = 1e-3
_BLOWUP = 1e100


@dataclass(frozen=True)
class LegendreProblem:
    alpha: float
    lam: float
    m_azimuthal: int = 0
    parity: str = "even"
    n_terms: int = 400

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if self.parity not in ("even", "odd"):
            raise DomainError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if self.n_terms < 2:
            raise DomainError("n_terms must be at least 2")
        if self.m_azimuthal < 0:
            raise DomainError("m_azimuthal must be non-negative")


@dataclass(frozen=True)
class LegendreSeries:
    """Coefficients c_0..c_N of a variant Legendre series solution."""

    coeffs: np.ndarray
    terminates: bool
    degree: int | None = None

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, x: float) -> float:
        return legendre_eval(self, x)[0]

    def derivative(self, x: float, order: int = 1) -> float:
        _check_x(self, x)
        c = np.asarray(self.coeffs, dtype=float)
        for _ in range(order):
            c = c[1:] * np.arange(1, len(c))
        return _horner(c, x)


def termination_degree(alpha: float, lam: float, parity: str, n_max: int) -> int | None:
    """Smallest n < n_max of the given parity with n(n + alpha) = lam, if any."""
    tol = 1e-12 * max(1.0, abs(lam))
    for n in range(0 if parity == "even" else 1, n_max, 2):
        if abs(n * n + n * alpha - lam) <= tol:
            return n
    return None


def legendre_coeffs(prob: LegendreProblem) -> LegendreSeries:
    if prob.m_azimuthal != 0:
        raise DomainError("the series recurrence only covers m_azimuthal = 0")
    a, lam = prob.alpha, prob.lam
    c = np.zeros(prob.n_terms)
    start = 0 if prob.parity == "even" else 1
    c[start] = 1.0
    degree = termination_degree(a, lam, prob.parity, prob.n_terms)
    for n in range(start, prob.n_terms - 2, 2):
        if degree is not None and n >= degree:
            break
        c[n + 2] = c[n] * (n * n + n * a - lam) / ((n + 2) * (n + 1))
    return LegendreSeries(c, degree is not None, degree)


def _horner(c: np.ndarray, x: float) -> float:
    acc = 0.0
    for ck in c[::-1]:
        acc = acc * x + ck
    return float(acc)


def _check_x(series, x: float) -> None:
    if abs(x) >= 1:
        raise DomainError(f"|x| must be < 1, got {x!r}")
    terminated = getattr(series, "terminates", False)
    if not terminated and abs(x) > SERIES_X_MAX:
        raise DomainError(f"non-terminating series evaluated only for |x| <= {SERIES_X_MAX}, got {x!r}")


def legendre_eval(coeffs: LegendreSeries | Sequence[float], x: float) -> tuple[float, float]:
    """Value of the truncated series at x and a crude bound on the dropped tail."""
    _check_x(coeffs, x)
    c = np.asarray(getattr(coeffs, "coeffs", coeffs), dtype=float)
    value = _horner(c, x)
    if getattr(coeffs, "terminates", False):
        return value, 0.0
    nz = np.flatnonzero(c)
    if len(nz) == 0:
        return value, 0.0
    last = nz[-1]
    tail = abs(c[last] * x**last) / (1.0 - x * x)
    return value, float(tail)


def _rhs(x, p, dp, alpha, lam, m):
    w = 1.0 - x * x
    q = lam - (m * m / w**alpha if m else 0.0)
    return dp, ((1.0 + alpha) * x * dp - q * p) / w


def _integrate(targets, sign, p0, dp0, alpha, lam, m):
    out = {}
    x, p, dp = 0.0, p0, dp0
    for t in targets:
        dist = abs(t) - abs(x)
        n = max(1, math.ceil(dist / ODE_STEP - 1e-9)) if dist > 0 else 0
        h = sign * dist / n if n else 0.0
        for _ in range(n):
            k1p, k1d = _rhs(x, p, dp, alpha, lam, m)
            k2p, k2d = _rhs(x + h / 2, p + h / 2 * k1p, dp + h / 2 * k1d, alpha, lam, m)
            k3p, k3d = _rhs(x + h / 2, p + h / 2 * k2p, dp + h / 2 * k2d, alpha, lam, m)
            k4p, k4d = _rhs(x + h, p + h * k3p, dp + h * k3d, alpha, lam, m)
            p += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
            dp += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d)
            x += h
            if not (abs(p) < _BLOWUP and abs(dp) < _BLOWUP):
                raise StiffnessError(f"solution blew up near x={x:.6g}")
        x = t
        out[t] = p
    return out


def legendre_ode_solve(
    prob: LegendreProblem,
    x_grid: Sequence[float],
    ic: tuple[float, float] | None = None,
) -> np.ndarray:
    """Integrate the variant Legendre equation from x = 0 to each grid point.

    Default initial data are (p, p') = (1, 0) for even and (0, 1) for odd
    parity.  Steps never exceed 1e-3 and land exactly on grid points, so a
    grid symmetric about 0 yields exactly mirrored step sequences.
    """
    xs = np.asarray(x_grid, dtype=float)
    if np.any(np.abs(xs) >= 1):
        raise DomainError("grid must stay inside (-1, 1)")
    if ic is None:
        ic = (1.0, 0.0) if prob.parity == "even" else (0.0, 1.0)
    args = (prob.alpha, prob.lam, prob.m_azimuthal)
    pos = sorted({float(x) for x in xs if x > 0})
    neg = sorted({float(x) for x in xs if x < 0}, reverse=True)
    vals = {0.0: ic[0]}
    vals.update(_integrate(pos, 1.0, *ic, *args))
    vals.update(_integrate(neg, -1.0, *ic, *args))
    return np.array([vals[0.0 if x == 0 else float(x)] for x in xs])
