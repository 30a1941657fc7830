"""Gamma-function arithmetic in log space with explicit signs.

Every gamma quotient in the package goes through :func:`gamma_ratio` or one of
its relatives, so poles and overflow are handled in a single place.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .errors import AmbiguousError, InfiniteError, PoleError

#: Absolute distance to a non-positive integer below which an argument is a pole.
POLE_TOL = 1e-12

# Quotients whose arguments differ by an integer up to this size are evaluated
# as a finite product, which is exact to a few ulp.
_MAX_PRODUCT_SPAN = 64
_EPS = sys.float_info.epsilon
_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(log_mag)``."""

    log_mag: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")

    @classmethod
    def from_float(cls, x: float) -> SignedLogValue:
        if x == 0.0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: SignedLogValue) -> SignedLogValue:
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(-math.inf, 0)
        return SignedLogValue(self.log_mag + other.log_mag, self.sign * other.sign)

    def __truediv__(self, other: SignedLogValue) -> SignedLogValue:
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLogValue")
        if self.sign == 0:
            return self
        return SignedLogValue(self.log_mag - other.log_mag, self.sign * other.sign)

    def __pow__(self, n: int) -> SignedLogValue:
        if self.sign == 0:
            return self
        return SignedLogValue(n * self.log_mag, self.sign**n)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_mag)
        except OverflowError:
            return self.sign * math.inf


def pole_index(x: float) -> int | None:
    """Return ``n`` if ``x`` is within :data:`POLE_TOL` of ``-n`` (n >= 0), else None."""
    if x > POLE_TOL:
        return None
    n = round(x)
    if abs(x - n) <= POLE_TOL:
        return -int(n)
    return None


def is_pole(x: float) -> bool:
    return pole_index(x) is not None


def _lgamma_pair(x: float) -> tuple[float, int]:
    # (log|Gamma(x)|, sign) for a non-pole x; tuples keep the hot path cheap
    if x > 0:
        return math.lgamma(x), 1
    n = round(x)
    s = math.sin(math.pi * (x - n))
    sign = (1 if s > 0 else -1) * (-1 if n % 2 else 1)
    return _LOG_PI - math.log(abs(s)) - math.lgamma(1.0 - x), sign


def lgamma_signed(x: float) -> SignedLogValue:
    """Log-magnitude and sign of Gamma(x).

    Negative arguments use the reflection formula
    ``Gamma(x) = pi / (sin(pi x) Gamma(1 - x))`` with the sine evaluated on the
    reduced argument, so the sign pattern is exact away from the poles.
    """
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at x={x!r}")
    return SignedLogValue(*_lgamma_pair(x))


def gamma(x: float) -> float:
    """Gamma(x) as a float (overflows to +-inf)."""
    return float(lgamma_signed(x))


def _integer_span(num: float, den: float) -> int | None:
    d = num - den
    k = round(d)
    if abs(k) > _MAX_PRODUCT_SPAN:
        return None
    if abs(d - k) <= 8 * _EPS * max(1.0, abs(num), abs(den)):
        return int(k)
    return None


def _rising(x: float, k: int) -> float:
    # x (x+1) ... (x+k-1)
    p = 1.0
    for i in range(k):
        p *= x + i
    return p


def _product_ratio(num: float, den: float) -> float | None:
    k = _integer_span(num, den)
    if k is None:
        return None
    if k >= 0:
        return _rising(den, k)
    return 1.0 / _rising(num, -k)


def _classify(num: float, den: float, pn: int | None = None, pd: int | None = None) -> bool:
    """Raise for a numerator pole; return True when the quotient is exactly 0."""
    if pn is None:
        pn = pole_index(num)
    if pd is None:
        pd = pole_index(den)
    if pn is not None and pd is not None:
        raise AmbiguousError(f"Gamma({num!r})/Gamma({den!r}): both arguments are poles")
    if pn is not None:
        raise InfiniteError(f"Gamma({num!r})/Gamma({den!r}): numerator is a pole")
    return pd is not None


def gamma_ratio_log(num: float, den: float) -> SignedLogValue:
    """Gamma(num)/Gamma(den) as a :class:`SignedLogValue`."""
    if _classify(num, den):
        return SignedLogValue(-math.inf, 0)
    p = _product_ratio(num, den)
    if p is not None:
        return SignedLogValue.from_float(p)
    return lgamma_signed(num) / lgamma_signed(den)


def _log_quotient(num: float, den: float) -> tuple[float, int]:
    ln, sn = _lgamma_pair(num)
    ld, sd = _lgamma_pair(den)
    return ln - ld, sn * sd


def gamma_ratio(num: float, den: float) -> float:
    """Gamma(num)/Gamma(den); exactly 0 when only ``den`` is a pole."""
    return _ratio(num, den, pole_index(num), pole_index(den))


def _ratio(num: float, den: float, pn: int | None, pd: int | None) -> float:
    if _classify(num, den, pn, pd):
        return 0.0
    p = _product_ratio(num, den)
    if p is not None:
        return p
    log_mag, sign = _log_quotient(num, den)
    try:
        return sign * math.exp(log_mag)
    except OverflowError:
        return sign * math.inf


def gamma_squared_ratio(num: float, den: float) -> float:
    """(Gamma(num)/Gamma(den))**2 without forming the signed quotient first."""
    if _classify(num, den):
        return 0.0
    p = _product_ratio(num, den)
    if p is not None:
        return p * p
    try:
        return math.exp(2.0 * _log_quotient(num, den)[0])
    except OverflowError:
        return math.inf


def gamma_ratio_limit(num: float, den: float) -> float:
    """Gamma(num)/Gamma(den) with the double-pole case replaced by its limit.

    When ``num = -p`` and ``den = -q`` are both poles, the quotient of
    ``Gamma(-p + e)/Gamma(-q + e)`` tends to ``(-1)**(p-q) q!/p!`` as e -> 0.
    Used by the index equations, whose arguments differ by a fixed shift and
    pass through pole pairs together when that shift is an integer.
    """
    p, q = pole_index(num), pole_index(den)
    if p is not None and q is not None:
        sign = -1.0 if (p - q) % 2 else 1.0
        return sign * math.exp(math.lgamma(q + 1) - math.lgamma(p + 1))
    return _ratio(num, den, p, q)
