"""Grid scan plus bisection for transcendental index equations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, FracSpecError, NoRootError


@dataclass(frozen=True)
class RootScan:
    lo: float = -5.0
    hi: float = 5.0
    grid: int = 2001
    tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"empty bracket [{self.lo!r}, {self.hi!r}]")
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        if self.grid < 2 or self.max_iter < 1:
            raise DomainError("grid and max_iter must be positive")


def _safe(fn: Callable[[float], float], x: float) -> float:
    try:
        v = fn(x)
    except (FracSpecError, OverflowError, ZeroDivisionError):
        return math.nan
    return v if math.isfinite(v) else math.nan


def _bisect(fn, a: float, b: float, fa: float, max_iter: int) -> float:
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        fm = _safe(fn, mid)
        if math.isnan(fm):
            return math.nan
        if fm == 0.0:
            return mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def _golden_min_abs(fn, a: float, b: float, max_iter: int) -> float:
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = abs(_safe(fn, c)), abs(_safe(fn, d))
    for _ in range(max_iter):
        if abs(b - a) <= 1e-15 * max(1.0, abs(a)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = abs(_safe(fn, c))
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = abs(_safe(fn, d))
    return 0.5 * (a + b)


def _polish(fn, r: float) -> float:
    # Prefer a nearby short decimal when it is at least as good; this recovers
    # exact roots sitting inside the pole-classification band of the gamma core.
    if math.isnan(r):
        return r
    best, fbest = r, abs(_safe(fn, r))
    for digits in (12, 10, 8):
        cand = round(r, digits)
        fc = abs(_safe(fn, cand))
        if fc < fbest:
            best, fbest = cand, fc
    return best


def scan_roots(fn: Callable[[float], float], scan: RootScan) -> list[float]:
    """All roots of ``fn`` in ``[scan.lo, scan.hi]`` with ``|fn| < scan.tol``.

    Sign changes between grid neighbours are refined by bisection; sign
    changes across a pole are discarded by the residual test.  Local minima of
    ``|fn|`` are refined by golden-section search to catch even-multiplicity
    roots.  Raises :class:`NoRootError` when nothing qualifies.
    """
    xs = np.linspace(scan.lo, scan.hi, scan.grid)
    fs = np.array([_safe(fn, x) for x in xs.tolist()])
    cands = xs[fs == 0.0].tolist()
    fa, fb = fs[:-1], fs[1:]
    with np.errstate(invalid="ignore"):
        flips = np.flatnonzero(fa * fb < 0)
    for i in flips.tolist():
        cands.append(_bisect(fn, float(xs[i]), float(xs[i + 1]), float(fs[i]), scan.max_iter))
    # interior minima of |f| with no sign change around them
    a = np.abs(fs)
    left, mid, right = a[:-2], a[1:-1], a[2:]
    with np.errstate(invalid="ignore"):
        same = (np.sign(fs[:-2]) == np.sign(fs[1:-1])) & (np.sign(fs[1:-1]) == np.sign(fs[2:]))
        minima = np.flatnonzero((mid < left) & (mid < right) & same & (mid != 0.0)) + 1
    for i in minima.tolist():
        cands.append(_golden_min_abs(fn, float(xs[i - 1]), float(xs[i + 1]), scan.max_iter))
    roots: list[float] = []
    for r in sorted(_polish(fn, c) for c in cands if not math.isnan(c)):
        if abs(_safe(fn, r)) < scan.tol and (not roots or abs(r - roots[-1]) > 1e-8 * max(1.0, abs(r))):
            roots.append(r)
    if not roots:
        raise NoRootError(f"no root in [{scan.lo!r}, {scan.hi!r}] with residual below {scan.tol!r}")
    return roots


def increasing_root(fn: Callable[[float], float], start: float, tol: float = 1e-10,
                    max_iter: int = 200) -> float | None:
    """Root of ``fn`` on ``[start, inf)`` given ``fn(start) < 0`` and ``fn`` increasing.

    The bracket doubles until the sign flips, then bisection takes over.
    """
    fa = _safe(fn, start)
    if not fa < 0:
        return None
    a, width = start, 1.0
    for _ in range(60):
        b = start + width
        fb = _safe(fn, b)
        if fb >= 0:
            r = _polish(fn, _bisect(fn, a, b, fa, max_iter))
            return r if abs(_safe(fn, r)) < tol else None
        if math.isnan(fb):
            return None
        a, fa, width = b, fb, 2 * width
    return None


def index_roots(fn: Callable[[float], float], alpha: float, scale: float, positive: bool,
                tol: float = 1e-10, density: int = 50) -> list[float]:
    """Roots of a gamma-quotient index equation ``q(s) - t = 0``.

    ``q(s) = Gamma(a s + c)/Gamma(a s + c - d)`` with ``c - d = 1 - a`` is
    increasing on ``s > 1 - 1/a`` where both arguments are positive, so that
    half-line holds at most one root (exactly one when ``positive``, i.e.
    ``t > 0``) and is solved by expansion and bisection.  The pole-riddled
    left part is grid-scanned down to an extent set by ``scale ~ |t|``.
    """
    s0 = 1.0 - 1.0 / alpha
    lo = s0 - max(5.0, math.ceil((abs(scale) + 1.0) / alpha + 2.0))
    hi = s0 + 1.0
    scan = RootScan(lo, hi, int((hi - lo) * density) + 1, tol)
    try:
        roots = scan_roots(fn, scan)
    except NoRootError:
        roots = []
    if positive:
        r = increasing_root(fn, hi, tol)
        if r is not None:
            roots.append(r)
    return sorted(roots)
