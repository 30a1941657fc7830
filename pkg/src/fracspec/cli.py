"""Command-line front end: every subcommand writes one CSV table.

Exit codes: 0 success, 2 invalid parameters, 3 numerical failure.  Data goes
to ``--out`` (or stdout); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import io
import math
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .bessel_frac import BesselSolution, bessel_eval, default_rho, nu_surface, solve_rho
from .errors import DomainError, FracSpecError
from .frac_ops import QuadConfig, caputo_numeric, caputo_power
from .hypergeom_frac import HypergeomParams, conf_hyper_frac, gauss_hyper_frac
from .legendre_frac import LegendreProblem, legendre_coeffs, legendre_eval, legendre_ode_solve
from .vector_calc import assemble_laplace_solution, heat_solution_assemble, laplacian_spherical

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3

DEFAULTS: dict[str, dict[str, Any]] = {
    "legendre": dict(alpha=1.0, lam=6.0, parity="even", m=0, xmin=-0.95, xmax=0.95, steps=100, terms=400,
                     method="auto"),
    "bessel": dict(alpha=1.0, nu=3.0, k=1.0, rho=None, rmin=0.0, rmax=10.0, steps=100, terms=80),
    "bessel-surface": dict(alpha_min=0.5, alpha_max=1.0, rho_min=0.0, rho_max=5.0, steps=50),
    "conf-hyper": dict(alpha=1.0, a=1.0, c=2.0, zmin=0.0, zmax=5.0, steps=100, on_diverge="fail"),
    "gauss-hyper": dict(alpha=1.0, a=1.0, b=1.0, c=1.0, zmin=0.0, zmax=0.9, steps=90, on_diverge="fail"),
    "caputo": dict(alpha=0.5, beta=1.0, xmin=0.1, xmax=2.0, steps=19, nodes=33, tol=1e-10),
    "laplace-check": dict(alpha=1.0, lam=6.0, parity="even", points=20, seed=0, terms=600),
    "heat-check": dict(alpha=1.0, k=1.0, nu=0.0, diffusivity=1.0, t=0.5, phase=0.0, points=20, seed=0,
                       terms=80),
}


@dataclass
class RunConfig:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"

    def resolved(self) -> dict[str, Any]:
        merged = dict(DEFAULTS[self.subcommand])
        merged.update({k: v for k, v in self.params.items() if v is not None})
        return merged


def fmt(v: float) -> str:
    return f"{float(v):.8e}"


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if not hi >= lo:
        raise DomainError(f"empty range [{lo!r}, {hi!r}]")
    return np.linspace(lo, hi, steps + 1)


def _check_alpha(a: float) -> None:
    if not 0 < a <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {a!r}")


def _legendre(p):
    _check_alpha(p["alpha"])
    xs = _grid(p["xmin"], p["xmax"], p["steps"])
    prob = LegendreProblem(p["alpha"], p["lam"], p["m"], p["parity"], p["terms"])
    method = p["method"]
    if method == "auto":
        method = "series" if p["m"] == 0 else "ode"
    if method == "series":
        series = legendre_coeffs(prob)
        ys = [legendre_eval(series, float(x))[0] for x in xs]
    elif method == "ode":
        ys = legendre_ode_solve(prob, xs)
    else:
        raise DomainError(f"unknown method {method!r}")
    return ["x", "p"], zip(xs, ys)


def _bessel(p):
    _check_alpha(p["alpha"])
    rho = p["rho"]
    if rho is None:
        roots = solve_rho(p["nu"], p["alpha"])
        rho = default_rho(roots)
        others = [r for r in roots if r != rho]
        if others:
            print("alternative indices rho: " + ", ".join(f"{r:.10g}" for r in others), file=sys.stderr)
    sol = BesselSolution.build(p["alpha"], p["nu"], p["k"], rho, p["terms"])
    rs = _grid(p["rmin"], p["rmax"], p["steps"])
    print(f"rho = {rho:.12g}", file=sys.stderr)
    return ["r", "R"], ((r, bessel_eval(sol, float(r))) for r in rs)


def _bessel_surface(p):
    for a in (p["alpha_min"], p["alpha_max"]):
        _check_alpha(a)
    alphas = _grid(p["alpha_min"], p["alpha_max"], p["steps"])
    rhos = _grid(p["rho_min"], p["rho_max"], p["steps"])
    surf = nu_surface(alphas, rhos)
    rows = ((a, r, surf[i, j]) for i, a in enumerate(alphas) for j, r in enumerate(rhos))
    return ["alpha", "rho", "nu"], rows


def _hyper(p, gauss: bool):
    _check_alpha(p["alpha"])
    params = HypergeomParams(a=p["a"], b=p.get("b", 1.0), c=p["c"], alpha=p["alpha"])
    fn = gauss_hyper_frac if gauss else conf_hyper_frac
    zs = _grid(p["zmin"], p["zmax"], p["steps"])
    rows = []
    for z in zs:
        try:
            y = fn(params, float(z)).value
        except FracSpecError:
            if p["on_diverge"] != "nan":
                raise
            y = math.nan
        rows.append((z, y))
    return ["z", "y"], rows


def _caputo(p):
    a, beta = p["alpha"], p["beta"]
    if not 0 < a < 1:
        raise DomainError(f"quadrature needs alpha in (0, 1), got {a!r}")
    if beta < 0:
        raise DomainError("beta must be >= 0")
    if p["xmin"] <= 0:
        raise DomainError("xmin must be positive")
    cfg = QuadConfig(a, nodes=p["nodes"], tol=p["tol"])
    coef, expo = caputo_power(beta, a)
    rows = []
    for x in _grid(p["xmin"], p["xmax"], p["steps"]):
        x = float(x)
        num = caputo_numeric(lambda s: s**beta, a, x, cfg, df=lambda s: beta * s ** (beta - 1) if beta else 0 * s)
        exact = coef * x**expo
        rows.append((x, num, exact, abs(num - exact)))
    return ["x", "numeric", "closed_form", "abs_error"], rows


def _sample_points(n: int, seed: int, dims: int):
    rng = random.Random(seed)
    pts = []
    for _ in range(n):
        pt = [rng.uniform(0.5, 2.0), rng.uniform(0.5, math.pi - 0.5)]
        if dims == 3:
            pt.append(rng.uniform(0.0, 2 * math.pi))
        pts.append(tuple(pt))
    return pts


def _laplace_check(p):
    _check_alpha(p["alpha"])
    u = assemble_laplace_solution(p["lam"], p["alpha"], p["parity"], p["terms"])
    rows = []
    worst = 0.0
    for pt in _sample_points(p["points"], p["seed"], 3):
        res = laplacian_spherical(u, pt)
        worst = max(worst, abs(res))
        rows.append((*pt, res))
    print(f"radial exponent {u.radial.offset / u.alpha:.12g}; max |residual| = {worst:.3e}", file=sys.stderr)
    return ["r", "theta", "phi", "residual"], rows


def _heat_check(p):
    _check_alpha(p["alpha"])
    mode = heat_solution_assemble(p["alpha"], p["k"], p["nu"], 1.0, p["phase"], p["diffusivity"],
                                  n_terms=p["terms"])
    rows = []
    worst = 0.0
    for r, th in _sample_points(p["points"], p["seed"], 2):
        res = mode.residual(p["t"], r, th)
        worst = max(worst, abs(res))
        rows.append((p["t"], r, th, mode(p["t"], r, th), res))
    print(f"rho = {mode.bessel.rho:.12g}; max |residual| = {worst:.3e}", file=sys.stderr)
    return ["t", "r", "theta", "u", "residual"], rows


HANDLERS: dict[str, Callable] = {
    "legendre": _legendre,
    "bessel": _bessel,
    "bessel-surface": _bessel_surface,
    "conf-hyper": lambda p: _hyper(p, gauss=False),
    "gauss-hyper": lambda p: _hyper(p, gauss=True),
    "caputo": _caputo,
    "laplace-check": _laplace_check,
    "heat-check": _heat_check,
}


def write_csv(header: Sequence[str], rows: Iterable[Sequence[float]], stream) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(fmt(v) for v in row) + "\n")


def run(config: RunConfig) -> int:
    """Execute one subcommand; returns the process exit status."""
    if config.format != "csv":
        print(f"error: unsupported format {config.format!r}", file=sys.stderr)
        return EXIT_INVALID
    if config.subcommand not in HANDLERS:
        print(f"error: unknown subcommand {config.subcommand!r}", file=sys.stderr)
        return EXIT_INVALID
    params = config.resolved()
    buf = io.StringIO()
    try:
        header, rows = HANDLERS[config.subcommand](params)
        write_csv(header, rows, buf)
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FracSpecError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if config.output in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        Path(config.output).write_text(buf.getvalue())
    return EXIT_OK


def _add(sp, name: str, typ, dest: str | None = None, **kw):
    sp.add_argument(name, type=typ, default=None, dest=dest, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(name):
        sp = sub.add_parser(name)
        sp.add_argument("--out", "-o", default=None, help="output CSV path (default stdout)")
        sp.add_argument("--format", default="csv", choices=["csv"])
        sp.add_argument("--show-defaults", action="store_true", help="print default parameters and exit")
        return sp

    sp = common("legendre")
    _add(sp, "--alpha", float)
    _add(sp, "--lambda", float, dest="lam")
    sp.add_argument("--parity", choices=["even", "odd"], default=None)
    _add(sp, "--m", int)
    _add(sp, "--xmin", float)
    _add(sp, "--xmax", float)
    _add(sp, "--steps", int)
    _add(sp, "--terms", int)
    sp.add_argument("--method", choices=["auto", "series", "ode"], default=None)

    sp = common("bessel")
    for name in ("--alpha", "--nu", "--k", "--rho", "--rmin", "--rmax"):
        _add(sp, name, float)
    _add(sp, "--steps", int)
    _add(sp, "--terms", int)

    sp = common("bessel-surface")
    for name in ("--alpha-min", "--alpha-max", "--rho-min", "--rho-max"):
        _add(sp, name, float)
    _add(sp, "--steps", int)

    for name, extra in (("conf-hyper", ()), ("gauss-hyper", ("--b",))):
        sp = common(name)
        for opt in ("--alpha", "--a", *extra, "--c", "--zmin", "--zmax"):
            _add(sp, opt, float)
        _add(sp, "--steps", int)
        sp.add_argument("--on-diverge", choices=["fail", "nan"], default=None)

    sp = common("caputo")
    for name in ("--alpha", "--beta", "--xmin", "--xmax", "--tol"):
        _add(sp, name, float)
    _add(sp, "--steps", int)
    _add(sp, "--nodes", int)

    sp = common("laplace-check")
    _add(sp, "--alpha", float)
    _add(sp, "--lambda", float, dest="lam")
    sp.add_argument("--parity", choices=["even", "odd"], default=None)
    for name in ("--points", "--seed", "--terms"):
        _add(sp, name, int)

    sp = common("heat-check")
    for name in ("--alpha", "--k", "--nu", "--diffusivity", "--t", "--phase"):
        _add(sp, name, float)
    for name in ("--points", "--seed", "--terms"):
        _add(sp, name, int)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    sub = args.pop("subcommand")
    out = args.pop("out")
    form = args.pop("format")
    if args.pop("show_defaults"):
        for key, value in DEFAULTS[sub].items():
            print(f"{key}={value}")
        return EXIT_OK
    return run(RunConfig(sub, args, out, form))


if __name__ == "__main__":
    sys.exit(main())
