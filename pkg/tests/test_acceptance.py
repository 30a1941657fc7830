"""The ten acceptance criteria, each with its tolerance and runtime budget.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import csv
import importlib.util
import math
import random
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

import oracles
from fracspec.bessel_frac import BesselSolution, bessel_eval, index_residual, solve_rho
from fracspec.errors import NoRootError
from fracspec.frac_ops import FracSeries, caputo_numeric, caputo_power, caputo_series, rl_integral_power, rl_integral_series
from fracspec.hypergeom_frac import (
    HypergeomParams,
    conf_hyper_frac,
    conf_hyper_residual,
    gauss_hyper_frac,
    gauss_hyper_residual,
    series_coeffs,
)
from fracspec.legendre_frac import LegendreProblem, legendre_coeffs, legendre_ode_solve
from fracspec.roots import RootScan
from fracspec.vector_calc import assemble_laplace_solution, eigen_residual, laplace_residual_3d, radial_eigen_exponents

ROOT = Path(__file__).resolve().parents[1]


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f} s, budget {seconds} s"


def interior(res, N, alpha):
    return [c for e, c in zip(res.exponents(), res.coeffs) if e < alpha * N - 1e-9]


@pytest.mark.acceptance(1, "power-rule left inverse, 200 cases, 1e-12")
def test_power_rule_exactness():
    rng = random.Random(1)
    with budget(1.0):
        for _ in range(200):
            alpha = rng.uniform(0.05, 1.0)
            beta = rng.uniform(alpha, 6.0)
            # I^a D^a x^b = x^b whenever D^a x^b keeps a nonnegative exponent
            c1, e1 = caputo_power(beta, alpha)
            c2, e2 = rl_integral_power(e1, alpha)
            assert e2 == pytest.approx(beta, abs=1e-12)
            assert c1 * c2 == pytest.approx(1.0, abs=1e-12)
            # series form: the constant is annihilated, every other term returns
            coeffs = [rng.uniform(-5, 5) for _ in range(rng.randint(1, 8))]
            back = rl_integral_series(caputo_series(FracSeries(alpha, 0.0, coeffs)))
            assert back.coefficient_at(0.0) == 0.0
            for m, c in enumerate(coeffs[1:], start=1):
                assert back.coefficient_at(m * alpha) == pytest.approx(c, abs=1e-12 * max(1.0, abs(c)))


@pytest.mark.acceptance(2, "quadrature oracle vs closed form, 50 cases, 1e-5 rel")
def test_quadrature_oracle():
    rng = random.Random(7)
    cases = [(rng.uniform(0.2, 4), rng.uniform(0.1, 0.9), rng.choice([0.5, 1.0, 2.0])) for _ in range(50)]
    with budget(10.0):
        for beta, alpha, x in cases:
            k, e = caputo_power(beta, alpha)
            num = caputo_numeric(lambda s: s**beta, alpha, x, df=lambda s: beta * s ** (beta - 1))
            assert num == pytest.approx(k * x**e, rel=1e-5)


@pytest.mark.acceptance(3, "Legendre alpha=1 coefficients vs P_l recurrence, 1e-12")
def test_legendre_classical():
    with budget(1.0):
        for l in range(7):
            parity = "even" if l % 2 == 0 else "odd"
            s = legendre_coeffs(LegendreProblem(1.0, l * (l + 1), 0, parity, 12))
            assert s.terminates and s.degree == l
            ref = oracles.legendre_P_coeffs(l)
            ref = [float(c / ref[parity == "odd"]) for c in ref]
            got = list(s.coeffs[: l + 1])
            assert np.max(np.abs(np.array(got) - ref)) < 1e-12
            assert np.all(s.coeffs[l + 1:] == 0)


@pytest.mark.acceptance(4, "Legendre series vs RK4, 20 cases, 1e-6")
def test_legendre_cross_solver():
    rng = random.Random(4)
    xs = np.linspace(-0.9, 0.9, 37)
    with budget(30.0):
        for i in range(20):
            alpha, lam = rng.uniform(0.8, 1.0), rng.uniform(0.0, 30.0)
            prob = LegendreProblem(alpha, lam, 0, "even" if i % 2 == 0 else "odd", 400)
            series = legendre_coeffs(prob)
            ode = legendre_ode_solve(prob, xs)
            assert np.max(np.abs(ode - [series(x) for x in xs])) < 1e-6


@pytest.mark.acceptance(5, "Bessel alpha=1 indices and values vs Gamma(nu+1)(2/k)^nu J_nu, 1e-8")
def test_bessel_classical():
    rs = np.linspace(0.0, 10.0, 101)
    with budget(5.0):
        for nu in range(4):
            roots = solve_rho(nu, 1.0, RootScan(-5, 5))
            assert roots == pytest.approx(sorted({-nu, nu}), abs=1e-10)
            for k in (0.5, 1.0, 2.0):
                sol = BesselSolution.build(1.0, nu, k)
                amp = math.gamma(nu + 1) * (2 / k) ** nu
                for r in rs:
                    ref = amp * oracles.besselj(nu, k * r)
                    # normalised by the amplitude: pointwise relative error is meaningless at zeros of J
                    assert abs(bessel_eval(sol, float(r)) - ref) <= 1e-8 * max(abs(ref), amp)


@pytest.mark.acceptance(6, "index-equation residuals on 20x20 grids, 1e-10")
def test_index_residuals():
    alphas = np.linspace(0.5, 1.0, 20)
    with budget(10.0):
        found = 0
        for alpha in alphas:
            for lam in np.linspace(0.5, 30.0, 20):
                for m in radial_eigen_exponents(lam, alpha):
                    assert abs(eigen_residual(m, lam, alpha)) < 1e-10
                    found += 1
            for nu in np.linspace(0.0, 5.0, 20):
                try:
                    roots = solve_rho(nu, alpha)
                except NoRootError:
                    continue
                for rho in roots:
                    assert abs(index_residual(rho, nu, alpha)) < 1e-10
                    found += 1
        assert found > 800


@pytest.mark.acceptance(7, "hypergeometric alpha=1 vs 1F1/2F1 oracles, 40 cases, 1e-10")
def test_hypergeom_classical():
    rng = random.Random(11)
    cases = []
    while len(cases) < 40:
        a, b, c = (rng.uniform(-2, 3) for _ in range(3))
        if min(abs(c + j) for j in range(60)) > 0.05:
            cases.append((a, b, c, rng.uniform(0, 0.9)))
    refs = [(oracles.hyp1f1(a, c, z), oracles.hyp2f1(a, b, c, z)) for a, b, c, z in cases]
    with budget(5.0):
        for (a, b, c, z), (r1, r2) in zip(cases, refs):
            p = HypergeomParams(a=a, b=b, c=c, alpha=1.0)
            assert conf_hyper_frac(p, z).value == pytest.approx(r1, rel=1e-10)
            assert gauss_hyper_frac(p, z).value == pytest.approx(r2, rel=1e-10)


@pytest.mark.acceptance(8, "hypergeometric and Bessel ODE residuals vanish below truncation, 1e-12")
def test_ode_residuals():
    rng = random.Random(8)
    with budget(5.0):
        for _ in range(20):
            alpha = rng.uniform(0.5, 1.0)
            a, b, c = rng.uniform(-2, 3), rng.uniform(-2, 3), rng.uniform(0.3, 3)
            N = rng.randint(4, 10)
            p = HypergeomParams(a=a, b=b, c=c, alpha=alpha, max_terms=N + 1)
            scale = max(1.0, max(abs(x) for x in series_coeffs(p, N, gauss=True)))
            for res in (conf_hyper_residual(p, N), gauss_hyper_residual(p, N)):
                assert all(abs(x) < 1e-12 * scale for x in interior(res, N, alpha))
        for alpha, nu, k in [(1.0, 2, 1.0), (0.9, 3, 1.0), (0.7, 1.2, 0.6), (0.55, 1.5, 2.0)]:
            N = 25
            sol = BesselSolution.build(alpha, nu, k, N=N)
            R = sol.as_series()
            g2 = math.gamma(alpha + 1) ** 2
            res = (caputo_series(caputo_series(R, shift=alpha), shift=alpha).scale(1 / g2)
                   + R.shift(2 * alpha).scale(k * k / g2) - R.scale(nu * nu))
            boundary = alpha * sol.rho + 2 * alpha * (N + 1)
            scale = max(abs(x) for x in R.coeffs)
            assert all(abs(x) < 1e-12 * scale for e, x in zip(res.exponents(), res.coeffs) if e < boundary - 1e-9)


@pytest.mark.acceptance(9, "assembled Laplace solutions, alpha=1 below 1e-8, alpha=0.9 below 1e-6")
def test_laplace_residual():
    rng = random.Random(9)
    pts = [(rng.uniform(0.4, 2.5), rng.uniform(0.3, math.pi - 0.3), rng.uniform(0, 2 * math.pi)) for _ in range(20)]
    with budget(10.0):
        u = assemble_laplace_solution(6, 1.0)
        assert u.radial.offset == pytest.approx(2.0)
        assert laplace_residual_3d(u, pts) < 1e-8
        assert laplace_residual_3d(assemble_laplace_solution(6, 0.9), pts) < 1e-6


def _load_figures():
    spec = importlib.util.spec_from_file_location("make_figures", ROOT / "scripts" / "make_figures.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def _read(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


@pytest.mark.acceptance(10, "figure data emission, classical slices and shape checks")
def test_figure_emission(tmp_path, capsys):
    figures = _load_figures()
    with budget(30.0):
        first = figures.emit(tmp_path / "a")
        second = figures.emit(tmp_path / "b")
        for name in first:
            assert first[name].read_bytes() == second[name].read_bytes(), name

        _, even = _read(first["legendre_even_a1.csv"])
        assert np.max(np.abs(even[:, 1] - (1 - 3 * even[:, 0] ** 2))) < 1e-8
        _, odd = _read(first["legendre_odd_a1.csv"])
        assert np.max(np.abs(odd[:, 1] - (odd[:, 0] - 5 / 3 * odd[:, 0] ** 3))) < 1e-8
        for name, sign in (("legendre_even_a08.csv", 1), ("legendre_odd_a08.csv", -1)):
            _, data = _read(first[name])
            assert np.max(np.abs(data[:, 1] - sign * data[::-1, 1])) < 1e-8

        header, surf = _read(first["nu_surface.csv"])
        assert header == ["alpha", "rho", "nu"]
        assert np.all(np.isfinite(surf[:, 2])) and np.all(surf[:, 2] >= 0)
        edge = surf[surf[:, 0] == 1.0]
        assert len(edge) == 51
        assert np.max(np.abs(edge[:, 2] - np.abs(edge[:, 1]))) < 1e-8

        for nu in (0, 2):
            _, data = _read(first[f"bessel_a1_nu{nu}.csv"])
            amp = math.gamma(nu + 1) * 2**nu
            ref = np.array([amp * oracles.besselj(nu, r) for r in data[:, 0]])
            assert np.max(np.abs(data[:, 1] - ref)) < 1e-8 * amp

        _, conf = _read(first["conf_hyper_a1.csv"])
        ref = np.array([oracles.hyp1f1(1, 2, z) for z in conf[:, 0]])
        assert np.max(np.abs(conf[:, 1] / ref - 1)) < 1e-8
        _, gauss = _read(first["gauss_hyper_a1.csv"])
        assert np.max(np.abs(gauss[:, 1] * (1 - gauss[:, 0]) - 1)) < 1e-8
        for name in ("bessel_a08_nu2.csv", "conf_hyper_a06.csv", "gauss_hyper_a07.csv"):
            _, data = _read(first[name])
            assert np.all(np.isfinite(data))
    capsys.readouterr()
