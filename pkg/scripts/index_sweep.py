"""Regular Bessel index rho(nu, alpha) and the nearest radial Laplace exponent
m(lambda, alpha) across alpha, with the worst residual of every root found.

    python scripts/index_sweep.py > indices.csv
"""

from __future__ import annotations

import csv
import sys

import numpy as np

from fracspec.bessel_frac import default_rho, index_residual, solve_rho
from fracspec.errors import NoRootError
from fracspec.vector_calc import eigen_residual, radial_eigen_exponents


def main() -> None:
    out = csv.writer(sys.stdout)
    out.writerow(["alpha", "nu", "rho", "lam", "m", "worst_residual"])
    for alpha in np.linspace(0.5, 1.0, 11).tolist():
        for nu, lam in [(1.0, 2.0), (2.0, 6.0), (3.0, 12.0)]:
            try:
                rhos = solve_rho(nu, alpha)
                rho = default_rho(rhos)
            except NoRootError:
                rhos, rho = [], float("nan")
            ms = radial_eigen_exponents(lam, alpha)
            worst = max([abs(index_residual(r, nu, alpha)) for r in rhos]
                        + [abs(eigen_residual(m, lam, alpha)) for m in ms])
            out.writerow([f"{alpha:.2f}", nu, f"{rho:.10f}", lam, f"{max(ms):.10f}", f"{worst:.1e}"])


if __name__ == "__main__":
    main()
