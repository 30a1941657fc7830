"""Error of the Caputo quadrature oracle against the closed-form power rule
as the base node count grows.

    python scripts/quadrature_convergence.py > quad.csv
"""

from __future__ import annotations

import csv
import sys

from fracspec.errors import ToleranceError
from fracspec.frac_ops import QuadConfig, caputo_numeric, caputo_power

CASES = [(0.5, 0.3), (1.0, 0.5), (2.5, 0.7), (0.2, 0.9)]
NODES = [5, 9, 17, 33, 65]


def main() -> None:
    out = csv.writer(sys.stdout)
    out.writerow(["beta", "alpha", "base_nodes", "rel_error"])
    for beta, alpha in CASES:
        coef, expo = caputo_power(beta, alpha)
        exact = coef  # x = 1
        for n in NODES:
            # a loose tolerance accepts the first doubled estimate, exposing the raw rule
            cfg = QuadConfig(alpha, nodes=n, tol=1.0, max_doublings=1)
            try:
                num = caputo_numeric(lambda s: s**beta, alpha, 1.0, cfg, df=lambda s: beta * s ** (beta - 1))
            except ToleranceError:
                num = float("nan")
            out.writerow([beta, alpha, n, f"{abs(num - exact) / abs(exact):.3e}"])


if __name__ == "__main__":
    main()
