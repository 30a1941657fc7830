"""Emit CSV data for the figure analogues through the command-line front end.

    python scripts/make_figures.py [outdir]

Each entry of FIGURES is a file name and the argv handed to ``fracspec``.
Plotting is left to whatever tool reads CSV.
"""

from __future__ import annotations

import sys
from pathlib import Path

from fracspec.cli import main

LEGENDRE = ["--xmin", "-0.9", "--xmax", "0.9", "--steps", "90"]

FIGURES: dict[str, list[str]] = {
    "legendre_even_a1.csv": ["legendre", "--alpha", "1", "--lambda", "6", "--parity", "even", *LEGENDRE],
    "legendre_even_a08.csv": ["legendre", "--alpha", "0.8", "--lambda", "6", "--parity", "even", *LEGENDRE],
    "legendre_odd_a1.csv": ["legendre", "--alpha", "1", "--lambda", "12", "--parity", "odd", *LEGENDRE],
    "legendre_odd_a08.csv": ["legendre", "--alpha", "0.8", "--lambda", "12", "--parity", "odd", *LEGENDRE],
    "nu_surface.csv": ["bessel-surface", "--alpha-min", "0.5", "--alpha-max", "1",
                       "--rho-min", "0", "--rho-max", "5", "--steps", "50"],
    "bessel_a1_nu0.csv": ["bessel", "--alpha", "1", "--nu", "0", "--k", "1", "--rmax", "10", "--steps", "200"],
    "bessel_a1_nu2.csv": ["bessel", "--alpha", "1", "--nu", "2", "--k", "1", "--rmax", "10", "--steps", "200"],
    "bessel_a08_nu2.csv": ["bessel", "--alpha", "0.8", "--nu", "2", "--k", "1", "--rmax", "10", "--steps", "200"],
    "conf_hyper_a1.csv": ["conf-hyper", "--alpha", "1", "--a", "1", "--c", "2", "--zmax", "5", "--steps", "100"],
    "conf_hyper_a06.csv": ["conf-hyper", "--alpha", "0.6", "--a", "1", "--c", "2", "--zmax", "5", "--steps", "100"],
    "gauss_hyper_a1.csv": ["gauss-hyper", "--alpha", "1", "--a", "1", "--b", "1", "--c", "1",
                           "--zmax", "0.9", "--steps", "90"],
    "gauss_hyper_a07.csv": ["gauss-hyper", "--alpha", "0.7", "--a", "1", "--b", "1", "--c", "1",
                            "--zmax", "0.8", "--steps", "80"],
}


def emit(outdir: Path) -> dict[str, Path]:
    outdir.mkdir(parents=True, exist_ok=True)
    written = {}
    for name, argv in FIGURES.items():
        path = outdir / name
        code = main([*argv, "--out", str(path)])
        if code != 0:
            raise SystemExit(f"{name}: fracspec exited with {code}")
        written[name] = path
    return written


if __name__ == "__main__":
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
    for name, path in emit(out).items():
        print(path)
