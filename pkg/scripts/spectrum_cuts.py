#!/usr/bin/env python3
"""Mode frequencies along k-space cuts at four representative phase points.

Writes one run directory per point under runs/spectrum_cuts/.
"""
import math
import sys

from bhcomplexity.cli import main

MUC = f"{math.sqrt(2.0) - 1.0:.12g}"
TC = f"{3.0 - 2.0 * math.sqrt(2.0):.12g}"

POINTS = {
    "mott_gapped": ["--t", "0.15", "--mu", MUC],
    "sf_goldstone": ["--t", "0.20", "--mu", MUC],
    "tip_relativistic": ["--t", TC, "--mu", MUC],
    "boundary_quadratic": ["--t", "0.10", "--mu", "0.77"],
}

if __name__ == "__main__":
    extra = sys.argv[1:]
    rc = 0
    for name, args in POINTS.items():
        rc |= main(["spectrum", "--lattice", "100x100", "--n-trunc", "6",
                    "--out", f"runs/spectrum_cuts/{name}", *args, *extra])
    sys.exit(rc)
