#!/usr/bin/env python3
"""d=3 tip scaling: 3/2-power deficit fits of c_2 on a 40^3 zone."""
import math
import sys

from bhcomplexity.cli import main

MUC = f"{math.sqrt(2.0) - 1.0:.12g}"
TC = 3.0 - 2.0 * math.sqrt(2.0)

if __name__ == "__main__":
    extra = sys.argv[1:]
    rc = main(["fit", "--lattice", "40x40x40", "--n-trunc", "6", "--workers", "8",
               "--mu", MUC, "--scan-axis", "t",
               "--scan-range", f"{TC - 0.015:.12g}:{TC + 0.015:.12g}",
               "--scan-steps", "61", "--kappa", "2",
               "--fit-model", "power32", "--fit-critical", f"{TC:.12g}",
               "--fit-side", "both", "--fit-window", "0.0005:0.015",
               "--out", "runs/critical_fits_d3", *extra])
    sys.exit(rc)
