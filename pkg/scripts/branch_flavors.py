#!/usr/bin/env python3
"""Momentum- and flavor-resolved angle sums across the transition."""
import math
import sys

from bhcomplexity.cli import main

MUC = f"{math.sqrt(2.0) - 1.0:.12g}"

if __name__ == "__main__":
    extra = sys.argv[1:]
    common = ["--lattice", "50x50", "--n-trunc", "6", "--mu", MUC,
              "--scan-axis", "t", "--scan-range", "0.12:0.22",
              "--scan-steps", "41", "--workers", "8"]
    rc = main(["branches", *common, "--out", "runs/branch_flavors/branches", *extra])
    rc |= main(["flavors", *common, "--out", "runs/branch_flavors/flavors", *extra])
    sys.exit(rc)
