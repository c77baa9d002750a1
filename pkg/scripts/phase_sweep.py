#!/usr/bin/env python3
"""Hopping scans of the complexity densities at several chemical potentials.

One run directory per mu under runs/phase_sweep/; each crosses the lobe
boundary so the peak sits at the transition.
"""
import sys

from bhcomplexity.cli import main

MUS = [0.41421356, 0.39, 0.37, 0.35, 0.31]

if __name__ == "__main__":
    extra = sys.argv[1:]
    rc = 0
    for mu in MUS:
        rc |= main(["sweep", "--lattice", "100x100", "--n-trunc", "6",
                    "--mu", f"{mu}", "--scan-axis", "t",
                    "--scan-range", "0.12:0.22", "--scan-steps", "51",
                    "--workers", "8", "--out", f"runs/phase_sweep/mu_{mu:g}",
                    *extra])
    sys.exit(rc)
