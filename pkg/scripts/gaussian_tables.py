#!/usr/bin/env python3
"""Reference tables: free-field closed forms vs quadrature, gas value, CV toy."""
import sys

from bhcomplexity.cli import main

if __name__ == "__main__":
    extra = sys.argv[1:]
    rc = main(["gaussian-ref", "--out", "runs/gaussian_tables/scalar", *extra])
    rc |= main(["holo", "--out", "runs/gaussian_tables/holo", *extra])
    sys.exit(rc)
