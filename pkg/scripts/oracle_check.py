#!/usr/bin/env python3
"""Exact diagonalization vs mean field + quadratic correction on small lattices."""
import json
import sys
from pathlib import Path

from bhcomplexity.cli import main

RUNS = {
    "chain2": ["--n-trunc", "3"],
    "chain2_deep": ["--n-trunc", "5"],
}

if __name__ == "__main__":
    extra = sys.argv[1:]
    rc = 0
    for name, args in RUNS.items():
        rc |= main(["oracle", "--mu", "0.5", *args,
                    "--out", f"runs/oracle_check/{name}", *extra])
    cfg = {"sites": 4, "geometry": "plaquette", "n_trunc": 3, "mu": 0.5,
           "t_values": [0.005, 0.01, 0.02, 0.04]}
    path = Path("runs/oracle_check/plaquette.json")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(cfg))
    rc |= main(["oracle", "--config", str(path),
                "--out", "runs/oracle_check/plaquette", *extra])
    sys.exit(rc)
