#!/usr/bin/env python3
"""Critical-scaling fits of c_1 and c_2 around the d=2 lobe tip.

Hopping scans fit the log laws; chemical-potential scans at t_c fit the
quadratic deficit. 200x200 zone, natural logs throughout.
"""
import math
import sys

from bhcomplexity.cli import main

MUC = f"{math.sqrt(2.0) - 1.0:.12g}"
TC = 3.0 - 2.0 * math.sqrt(2.0)

if __name__ == "__main__":
    extra = sys.argv[1:]
    common = ["--lattice", "200x200", "--n-trunc", "6", "--workers", "8",
              "--fit-critical", f"{TC:.12g}", "--fit-side", "both"]
    rc = main(["fit", *common, "--mu", MUC, "--scan-axis", "t",
               "--scan-range", f"{TC - 0.021:.12g}:{TC + 0.021:.12g}",
               "--scan-steps", "43", "--kappa", "1",
               "--fit-model", "log1", "--fit-window", "0.002:0.02",
               "--out", "runs/critical_fits_d2/t_scan_log1", *extra])
    rc |= main(["fit", *common, "--mu", MUC, "--scan-axis", "t",
                "--scan-range", f"{TC - 0.021:.12g}:{TC + 0.021:.12g}",
                "--scan-steps", "43", "--kappa", "2",
                "--fit-model", "log2", "--fit-window", "0.002:0.02",
                "--out", "runs/critical_fits_d2/t_scan_log2", *extra])
    mu_common = ["--lattice", "200x200", "--n-trunc", "6", "--workers", "8",
                 "--t", f"{TC:.12g}", "--scan-axis", "mu",
                 "--scan-range", "0.35421356:0.47421356", "--scan-steps", "49",
                 "--fit-model", "quad", "--fit-critical", MUC, "--fit-side", "both"]
    rc |= main(["fit", *mu_common, "--kappa", "1", "--fit-window", "0.002:0.06",
                "--out", "runs/critical_fits_d2/mu_scan_quad_c1", *extra])
    rc |= main(["fit", *mu_common, "--kappa", "2", "--fit-window", "0.002:0.03",
                "--out", "runs/critical_fits_d2/mu_scan_quad_c2", *extra])
    sys.exit(rc)
