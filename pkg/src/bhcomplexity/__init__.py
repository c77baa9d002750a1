"""Circuit complexity of Bose-Hubbard ground states.

Mean-field product state plus quadratic fluctuations: per-momentum
Bogoliubov blocks, squeezing angles, and their |theta|**kappa sums over
the Brillouin zone, with scaling fits, Gaussian-theory references, a
volume-conjecture toy model, and a small-lattice exact-diagonalization
check.
"""
__version__ = "0.1.0"

from .bogoliubov import (BogoliubovResult, InstabilityError, diagonalize_batch,
                         diagonalize_block, frequencies_batch)
from .complexity import (ComplexityReport, SweepPoint, flavor_breakdown,
                         momentum_branch_scan, phase_point_complexity, sweep)
from .exact import SmallLatticeSpec, compare_energy, exact_ground_state
from .gaussian_ref import (c_kappa_closed, c_kappa_quadrature, gas_c2_d3,
                           gas_theta, recursion_residual, two_mode_complexity)
from .holo import HoloParams, cv_delta
from .lattice import MomentumGrid, eta, eta_groups, k_path, make_grid
from .onsite import (BracketError, ConvergenceError, MeanFieldSolution, ModelParams,
                     free_energy, locate_lobe_boundary, locate_tip, self_consistent_phi)
from .quadratic import ModeBlock, build_block, build_blocks, coupling_vectors
from .scaling import (FitResult, FitSpec, dispersion_exponent, fit_scaling, gap_scan,
                      nu_consistency)

__all__ = [
    "__version__",
    "BogoliubovResult", "InstabilityError", "diagonalize_batch", "diagonalize_block",
    "frequencies_batch",
    "ComplexityReport", "SweepPoint", "flavor_breakdown", "momentum_branch_scan",
    "phase_point_complexity", "sweep",
    "SmallLatticeSpec", "compare_energy", "exact_ground_state",
    "c_kappa_closed", "c_kappa_quadrature", "gas_c2_d3", "gas_theta",
    "recursion_residual", "two_mode_complexity",
    "HoloParams", "cv_delta",
    "MomentumGrid", "eta", "eta_groups", "k_path", "make_grid",
    "BracketError", "ConvergenceError", "MeanFieldSolution", "ModelParams",
    "free_energy", "locate_lobe_boundary", "locate_tip", "self_consistent_phi",
    "ModeBlock", "build_block", "build_blocks", "coupling_vectors",
    "FitResult", "FitSpec", "dispersion_exponent", "fit_scaling", "gap_scan",
    "nu_consistency",
]
