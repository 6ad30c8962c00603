"""Stationary entanglement of two optical cavities sharing one mechanical mode.

The package builds the linearized drift and diffusion matrices of the
three-mode system, decides stability, solves for the stationary covariance
matrix, and extracts the bipartite logarithmic negativities.  `sweep` and
`figures` scan these quantities along one parameter axis; `cli` exposes it
all as the `optomech` command.
"""

from .entanglement import (
    BipartitePair,
    NegativityResult,
    PAIR_ORDER,
    ReducedCovariance,
    UnphysicalStateError,
    all_negativities,
    log_negativity,
    reduce,
)
from .figures import CAPTION_TABLE, PRESETS, verify_presets
from .lyapunov import (
    UnstableSystemError,
    covariance_by_integration,
    min_symplectic_eigenvalue,
    solve_lyapunov,
    symplectic_eigenvalues,
    symplectic_form,
)
from .model import (
    HBAR,
    KB,
    MODE_SWAP_INDICES,
    EffectiveParams,
    PhysicalParams,
    build_diffusion,
    build_drift,
    effective_from_physical,
    mode_swap_matrix,
    thermal_occupation,
)
from .selfcheck import CheckResult, run_selfcheck
from .stability import StabilityReport, check_stability, routh_hurwitz_coeffs
from .steadystate import ConvergenceError, FixedPoint, residuals, solve_fixed_point
from .sweep import (
    AXES,
    SwapSymmetryReport,
    SweepResult,
    SweepRow,
    SweepSpec,
    run_sweep,
    swap_symmetry_check,
)

__version__ = "0.1.0"

__all__ = [
    "AXES",
    "BipartitePair",
    "CAPTION_TABLE",
    "CheckResult",
    "ConvergenceError",
    "EffectiveParams",
    "FixedPoint",
    "HBAR",
    "KB",
    "MODE_SWAP_INDICES",
    "NegativityResult",
    "PAIR_ORDER",
    "PRESETS",
    "PhysicalParams",
    "ReducedCovariance",
    "StabilityReport",
    "SwapSymmetryReport",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "UnphysicalStateError",
    "UnstableSystemError",
    "all_negativities",
    "build_diffusion",
    "build_drift",
    "check_stability",
    "covariance_by_integration",
    "effective_from_physical",
    "log_negativity",
    "min_symplectic_eigenvalue",
    "mode_swap_matrix",
    "reduce",
    "residuals",
    "routh_hurwitz_coeffs",
    "run_selfcheck",
    "run_sweep",
    "solve_fixed_point",
    "solve_lyapunov",
    "swap_symmetry_check",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_occupation",
    "verify_presets",
]
