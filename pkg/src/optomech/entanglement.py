"""Bipartite logarithmic negativity from the stationary covariance matrix.

For each two-mode reduction V' = [[X, Z], [Z^T, Y]] the smallest symplectic
eigenvalue of the partial transpose has the closed form

    mu_minus = sqrt( (Sigma - sqrt(Sigma^2 - 4 det V')) / 2 ),
    Sigma    = det X + det Y - 2 det Z,

and the logarithmic negativity is E_N = max(0, -ln(2 mu_minus)).  A state
is entangled exactly when mu_minus < 1/2, equivalently when
4 det V' < Sigma - 1/4.  The larger partially-transposed eigenvalue never
affects separability and is not computed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# Discriminants below this are a hard error (broken upstream covariance);
# between this and zero they are treated as floating-point noise.
DISCRIMINANT_HARD_LIMIT = -1e-6


class UnphysicalStateError(ValueError):
    """Covariance matrix violates constraints every Gaussian state obeys."""


class BipartitePair(enum.Enum):
    """Which two of the three modes to keep in the reduction."""

    MECH_OPT1 = "mech_opt1"
    MECH_OPT2 = "mech_opt2"
    OPT1_OPT2 = "opt1_opt2"


# Quadrature rows/columns kept for each pair, in canonical order
# (q_m, p_m, X_c1, Y_c1, X_c2, Y_c2).
_PAIR_INDICES = {
    BipartitePair.MECH_OPT1: (0, 1, 2, 3),
    BipartitePair.MECH_OPT2: (0, 1, 4, 5),
    BipartitePair.OPT1_OPT2: (2, 3, 4, 5),
}

PAIR_ORDER = (
    BipartitePair.MECH_OPT1,
    BipartitePair.MECH_OPT2,
    BipartitePair.OPT1_OPT2,
)


@dataclass(frozen=True)
class ReducedCovariance:
    """4x4 covariance of one bipartition, with 2x2 block access."""

    vprime: np.ndarray
    pair: BipartitePair

    @property
    def x_block(self) -> np.ndarray:
        return self.vprime[:2, :2]

    @property
    def y_block(self) -> np.ndarray:
        return self.vprime[2:, 2:]

    @property
    def z_block(self) -> np.ndarray:
        return self.vprime[:2, 2:]


@dataclass(frozen=True)
class NegativityResult:
    """mu_minus and E_N for one bipartition, with the scalar invariants."""

    mu_minus: float
    e_n: float
    sigma: float
    det_vprime: float


def reduce(v: np.ndarray, pair: BipartitePair) -> ReducedCovariance:
    """Trace out the third mode by dropping its rows and columns of V."""
    idx = _PAIR_INDICES[pair]
    v = np.asarray(v, dtype=float)
    return ReducedCovariance(vprime=v[np.ix_(idx, idx)].copy(), pair=pair)


def _det2(b: np.ndarray) -> float:
    return float(b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0])


def log_negativity(r: ReducedCovariance) -> NegativityResult:
    """Logarithmic negativity of a two-mode reduction.

    Parameters
    ----------
    r : ReducedCovariance
        Physical two-mode covariance (Sigma^2 - 4 det V' >= -1e-12 up to
        floating-point noise).

    Returns
    -------
    NegativityResult

    Raises
    ------
    UnphysicalStateError
        If the discriminant is below -1e-6 (signals an upstream covariance
        bug, not roundoff) or a symplectic eigenvalue vanishes.
    """
    vp = r.vprime
    sigma = _det2(vp[:2, :2]) + _det2(vp[2:, 2:]) - 2.0 * _det2(vp[:2, 2:])
    det_vprime = float(np.linalg.det(vp))  # LU factorization on the 4x4
    discriminant = sigma * sigma - 4.0 * det_vprime
    if discriminant < DISCRIMINANT_HARD_LIMIT:
        raise UnphysicalStateError(
            f"Sigma^2 - 4 det V' = {discriminant:.3e} < {DISCRIMINANT_HARD_LIMIT:.0e}"
        )
    if discriminant < 0.0:
        discriminant = 0.0  # roundoff at the boundary of equal eigenvalues
    inner = sigma - math.sqrt(discriminant)
    if inner < 0.0:
        inner = 0.0  # roundoff at the pure-state boundary
    mu_minus = math.sqrt(inner / 2.0)
    if mu_minus <= 0.0:
        raise UnphysicalStateError(
            "vanishing partially-transposed symplectic eigenvalue "
            f"(Sigma = {sigma:.3e}, det V' = {det_vprime:.3e})"
        )
    e_n = max(0.0, -math.log(2.0 * mu_minus))
    return NegativityResult(
        mu_minus=mu_minus, e_n=e_n, sigma=sigma, det_vprime=det_vprime
    )


def all_negativities(v: np.ndarray):
    """E_N for the three bipartitions, ordered (mech-opt1, mech-opt2, opt1-opt2)."""
    return tuple(log_negativity(reduce(v, pair)).e_n for pair in PAIR_ORDER)
