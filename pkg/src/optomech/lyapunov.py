"""Stationary covariance of the stable linearized dynamics.

The stationary covariance V of ``Rdot = M R + N`` solves the Lyapunov
equation ``M V + V M^T = -D``.  Two independent routes are provided:

* :func:`solve_lyapunov` vectorizes the equation into a dense 36x36 linear
  system (Kronecker form) and solves it directly.  The system is fixed at
  6x6, so the dense solve is both trivially fast and easy to verify.
* :func:`covariance_by_integration` propagates ``dV/dt = M V + V M^T + D``
  from V(0) = 0 with a fixed-step classical 4th-order Runge-Kutta scheme
  until the transient has decayed.  It exists as an oracle for the direct
  solve and is deliberately kept free of Kronecker machinery.

Both refuse unstable or marginal drift matrices.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .stability import MARGINAL_TOLERANCE

# Default residual bound: ||M V + V M^T + D||_max <= RESIDUAL_RTOL * ||D||_max.
RESIDUAL_RTOL = 1e-9

# Reported anomaly threshold for asymmetry of the raw vectorized solution.
ASYMMETRY_RTOL = 1e-8

# Integrator defaults, relative to the spectrum of M.
HORIZON_FACTOR = 50.0  # horizon = HORIZON_FACTOR / min|Re lambda|
MIN_HORIZON_FACTOR = 20.0  # refuse anything shorter
STEP_FACTOR = 0.05  # step = STEP_FACTOR / max|lambda|
MAX_STEPS = 50_000_000


class UnstableSystemError(RuntimeError):
    """Drift matrix is not strictly stable; no stationary covariance exists."""

    def __init__(self, message: str, max_real_part: float, eigenvalues):
        super().__init__(message)
        self.max_real_part = max_real_part
        self.eigenvalues = eigenvalues


def _require_stable(m: np.ndarray):
    eigenvalues = np.linalg.eigvals(m)
    max_real_part = float(eigenvalues.real.max())
    if max_real_part >= 0.0 or abs(max_real_part) < MARGINAL_TOLERANCE:
        kind = "marginal" if abs(max_real_part) < MARGINAL_TOLERANCE else "unstable"
        raise UnstableSystemError(
            f"drift matrix is {kind} (max Re lambda = {max_real_part:.6e})",
            max_real_part,
            eigenvalues,
        )
    return eigenvalues


def solve_lyapunov(
    m: np.ndarray, d: np.ndarray, residual_rtol: float = RESIDUAL_RTOL
) -> np.ndarray:
    """Solve M V + V M^T = -D for the stationary covariance V.

    Parameters
    ----------
    m : array_like
        Stable drift matrix (checked; unstable or marginal input raises
        :class:`UnstableSystemError` carrying the spectrum).
    d : array_like
        Diffusion matrix, same shape as ``m``.
    residual_rtol : float
        Acceptance bound on ||M V + V M^T + D||_max relative to ||D||_max.

    Returns
    -------
    numpy.ndarray
        Symmetrized solution V.

    Notes
    -----
    With row-major flattening, vec(M V + V M^T) = (kron(M, I) + kron(I, M))
    vec(V), so V is obtained from one dense 36x36 solve.  The raw solution
    is symmetrized; asymmetry beyond 1e-8 relative is reported as an
    anomaly (RuntimeWarning) before symmetrization.
    """
    m = np.asarray(m, dtype=float)
    d = np.asarray(d, dtype=float)
    _require_stable(m)
    n = m.shape[0]
    eye = np.eye(n)
    lhs = np.kron(m, eye) + np.kron(eye, m)
    v = np.linalg.solve(lhs, -d.reshape(-1)).reshape(n, n)

    scale = float(np.abs(v).max())
    asymmetry = float(np.abs(v - v.T).max())
    if scale > 0.0 and asymmetry > ASYMMETRY_RTOL * scale:
        warnings.warn(
            f"Lyapunov solution asymmetry {asymmetry / scale:.3e} "
            f"exceeds {ASYMMETRY_RTOL:.0e} before symmetrization",
            RuntimeWarning,
            stacklevel=2,
        )
    v = (v + v.T) / 2.0

    d_norm = float(np.abs(d).max())
    residual = float(np.abs(m @ v + v @ m.T + d).max())
    if residual > residual_rtol * d_norm:
        raise np.linalg.LinAlgError(
            f"Lyapunov residual {residual:.3e} exceeds "
            f"{residual_rtol:.1e} * ||D||_max = {residual_rtol * d_norm:.3e}"
        )
    return v


def covariance_by_integration(
    m: np.ndarray,
    d: np.ndarray,
    horizon: float | None = None,
    step: float | None = None,
) -> np.ndarray:
    """Stationary covariance by forward integration of dV/dt = M V + V M^T + D.

    Fixed-step classical RK4 from V(0) = 0.  Defaults: horizon
    50 / min|Re lambda| (at least 20 / min|Re lambda| is required) and step
    0.05 / max|lambda|.  Serves as the independent oracle for
    :func:`solve_lyapunov`.

    Raises
    ------
    UnstableSystemError
        If ``m`` is unstable or marginal.
    ValueError
        If the horizon is below the required minimum or the step count
        would be impractically large.
    RuntimeError
        If the iterate diverges during propagation (e.g. a step size past
        the RK4 stability boundary).
    """
    m = np.asarray(m, dtype=float)
    d = np.asarray(d, dtype=float)
    eigenvalues = _require_stable(m)

    slowest = float(np.abs(eigenvalues.real).min())  # = |max Re lambda|
    fastest = float(np.abs(eigenvalues).max())
    if horizon is None:
        horizon = HORIZON_FACTOR / slowest
    elif horizon < MIN_HORIZON_FACTOR / slowest:
        raise ValueError(
            f"horizon {horizon:.3e} is below the required "
            f"{MIN_HORIZON_FACTOR}/min|Re lambda| = {MIN_HORIZON_FACTOR / slowest:.3e}"
        )
    if step is None:
        step = STEP_FACTOR / fastest
    if step <= 0.0:
        raise ValueError(f"step must be > 0, got {step}")

    n_steps = int(math.ceil(horizon / step))
    if n_steps > MAX_STEPS:
        raise ValueError(
            f"horizon/step needs {n_steps} steps (> {MAX_STEPS}); "
            "system too close to marginal for the integration oracle"
        )

    h = step
    v = np.zeros_like(d)
    mt = m.T
    # divergence is detected below; keep numpy quiet about the overflow itself
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n_steps):
            k1 = m @ v + v @ mt + d
            w = v + 0.5 * h * k1
            k2 = m @ w + w @ mt + d
            w = v + 0.5 * h * k2
            k3 = m @ w + w @ mt + d
            w = v + h * k3
            k4 = m @ w + w @ mt + d
            v = v + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
            if (k & 0x3FF) == 0 and not np.abs(v).max() < 1e15:
                raise RuntimeError(
                    f"covariance iterate diverged at step {k} "
                    f"(step size {h:.3e} past the RK4 stability limit?)"
                )
    if not np.isfinite(v).all():
        raise RuntimeError("covariance iterate diverged (non-finite entries)")
    return (v + v.T) / 2.0


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form pairing (q, p) per mode, [q, p] = i."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for i in range(n_modes):
        out[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = j
    return out


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, sorted ascending.

    Returns all 2n absolute eigenvalues of i*Omega*V (each symplectic
    eigenvalue appears twice).  Physical states satisfy min >= 1/2 under
    the vacuum-variance-1/2 convention.
    """
    v = np.asarray(v, dtype=float)
    n_modes = v.shape[0] // 2
    omega = symplectic_form(n_modes)
    return np.sort(np.abs(np.linalg.eigvals(1j * omega @ v)))


def min_symplectic_eigenvalue(v: np.ndarray) -> float:
    """Smallest symplectic eigenvalue of the full covariance matrix."""
    return float(symplectic_eigenvalues(v)[0])
