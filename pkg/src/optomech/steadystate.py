"""Classical fixed point of the nonlinear mean-field equations.

The stationary mean amplitudes (beta_s, alpha1_s, alpha2_s) satisfy

    beta_s  = ( i eta1 |alpha1|^2 + i eta2 |alpha2|^2
                - i eta0 (alpha1 conj(alpha2) + alpha2 conj(alpha1)) )
              / (i omega_m + Gamma_m)
    alpha_i = 2 i eta0 alpha_j Re(beta_s)
              / ( 2 i eta_i Re(beta_s) - (i omega_ci + kappa_i / 2) )

with (i, j) in {(1, 2), (2, 1)}.  Without external driving the only
solution with kappa_i > 0 is the trivial one: any nonzero amplitude pair
would need |d1 d2| = |2 i eta0 Re(beta_s)|^2 with both d_i containing a
strictly negative real part -kappa_i/2 alongside the purely imaginary
coupling, which the modulus equation forbids.  The solver still iterates
the coupled map so that seeded starts relax onto the fixed point instead
of assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import PhysicalParams

DAMPING = 0.5
DEGENERATE_DENOMINATOR = 1e-14


@dataclass(frozen=True)
class FixedPoint:
    """Stationary mean amplitudes and the quality of their residual."""

    beta_s: complex = 0j
    alpha1_s: complex = 0j
    alpha2_s: complex = 0j
    residual: float = float("nan")
    iterations: int = 0


class ConvergenceError(RuntimeError):
    """Fixed-point iteration failed; carries the last iterate."""

    def __init__(self, message: str, last: FixedPoint):
        super().__init__(message)
        self.last = last


def residuals(p: PhysicalParams, fp: FixedPoint) -> tuple[complex, complex, complex]:
    """Multiplied-out defect of each stationarity equation at `fp`.

    All three vanish exactly at a true fixed point.  Written without
    divisions so the defect is meaningful even at degenerate denominators.
    """
    b, a1, a2 = fp.beta_s, fp.alpha1_s, fp.alpha2_s
    rb = (1j * p.omega_m + p.gamma_m) * b - 1j * (
        p.eta1 * abs(a1) ** 2 + p.eta2 * abs(a2) ** 2
    ) + 1j * p.eta0 * (a1 * a2.conjugate() + a2 * a1.conjugate())
    re_b = b.real
    d1 = 2j * p.eta1 * re_b - (1j * p.omega_c1 + p.kappa1 / 2.0)
    d2 = 2j * p.eta2 * re_b - (1j * p.omega_c2 + p.kappa2 / 2.0)
    r1 = d1 * a1 - 2j * p.eta0 * a2 * re_b
    r2 = d2 * a2 - 2j * p.eta0 * a1 * re_b
    return rb, r1, r2


def _residual_norm(p: PhysicalParams, fp: FixedPoint) -> float:
    return max(abs(r) for r in residuals(p, fp))


def solve_fixed_point(
    p: PhysicalParams,
    seed: FixedPoint = FixedPoint(),
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> FixedPoint:
    """Relax the coupled stationarity map to its fixed point.

    Damped Gauss-Seidel: each sweep updates beta, then alpha1 with the new
    beta, then alpha2 with both.  Convergence is judged only through
    `residuals`, never through step size, so a stalled iteration cannot
    masquerade as a converged one.

    Raises
    ------
    ConvergenceError
        If an effective cavity denominator collapses below 1e-14 or the
        residual fails to reach `tol` within `max_iter` sweeps.
    """
    b, a1, a2 = seed.beta_s, seed.alpha1_s, seed.alpha2_s
    denom_b = 1j * p.omega_m + p.gamma_m
    for k in range(1, max_iter + 1):
        target_b = (
            1j * (p.eta1 * abs(a1) ** 2 + p.eta2 * abs(a2) ** 2)
            - 1j * p.eta0 * (a1 * a2.conjugate() + a2 * a1.conjugate())
        ) / denom_b
        b = (1.0 - DAMPING) * b + DAMPING * target_b
        re_b = b.real
        d1 = 2j * p.eta1 * re_b - (1j * p.omega_c1 + p.kappa1 / 2.0)
        d2 = 2j * p.eta2 * re_b - (1j * p.omega_c2 + p.kappa2 / 2.0)
        fp_now = FixedPoint(beta_s=b, alpha1_s=a1, alpha2_s=a2, iterations=k)
        if min(abs(d1), abs(d2)) < DEGENERATE_DENOMINATOR:
            raise ConvergenceError(
                "degenerate effective cavity denominator "
                f"(|d1| = {abs(d1):.3e}, |d2| = {abs(d2):.3e})",
                fp_now,
            )
        a1 = (1.0 - DAMPING) * a1 + DAMPING * (2j * p.eta0 * a2 * re_b / d1)
        a2 = (1.0 - DAMPING) * a2 + DAMPING * (2j * p.eta0 * a1 * re_b / d2)
        fp_now = FixedPoint(beta_s=b, alpha1_s=a1, alpha2_s=a2, iterations=k)
        res = _residual_norm(p, fp_now)
        if res <= tol:
            return FixedPoint(
                beta_s=b, alpha1_s=a1, alpha2_s=a2, residual=res, iterations=k
            )
    last = FixedPoint(beta_s=b, alpha1_s=a1, alpha2_s=a2, residual=res, iterations=max_iter)
    raise ConvergenceError(
        f"no convergence after {max_iter} sweeps (residual {res:.3e} > {tol:.3e})",
        last,
    )
