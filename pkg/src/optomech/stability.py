"""Stability assessment of the linearized dynamics.

Two verdicts are computed side by side: the spectral one (all eigenvalues
of the drift matrix have negative real part), which is authoritative, and
the Routh-Hurwitz one built from closed-form characteristic-polynomial
coefficients.  The closed forms cover only the two nontrivial Hurwitz
conditions S1 = a0 > 0 and S2 > 0; they are necessary for stability but
not asserted to be sufficient, so disagreement in the direction
"eigen-unstable yet S1,S2 > 0" is logged rather than treated as a bug.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import model

logger = logging.getLogger(__name__)

# |max Re lambda| below this is reported as marginal and excluded from
# entanglement computation downstream.
MARGINAL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class StabilityReport:
    """Joint spectral and Routh-Hurwitz stability verdict.

    Attributes
    ----------
    eigen_stable : bool
        True iff max Re lambda(M) < 0 (authoritative verdict).
    s1, s2 : float
        The two nontrivial Hurwitz expressions, S1 = a0 and
        S2 = a5 a4 a3 + a6 a1 a5 - a6 a3^2 - a2 a5^2.
    rh_pass : bool
        True iff s1 > 0 and s2 > 0.
    max_real_part : float
        Largest eigenvalue real part of the drift matrix.
    coefficients : tuple of float
        (a0, ..., a6), the characteristic-polynomial coefficients with
        a6 = 1 (coefficient of lambda^6).
    """

    eigen_stable: bool
    s1: float
    s2: float
    rh_pass: bool
    max_real_part: float
    coefficients: tuple

    @property
    def marginal(self) -> bool:
        """True when the spectrum touches the imaginary axis numerically."""
        return abs(self.max_real_part) < MARGINAL_TOLERANCE


def routh_hurwitz_coeffs(p: model.EffectiveParams):
    """Closed-form coefficients (a0..a6) of det(lambda*I - M).

    a_i multiplies lambda^i; a6 = 1.  Pure function of the parameters,
    no eigenvalue computation involved.
    """
    w = p.omega_m
    g = p.gamma_m
    k1, k2 = p.kappa1, p.kappa2
    o1, o2 = p.omega_eff1, p.omega_eff2
    x1, x2, e = p.chi1, p.chi2, p.eta

    a0 = (
        k1**2 * k2**2 * w**2 / 16.0
        + e**2 * w**2 * k1 * k2 / 2.0
        - w * e * x1 * x2 * k1 * k2 / 2.0
        + k1**2 * w**2 * o2**2 / 4.0
        + k1**2 * w * o2 * x2**2 / 4.0
        + k2**2 * w**2 * o1**2 / 4.0
        + k2**2 * w * o1 * x1**2 / 4.0
        + w**2 * (o1**2 * o2**2 + e**4 - 2.0 * e**2 * o1 * o2)
        + w * (x1**2 * o2**2 * o1 - x1**2 * e**2 * o2)
        + w
        * (
            2.0 * e * x1 * x2 * o1 * o2
            - 2.0 * x1 * x2 * e**3
            + x2**2 * o1**2 * o2
            - o1 * x2**2 * e**2
        )
    )
    a1 = (
        g
        * (
            k1**2 * k2**2 / 16.0
            + e**2 * k1 * k2 / 2.0
            + k1**2 * o2**2 / 4.0
            + k2**2 * o1**2 / 4.0
            + o1**2 * o2**2
            + e**4
            - 2.0 * e**2 * o1 * o2
        )
        + w**2 * k1 * k2 * (k1 + k2) / 4.0
        + (k1 + k2) * (e**2 * w**2 - w * e * x1 * x2)
        + k1 * (w**2 * o2**2 + w * o2 * x2**2)
        + k2 * (w**2 * o1**2 + w * o1 * x1**2)
    )
    a2 = (
        k1**2 * k2**2 / 16.0
        + w**2 * (k1**2 / 4.0 + k2**2 / 4.0 + k1 * k2)
        + k1**2 * k2 * g / 4.0
        + k2**2 * k1 * g / 4.0
        + 2.0 * e**2 * w**2
        - 2.0 * w * e * x1 * x2
        + e**2 * (k1 * k2 / 2.0 + g * k1 + g * k2)
        + o2**2 * (k1**2 / 4.0 + w**2 + k1 * g)
        + e**4
        - 2.0 * e**2 * o1 * o2
        + o1**2 * (k2**2 / 4.0 + w**2 + k2 * g)
        + w * o2 * x2**2
        + w * o1 * x1**2
        + o1**2 * o2**2
    )
    a3 = (
        k1 * (k2**2 / 4.0 + w**2 + e**2 + o2**2)
        + k2 * (k1**2 / 4.0 + w**2 + e**2 + o1**2)
        + g * (k1**2 / 4.0 + k2**2 / 4.0 + k1 * k2 + 2.0 * e**2 + o1**2 + o2**2)
    )
    a4 = (
        k1**2 / 4.0
        + k2**2 / 4.0
        + k1 * k2
        + g * (k1 + k2)
        + w**2
        + o1**2
        + o2**2
        + 2.0 * e**2
    )
    a5 = g + k1 + k2
    a6 = 1.0
    return (a0, a1, a2, a3, a4, a5, a6)


def check_stability(p: model.EffectiveParams) -> StabilityReport:
    """Full stability report for one parameter set.

    eigen_stable comes from the spectrum of the drift matrix; rh_pass from
    the closed-form coefficients.  Eigenvalue solver failures propagate as
    numpy.linalg.LinAlgError.
    """
    m = model.build_drift(p)
    eigenvalues = np.linalg.eigvals(m)
    max_real_part = float(eigenvalues.real.max())
    a = routh_hurwitz_coeffs(p)
    s1 = a[0]
    s2 = a[5] * a[4] * a[3] + a[6] * a[1] * a[5] - a[6] * a[3] ** 2 - a[2] * a[5] ** 2
    eigen_stable = max_real_part < 0.0
    rh_pass = s1 > 0.0 and s2 > 0.0
    if rh_pass and not eigen_stable:
        # regime where Hurwitz conditions beyond S1, S2 matter
        logger.info(
            "S1, S2 > 0 but spectrum unstable (max Re = %.3e); "
            "the two closed-form conditions are necessary, not sufficient",
            max_real_part,
        )
    return StabilityReport(
        eigen_stable=eigen_stable,
        s1=float(s1),
        s2=float(s2),
        rh_pass=rh_pass,
        max_real_part=max_real_part,
        coefficients=tuple(float(c) for c in a),
    )
