"""Parameter containers and drift/diffusion matrix construction.

The simulated system is one mechanical oscillator coupled to two optical
cavity modes.  After linearization around the classical working point the
dynamics of the quadrature fluctuation vector

    R = (dq_m, dp_m, dX_c1, dY_c1, dX_c2, dY_c2)

are ``Rdot = M R + N(t)`` with a constant drift matrix M and stationary
noise correlations described by a diagonal diffusion matrix D.  Quadratures
are normalized as dq = (db + db^dag)/sqrt(2), so every vacuum quadrature
variance equals 1/2; that convention is shared by all downstream modules.

The canonical unit system expresses every rate in units of the mechanical
frequency (omega_m = 1).  Inputs in absolute units can be rescaled with
:meth:`EffectiveParams.normalized`; the absolute omega_m is still needed to
convert bath temperature to occupation, see :func:`thermal_occupation`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, fields, replace

import numpy as np

# CODATA 2018 exact values.
HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23  # J / K

# Exchanging the two optical modes reorders the quadratures to
# (q_m, p_m, X_c2, Y_c2, X_c1, Y_c1).
MODE_SWAP_INDICES = (0, 1, 4, 5, 2, 3)

# Relative imaginary residue above which effective_from_physical warns.
IMAG_RESIDUE_TOL = 1e-6


def _check_finite(obj) -> None:
    for f in fields(obj):
        value = getattr(obj, f.name)
        if not math.isfinite(value):
            raise ValueError(f"{f.name} must be finite, got {value!r}")


@dataclass(frozen=True)
class EffectiveParams:
    """The nine rates plus bath occupation fixing the linearized model.

    All rate fields are interpreted in the same units as ``omega_m``; the
    built-in presets use omega_m = 1 so the other rates read directly as
    multiples of the mechanical frequency.

    Attributes
    ----------
    omega_m : float
        Mechanical frequency (> 0).
    gamma_m : float
        Mechanical damping rate (>= 0).
    kappa1, kappa2 : float
        Optical amplitude decay rates (> 0).
    omega_eff1, omega_eff2 : float
        Effective optical frequencies, signed; negative values are the
        red-detuned-like working points used by the presets.
    chi1, chi2 : float
        Effective optomechanical couplings (real).
    eta : float
        Effective optical-optical coupling (real).
    n_th : float
        Mean thermal occupation of the mechanical bath (>= 0).
    """

    omega_m: float = 1.0
    gamma_m: float = 0.0
    kappa1: float = 1.0
    kappa2: float = 1.0
    omega_eff1: float = 0.0
    omega_eff2: float = 0.0
    chi1: float = 0.0
    chi2: float = 0.0
    eta: float = 0.0
    n_th: float = 0.0

    def __post_init__(self):
        _check_finite(self)
        if self.omega_m <= 0:
            raise ValueError(f"omega_m must be > 0, got {self.omega_m}")
        if self.gamma_m < 0:
            raise ValueError(f"gamma_m must be >= 0, got {self.gamma_m}")
        if self.kappa1 <= 0 or self.kappa2 <= 0:
            raise ValueError(
                f"kappa1 and kappa2 must be > 0, got {self.kappa1}, {self.kappa2}"
            )
        if self.n_th < 0:
            raise ValueError(f"n_th must be >= 0, got {self.n_th}")

    def replace(self, **changes) -> "EffectiveParams":
        """Copy with the given fields replaced."""
        return replace(self, **changes)

    def normalized(self) -> "EffectiveParams":
        """Rates rescaled to units of omega_m (omega_m becomes exactly 1)."""
        w = self.omega_m
        return EffectiveParams(
            omega_m=1.0,
            gamma_m=self.gamma_m / w,
            kappa1=self.kappa1 / w,
            kappa2=self.kappa2 / w,
            omega_eff1=self.omega_eff1 / w,
            omega_eff2=self.omega_eff2 / w,
            chi1=self.chi1 / w,
            chi2=self.chi2 / w,
            eta=self.eta / w,
            n_th=self.n_th,
        )

    def swapped(self) -> "EffectiveParams":
        """Parameters with the two optical modes exchanged."""
        return self.replace(
            kappa1=self.kappa2,
            kappa2=self.kappa1,
            omega_eff1=self.omega_eff2,
            omega_eff2=self.omega_eff1,
            chi1=self.chi2,
            chi2=self.chi1,
        )


@dataclass(frozen=True)
class PhysicalParams:
    """Bare frequencies and couplings feeding the fixed-point solver.

    Attributes
    ----------
    omega_c1, omega_c2 : float
        Bare optical frequencies, rad/s.
    omega_m : float
        Mechanical frequency, rad/s.
    gamma_m : float
        Mechanical damping rate, rad/s.
    kappa1, kappa2 : float
        Optical decay rates, rad/s.
    eta0, eta1, eta2 : float
        Bare coupling rates, rad/s (signed).
    temperature : float
        Mechanical bath temperature, kelvin (>= 0).
    """

    omega_c1: float
    omega_c2: float
    omega_m: float
    gamma_m: float
    kappa1: float
    kappa2: float
    eta0: float
    eta1: float
    eta2: float
    temperature: float

    def __post_init__(self):
        _check_finite(self)
        for name in ("omega_c1", "omega_c2", "omega_m", "gamma_m", "kappa1", "kappa2"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")


def thermal_occupation(omega_m: float, temperature: float) -> float:
    """Mean thermal occupation n_th = 1 / (exp(hbar*omega_m/(kB*T)) - 1).

    Parameters
    ----------
    omega_m : float
        Mechanical frequency in rad/s (> 0).
    temperature : float
        Bath temperature in kelvin (>= 0).  T = 0 returns 0 (limit value).

    Returns
    -------
    float
        Dimensionless occupation, >= 0.
    """
    if not (math.isfinite(omega_m) and math.isfinite(temperature)):
        raise ValueError("omega_m and temperature must be finite")
    if omega_m <= 0:
        raise ValueError(f"omega_m must be > 0, got {omega_m}")
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega_m / (KB * temperature)
    if x > 700.0:  # exp would overflow; occupation is zero to double precision
        return 0.0
    return 1.0 / math.expm1(x)


def build_drift(p: EffectiveParams) -> np.ndarray:
    """Drift matrix M of the linearized quadrature dynamics.

    Row/column order is (q_m, p_m, X_c1, Y_c1, X_c2, Y_c2).  Pure function:
    identical inputs give bit-identical outputs.

    Returns
    -------
    numpy.ndarray
        6x6 real matrix.
    """
    w = p.omega_m
    g = p.gamma_m
    k1, k2 = p.kappa1, p.kappa2
    o1, o2 = p.omega_eff1, p.omega_eff2
    x1, x2, e = p.chi1, p.chi2, p.eta
    return np.array(
        [
            [0.0, w, 0.0, 0.0, 0.0, 0.0],
            [-w, -g, x1, 0.0, x2, 0.0],
            [0.0, 0.0, -k1 / 2.0, -o1, 0.0, e],
            [x1, 0.0, o1, -k1 / 2.0, -e, 0.0],
            [0.0, 0.0, 0.0, e, -k2 / 2.0, -o2],
            [x2, 0.0, -e, 0.0, o2, -k2 / 2.0],
        ]
    )


def build_diffusion(p: EffectiveParams) -> np.ndarray:
    """Diffusion matrix D of the stationary input-noise correlations.

    The mechanical momentum picks up thermal noise at rate
    Gamma_m*(2*n_th + 1); each optical quadrature sees vacuum input at
    kappa/2 (variance 1/2 convention).

    Returns
    -------
    numpy.ndarray
        6x6 diagonal matrix diag(0, Gamma_m(2 n_th + 1), k1/2, k1/2, k2/2, k2/2).
    """
    return np.diag(
        [
            0.0,
            p.gamma_m * (2.0 * p.n_th + 1.0),
            p.kappa1 / 2.0,
            p.kappa1 / 2.0,
            p.kappa2 / 2.0,
            p.kappa2 / 2.0,
        ]
    )


def mode_swap_matrix() -> np.ndarray:
    """Permutation P with build_drift(p.swapped()) == P @ build_drift(p) @ P.T."""
    return np.eye(6)[list(MODE_SWAP_INDICES)]


def _imag_residue(z: complex) -> float:
    if z.imag == 0.0:
        return 0.0
    if z.real == 0.0:
        return math.inf
    return abs(z.imag) / abs(z.real)


def effective_from_physical(p: PhysicalParams, fp) -> EffectiveParams:
    """Effective linearized parameters at a classical fixed point.

    Applies the defining relations

        Omega_ci = 2 beta_s eta_i - omega_ci
        chi1     = eta1 alpha1_s - eta0 alpha2_s
        chi2     = eta2 alpha2_s - eta0 alpha1_s
        eta      = 2 eta0 beta_s

    and takes real parts (the drift matrix is real-valued by construction).
    A relative imaginary residue above 1e-6 on any value triggers a
    RuntimeWarning; the real parts are still returned.  n_th comes from
    :func:`thermal_occupation` at the bath temperature.

    Parameters
    ----------
    p : PhysicalParams
    fp : FixedPoint
        Classical amplitudes (beta_s, alpha1_s, alpha2_s), normally from
        the fixed-point solver.

    Returns
    -------
    EffectiveParams
        In the same units as the inputs; chain with .normalized() for the
        canonical omega_m = 1 form.
    """
    beta = complex(fp.beta_s)
    a1 = complex(fp.alpha1_s)
    a2 = complex(fp.alpha2_s)
    values = {
        "omega_eff1": 2.0 * beta * p.eta1 - p.omega_c1,
        "omega_eff2": 2.0 * beta * p.eta2 - p.omega_c2,
        "chi1": p.eta1 * a1 - p.eta0 * a2,
        "chi2": p.eta2 * a2 - p.eta0 * a1,
        "eta": 2.0 * p.eta0 * beta,
    }
    for name, z in values.items():
        if _imag_residue(z) > IMAG_RESIDUE_TOL:
            warnings.warn(
                f"effective parameter {name} has imaginary residue "
                f"|Im|/|Re| = {_imag_residue(z):.3e}; real part used",
                RuntimeWarning,
                stacklevel=2,
            )
    return EffectiveParams(
        omega_m=p.omega_m,
        gamma_m=p.gamma_m,
        kappa1=p.kappa1,
        kappa2=p.kappa2,
        omega_eff1=values["omega_eff1"].real,
        omega_eff2=values["omega_eff2"].real,
        chi1=values["chi1"].real,
        chi2=values["chi2"].real,
        eta=values["eta"].real,
        n_th=thermal_occupation(p.omega_m, p.temperature),
    )
