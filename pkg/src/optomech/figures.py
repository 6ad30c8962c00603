"""Preset sweeps reproducing the standard result panels.

Each preset pins one operating point of the two-cavity system and scans a
single axis across 501 points:

  fig2a / fig2b   scan the first effective detuning at low / high bath
                  occupation, asymmetric couplings (chi1 = 0.1, chi2 = 0.9)
  fig2c / fig2d   the mirror images: optical roles exchanged, second
                  detuning scanned
  fig3a / fig3b   scan bath temperature in kelvin at fixed detunings of
                  opposite sign, for both coupling assignments
  fig4a / fig4b   scan one optomechanical coupling from 0 to 1 with the
                  other couplings nearly off

The caption table below repeats every pinned value as an independent
literal so a transcription slip in either copy is caught at startup by
`verify_presets` rather than silently producing a wrong panel.
"""

from __future__ import annotations

import math

from .model import EffectiveParams
from .sweep import SweepSpec

# Absolute mechanical frequency used by the temperature scans, rad/s.
OMEGA_M_FIG3 = 2.0 * math.pi * 1.0e7

PRESETS = {
    "fig2a": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=1.0, kappa2=0.5,
            omega_eff1=0.0, omega_eff2=-1.0,
            chi1=0.1, chi2=0.9, eta=0.8, n_th=20.0,
        ),
        axis="omega_eff1", start=-5.0, stop=5.0, points=501,
    ),
    "fig2b": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=1.0, kappa2=0.5,
            omega_eff1=0.0, omega_eff2=-1.0,
            chi1=0.1, chi2=0.9, eta=0.8, n_th=1250.0,
        ),
        axis="omega_eff1", start=-5.0, stop=5.0, points=501,
    ),
    "fig2c": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=0.5, kappa2=1.0,
            omega_eff1=-1.0, omega_eff2=0.0,
            chi1=0.9, chi2=0.1, eta=0.8, n_th=20.0,
        ),
        axis="omega_eff2", start=-5.0, stop=5.0, points=501,
    ),
    "fig2d": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=0.5, kappa2=1.0,
            omega_eff1=-1.0, omega_eff2=0.0,
            chi1=0.9, chi2=0.1, eta=0.8, n_th=1250.0,
        ),
        axis="omega_eff2", start=-5.0, stop=5.0, points=501,
    ),
    "fig3a": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=0.5, kappa2=1.0,
            omega_eff1=-1.0, omega_eff2=1.0,
            chi1=0.9, chi2=0.1, eta=0.8, n_th=0.0,
        ),
        axis="temperature", start=0.0, stop=3.0, points=501,
        omega_m_abs=OMEGA_M_FIG3,
    ),
    "fig3b": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=1.0, kappa2=0.5,
            omega_eff1=1.0, omega_eff2=-1.0,
            chi1=0.1, chi2=0.9, eta=0.8, n_th=0.0,
        ),
        axis="temperature", start=0.0, stop=3.0, points=501,
        omega_m_abs=OMEGA_M_FIG3,
    ),
    "fig4a": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=0.5, kappa2=0.5,
            omega_eff1=-1.0, omega_eff2=-1.0,
            chi1=0.0, chi2=0.01, eta=0.01, n_th=20.0,
        ),
        axis="chi1", start=0.0, stop=1.0, points=501,
    ),
    "fig4b": SweepSpec(
        base=EffectiveParams(
            omega_m=1.0, gamma_m=1e-5, kappa1=0.5, kappa2=0.5,
            omega_eff1=-1.0, omega_eff2=-1.0,
            chi1=0.01, chi2=0.0, eta=0.01, n_th=20.0,
        ),
        axis="chi2", start=0.0, stop=1.0, points=501,
    ),
}

# Independent second transcription of every pinned value.  The scanned
# axis itself carries no pinned value, so it appears only as axis/start/stop.
CAPTION_TABLE = {
    "fig2a": {
        "axis": "omega_eff1", "start": -5.0, "stop": 5.0, "points": 501,
        "gamma_m": 1e-5, "kappa1": 1.0, "kappa2": 0.5,
        "chi1": 0.1, "chi2": 0.9, "eta": 0.8,
        "omega_eff2": -1.0, "n_th": 20.0,
    },
    "fig2b": {
        "axis": "omega_eff1", "start": -5.0, "stop": 5.0, "points": 501,
        "gamma_m": 1e-5, "kappa1": 1.0, "kappa2": 0.5,
        "chi1": 0.1, "chi2": 0.9, "eta": 0.8,
        "omega_eff2": -1.0, "n_th": 1250.0,
    },
    "fig2c": {
        "axis": "omega_eff2", "start": -5.0, "stop": 5.0, "points": 501,
        "gamma_m": 1e-5, "kappa1": 0.5, "kappa2": 1.0,
        "chi1": 0.9, "chi2": 0.1, "eta": 0.8,
        "omega_eff1": -1.0, "n_th": 20.0,
    },
    "fig2d": {
        "axis": "omega_eff2", "start": -5.0, "stop": 5.0, "points": 501,
        "gamma_m": 1e-5, "kappa1": 0.5, "kappa2": 1.0,
        "chi1": 0.9, "chi2": 0.1, "eta": 0.8,
        "omega_eff1": -1.0, "n_th": 1250.0,
    },
    "fig3a": {
        "axis": "temperature", "start": 0.0, "stop": 3.0, "points": 501,
        "omega_m_abs": OMEGA_M_FIG3,
        "gamma_m": 1e-5, "kappa1": 0.5, "kappa2": 1.0,
        "chi1": 0.9, "chi2": 0.1, "eta": 0.8,
        "omega_eff1": -1.0, "omega_eff2": 1.0,
    },
    "fig3b": {
        "axis": "temperature", "start": 0.0, "stop": 3.0, "points": 501,
        "omega_m_abs": OMEGA_M_FIG3,
        "gamma_m": 1e-5, "kappa1": 1.0, "kappa2": 0.5,
        "chi1": 0.1, "chi2": 0.9, "eta": 0.8,
        "omega_eff1": 1.0, "omega_eff2": -1.0,
    },
    "fig4a": {
        "axis": "chi1", "start": 0.0, "stop": 1.0, "points": 501,
        "gamma_m": 1e-5, "kappa1": 0.5, "kappa2": 0.5,
        "chi2": 0.01, "eta": 0.01,
        "omega_eff1": -1.0, "omega_eff2": -1.0, "n_th": 20.0,
    },
    "fig4b": {
        "axis": "chi2", "start": 0.0, "stop": 1.0, "points": 501,
        "gamma_m": 1e-5, "kappa1": 0.5, "kappa2": 0.5,
        "chi1": 0.01, "eta": 0.01,
        "omega_eff1": -1.0, "omega_eff2": -1.0, "n_th": 20.0,
    },
}

_GRID_KEYS = ("axis", "start", "stop", "points", "omega_m_abs")


def verify_presets() -> None:
    """Cross-check PRESETS against CAPTION_TABLE; raise on any mismatch."""
    if set(PRESETS) != set(CAPTION_TABLE):
        raise RuntimeError(
            f"preset names {sorted(PRESETS)} differ from caption table "
            f"names {sorted(CAPTION_TABLE)}"
        )
    for name, spec in PRESETS.items():
        expected = CAPTION_TABLE[name]
        for key, value in expected.items():
            actual = getattr(spec, key) if key in _GRID_KEYS else getattr(spec.base, key)
            if actual != value:
                raise RuntimeError(
                    f"preset {name}: {key} is {actual!r}, caption says {value!r}"
                )
        if spec.base.omega_m != 1.0:
            raise RuntimeError(
                f"preset {name}: operating point must be in units of the "
                f"mechanical frequency (omega_m = {spec.base.omega_m!r})"
            )
