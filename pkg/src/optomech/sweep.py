"""One-dimensional parameter sweeps of the stationary entanglement.

A sweep varies exactly one quantity along a uniform grid, solves the
stationary covariance at every stable grid point, and records the three
bipartite negativities together with the stability indicators.  Unstable
or marginal points keep their stability columns but carry no covariance
data; per-point numerical failures are recorded in the row note instead
of aborting the sweep.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from . import entanglement, lyapunov, model, stability

AXES = (
    "omega_eff1",
    "omega_eff2",
    "n_th",
    "temperature",
    "chi1",
    "chi2",
    "eta",
)

THREADS_ENV_VAR = "OPTOMECH_THREADS"


@dataclass(frozen=True)
class SweepSpec:
    """Base operating point plus the axis and grid to scan."""

    base: model.EffectiveParams
    axis: str
    start: float
    stop: float
    points: int = 501
    # Absolute mechanical frequency in rad/s, required only for
    # temperature sweeps where the thermal occupation must be recomputed
    # from kelvin at every grid point.
    omega_m_abs: Optional[float] = None

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown sweep axis {self.axis!r}; expected one of {AXES}")
        if not (self.start < self.stop):
            raise ValueError(f"empty sweep range [{self.start}, {self.stop}]")
        if self.points < 2:
            raise ValueError("a sweep needs at least 2 grid points")
        if self.axis == "temperature":
            if self.omega_m_abs is None or not self.omega_m_abs > 0:
                raise ValueError(
                    "temperature sweeps need omega_m_abs > 0 to convert kelvin "
                    "to a thermal occupation"
                )

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def params_at(self, value: float) -> model.EffectiveParams:
        """Operating point with the axis set to `value`."""
        if self.axis == "temperature":
            n_th = model.thermal_occupation(self.omega_m_abs, value)
            return self.base.replace(n_th=n_th)
        return self.base.replace(**{self.axis: value})


@dataclass(frozen=True)
class SweepRow:
    """Result at one grid point; e_n and mu are None when not computable."""

    axis: str
    axis_value: float
    n_th: float
    eigen_stable: bool
    marginal: bool
    s1: float
    s2: float
    e_n: Optional[tuple] = None
    mu: Optional[tuple] = None
    note: str = ""


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple
    metadata: dict = field(default_factory=dict)


def _evaluate_point(spec: SweepSpec, value: float) -> SweepRow:
    p = spec.params_at(value)
    try:
        report = stability.check_stability(p)
    except Exception as exc:  # noqa: BLE001  (recorded, never propagated)
        return SweepRow(
            axis=spec.axis, axis_value=float(value), n_th=p.n_th,
            eigen_stable=False, marginal=False,
            s1=float("nan"), s2=float("nan"),
            note=f"error: {exc}",
        )
    common = dict(
        axis=spec.axis, axis_value=float(value), n_th=p.n_th,
        eigen_stable=report.eigen_stable, marginal=report.marginal,
        s1=report.s1, s2=report.s2,
    )
    # marginal wins over unstable: |max Re| below tolerance is a borderline
    # verdict, not a definite instability
    if report.marginal:
        return SweepRow(note="marginal", **common)
    if not report.eigen_stable:
        return SweepRow(note="unstable", **common)
    try:
        v = lyapunov.solve_lyapunov(model.build_drift(p), model.build_diffusion(p))
        results = [
            entanglement.log_negativity(entanglement.reduce(v, pair))
            for pair in entanglement.PAIR_ORDER
        ]
    except Exception as exc:  # noqa: BLE001
        return SweepRow(note=f"error: {exc}", **common)
    return SweepRow(
        e_n=tuple(r.e_n for r in results),
        mu=tuple(r.mu_minus for r in results),
        **common,
    )


def _resolve_threads(threads: Optional[int], n_points: int) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        if env is not None:
            try:
                threads = int(env)
            except ValueError as exc:
                raise ValueError(
                    f"{THREADS_ENV_VAR} must be an integer, got {env!r}"
                ) from exc
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    return min(threads, n_points)


def run_sweep(spec: SweepSpec, threads: Optional[int] = None) -> SweepResult:
    """Evaluate the sweep grid, optionally across a thread pool.

    Row order always matches the grid regardless of the thread count.
    `threads=None` falls back to the OPTOMECH_THREADS environment
    variable, then to the CPU count.
    """
    grid = spec.grid()
    n_threads = _resolve_threads(threads, len(grid))
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            rows = tuple(pool.map(lambda v: _evaluate_point(spec, v), grid))
    else:
        rows = tuple(_evaluate_point(spec, v) for v in grid)
    metadata = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "axis": spec.axis,
        "start": spec.start,
        "stop": spec.stop,
        "points": spec.points,
        "threads": n_threads,
    }
    return SweepResult(spec=spec, rows=rows, metadata=metadata)


_MIRROR_AXIS = {
    "omega_eff1": "omega_eff2",
    "omega_eff2": "omega_eff1",
    "chi1": "chi2",
    "chi2": "chi1",
}


@dataclass(frozen=True)
class SwapSymmetryReport:
    passed: bool
    max_deviation: float
    detail: str = ""


def swap_symmetry_check(
    spec: SweepSpec, threads: Optional[int] = None, tol: float = 1e-8
) -> SwapSymmetryReport:
    """Verify the sweep is invariant under exchanging the two optical modes.

    Runs `spec` and its mirror (swapped base parameters, mirrored axis) and
    compares row by row: stability gating must agree exactly, and wherever
    negativities exist, (en1, en2, en3) must equal the mirror's
    (en2, en1, en3) within `tol`.
    """
    mirror = SweepSpec(
        base=spec.base.swapped(),
        axis=_MIRROR_AXIS.get(spec.axis, spec.axis),
        start=spec.start,
        stop=spec.stop,
        points=spec.points,
        omega_m_abs=spec.omega_m_abs,
    )
    rows_a = run_sweep(spec, threads=threads).rows
    rows_b = run_sweep(mirror, threads=threads).rows
    max_dev = 0.0
    for ra, rb in zip(rows_a, rows_b):
        if (ra.eigen_stable, ra.marginal) != (rb.eigen_stable, rb.marginal):
            return SwapSymmetryReport(
                passed=False,
                max_deviation=float("inf"),
                detail=(
                    f"stability gating differs at {ra.axis} = {ra.axis_value}: "
                    f"{(ra.eigen_stable, ra.marginal)} vs {(rb.eigen_stable, rb.marginal)}"
                ),
            )
        if (ra.e_n is None) != (rb.e_n is None):
            return SwapSymmetryReport(
                passed=False,
                max_deviation=float("inf"),
                detail=f"data presence differs at {ra.axis} = {ra.axis_value}",
            )
        if ra.e_n is None:
            continue
        en1, en2, en3 = ra.e_n
        sw1, sw2, sw3 = rb.e_n
        dev = max(abs(en1 - sw2), abs(en2 - sw1), abs(en3 - sw3))
        max_dev = max(max_dev, dev)
    if max_dev > tol:
        return SwapSymmetryReport(
            passed=False,
            max_deviation=max_dev,
            detail=f"negativity mismatch {max_dev:.3e} exceeds {tol:.3e}",
        )
    return SwapSymmetryReport(passed=True, max_deviation=max_dev)
