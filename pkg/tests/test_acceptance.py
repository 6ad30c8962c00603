"""Acceptance gate: eleven checks covering the full pipeline.

One test per criterion.  Each test prints a single `ACCEPTANCE nn PASS|FAIL`
line with the measured quantities before asserting, so the verdicts are
visible in the -rP/failure sections of the pytest output as well as through
the per-test PASSED/FAILED status.

Checks 07 and 10 encode qualitative claims about the fig2 and fig4 presets
that the computed curves contradict in one sub-clause each (the mech:cavity2
curve has no exact zero on the fig2a grid, and it is not identically zero
along the fig4a scan).  They are asserted as stated and are expected to
fail; see the repository notes for the measured values.
"""

import math

import numpy as np
import pytest

from optomech import cli, model, stability
from optomech.entanglement import BipartitePair, log_negativity, reduce
from optomech.figures import PRESETS
from optomech.lyapunov import covariance_by_integration, min_symplectic_eigenvalue, solve_lyapunov
from optomech.model import EffectiveParams, thermal_occupation
from optomech.sweep import SweepSpec, run_sweep

N_DRAWS = 10_000
STABLE_DRAWS = 100
STABILITY_MARGIN = 0.05

FIG4A_FLAGS = [
    "--gamma-m", "1e-5", "--kappa1", "0.5", "--kappa2", "0.5",
    "--omega-eff1", "-1", "--omega-eff2", "-1",
    "--chi2", "0.01", "--eta", "0.01", "--n-th", "20",
]


def _verdict(criterion, passed, detail):
    print(f"ACCEPTANCE {criterion:02d} {'PASS' if passed else 'FAIL'}  {detail}")


def _curves(result):
    """(N, 3) array of negativities, NaN where a row carries no data."""
    out = np.full((len(result.rows), 3), np.nan)
    for i, row in enumerate(result.rows):
        if row.e_n is not None:
            out[i] = row.e_n
    return out


def _max_run(mask):
    best = run = 0
    for flag in mask:
        run = run + 1 if flag else 0
        best = max(best, run)
    return best


def _mirror_deviation(result_a, result_b):
    """Max |(en1,en2,en3) - (en2',en1',en3')| over paired rows; gating must agree."""
    dev = 0.0
    for ra, rb in zip(result_a.rows, result_b.rows):
        if (ra.e_n is None) != (rb.e_n is None):
            return float("inf")
        if ra.e_n is None:
            continue
        a1, a2, a3 = ra.e_n
        b1, b2, b3 = rb.e_n
        dev = max(dev, abs(a1 - b2), abs(a2 - b1), abs(a3 - b3))
    return dev


@pytest.fixture(scope="session")
def draw_statistics():
    """10^4 random systems: coefficient agreement and Hurwitz necessity."""
    rng = np.random.default_rng(20260815)
    max_rel_dev = 0.0
    n_stable = 0
    counterexamples = 0
    for _ in range(N_DRAWS):
        p = EffectiveParams(
            gamma_m=rng.uniform(0.0, 2.0),
            kappa1=rng.uniform(0.0, 2.0),
            kappa2=rng.uniform(0.0, 2.0),
            omega_eff1=rng.uniform(-5.0, 5.0),
            omega_eff2=rng.uniform(-5.0, 5.0),
            chi1=rng.uniform(0.0, 2.0),
            chi2=rng.uniform(0.0, 2.0),
            eta=rng.uniform(0.0, 2.0),
        )
        report = stability.check_stability(p)
        closed = np.array(report.coefficients)
        expanded = np.poly(model.build_drift(p))[::-1]
        scale = max(np.abs(closed).max(), np.abs(expanded).max())
        denom = np.maximum(np.maximum(np.abs(closed), np.abs(expanded)), 1e-12 * scale)
        max_rel_dev = max(max_rel_dev, (np.abs(closed - expanded) / denom).max())
        if report.eigen_stable:
            n_stable += 1
            if not (report.s1 > 0.0 and report.s2 > 0.0):
                counterexamples += 1
    return {
        "max_rel_dev": max_rel_dev,
        "n_stable": n_stable,
        "counterexamples": counterexamples,
    }


@pytest.fixture(scope="session")
def stable_systems():
    """100 comfortably stable draws with both covariance routes evaluated.

    gamma_m is drawn log-uniformly in the weak-damping regime the noise
    model targets (the momentum-only thermal noise floor acquires
    O((gamma_m / omega_m)^2) artifacts at strong damping, which would turn
    the physicality check into a test of the modeling approximation).
    """
    rng = np.random.default_rng(7)
    systems = []
    attempts = 0
    while len(systems) < STABLE_DRAWS:
        attempts += 1
        if attempts > 100_000:
            raise RuntimeError("stable draw rejection exceeded 100000 attempts")
        p = EffectiveParams(
            gamma_m=float(np.exp(rng.uniform(np.log(1e-6), np.log(1e-3)))),
            kappa1=rng.uniform(0.3, 2.0),
            kappa2=rng.uniform(0.3, 2.0),
            omega_eff1=rng.uniform(-3.0, 3.0),
            omega_eff2=rng.uniform(-3.0, 3.0),
            chi1=rng.uniform(0.0, 1.2),
            chi2=rng.uniform(0.0, 1.2),
            eta=rng.uniform(0.0, 1.2),
            n_th=rng.uniform(0.0, 50.0),
        )
        report = stability.check_stability(p)
        if report.max_real_part > -STABILITY_MARGIN:
            continue
        m = model.build_drift(p)
        d = model.build_diffusion(p)
        v_direct = solve_lyapunov(m, d)
        v_integrated = covariance_by_integration(m, d)
        systems.append({
            "m": m, "d": d,
            "v_direct": v_direct,
            "v_integrated": v_integrated,
        })
    return systems


@pytest.fixture(scope="session")
def preset_results():
    return {name: run_sweep(spec) for name, spec in PRESETS.items()}


def test_criterion_01_thermal_occupation():
    omega = 2.0 * math.pi * 1.0e7
    n_cold = thermal_occupation(omega, 0.01)
    n_warm = thermal_occupation(omega, 0.6)
    ok_cold = abs(n_cold - 20.0) <= 0.05 * 20.0
    ok_warm = abs(n_warm - 1250.0) <= 0.01 * 1250.0
    _verdict(1, ok_cold and ok_warm,
             f"n_th(2pi*1e7, 0.01 K) = {n_cold:.4f} (20 +-5%), "
             f"n_th(2pi*1e7, 0.6 K) = {n_warm:.2f} (1250 +-1%)")
    assert ok_cold and ok_warm


def test_criterion_02_characteristic_coefficients(draw_statistics):
    dev = draw_statistics["max_rel_dev"]
    ok = dev <= 1e-6
    _verdict(2, ok,
             f"max relative deviation {dev:.3e} between closed-form and "
             f"expanded coefficients over {N_DRAWS} draws (tol 1e-6)")
    assert ok


def test_criterion_03_hurwitz_necessity(draw_statistics):
    n_stable = draw_statistics["n_stable"]
    bad = draw_statistics["counterexamples"]
    ok = bad == 0 and n_stable > 0
    _verdict(3, ok,
             f"{n_stable} eigen-stable draws out of {N_DRAWS}, "
             f"{bad} with S1 <= 0 or S2 <= 0")
    assert ok


def test_criterion_04_lyapunov_routes_agree(stable_systems):
    max_gap = 0.0
    max_residual_ratio = 0.0
    for sys_ in stable_systems:
        gap = np.abs(sys_["v_direct"] - sys_["v_integrated"]).max()
        max_gap = max(max_gap, gap)
        residual = sys_["m"] @ sys_["v_direct"] + sys_["v_direct"] @ sys_["m"].T + sys_["d"]
        max_residual_ratio = max(
            max_residual_ratio, np.abs(residual).max() / np.abs(sys_["d"]).max()
        )
    ok = max_gap <= 1e-6 and max_residual_ratio <= 1e-9
    _verdict(4, ok,
             f"max |direct - integrated| = {max_gap:.3e} (tol 1e-6), "
             f"max residual / ||D||_max = {max_residual_ratio:.3e} (tol 1e-9) "
             f"on {len(stable_systems)} stable draws")
    assert ok


def test_criterion_05_uncertainty_bound(stable_systems):
    worst = min(
        min(min_symplectic_eigenvalue(sys_["v_direct"]),
            min_symplectic_eigenvalue(sys_["v_integrated"]))
        for sys_ in stable_systems
    )
    ok = worst >= 0.5 - 1e-8
    _verdict(5, ok,
             f"min symplectic eigenvalue {worst:.12f} over all computed "
             f"covariances (bound 0.5 - 1e-8)")
    assert ok


def test_criterion_06_negativity_closed_form():
    def embedded(x_diag, z, z_sign):
        v = np.eye(6) * 0.5
        v[0, 0] = v[1, 1] = v[2, 2] = v[3, 3] = x_diag
        v[0, 2] = v[2, 0] = z
        v[1, 3] = v[3, 1] = z_sign * z
        return reduce(v, BipartitePair.MECH_OPT1)

    vacuum_en = log_negativity(embedded(0.5, 0.0, -1.0)).e_n
    worst = 0.0
    for r in (0.1, 0.5, 1.0):
        en = log_negativity(
            embedded(math.cosh(2 * r) / 2, math.sinh(2 * r) / 2, -1.0)
        ).e_n
        worst = max(worst, abs(en - 2.0 * r))
    ok = vacuum_en == 0.0 and worst <= 1e-9
    _verdict(6, ok,
             f"vacuum E_N = {vacuum_en!r} (exact 0 required), max squeezed-state "
             f"deviation |E_N - 2r| = {worst:.3e} (tol 1e-9)")
    assert ok


def test_criterion_07_detuning_scan_shape(preset_results):
    clauses = {}
    for name in ("fig2a", "fig2c"):
        en = _curves(preset_results[name])
        window = _max_run((en > 1e-3).all(axis=1))
        clauses[f"{name} simultaneous window"] = window >= 2
        for k, label in enumerate(("en1", "en2", "en3")):
            zeros = int((en[:, k] == 0.0).sum())
            clauses[f"{name} {label} exact zeros ({zeros})"] = zeros > 0
    mirror = _mirror_deviation(preset_results["fig2a"], preset_results["fig2c"])
    clauses[f"mode-swap mirror ({mirror:.3e})"] = mirror <= 1e-8
    ok = all(clauses.values())
    failed = [k for k, v in clauses.items() if not v]
    _verdict(7, ok, "all clauses hold" if ok else "violated: " + "; ".join(failed))
    assert ok, failed


def test_criterion_08_hot_bath_suppression(preset_results):
    clauses = {}
    for cold_name, hot_name in (("fig2a", "fig2b"), ("fig2c", "fig2d")):
        cold = _curves(preset_results[cold_name])
        hot = _curves(preset_results[hot_name])
        for k, label in enumerate(("en1", "en2", "en3")):
            cold_max = np.nanmax(cold[:, k])
            hot_max = np.nanmax(hot[:, k])
            clauses[f"{hot_name} {label} max {hot_max:.4f} < {cold_max:.4f}"] = (
                hot_max < cold_max
            )
            clauses[f"{hot_name} {label} still positive"] = hot_max > 0.0
    ok = all(clauses.values())
    failed = [k for k, v in clauses.items() if not v]
    _verdict(8, ok, "every curve attenuated but nonzero" if ok
             else "violated: " + "; ".join(failed))
    assert ok, failed


def test_criterion_09_temperature_decay(preset_results):
    result = preset_results["fig3a"]
    en = _curves(result)
    steps = np.diff(en, axis=0)
    non_increasing = bool(np.all(steps <= 1e-6))
    t = np.array([row.axis_value for row in result.rows])
    simultaneous = bool(np.any((t < 2.4) & (en > 0.0).all(axis=1)))
    mirror = _mirror_deviation(result, preset_results["fig3b"])
    ok = non_increasing and simultaneous and mirror <= 1e-8
    _verdict(9, ok,
             f"max per-step increase {steps.max():.3e} (slack 1e-6), "
             f"simultaneous positivity below 2.4 K: {simultaneous}, "
             f"swap deviation {mirror:.3e} (tol 1e-8)")
    assert ok


def test_criterion_10_coupling_scan_shape(preset_results):
    clauses = {}
    for name, grows, stays in (("fig4a", 0, (1, 2)), ("fig4b", 1, (0, 2))):
        en = _curves(preset_results[name])
        if np.isnan(en).any():
            clauses[f"{name} fully stable"] = False
            continue
        monotone = bool(np.all(np.diff(en[:, grows]) >= 0.0))
        clauses[f"{name} growing curve monotone"] = monotone
        for k in stays:
            label = ("en1", "en2", "en3")[k]
            nonzero = int((en[:, k] != 0.0).sum())
            peak = en[:, k].max()
            clauses[
                f"{name} {label} zero everywhere "
                f"({nonzero} nonzero points, max {peak:.3e})"
            ] = nonzero == 0
    eta_spec = SweepSpec(
        base=PRESETS["fig4a"].base.replace(chi1=0.01, chi2=0.01),
        axis="eta", start=0.0, stop=2.0, points=501,
    )
    eta_en = _curves(run_sweep(eta_spec))
    eta_ok = not np.isnan(eta_en).any() and bool(np.all(eta_en[:, 2] == 0.0))
    clauses["en3 identically zero along eta scan at chi1=chi2=0.01"] = eta_ok
    ok = all(clauses.values())
    failed = [k for k, v in clauses.items() if not v]
    _verdict(10, ok, "all clauses hold" if ok else "violated: " + "; ".join(failed))
    assert ok, failed


def test_criterion_11_determinism_and_gating(tmp_path):
    def body(path):
        return [l for l in path.read_text().splitlines() if not l.startswith("#")]

    first = tmp_path / "run1.csv"
    second = tmp_path / "run2.csv"
    assert cli.main(["figure", "fig4a", "--out", str(first)]) == 0
    assert cli.main(["figure", "fig4a", "--out", str(second)]) == 0
    identical = body(first) == body(second)

    gated = tmp_path / "gating.csv"
    rc = cli.main(["sweep", "--axis", "chi1", "--start", "0.9", "--stop", "1.6",
                   "--points", "15", "--out", str(gated)] + FIG4A_FLAGS)
    assert rc == 0
    unstable_rows = 0
    leaks = 0
    for path in (first, second, gated):
        for line in body(path)[1:]:
            fields = line.split(",")
            if fields[2] == "false":
                unstable_rows += 1
                if any(f != "NA" for f in fields[5:11]):
                    leaks += 1
    ok = identical and unstable_rows > 0 and leaks == 0
    _verdict(11, ok,
             f"identical repeated bodies: {identical}; {unstable_rows} unstable "
             f"rows inspected, {leaks} with numeric entanglement values")
    assert ok
