"""Command line front end.

Subcommands
-----------
point       stationary entanglement at a single operating point
sweep       scan one axis and write the results as CSV (optionally a plot)
figure      run one of the named preset sweeps (fig2a .. fig4b)
selfcheck   cross-validate the numerical core on random systems

Parameters resolve in three layers: built-in defaults, then an INI config
file (--config), then explicit flags.  All rates are interpreted in units
of the mechanical frequency after ingestion; when omega_m is supplied as
an absolute value it is remembered so temperature axes can convert kelvin
to occupation numbers.

Exit codes: 0 success, 1 numerical failure (including failed selfchecks),
2 usage or configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import math
import os
import sys

import numpy as np

from . import entanglement, figures, lyapunov, model, selfcheck, stability, sweep

# Decoupled cavities at unit linewidth: stable for any bath occupation.
DEFAULT_PARAMS = {
    "omega_m": 1.0,
    "gamma_m": 0.01,
    "kappa1": 1.0,
    "kappa2": 1.0,
    "omega_eff1": -1.0,
    "omega_eff2": -1.0,
    "chi1": 0.0,
    "chi2": 0.0,
    "eta": 0.0,
    "n_th": 0.0,
}

PARAM_FIELDS = tuple(DEFAULT_PARAMS)

CSV_HEADER = (
    "axis", "axis_value", "eigen_stable", "s1", "s2",
    "en1", "en2", "en3", "mu1", "mu2", "mu3", "note",
)

_CONFIG_SECTIONS = ("system", "sweep", "output", "tolerances")
_SWEEP_KEYS = ("axis", "start", "stop", "points", "omega_m_abs")
_OUTPUT_KEYS = ("out", "plot")
_TOLERANCE_KEYS = ("oracle_tol", "coeff_rtol", "swap_tol", "uncertainty_slack")


def load_config(path: str) -> dict:
    """Parse an INI config file into {section: {key: typed value}}."""
    parser = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as handle:
        try:
            parser.read_file(handle)
        except configparser.Error as exc:
            raise ValueError(f"malformed config file {path}: {exc}") from exc
    config: dict = {}
    for section in parser.sections():
        if section not in _CONFIG_SECTIONS:
            raise ValueError(
                f"unknown config section [{section}]; expected one of {_CONFIG_SECTIONS}"
            )
        items = dict(parser.items(section))
        if section == "system":
            for key in items:
                if key not in PARAM_FIELDS:
                    raise ValueError(
                        f"unknown key {key!r} in [system]; expected one of {PARAM_FIELDS}"
                    )
            config[section] = {k: float(v) for k, v in items.items()}
        elif section == "sweep":
            parsed = {}
            for key, value in items.items():
                if key not in _SWEEP_KEYS:
                    raise ValueError(
                        f"unknown key {key!r} in [sweep]; expected one of {_SWEEP_KEYS}"
                    )
                if key == "axis":
                    parsed[key] = value
                elif key == "points":
                    parsed[key] = int(value)
                else:
                    parsed[key] = float(value)
            config[section] = parsed
        elif section == "output":
            for key in items:
                if key not in _OUTPUT_KEYS:
                    raise ValueError(
                        f"unknown key {key!r} in [output]; expected one of {_OUTPUT_KEYS}"
                    )
            config[section] = dict(items)
        else:
            for key in items:
                if key not in _TOLERANCE_KEYS:
                    raise ValueError(
                        f"unknown key {key!r} in [tolerances]; "
                        f"expected one of {_TOLERANCE_KEYS}"
                    )
            config[section] = {k: float(v) for k, v in items.items()}
    return config


def _resolve_params(args, config) -> tuple:
    """Merge defaults, config [system], and flags into normalized params.

    Returns (params, omega_m_abs).  omega_m_abs is the pre-normalization
    mechanical frequency when one was given (flag or config), else None.
    """
    values = dict(DEFAULT_PARAMS)
    values.update(config.get("system", {}))
    for field in PARAM_FIELDS:
        flag_value = getattr(args, field, None)
        if flag_value is not None:
            values[field] = flag_value
    raw = model.EffectiveParams(**values)
    omega_m_abs = getattr(args, "omega_m_abs", None)
    if omega_m_abs is None:
        omega_m_abs = config.get("sweep", {}).get("omega_m_abs")
    if omega_m_abs is None and raw.omega_m != 1.0:
        omega_m_abs = raw.omega_m
    return raw.normalized(), omega_m_abs


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float) and math.isnan(value):
        return "NA"
    return "%.17g" % value


def _row_record(row: sweep.SweepRow) -> list:
    e_n = row.e_n if row.e_n is not None else (None, None, None)
    mu = row.mu if row.mu is not None else (None, None, None)
    return [
        row.axis,
        _fmt(row.axis_value),
        "true" if row.eigen_stable else "false",
        _fmt(row.s1),
        _fmt(row.s2),
        _fmt(e_n[0]), _fmt(e_n[1]), _fmt(e_n[2]),
        _fmt(mu[0]), _fmt(mu[1]), _fmt(mu[2]),
        row.note,
    ]


def _write_csv_to(handle, result: sweep.SweepResult) -> None:
    meta = result.metadata
    handle.write(f"# optomech sweep written {meta.get('timestamp', '')}\n")
    handle.write(
        "# axis={axis} start={start} stop={stop} points={points} threads={threads}\n"
        .format(**{k: meta.get(k, "") for k in ("axis", "start", "stop", "points", "threads")})
    )
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        writer.writerow(_row_record(row))


def write_csv(result: sweep.SweepResult, out: str = None) -> None:
    """Write sweep CSV to `out`, or to stdout when no path is given."""
    if out is None:
        _write_csv_to(sys.stdout, result)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        _write_csv_to(handle, result)


def write_plot(result: sweep.SweepResult, path: str) -> None:
    """Plot the three negativities against the axis; gaps where data is NA."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x = [row.axis_value for row in result.rows]
    labels = ("E_N1 (mech : cavity 1)", "E_N2 (mech : cavity 2)",
              "E_N3 (cavity 1 : cavity 2)")
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for idx, label in enumerate(labels):
        y = [row.e_n[idx] if row.e_n is not None else np.nan for row in result.rows]
        ax.plot(x, y, label=label)
    ax.set_xlabel(result.spec.axis)
    ax.set_ylabel("logarithmic negativity")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _resolve_plot_path(plot_arg, out: str, default_stem: str = None) -> str:
    """Turn a bare --plot into a concrete path next to the CSV."""
    if plot_arg:
        return plot_arg
    if default_stem is not None:
        return default_stem + ".png"
    if out is None:
        raise ValueError("--plot needs an explicit path when the CSV goes to stdout")
    return os.path.splitext(out)[0] + ".png"


def _cmd_point(args) -> int:
    config = load_config(args.config) if args.config else {}
    params, _ = _resolve_params(args, config)
    report = stability.check_stability(params)
    payload = {
        "params": {field: getattr(params, field) for field in PARAM_FIELDS},
        "eigen_stable": report.eigen_stable,
        "marginal": report.marginal,
        "s1": report.s1,
        "s2": report.s2,
        "max_real_part": report.max_real_part,
        "e_n": None,
        "mu_minus": None,
    }
    if report.eigen_stable and not report.marginal:
        v = lyapunov.solve_lyapunov(model.build_drift(params),
                                    model.build_diffusion(params))
        results = {
            pair.value: entanglement.log_negativity(entanglement.reduce(v, pair))
            for pair in entanglement.PAIR_ORDER
        }
        payload["e_n"] = {name: r.e_n for name, r in results.items()}
        payload["mu_minus"] = {name: r.mu_minus for name, r in results.items()}
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    print(f"eigen_stable: {'true' if report.eigen_stable else 'false'}")
    print(f"marginal:     {'true' if report.marginal else 'false'}")
    print(f"s1: {report.s1:.17g}")
    print(f"s2: {report.s2:.17g}")
    print(f"max Re(eigenvalue): {report.max_real_part:.17g}")
    if payload["e_n"] is None:
        print("no stationary covariance: system is not strictly stable")
        return 0
    for name in payload["e_n"]:
        print(f"E_N[{name}] = {payload['e_n'][name]:.17g}   "
              f"mu_minus = {payload['mu_minus'][name]:.17g}")
    return 0


def _cmd_sweep(args) -> int:
    config = load_config(args.config) if args.config else {}
    params, omega_m_abs = _resolve_params(args, config)
    grid = dict(config.get("sweep", {}))
    grid.pop("omega_m_abs", None)
    for key in ("axis", "start", "stop", "points"):
        flag_value = getattr(args, key)
        if flag_value is not None:
            grid[key] = flag_value
    missing = [k for k in ("axis", "start", "stop") if k not in grid]
    if missing:
        raise ValueError(f"sweep needs {', '.join(missing)} (flag or [sweep] section)")
    grid.setdefault("points", 501)
    spec = sweep.SweepSpec(base=params, omega_m_abs=omega_m_abs, **grid)
    result = sweep.run_sweep(spec)
    out = args.out if args.out is not None else config.get("output", {}).get("out")
    plot_arg = args.plot if args.plot is not None else config.get("output", {}).get("plot")
    write_csv(result, out)
    if plot_arg is not None:
        write_plot(result, _resolve_plot_path(plot_arg, out))
    return 0


def _cmd_figure(args) -> int:
    spec = figures.PRESETS[args.name]
    result = sweep.run_sweep(spec)
    out = args.out if args.out is not None else f"{args.name}.csv"
    write_csv(result, out)
    if args.plot is not None:
        write_plot(result, _resolve_plot_path(args.plot, out, default_stem=args.name))
    return 0


def _cmd_selfcheck(args) -> int:
    config = load_config(args.config) if args.config else {}
    tolerances = dict(config.get("tolerances", {}))
    for key in _TOLERANCE_KEYS:
        flag_value = getattr(args, key)
        if flag_value is not None:
            tolerances[key] = flag_value
    results = selfcheck.run_selfcheck(
        draws=args.draws if args.draws is not None else 25,
        seed=args.seed if args.seed is not None else 0,
        **tolerances,
    )
    all_passed = True
    for check in results:
        status = "PASS" if check.passed else "FAIL"
        all_passed = all_passed and check.passed
        print(f"{status}  {check.name}: {check.detail}")
    return 0 if all_passed else 1


def _add_param_flags(parser) -> None:
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="INI config file")
    group = parser.add_argument_group(
        "system parameters (all rates share omega-m's units; with the "
        "default omega-m=1 they are in units of the mechanical frequency)"
    )
    group.add_argument("--omega-m", dest="omega_m", type=float, default=None,
                       help="mechanical frequency; give rad/s for temperature axes")
    group.add_argument("--gamma-m", dest="gamma_m", type=float, default=None,
                       help="mechanical damping rate")
    group.add_argument("--kappa1", type=float, default=None,
                       help="first cavity linewidth")
    group.add_argument("--kappa2", type=float, default=None,
                       help="second cavity linewidth")
    group.add_argument("--omega-eff1", dest="omega_eff1", type=float, default=None,
                       help="first effective detuning")
    group.add_argument("--omega-eff2", dest="omega_eff2", type=float, default=None,
                       help="second effective detuning")
    group.add_argument("--chi1", type=float, default=None,
                       help="first optomechanical coupling")
    group.add_argument("--chi2", type=float, default=None,
                       help="second optomechanical coupling")
    group.add_argument("--eta", type=float, default=None,
                       help="cavity-cavity coupling")
    group.add_argument("--n-th", dest="n_th", type=float, default=None,
                       help="mechanical bath occupation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optomech",
        description="Stationary entanglement of two optical cavities "
                    "coupled to one mechanical mode.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate a single operating point")
    _add_param_flags(point)
    point.add_argument("--json", action="store_true",
                       help="machine-readable output")
    point.set_defaults(func=_cmd_point)

    sweep_parser = sub.add_parser("sweep", help="scan one axis and write CSV")
    _add_param_flags(sweep_parser)
    sweep_parser.add_argument("--axis", choices=sweep.AXES, default=None)
    sweep_parser.add_argument("--start", type=float, default=None)
    sweep_parser.add_argument("--stop", type=float, default=None)
    sweep_parser.add_argument("--points", type=int, default=None)
    sweep_parser.add_argument("--omega-m-abs", dest="omega_m_abs", type=float,
                              default=None,
                              help="absolute mechanical frequency in rad/s "
                                   "(temperature axes)")
    sweep_parser.add_argument("--out", default=None, metavar="CSV",
                              help="output CSV path (default: stdout)")
    sweep_parser.add_argument("--plot", nargs="?", const="", default=None,
                              metavar="PNG", help="also write a plot")
    sweep_parser.set_defaults(func=_cmd_sweep)

    figure = sub.add_parser("figure", help="run a preset sweep")
    figure.add_argument("name", choices=sorted(figures.PRESETS))
    figure.add_argument("--out", default=None, metavar="CSV",
                        help="output CSV path (default: <name>.csv)")
    figure.add_argument("--plot", nargs="?", const="", default=None,
                        metavar="PNG", help="also write a plot (default: <name>.png)")
    figure.set_defaults(func=_cmd_figure)

    check = sub.add_parser("selfcheck", help="cross-validate the numerical core")
    check.add_argument("--config", default=None, metavar="FILE")
    check.add_argument("--draws", type=int, default=None)
    check.add_argument("--seed", type=int, default=None)
    check.add_argument("--oracle-tol", dest="oracle_tol", type=float, default=None)
    check.add_argument("--coeff-rtol", dest="coeff_rtol", type=float, default=None)
    check.add_argument("--swap-tol", dest="swap_tol", type=float, default=None)
    check.add_argument("--uncertainty-slack", dest="uncertainty_slack",
                       type=float, default=None)
    check.set_defaults(func=_cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    figures.verify_presets()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    # LinAlgError subclasses ValueError, so numeric failures go first
    except (np.linalg.LinAlgError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
