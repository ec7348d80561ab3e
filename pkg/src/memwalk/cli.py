"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 I/O failure.
Every command writing files also writes ``<out>.manifest.json`` listing the
outputs with their sha256 digests.  ``--config FILE`` reads flat
``key = value`` lines named like the long flags; explicit flags win.
The default output directory is ``$MEMWALK_OUTPUT_DIR`` or the current one.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io as mio
from .engine import EnsembleConfig, default_threads, geometric_times, run_ensemble
from .errors import ParameterError, RegimeError, ResourceLimitError
from .model import Parameters
from .moments import msd_branch, variance_series
from .oracle import DEFAULT_CEILING, exact_distribution, exact_moments, position_arrays
from .regimes import analytic_exponent, classify, fit_exponent, regime_table, sweep_line, trailing_fraction
from .verify import oracle_vs_analytic

OUTPUT_ENV = "MEMWALK_OUTPUT_DIR"


class UsageError(Exception):
    pass


def read_config(path) -> dict:
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        cfg[key.lstrip("-").replace("-", "_")] = value
    return cfg


def _add_params(sp, s_default=0.5):
    sp.add_argument("--p", type=float, help="probability of following the recalled step")
    sp.add_argument("--q", type=float, help="probability of opposing it")
    sp.add_argument("--r", type=float, help="probability of resting")
    sp.add_argument("--s", type=float, default=s_default, help="probability the first step goes right")


def _add_out(sp):
    sp.add_argument("--out", help="output file (default: $MEMWALK_OUTPUT_DIR/<command>.<ext>)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="memwalk", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"memwalk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="Monte Carlo ensemble statistics")
    _add_params(sp)
    _add_out(sp)
    sp.add_argument("--t-max", type=int, default=1000)
    sp.add_argument("--trajectories", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--per-decade", type=int, default=20)
    sp.add_argument("--threads", type=int, default=default_threads())
    sp.add_argument("--chunk-size", type=int, default=8192)

    sp = sub.add_parser("analytic", help="exact moments at chosen times")
    _add_params(sp)
    _add_out(sp)
    sp.add_argument("--times", help="comma-separated times")
    sp.add_argument("--t-max", type=int, default=1000)
    sp.add_argument("--per-decade", type=int, default=20)

    sp = sub.add_parser("oracle", help="exact position distribution at small t")
    _add_params(sp)
    _add_out(sp)
    sp.add_argument("--t", type=int, required=False, default=20)
    sp.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    sp.add_argument("--verify", action="store_true", help="compare moments with the closed forms")

    sp = sub.add_parser("classify", help="asymptotic variance regime")
    _add_params(sp)
    _add_out(sp)

    sp = sub.add_parser("sweep", help="regime map along a line of the parameter simplex")
    sp.add_argument("--fix", help="constraint such as p=0.625, r=0.6 or gamma=0.3")
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--s", type=float, default=0.5)
    sp.add_argument("--fit-t-max", type=int, default=10**6, help="0 disables exponent fits")
    sp.add_argument("--mc-trajectories", type=int, default=0, help="Monte Carlo spot checks (0: off)")
    sp.add_argument("--mc-t-max", type=int, default=10**4)
    sp.add_argument("--seed", type=int, default=0)
    _add_out(sp)

    sp = sub.add_parser("verify", help="oracle-vs-analytic grid and urn-equivalence checks")
    sp.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)

    for name, child in sub.choices.items():
        child.add_argument("--config", help="flat key = value file; flags override")
    return parser


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        cfg = read_config(args.config)
        child = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in child._actions}
        unknown = sorted(set(cfg) - set(known))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        defaults = {}
        for key, value in cfg.items():
            action = known[key]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                defaults[key] = action.type(value) if action.type else value
        child.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def params_from(args) -> Parameters:
    missing = [k for k in ("p", "q", "r") if getattr(args, k) is None]
    if missing:
        raise ParameterError("missing required parameters: " + ", ".join("--" + k for k in missing))
    return Parameters(args.p, args.q, args.r, args.s)


def out_path(args, default_name: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get(OUTPUT_ENV, ".")) / default_name


def manifest_path(path: Path) -> Path:
    return path.with_name(path.stem + ".manifest.json")


def _params_dict(params: Parameters) -> dict:
    return {"p": params.p, "q": params.q, "r": params.r, "s": params.s, "gamma": params.gamma}


def _finish(args, path: Path, text: str, started: str, parameters: dict, **extra):
    digest = mio.write_text(path, text)
    doc = mio.manifest(args.command, parameters, {path: digest}, started, **extra)
    mio.write_manifest(manifest_path(path), doc)
    print(f"wrote {path}")


def cmd_simulate(args) -> int:
    started = mio.now()
    params = params_from(args)
    if args.t_max < 1 or args.trajectories < 1:
        raise ParameterError("--t-max and --trajectories must be >= 1")
    config = EnsembleConfig(args.seed, args.trajectories, args.t_max,
                            geometric_times(args.t_max, args.per_decade),
                            chunk_size=args.chunk_size, threads=args.threads)
    result = run_ensemble(params, config)
    if args.format == "csv":
        text = mio.csv_text(result.rows(), mio.SIMULATION_COLUMNS)
    else:
        text = mio.simulation_json(result)
    path = out_path(args, f"simulate.{args.format}")
    _finish(args, path, text, started, _params_dict(params), seed=args.seed,
            record_times=[int(t) for t in config.record_times], trajectories=args.trajectories)
    return 0


def _analytic_times(args) -> np.ndarray:
    if args.times:
        try:
            times = np.array(sorted({int(v) for v in args.times.split(",") if v.strip()}), dtype=np.int64)
        except ValueError:
            raise ParameterError(f"--times must be comma-separated integers, got {args.times!r}")
        if len(times) == 0 or times[0] < 1:
            raise ParameterError("--times must be integers >= 1")
        return times
    if args.t_max < 1:
        raise ParameterError("--t-max must be >= 1")
    return geometric_times(args.t_max, args.per_decade)


def cmd_analytic(args) -> int:
    started = mio.now()
    params = params_from(args)
    times = _analytic_times(args)
    series = variance_series(params, times)
    branch = msd_branch(params)
    rows = [
        {"t": int(t), "mean": float(m), "mean_sq": float(m2), "var": float(v), "branch": branch}
        for t, m, m2, v in zip(series.times, series.mean, series.mean_sq, series.variance)
    ]
    path = out_path(args, "analytic.csv")
    _finish(args, path, mio.csv_text(rows, mio.ANALYTIC_COLUMNS), started, _params_dict(params),
            branch=branch)
    return 0


def cmd_oracle(args) -> int:
    started = mio.now()
    params = params_from(args)
    if args.t < 1:
        raise ParameterError("--t must be >= 1")
    dist = exact_distribution(params, args.t, ceiling=args.ceiling)
    positions, probs = position_arrays(dist)
    rows = [{"x": int(x), "probability": float(pr)} for x, pr in zip(positions, probs) if pr > 0]
    mean, mean_sq = exact_moments(dist)
    print(f"t={args.t} mean={mean:.17g} mean_sq={mean_sq:.17g}")
    extra = {"t": args.t, "mean": mean, "mean_sq": mean_sq}
    if args.verify:
        dev = oracle_vs_analytic(params, args.t)
        print(f"max relative deviation from closed forms over t<={args.t}: {dev:.3e}")
        extra["max_relative_deviation"] = dev
    path = out_path(args, "oracle.csv")
    _finish(args, path, mio.csv_text(rows, mio.DISTRIBUTION_COLUMNS), started, _params_dict(params), **extra)
    return 0


def cmd_classify(args) -> int:
    started = mio.now()
    params = params_from(args)
    rep = classify(params)
    flag = "unknown" if rep.log_correction is None else str(rep.log_correction).lower()
    print(f"{rep.regime} exponent={rep.exponent:.12g} log_correction={flag}")
    if args.out:
        text = mio.csv_text(regime_table([(params, rep)]), mio.REGIME_COLUMNS)
        _finish(args, Path(args.out), text, started, _params_dict(params))
    return 0


def _parse_fix(text):
    if not text or "=" not in text:
        raise ParameterError("--fix must look like p=0.625, r=0.6 or gamma=0.3")
    key, value = text.split("=", 1)
    try:
        return key.strip().lower(), float(value)
    except ValueError:
        raise ParameterError(f"--fix value {value!r} is not a number")


def cmd_sweep(args) -> int:
    started = mio.now()
    constraint, value = _parse_fix(args.fix)
    result = sweep_line(constraint, value, args.points, s=args.s)
    rows = regime_table(result.points)
    columns = list(mio.REGIME_COLUMNS)
    if args.fit_t_max:
        columns.append("fitted_exponent")
        for row, (params, rep) in zip(rows, result.points):
            try:
                row["fitted_exponent"] = analytic_exponent(params, args.fit_t_max).exponent
            except ValueError:
                row["fitted_exponent"] = float("nan")
    if args.mc_trajectories:
        columns.append("mc_exponent")
        times = geometric_times(args.mc_t_max)
        for row, (params, _) in zip(rows, result.points):
            res = run_ensemble(params, EnsembleConfig(args.seed, args.mc_trajectories, args.mc_t_max, times))
            try:
                row["mc_exponent"] = fit_exponent((times, res.series.variance),
                                                  trailing_fraction(times)).exponent
            except ValueError:
                row["mc_exponent"] = float("nan")
    for iv in result.intervals:
        span = f"{result.coordinate}={iv.start:.6g}" if iv.is_point else \
            f"{result.coordinate} in [{iv.start:.6g}, {iv.end:.6g}]"
        print(f"{iv.regime:<24} {span}")
    path = out_path(args, "sweep.csv")
    _finish(args, path, mio.csv_text(rows, columns), started,
            {"fix": constraint, "value": value, "points": args.points, "s": args.s},
            intervals=[{"regime": iv.regime, "start": iv.start, "end": iv.end} for iv in result.intervals])
    return 0


def cmd_verify(args) -> int:
    from .verify import main as verify_main

    return verify_main(args.perturb)


COMMANDS = {
    "simulate": cmd_simulate,
    "analytic": cmd_analytic,
    "oracle": cmd_oracle,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except (ParameterError, ResourceLimitError, RegimeError, UsageError) as exc:
        print(f"memwalk: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"memwalk: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
