"""Command-line front end.

Subcommands: ``simulate`` (write a synthetic tick pair as CSV), ``epps``
(measured Epps curve from tick files or an in-memory simulation),
``decompose`` (measured vs predicted coefficients per dt), ``exact``
(closed-form curves). Every output CSV gets a ``<name>.meta.json`` sidecar
recording the full configuration for reproducibility.

A ``--config`` file is a flat ``key = value`` text file mirroring the flags
(dashes or underscores); explicit flags win over config values.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .correlation import equal_time_rho, returns
from .decomposition import (
    DecompositionInput,
    exact_model_rho,
    exact_ratio,
    exp_ratio_approx,
    predict_rho,
)
from .errors import EppsError, NonPositiveKernel
from .ingest import SessionConfig, average_stats, daily_pipeline, parse_ticks, truncate_decay
from .simulator import ModelParams, simulate_pair
from .timeseries import resample_to_grid

DEFAULT_LAMBDA = 1.0 / 60.0
EPOCH_DATE_ORDINAL = 719163  # 1970-01-01


def _parse_dt_grid(text: str) -> list[int]:
    try:
        grid = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dt grid: {text!r}")
    if not grid or any(v <= 0 for v in grid) or sorted(grid) != grid:
        raise argparse.ArgumentTypeError("dt grid must be increasing positive integers")
    return grid


def _load_config(path: str) -> dict:
    values = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise EppsError(f"config line without '=': {raw!r}")
        key, val = line.split("=", 1)
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _write_csv(path: Path, header: list[str], rows, meta: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    sidecar = path.with_suffix(path.suffix + ".meta.json")
    sidecar.write_text(
        json.dumps({"version": __version__, **meta}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def _fmt(x: float) -> str:
    return f"{x:.10g}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _tick_rows(ticks, scale: float, start_ordinal: int):
    for t, w in zip(ticks.times, ticks.prices):
        day = datetime.date.fromordinal(start_ordinal + int(t) // 86400).isoformat()
        yield day, _fmt(t % 86400), _fmt(math.exp(scale * w))


def cmd_simulate(args) -> int:
    params = ModelParams(lam=args.lam, horizon=args.horizon, w0=args.w0, seed=args.seed)
    ticks_a, ticks_b = simulate_pair(params)
    out = Path(args.out)
    meta = {
        "command": "simulate",
        "lam": args.lam,
        "horizon": args.horizon,
        "seed": args.seed,
        "w0": args.w0,
        "tick_scale": args.tick_scale,
        "start_date": args.start_date,
    }
    start_ordinal = datetime.date.fromisoformat(args.start_date).toordinal()
    header = ["date", "time_s", "price"]
    _write_csv(out / "ticks_a.csv", header, _tick_rows(ticks_a, args.tick_scale, start_ordinal), meta)
    _write_csv(out / "ticks_b.csv", header, _tick_rows(ticks_b, args.tick_scale, start_ordinal), meta)
    print(f"wrote {out / 'ticks_a.csv'} ({len(ticks_a)} ticks), "
          f"{out / 'ticks_b.csv'} ({len(ticks_b)} ticks)")
    return 0


def _sim_series(args):
    """Simulate a pair and resample the whole horizon as one regular grid."""
    params = ModelParams(lam=args.lam, horizon=args.horizon, seed=args.seed)
    ticks_a, ticks_b = simulate_pair(params)
    t0 = math.ceil(max(ticks_a.times[0], ticks_b.times[0])) + 1
    n = (params.horizon - t0) // args.dt0 + 1
    reg_a = resample_to_grid(ticks_a, t0, args.dt0, n)
    reg_b = resample_to_grid(ticks_b, t0, args.dt0, n)
    return reg_a, reg_b


def _measured_curve_from_files(args, dt_grid):
    cfg = SessionConfig(
        session_start=args.session_start,
        session_end=args.session_end,
        dt0=args.dt0,
        max_decay_lag=args.max_decay_lag or 10,
    )
    ticks_a = parse_ticks(args.ticks_a, "A", cfg)
    ticks_b = parse_ticks(args.ticks_b, "B", cfg)
    stats = daily_pipeline(ticks_a, ticks_b, cfg, dt_grid=dt_grid)
    inp, curve = average_stats(stats)
    per_day = {dt: [s.rho_by_dt[dt] for s in stats if dt in s.rho_by_dt] for dt in dt_grid}
    return inp, curve, per_day


def cmd_epps(args) -> int:
    rows = []
    if args.sim:
        reg_a, reg_b = _sim_series(args)
        for dt in args.dt_grid:
            rho = equal_time_rho(returns(reg_a, dt), returns(reg_b, dt))
            rows.append((dt, _fmt(rho), 1, ""))
    else:
        _, _, per_day = _measured_curve_from_files(args, args.dt_grid)
        for dt in args.dt_grid:
            vals = per_day.get(dt, [])
            if not vals:
                continue
            mean = float(np.mean(vals))
            se = float(np.std(vals, ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else math.nan
            rows.append((dt, _fmt(mean), len(vals), "" if math.isnan(se) else _fmt(se)))
    out = Path(args.out) / "epps.csv"
    _write_csv(out, ["dt_s", "rho", "n_days", "stderr"], rows, _meta(args, "epps"))
    print(f"wrote {out}")
    return 0


def cmd_decompose(args) -> int:
    if args.sim:
        reg_a, reg_b = _sim_series(args)
        ra = returns(reg_a, args.dt0)
        rb = returns(reg_b, args.dt0)
        from .correlation import decay_function

        # simulated decays are used raw (no signal/noise truncation); default
        # lag range covers five decay time constants
        max_lag = args.max_decay_lag or max(10, math.ceil(5.0 / (args.lam * args.dt0)))
        rho0 = equal_time_rho(ra, rb)
        inp = DecompositionInput(
            rho0=rho0,
            f_ab=decay_function(ra, rb, max_lag),
            f_aa=decay_function(ra, ra, max_lag),
            f_bb=decay_function(rb, rb, max_lag),
            dt0=args.dt0,
        )
        measured = {
            dt: equal_time_rho(returns(reg_a, dt), returns(reg_b, dt)) for dt in args.dt_grid
        }
    else:
        inp, curve, _ = _measured_curve_from_files(args, args.dt_grid)
        inp = DecompositionInput(
            rho0=inp.rho0,
            f_ab=truncate_decay(inp.f_ab, "cross"),
            f_aa=truncate_decay(inp.f_aa, "auto"),
            f_bb=truncate_decay(inp.f_bb, "auto"),
            dt0=inp.dt0,
        )
        measured = dict(zip(curve.dts.astype(int), curve.rhos))
    rows = []
    for dt in args.dt_grid:
        if dt not in measured:
            continue
        try:
            pred, flag = _fmt(predict_rho(inp, dt)), ""
        except NonPositiveKernel as exc:
            pred, flag = "nan", f"non-positive-kernel: {exc}"
        rows.append((dt, _fmt(measured[dt]), pred, flag))
    out = Path(args.out) / "decompose.csv"
    _write_csv(out, ["dt_s", "rho_measured", "rho_predicted", "flag"], rows, _meta(args, "decompose"))
    print(f"wrote {out}")
    return 0


def cmd_exact(args) -> int:
    rows = []
    for dt in args.dt_grid:
        rows.append((
            dt,
            _fmt(exact_model_rho(args.lam, dt)),
            _fmt(exact_ratio(args.lam, dt, args.dt0)),
            _fmt(exp_ratio_approx(args.lam, dt, args.dt0)),
        ))
    out = Path(args.out) / "exact.csv"
    _write_csv(out, ["dt_s", "rho_exact", "ratio_exact", "ratio_approx"], rows, _meta(args, "exact"))
    print(f"wrote {out}")
    return 0


def _meta(args, command: str) -> dict:
    skip = {"func"}
    return {"command": command, **{k: v for k, v in sorted(vars(args).items()) if k not in skip}}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--dt0", type=int, default=1, help="base grid step in seconds")
    p.add_argument("--dt-grid", type=_parse_dt_grid, default=[1, 10, 60, 300, 1800],
                   help="comma-separated sampling scales in seconds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--config", default=None, help="flat key=value config file")


def _add_input_source(p):
    p.add_argument("--ticks-a", default=None, help="tick CSV for instrument A")
    p.add_argument("--ticks-b", default=None, help="tick CSV for instrument B")
    p.add_argument("--sim", action="store_true",
                   help="generate the pair in memory instead of reading files")
    p.add_argument("--lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--horizon", type=int, default=1_000_000)
    p.add_argument("--session-start", type=int, default=34200)
    p.add_argument("--session-end", type=int, default=57600)
    p.add_argument("--max-decay-lag", type=int, default=None,
                   help="decay-function lag range (default: 10 for tick files, "
                        "five decay time constants for --sim)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eppskit", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subcommands = {}

    p = sub.add_parser("simulate", help="write a simulated asynchronous tick pair as CSV")
    _add_common(p)
    p.add_argument("--lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--w0", type=float, default=0.0)
    p.add_argument("--tick-scale", type=float, default=1e-4,
                   help="log-price units per walk step when emitting prices")
    p.add_argument("--start-date", default="1970-01-01")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("epps", help="measured Epps curve")
    _add_common(p)
    _add_input_source(p)
    p.set_defaults(func=cmd_epps)

    p = sub.add_parser("decompose", help="measured vs predicted coefficients per dt")
    _add_common(p)
    _add_input_source(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("exact", help="closed-form model curves")
    _add_common(p)
    p.add_argument("--lam", type=float, default=DEFAULT_LAMBDA)
    p.set_defaults(func=cmd_exact)

    parser.subcommands = dict(sub.choices)
    return parser


def _apply_config(parser, argv):
    """Pre-scan for --config and fold its values in as parser defaults."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config", default=None)
    known, _ = probe.parse_known_args(argv)
    if known.config is None:
        return
    values = _load_config(known.config)
    for sub_parser in parser.subcommands.values():
        defaults = {}
        for action in sub_parser._actions:
            if action.dest in values:
                raw = values[action.dest]
                if action.type is not None:
                    defaults[action.dest] = action.type(raw)
                elif isinstance(action.default, bool):
                    defaults[action.dest] = raw.lower() in ("1", "true", "yes")
                else:
                    defaults[action.dest] = raw
        sub_parser.set_defaults(**defaults)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if getattr(args, "horizon", 1) <= 0:
            parser.error("--horizon must be positive")
        return args.func(args)
    except EppsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
