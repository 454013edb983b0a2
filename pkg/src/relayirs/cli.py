"""Command line entry point: ``relayirs {rates,sizing,verify,figure}``."""

from __future__ import annotations

import argparse
import sys

from . import oracle, sweep
from .rates import Mode


def _write(rows, out, default_name):
    path = out or default_name and sweep.default_output(default_name)
    if path:
        sweep.emit_csv(rows, path)
        print(f"wrote {len(rows)} rows to {path}", file=sys.stderr)
    else:
        sys.stdout.write(sweep.format_csv(rows))


def _cmd_rates(args):
    cfg = sweep.SweepConfig.load(args.config)
    rows = sweep.run_rate_sweep(cfg, args.workers)
    _write(rows, args.out or cfg.output_path, "rates.csv")


def _cmd_sizing(args):
    cfg = sweep.SweepConfig.load(args.config).with_overrides(target_rate=args.target)
    rows = sweep.run_sizing_sweep(cfg, args.workers)
    _write(rows, args.out or cfg.output_path, "sizing.csv")


def _cmd_verify(args):
    records = oracle.monte_carlo_records(args.seed, args.trials, args.m_max, args.l_max, args.workers)
    run = oracle.summarize(args.seed, records)
    if args.csv:
        oracle.write_trial_csv(records, args.csv)
    print(run.summary())
    return 0 if run.passed else 1


def _cmd_figure(args):
    rows = sweep.run_preset(args.id, args.workers, mode=args.mode and Mode(args.mode), target_rate=args.target)
    _write(rows, args.out, f"figure{args.id}.csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relayirs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rates", help="achievable-rate sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_rates)

    p = sub.add_parser("sizing", help="element-count sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--target", type=float, required=True, help="target rate in bps/Hz")
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_sizing)

    p = sub.add_parser("verify", help="Monte-Carlo check of the phase-optimization closed forms")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--m-max", type=int, default=64)
    p.add_argument("--l-max", type=int, default=4)
    p.add_argument("--csv", help="optional per-trial CSV")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("figure", help="run a bundled figure preset")
    p.add_argument("--id", type=int, choices=(4, 5, 6), required=True)
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--target", type=float, help="target rate override (figure 6)")
    p.set_defaults(func=_cmd_figure)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except (sweep.ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
