"""Command line: ``qbailey verify | engine-check | list-identities``."""

from __future__ import annotations

import argparse
import json
import sys

from . import runner
from .catalog import catalog
from .errors import QBaileyError


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _usage_error(message: str, kind: str = "usage") -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qbailey", description="Exact verification of q-series identities at roots of unity.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify identities over an (N, m) grid")
    v.add_argument("--identities", default="all", help="comma-separated ids, or 'all'")
    v.add_argument("--N", dest="N", default="1..12", help="lo..hi (inclusive)")
    v.add_argument("--m", dest="m", default="1..1", help="lo..hi (inclusive)")
    v.add_argument("--format", choices=("json", "csv", "human"), default="json")
    v.add_argument("--jobs", type=int, default=None, help="worker processes (default $QBAILEY_JOBS or 1)")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--timings", action="store_true", help="include wall times (output no longer reproducible)")
    v.add_argument("--dump-theta-spec", action="store_true",
                   help="print the theta-sum specs the grid would evaluate, then exit")

    e = sub.add_parser("engine-check", help="run Bailey-engine and arithmetic self-checks")
    e.add_argument("--n-max", type=int, default=10)
    e.add_argument("--points", default="2/3,5/7,3/2", help="comma-separated rational sample points")
    e.add_argument("--pair", action="append", default=None, help="restrict to a pair label (repeatable)")
    e.add_argument("--base-exponent", type=int, choices=(1, 2), default=None,
                   help="treat the selected pairs as relative to q**K")
    e.add_argument("--out", default=None)

    sub.add_parser("list-identities", help="print catalog ids with parity and parameter range")
    return p


def _cmd_verify(args) -> int:
    try:
        jobs = args.jobs if args.jobs is not None else runner.default_jobs()
        ids = "all" if args.identities.strip() == "all" else [s.strip() for s in args.identities.split(",") if s.strip()]
        config = runner.RunConfig(identities=ids, N_range=runner.parse_range(args.N),
                                  m_range=runner.parse_range(args.m), format=args.format,
                                  jobs=jobs, timings=args.timings)
        config.identity_ids()
    except KeyError as exc:
        return _usage_error(f"unknown identity {exc.args[0]!r}", "unknown-identity")
    except ValueError as exc:
        return _usage_error(str(exc))
    if args.dump_theta_spec:
        _write(json.dumps(runner.dump_theta_specs(config), indent=1) + "\n", args.out)
        return 0
    reports, summary = runner.run_grid(config)
    _write(runner.format_grid(reports, summary, config.format, config.timings), args.out)
    return runner.exit_code(summary)


def _cmd_engine(args) -> int:
    try:
        points = runner.parse_points(args.points)
        if not points:
            raise ValueError("no sample points given")
        config = runner.RunConfig(sample_points=points, n_max=args.n_max,
                                  pairs=args.pair or "all", base_exponent=args.base_exponent)
        reports = runner.run_engine_checks(config)
    except QBaileyError as exc:
        return _usage_error(str(exc), type(exc).__name__)
    except (ValueError, ZeroDivisionError) as exc:
        return _usage_error(str(exc))
    summary = runner.engine_summary(reports)
    _write(json.dumps([r.to_json_obj() for r in reports] + [summary], indent=1) + "\n", args.out)
    return runner.exit_code(summary)


def _cmd_list() -> int:
    for spec in catalog():
        lo, hi = spec.m_range
        m = "m=1" if hi == 1 else "m>=1"
        theta = "  theta" if spec.theta is not None else ""
        sys.stdout.write(f"{spec.id:<16} {spec.parity:<4} {m:<5}{theta}  {spec.description}\n")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "engine-check":
        return _cmd_engine(args)
    return _cmd_list()


if __name__ == "__main__":
    sys.exit(main())
