"""workbench run | explain | list-algebras | list-suites | list-checks"""
from __future__ import annotations

import argparse
import os
import sys

from .config import ParseError, ValidationError, load_config
from .registry import ALGEBRA_HELP, CHECKS, UnknownCheckError, explain_check
from .report import run_suite
from .suites import SUITES, load_suite

JOBS_ENV = "VERTEXRB_JOBS"


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="workbench", description="Exact verification of vertex-algebra identities.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a config file or a built-in suite")
    r.add_argument("config", help="path to a YAML config, or the name of a built-in suite")
    r.add_argument("--cutoff", type=int, help="override every algebra's degree cutoff")
    r.add_argument("--kmax", type=int, help="largest witness exponent to search")
    r.add_argument("--jobs", type=int, default=None, help=f"worker threads (default ${JOBS_ENV} or 1)")
    r.add_argument("--seed", type=int, help="seed for sampled triples and pairs (default: the config's)")
    r.add_argument("--format", choices=("human", "structured"), help="output format (default: the config's)")
    r.add_argument("--output", help="write the report here instead of stdout")
    r.add_argument("--body-only", action="store_true", help="structured output without the timing header")
    e = sub.add_parser("explain", help="print the identity a check verifies and its window")
    e.add_argument("check")
    sub.add_parser("list-algebras", help="list the algebra names a config may use")
    sub.add_parser("list-suites", help="list the built-in suites")
    sub.add_parser("list-checks", help="list the check names a config may use")
    return p


def _load(arg: str):
    if os.path.exists(arg):
        return load_config(arg)
    if arg in SUITES:
        return load_suite(arg)
    raise FileNotFoundError(f"{arg!r} is neither a file nor a built-in suite ({', '.join(sorted(SUITES))})")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "explain":
        try:
            sys.stdout.write(explain_check(args.check))
        except UnknownCheckError as e:
            print(str(e), file=sys.stderr)
            return 2
        return 0
    if args.command == "list-algebras":
        for name, text in ALGEBRA_HELP.items():
            print(f"{name:20} {text}")
        return 0
    if args.command == "list-suites":
        for name in SUITES:
            print(name)
        return 0
    if args.command == "list-checks":
        for name in CHECKS:
            print(name)
        return 0
    try:
        cfg = _load(args.config)
    except (ParseError, ValidationError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    report = run_suite(cfg, cutoff=args.cutoff, kmax=args.kmax, jobs=jobs, seed=args.seed)
    fmt = args.format or cfg.output.get("format", "structured")
    if fmt == "human":
        text = report.human(cfg.output.get("verbosity", 1))
    else:
        text = report.body_json() if args.body_only else report.to_json()
    path = args.output or cfg.output.get("path")
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        print(f"{report.verdict}: report written to {path}")
    else:
        print(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
