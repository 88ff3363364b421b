"""Command-line entry point: ``pisotrel <subcommand>``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .enumeration import enumerate_pisot
from .pipeline import PipelineConfig, default_jobs, run_pipeline, verify_paper_tables
from .polycore import IntPoly
from .relations import RelationType, test_relation
from .rootcert import RationalInterval

EXIT_MISMATCH = 2


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from exc


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pisotrel", description="Pisot number enumeration and conjugate relation tests")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    e = sub.add_parser("enumerate", help="all Pisot numbers of one degree in an open interval")
    e.add_argument("--degree", type=int, required=True)
    e.add_argument("--interval", type=_fraction, nargs=2, metavar=("A", "B"), required=True)
    e.add_argument("--out", type=Path)

    c = sub.add_parser("check", help="exact relation tests for one polynomial")
    c.add_argument("--poly", required=True, help='coefficients, highest first, e.g. "1 -2 0 1 -1"')
    c.add_argument("--relation", default="all",
                   choices=[r.cli_name for r in RelationType] + ["all"])
    c.add_argument("--json", action="store_true")

    p = sub.add_parser("pipeline", help="run the full search")
    p.add_argument("--family", choices=["three", "four", "both"], default="both")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--min-degree", type=int)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--no-combinatorial", action="store_true")
    p.add_argument("--base-eps", type=_fraction, default=Fraction(1, 10))
    p.add_argument("--resume", action="store_true")
    p.add_argument("--out", type=Path, required=True)

    v = sub.add_parser("verify-paper", help="compare search output with the published tables")
    v.add_argument("--max-degree", type=int, default=8)
    v.add_argument("--jobs", type=int, default=None)
    v.add_argument("--out", type=Path)
    return ap


def _cmd_enumerate(args) -> int:
    a, b = args.interval
    recs = enumerate_pisot(args.degree, RationalInterval.open(a, b))
    text = "".join(r.to_line() + "\n" for r in recs)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_check(args) -> int:
    f = IntPoly.from_line(args.poly)
    types = list(RelationType) if args.relation == "all" else [RelationType.from_name(args.relation)]
    types = [r for r in types if r.arity <= f.degree or args.relation != "all"]
    verdicts = [test_relation(f, r) for r in types]
    if args.json:
        print(json.dumps({"poly": f.to_line(), "verdicts": [v.to_json() for v in verdicts]}, indent=2))
    else:
        print(f"{f.degree} {f.to_line()}")
        for v in verdicts:
            print(v.to_line())
    return 0


def _cmd_pipeline(args) -> int:
    cfg = PipelineConfig(
        family=args.family,
        max_degree=args.max_degree,
        min_degree=args.min_degree,
        jobs=args.jobs if args.jobs is not None else default_jobs(),
        use_combinatorial=not args.no_combinatorial,
        out_dir=args.out,
        base_eps=args.base_eps,
        resume=args.resume,
    )
    report = run_pipeline(cfg)
    for name, fr in report.families.items():
        print(f"{name}-term counts: " + ", ".join(f"d={d}: {n}" for d, n in fr.counts.items()))
        for r in fr.survivors:
            sols = [str(p) for p in fr.solutions(r)]
            print(f"  {r.tag}: {len(fr.survivors[r])} survivors, solutions {sols}")
    print(f"report written to {args.out / 'report.json'}")
    return 0


def _cmd_verify(args) -> int:
    jobs = args.jobs if args.jobs is not None else default_jobs()
    with tempfile.TemporaryDirectory() as tmp:
        out = args.out or Path(tmp)
        report = run_pipeline(PipelineConfig(family="both", max_degree=args.max_degree, jobs=jobs, out_dir=out))
    checks = verify_paper_tables(report)
    for c in checks:
        print(c)
    return 0 if all(c.passed for c in checks) else EXIT_MISMATCH


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {
        "enumerate": _cmd_enumerate,
        "check": _cmd_check,
        "pipeline": _cmd_pipeline,
        "verify-paper": _cmd_verify,
    }
    try:
        return handlers[args.cmd](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
