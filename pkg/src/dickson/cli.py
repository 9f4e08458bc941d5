"""Command line front end for the verification grid.

Exit codes: 0 all non-skipped cases passed, 1 at least one failure,
2 usage error (malformed ranges abort before anything runs).
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from .fp_poly import require_prime
from .verify import (
    DEFAULT_D_MAX,
    DEFAULT_PAIRS,
    DEFAULT_TIME_BUDGET,
    GridConfig,
    THEOREMS,
    emit_report,
    run_grid,
    term_budget_from_env,
)


def _int_list(text: str, what: str) -> List[int]:
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        try:
            out.append(int(chunk))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad {what} entry {chunk!r}") from None
    if not out:
        raise argparse.ArgumentTypeError(f"empty {what} list")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dickson-verify",
        description="Exactly verify Dickson / Steenrod identities on a (p, n) grid.",
    )
    parser.add_argument(
        "--theorem", default="all", choices=("all",) + THEOREMS,
        help="which identity family to run (default: all)",
    )
    parser.add_argument(
        "--p", type=lambda t: _int_list(t, "prime"), default=None, metavar="LIST",
        help="comma separated primes; requires --n, combined as a product",
    )
    parser.add_argument(
        "--n", type=lambda t: _int_list(t, "rank"), default=None, metavar="LIST",
        help="comma separated variable counts; requires --p",
    )
    parser.add_argument(
        "--s", type=lambda t: _int_list(t, "s"), default=None, metavar="LIST",
        help="restrict the Dickson index s (default: all 0 <= s < n)",
    )
    parser.add_argument(
        "--i-max", type=int, default=None, metavar="K",
        help="largest operation index i (default: n + 4 per grid point)",
    )
    parser.add_argument(
        "--d-max", type=int, default=DEFAULT_D_MAX, metavar="K",
        help=f"largest degree for dimension cases (default: {DEFAULT_D_MAX})",
    )
    parser.add_argument(
        "--seed", type=int, default=0, metavar="U64",
        help="seed for the randomized cases (default: 0)",
    )
    parser.add_argument(
        "--format", default="text", choices=("text", "json"),
        help="report format (default: text)",
    )
    parser.add_argument(
        "--out", default=None, metavar="PATH",
        help="write the report to PATH instead of stdout",
    )
    parser.add_argument(
        "--inject-failure", action="store_true",
        help="append one deliberately falsified case (harness self test)",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if (args.p is None) != (args.n is None):
        parser.error("--p and --n must be given together")
    if args.p is not None:
        for p in args.p:
            try:
                require_prime(p)
            except (ValueError, TypeError) as exc:
                parser.error(str(exc))
        for n in args.n:
            if n < 1:
                parser.error(f"need n >= 1, got {n}")
        pairs = tuple((p, n) for p in args.p for n in args.n)
    else:
        pairs = DEFAULT_PAIRS
    if args.s is not None and any(s < 0 for s in args.s):
        parser.error("--s entries must be nonneg")
    if args.i_max is not None and args.i_max < 1:
        parser.error("--i-max must be at least 1")
    if args.d_max < 0:
        parser.error("--d-max must be nonneg")
    if not 0 <= args.seed < 2 ** 64:
        parser.error("--seed must fit in 64 bits")
    try:
        term_budget = term_budget_from_env()
    except ValueError as exc:
        parser.error(str(exc))

    config = GridConfig(
        theorems=THEOREMS if args.theorem == "all" else (args.theorem,),
        pairs=pairs,
        s_values=None if args.s is None else tuple(args.s),
        i_max=args.i_max,
        d_max=args.d_max,
        seed=args.seed,
        term_budget=term_budget,
        time_budget=DEFAULT_TIME_BUDGET,
        inject_failure=args.inject_failure,
    )
    report = run_grid(config)
    rendered = emit_report(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if report.summary["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
