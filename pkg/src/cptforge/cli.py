"""Command-line interface.

Two subcommands:

* ``cpt-forge learn --mode {mle|bayes} --graph G --data D --out DIR
  [--prior ones|FILE]`` reads a graph and a count CSV and writes one table
  CSV per node into DIR.
* ``cpt-forge verify --suite {golden|exact|stochastic|all} [--seed N]
  [--resolution N]`` runs the law suites and reports one PASS/FAIL line
  per check.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .network import (
    DataError,
    GraphSpec,
    ingest_counts,
    learn_bayes,
    learn_mle,
    parse_prior,
    write_cpts,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpt-forge",
        description="Learn conditional probability tables from count data, "
        "and verify the laws the learning maps satisfy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn tables from a graph and count data")
    learn.add_argument("--mode", choices=("mle", "bayes"), required=True,
                       help="normalise counts directly, or update per-row priors")
    learn.add_argument("--graph", required=True, help="graph file (node/edge directives)")
    learn.add_argument("--data", required=True, help="count CSV in long format")
    learn.add_argument("--out", required=True, help="output directory (one CSV per node)")
    learn.add_argument("--prior", default="ones",
                       help="'ones' or a per-node pseudo-count file (bayes mode)")

    verify = sub.add_parser("verify", help="run the law suites")
    verify.add_argument("--suite", choices=("golden", "exact", "stochastic", "all"),
                        required=True)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--resolution", type=int, default=400)
    return parser


def _run_learn(args: argparse.Namespace) -> int:
    try:
        graph = GraphSpec.load(args.graph)
        table = ingest_counts(args.data, graph)
        if args.mode == "mle":
            cpts = learn_mle(table, graph)
        else:
            prior = None
            if args.prior != "ones":
                from pathlib import Path

                prior = parse_prior(Path(args.prior).read_text(encoding="utf-8"), graph)
            cpts = learn_bayes(table, graph, prior)
        written = write_cpts(cpts, args.out)
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


def _run_verify(args: argparse.Namespace) -> int:
    from .verify import run_suite  # deferred: pulls in numpy

    results = run_suite(args.suite, seed=args.seed, resolution=args.resolution)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.suite}/{r.name}: {r.detail}")
    failed = sum(1 for r in results if not r.passed)
    print(
        f"SUMMARY: {len(results) - failed} passed, {failed} failed "
        f"(suite={args.suite}, seed={args.seed}, resolution={args.resolution})"
    )
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "learn":
        return _run_learn(args)
    return _run_verify(args)


if __name__ == "__main__":
    raise SystemExit(main())
