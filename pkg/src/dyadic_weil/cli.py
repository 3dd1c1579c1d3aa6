"""Command-line entry point: ``dyadic-weil <suite> [options]``."""

from __future__ import annotations

import argparse
import sys

from .suites import SUITES, SuiteConfig, emit_report, run_suites


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyadic-weil", description="Run exact verification suites.")
    parser.add_argument("suite", choices=SUITES + ("all",))
    parser.add_argument("--n", type=int, default=2, help="rank of Sp_2n (default 2)")
    parser.add_argument("--trunc", type=int, default=None, help="truncation depth N (default 2 if n = 1, else 1)")
    parser.add_argument("--max-len", type=int, default=6, help="Hecke word length bound")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=50, help="random samples per property")
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--self-test", action="store_true", help="corrupt the Fourier transform to exercise failure paths")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = SuiteConfig(
            n=args.n, trunc=args.trunc, max_len=args.max_len, seed=args.seed, samples=args.samples, corrupt=args.self_test
        )
        reports = run_suites(args.suite, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(reports, args.out, args.format)
    if args.out is None:
        sys.stdout.write(text)
    failed = [c for r in reports for c in r.checks if not c.passed]
    for r in reports:
        for c in r.checks:
            if not c.passed:
                print(f"FAIL {r.suite}/{c.name} {c.anchor}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
