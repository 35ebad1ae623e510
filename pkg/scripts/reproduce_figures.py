"""Run every CLI subcommand with default settings and write the CSVs to one directory.

    python scripts/reproduce_figures.py --out results [--points 31] [--seed 0]
"""
import argparse
import sys
import time

from dgmsim.cli import COMMANDS, main


def parse_args(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--points", type=int, default=None, help="override the T grid size")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--only", nargs="*", choices=sorted(COMMANDS), default=None)
    return ap.parse_args(argv)


def run_all(args) -> int:
    worst = 0
    for name in args.only or COMMANDS:
        argv = [name, "--out", args.out]
        if args.points is not None:
            argv += ["--points", str(args.points)]
        if args.seed is not None:
            argv += ["--seed", str(args.seed)]
        start = time.perf_counter()
        code = main(argv)
        print(f"{name:26s} exit {code}  {time.perf_counter() - start:7.1f} s")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(run_all(parse_args()))
