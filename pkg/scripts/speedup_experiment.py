#!/usr/bin/env python3
"""Timing experiment: two-worker algorithms vs. the sequential baseline.

Runs the benchmark harness on seeded instances, writes the per-run CSV,
and prints the aggregate table with speedup factors relative to the
sequential sweep.  The defaults reproduce the release-gate measurement:
ten knapsack instances at size 24, all three exact algorithms, process
workers.

Wall-clock speedup requires at least two free CPU cores.  On a
single-core host the two workers timeshare the core, so both parallel
algorithms come out slower than the baseline; the CSV still records
honest numbers either way.

Usage:
    python3 scripts/speedup_experiment.py
    python3 scripts/speedup_experiment.py --families knapsack assignment \
        --sizes 20 24 --reps 5 --out runs.csv
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from biopt.bench import BenchConfig, render_summary, run_bench, summarize, write_csv
from biopt.instances import FAMILIES


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--families", nargs="+", default=["knapsack"],
                        choices=FAMILIES)
    parser.add_argument("--sizes", nargs="+", type=int, default=[24])
    parser.add_argument("--reps", type=int, default=10,
                        help="instances per (family, size); seeds 1..reps")
    parser.add_argument("--algorithms", nargs="+",
                        default=["sequential", "meeting", "splitting"],
                        choices=("sequential", "splitting", "meeting", "brute"))
    parser.add_argument("--executor", default="process",
                        choices=("process", "thread"),
                        help="worker backend for the parallel algorithms")
    parser.add_argument("--out", default="speedup.csv", help="CSV destination")
    parser.add_argument("--no-warmup", action="store_true",
                        help="skip the untimed warm-up run per cell")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    config = BenchConfig(
        families=tuple(args.families),
        sizes=tuple(args.sizes),
        reps=args.reps,
        algorithms=tuple(args.algorithms),
        out=args.out,
        warmup=not args.no_warmup,
        executor=args.executor,
    )
    try:
        cores = len(os.sched_getaffinity(0))
    except AttributeError:  # non-Linux hosts
        cores = os.cpu_count() or 1
    print(f"cpu cores available: {cores}", file=sys.stderr)
    if cores < 2:
        print("warning: single core - parallel runs will timeshare and "
              "speedup factors will fall below 1.0", file=sys.stderr)

    records = run_bench(config)
    write_csv(records, args.out)
    print(f"wrote {len(records)} runs to {args.out}", file=sys.stderr)
    print(render_summary(summarize(records)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
