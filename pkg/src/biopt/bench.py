"""Timed benchmark harness: seeded instances, wall-clock timing, CSV, summary.

The protocol: for every (family, size) cell, run seeds 1..reps through each
configured algorithm, timing wall-clock elapsed around the algorithm call
only (instance generation, oracle cross-checks, and I/O are outside the
timed region).  One untimed warm-up run per cell precedes the timed reps so
first-touch effects don't pollute short runs.  Cells run strictly one at a
time — parallelism exists only inside the splitting/meeting runs themselves.

When an instance is small enough for exhaustive enumeration, every
algorithm result is cross-checked against the brute-force oracle; a
mismatch aborts the whole benchmark loudly rather than recording a
questionable number.

CSV schema (header mandatory, one row per run)::

    family,size,seed,algorithm,threads,elapsed_ms,ip_solves,pareto_size,verified

``verified`` is ``true`` when the oracle cross-check ran (a mismatch never
reaches the file), empty when the instance was too large to check.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from biopt.algorithms import meeting_boip, sequential_boip, splitting_boip
from biopt.errors import BioptError
from biopt.instances import FAMILIES, GeneratorSpec, generate
from biopt.model import ParetoSet, Problem
from biopt.oracle import EnumerationBudget, brute_force_pareto

ALGORITHMS = ("sequential", "splitting", "meeting", "brute")
_THREADS = {"sequential": 1, "brute": 1, "splitting": 2, "meeting": 2}


@dataclass(frozen=True)
class BenchConfig:
    """What to benchmark and how."""

    families: tuple[str, ...]
    sizes: tuple[int, ...]
    reps: int = 10
    algorithms: tuple[str, ...] = ALGORITHMS
    time_limit_s: Optional[float] = None
    out: Optional[str] = None
    oracle_max_box: int = 10**7
    warmup: bool = True
    executor: str = "process"
    cost_range: tuple[int, int] = (1, 100)

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if not self.families or not self.sizes:
            raise ValueError("need at least one family and one size")
        for family in self.families:
            if family not in FAMILIES:
                raise ValueError(f"unknown family {family!r}")
        if not self.algorithms:
            raise ValueError("need at least one algorithm")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {alg!r}")
        if self.time_limit_s is not None and self.time_limit_s <= 0:
            raise ValueError("time limit must be positive")


@dataclass(frozen=True)
class BenchRecord:
    """One timed run."""

    family: str
    size: int
    seed: int
    algorithm: str
    threads: int
    elapsed_ms: float
    ip_solves: int
    pareto_size: int
    verified: Optional[bool] = None
    timed_out: bool = False

    def __post_init__(self) -> None:
        if self.elapsed_ms < 0:
            raise ValueError("elapsed time cannot be negative")


def _run_algorithm(
    algorithm: str, problem: Problem, executor: str, oracle_budget: int
) -> tuple[ParetoSet, int]:
    """Run one algorithm; return its front and total subproblem count."""
    if algorithm == "sequential":
        front, stats = sequential_boip(problem)
        return front, stats.ip_solves
    if algorithm == "splitting":
        front, stats = splitting_boip(problem, t=2, executor=executor)
        return front, stats.ip_solves
    if algorithm == "meeting":
        front, stats = meeting_boip(problem, executor=executor)
        return front, stats.ip_solves
    if algorithm == "brute":
        return brute_force_pareto(problem, EnumerationBudget(oracle_budget)), 0
    raise ValueError(f"unknown algorithm {algorithm!r}")


def run_bench(config: BenchConfig) -> list[BenchRecord]:
    """Execute the whole benchmark grid; abort loudly on any oracle mismatch."""
    records: list[BenchRecord] = []
    for family in config.families:
        for size in config.sizes:
            if config.warmup:
                problem = generate(GeneratorSpec(family, size, 1, config.cost_range))
                _run_algorithm(
                    config.algorithms[0], problem, config.executor, config.oracle_max_box
                )
            for seed in range(1, config.reps + 1):
                problem = generate(GeneratorSpec(family, size, seed, config.cost_range))
                oracle: Optional[ParetoSet] = None
                if problem.box_size() <= config.oracle_max_box:
                    oracle = brute_force_pareto(
                        problem, EnumerationBudget(config.oracle_max_box)
                    )
                for algorithm in config.algorithms:
                    start = time.perf_counter()
                    front, ip_solves = _run_algorithm(
                        algorithm, problem, config.executor, config.oracle_max_box
                    )
                    # round to the CSV's precision here so summaries computed
                    # from records and from the emitted file agree exactly
                    elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
                    verified: Optional[bool] = None
                    if oracle is not None:
                        if set(front.outcomes()) != set(oracle.outcomes()):
                            raise BioptError(
                                f"{algorithm} disagrees with the oracle on "
                                f"{family} size {size} seed {seed}"
                            )
                        verified = True
                    timed_out = (
                        config.time_limit_s is not None
                        and elapsed_ms > config.time_limit_s * 1000.0
                    )
                    records.append(
                        BenchRecord(
                            family=family,
                            size=size,
                            seed=seed,
                            algorithm=algorithm,
                            threads=_THREADS[algorithm],
                            elapsed_ms=elapsed_ms,
                            ip_solves=ip_solves,
                            pareto_size=len(front),
                            verified=verified,
                            timed_out=timed_out,
                        )
                    )
    return records


CSV_COLUMNS = (
    "family",
    "size",
    "seed",
    "algorithm",
    "threads",
    "elapsed_ms",
    "ip_solves",
    "pareto_size",
    "verified",
)


def write_csv(records: Sequence[BenchRecord], destination) -> None:
    with Path(destination).open("w", newline="", encoding="utf-8") as sink:
        writer = csv.writer(sink)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            verified = "" if rec.verified is None else str(rec.verified).lower()
            writer.writerow(
                (
                    rec.family,
                    rec.size,
                    rec.seed,
                    rec.algorithm,
                    rec.threads,
                    f"{rec.elapsed_ms:.3f}",
                    rec.ip_solves,
                    rec.pareto_size,
                    verified,
                )
            )


@dataclass(frozen=True)
class SummaryRow:
    """Aggregate over the reps of one (family, size, algorithm) cell."""

    family: str
    size: int
    algorithm: str
    runs: int
    mean_elapsed_ms: float
    stdev_elapsed_ms: float
    mean_ip_solves: float
    speedup: Optional[float] = None  # mean(sequential) / mean(this), if known
    timeouts: int = 0


def summarize(records: Sequence[BenchRecord]) -> list[SummaryRow]:
    """Aggregate records per cell; speedups are against the sequential mean."""
    if not records:
        raise ValueError("nothing to summarize")
    cells: dict[tuple[str, int, str], list[BenchRecord]] = {}
    for rec in records:
        cells.setdefault((rec.family, rec.size, rec.algorithm), []).append(rec)
    seq_means = {
        (family, size): statistics.fmean(r.elapsed_ms for r in recs)
        for (family, size, algorithm), recs in cells.items()
        if algorithm == "sequential"
    }
    rows = []
    for (family, size, algorithm), recs in sorted(cells.items()):
        mean = statistics.fmean(r.elapsed_ms for r in recs)
        baseline = seq_means.get((family, size))
        speedup = None
        if baseline is not None and mean > 0:
            speedup = baseline / mean
        rows.append(
            SummaryRow(
                family=family,
                size=size,
                algorithm=algorithm,
                runs=len(recs),
                mean_elapsed_ms=mean,
                stdev_elapsed_ms=statistics.pstdev(r.elapsed_ms for r in recs),
                mean_ip_solves=statistics.fmean(r.ip_solves for r in recs),
                speedup=speedup,
                timeouts=sum(1 for r in recs if r.timed_out),
            )
        )
    return rows


def render_summary(rows: Sequence[SummaryRow]) -> str:
    """Aligned text table of the summary rows."""
    header = (
        "family",
        "size",
        "algorithm",
        "runs",
        "mean_ms",
        "stdev_ms",
        "mean_solves",
        "speedup",
        "timeouts",
    )
    body = [
        (
            row.family,
            str(row.size),
            row.algorithm,
            str(row.runs),
            f"{row.mean_elapsed_ms:.2f}",
            f"{row.stdev_elapsed_ms:.2f}",
            f"{row.mean_ip_solves:.1f}",
            "-" if row.speedup is None else f"{row.speedup:.2f}",
            str(row.timeouts),
        )
        for row in rows
    ]
    widths = [
        max(len(header[i]), *(len(line[i]) for line in body)) if body else len(header[i])
        for i in range(len(header))
    ]
    def fmt(line):
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)).rstrip()
    return "\n".join([fmt(header)] + [fmt(line) for line in body]) + "\n"
