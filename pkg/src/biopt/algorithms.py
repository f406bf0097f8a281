"""Pareto-set enumeration: sequential sweep and two parallel variants.

All three algorithms walk the non-dominated staircase by repeatedly solving
constrained lexicographic subproblems:

* ``sequential_boip`` — one worker sweeps left to right: lexicographically
  minimize (f1, f2) under a strict bound f2 < l2, tighten l2 to the f2 just
  found, repeat until infeasible.  Exactly one subproblem per front point
  plus the terminating infeasible solve.
* ``splitting_boip`` — the f1 range [f1min, f1max] (obtained from the two
  endpoint lexicographic solves) is split into near-equal integer slices;
  each worker runs the sequential sweep restricted to its slice.  Slice
  borders let locally efficient points be dominated from outside the slice,
  so the merge applies a full dominance filter over the union plus the two
  endpoints.
* ``meeting_boip`` — two workers sweep from opposite ends under opposite
  lexicographic orders, each bounding its own trailing objective, and
  additionally pruning with the *other* worker's latest published bound
  (read fresh before every solve, published right after every find).  The
  workers stop where the sweeps meet.  Bounds only ever tighten, so stale
  reads cost duplicated work near the meeting point but never correctness:
  the union of the two prefixes is the complete front under every
  interleaving, and it is returned deduplicated by outcome without any
  dominance filtering — a violation would crash the staircase validation
  and is treated as a solver bug.

``SharedBounds`` is the only mutable state the meeting workers share.  It
lives in shared memory so the workers can be OS processes (giving true
parallelism) or threads; each cell is owned by one writer and enforces
monotone non-increase.
"""

from __future__ import annotations

import multiprocessing
import random
import threading
import time
import traceback
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Sequence

from biopt.errors import BioptError, BoundRegression
from biopt.ipsolve import BranchAndBoundBackend, ExtraConstraint, SolverBackend
from biopt.model import (
    LinearConstraint,
    ObjectiveOrder,
    OutcomeVector,
    ParetoSet,
    Problem,
    Relation,
    Solution,
    pareto_filter,
)

# int64 sentinel for "no bound yet"; published bounds must stay well below it
_NO_BOUND = 2**62
_BOUND_RANGE = 2**61


class SharedBounds:
    """The pair (l1, l2) of monotone non-increasing objective caps.

    Each cell is written by exactly one worker and read by the other.
    Reads are cheap and may be stale; they never fabricate values.  Writes
    must not increase a cell — the store enforces min-merge by rejecting
    regressions as hard errors, since the owning sweep only ever tightens
    its own bound and a regression means a logic bug somewhere.

    Backed by shared memory so it works identically across threads and
    forked worker processes.
    """

    def __init__(self) -> None:
        self._cells = (
            multiprocessing.Value("q", _NO_BOUND),
            multiprocessing.Value("q", _NO_BOUND),
        )

    def _cell(self, index: int):
        if index not in (1, 2):
            raise ValueError("bound index must be 1 or 2")
        return self._cells[index - 1]

    def read(self, index: int) -> Optional[int]:
        """Current cap on objective ``index``; None while unset."""
        cell = self._cell(index)
        with cell.get_lock():
            value = cell.value
        return None if value >= _NO_BOUND else value

    def publish(self, index: int, value: int) -> None:
        """Tighten the cap on objective ``index`` to ``value``."""
        if not isinstance(value, int):
            raise TypeError("bounds are integers")
        if abs(value) >= _BOUND_RANGE:
            raise BioptError(f"bound {value} outside the shared-store range")
        cell = self._cell(index)
        with cell.get_lock():
            if value > cell.value:
                raise BoundRegression(
                    f"bound l{index} would increase from {cell.value} to {value}"
                )
            cell.value = value

    @property
    def l1(self) -> Optional[int]:
        return self.read(1)

    @property
    def l2(self) -> Optional[int]:
        return self.read(2)


@dataclass(frozen=True)
class DelaySpec:
    """Deterministic random sleeps injected before every store access.

    Used to randomize the interleaving of the meeting workers when testing
    schedule independence: each worker draws its own reproducible stream of
    delays in [0, max_ms] milliseconds from ``seed``.
    """

    seed: int
    max_ms: float = 50.0

    def sleeper(self, worker: int) -> Callable[[], None]:
        rng = random.Random(self.seed * 1_000_003 + worker)

        def nap() -> None:
            time.sleep(rng.uniform(0.0, self.max_ms) / 1000.0)

        return nap


@dataclass(frozen=True)
class RunStats:
    """Work accounting for one enumeration run."""

    ip_solves: int
    feasible_solves: int
    infeasible_solves: int
    worker_elapsed: tuple[float, ...]
    pareto_size: int

    def __post_init__(self) -> None:
        if self.ip_solves != self.feasible_solves + self.infeasible_solves:
            raise ValueError("ip_solves must equal feasible + infeasible")


@dataclass(frozen=True)
class _SweepOutcome:
    """One worker's harvest: found solutions plus its local accounting."""

    solutions: tuple[Solution, ...]
    feasible: int
    infeasible: int
    elapsed: float


def _default_backends(n: int) -> tuple[SolverBackend, ...]:
    return tuple(BranchAndBoundBackend() for _ in range(n))


# ---------------------------------------------------------------------------
# sequential
# ---------------------------------------------------------------------------

def sequential_boip(
    problem: Problem, backend: Optional[SolverBackend] = None
) -> tuple[ParetoSet, RunStats]:
    """Enumerate the complete front with the single-worker epsilon sweep."""
    engine = backend if backend is not None else BranchAndBoundBackend()
    sweep = _epsilon_sweep(problem, engine)
    front = ParetoSet(sweep.solutions)  # found in staircase order already
    stats = RunStats(
        ip_solves=sweep.feasible + sweep.infeasible,
        feasible_solves=sweep.feasible,
        infeasible_solves=sweep.infeasible,
        worker_elapsed=(sweep.elapsed,),
        pareto_size=len(front),
    )
    return front, stats


def _epsilon_sweep(problem: Problem, backend: SolverBackend) -> _SweepOutcome:
    """The core recursion: lex-minimize (f1, f2) under a tightening f2 cap."""
    start = time.perf_counter()
    found: list[Solution] = []
    cap: Optional[int] = None
    feasible = infeasible = 0
    while True:
        extras = () if cap is None else (ExtraConstraint(2, cap),)
        res = backend.solve_lex(problem, ObjectiveOrder.F1_FIRST, extras)
        if not res.is_optimal:
            infeasible += 1
            break
        assert res.solution is not None
        feasible += 1
        found.append(res.solution)
        cap = res.solution.outcome.f2
    return _SweepOutcome(tuple(found), feasible, infeasible, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# range splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitPlan:
    """f1 slices for the splitting workers, plus the endpoint solutions.

    ``intervals`` are inclusive integer ranges; an entry with lo > hi is an
    empty slice (possible when the f1 range has fewer values than workers).
    ``endpoints`` holds the two lexicographic endpoint solutions, or is
    empty when the problem is infeasible (then ``intervals`` is empty too).
    """

    intervals: tuple[tuple[int, int], ...]
    endpoints: tuple[Solution, ...]


def split_range(
    problem: Problem, backend: Optional[SolverBackend] = None, t: int = 2
) -> SplitPlan:
    """Slice [f1min, f1max] into ``t`` near-equal integer intervals.

    The endpoints come from the two lexicographic solves: f1min from the
    (f1, f2) optimum, f1max from the (f2, f1) optimum.  Each of the first
    t-1 intervals spans w = floor(range/t) values; the last absorbs the
    remainder, so the intervals always partition [f1min, f1max].
    """
    if t < 1:
        raise ValueError("worker count must be positive")
    engine = backend if backend is not None else BranchAndBoundBackend()
    west = engine.solve_lex(problem, ObjectiveOrder.F1_FIRST)
    if not west.is_optimal:
        return SplitPlan((), ())
    east = engine.solve_lex(problem, ObjectiveOrder.F2_FIRST)
    assert west.solution is not None and east.solution is not None
    f1_min = west.solution.outcome.f1
    f1_max = east.solution.outcome.f1
    width = (f1_max - f1_min + 1) // t
    intervals = tuple(
        (f1_min + i * width, f1_min + (i + 1) * width - 1) for i in range(t - 1)
    ) + ((f1_min + (t - 1) * width, f1_max),)
    return SplitPlan(intervals, (west.solution, east.solution))


def _slice_problem(problem: Problem, lo: int, hi: int) -> Problem:
    """Restrict f1 to [lo, hi] with two rows over the objective expression."""
    f1 = problem.objective(1)
    fence = (
        LinearConstraint(f1, Relation.GE, lo),
        LinearConstraint(f1, Relation.LE, hi),
    )
    return replace(problem, constraints=problem.constraints + fence)


def _split_worker(problem: Problem, backend: SolverBackend) -> _SweepOutcome:
    return _epsilon_sweep(problem, backend)


def splitting_boip(
    problem: Problem,
    backends: Optional[Sequence[SolverBackend]] = None,
    t: int = 2,
    executor: str = "process",
) -> tuple[ParetoSet, RunStats]:
    """Enumerate the front by splitting the f1 range across ``t`` workers.

    Slice-local sweeps can return points dominated from outside their
    slice, so the union (plus the two endpoint solutions) goes through a
    full dominance filter.
    """
    engines = tuple(backends) if backends is not None else _default_backends(t)
    if len(engines) != t:
        raise ValueError(f"expected {t} backends, got {len(engines)}")
    plan = split_range(problem, engines[0], t)
    if not plan.endpoints:
        return ParetoSet(()), RunStats(1, 0, 1, (), 0)

    jobs = []
    lanes: list[Optional[int]] = []  # job index per interval, None if empty
    for (lo, hi), engine in zip(plan.intervals, engines):
        if lo > hi:
            lanes.append(None)
            continue
        lanes.append(len(jobs))
        jobs.append((_split_worker, (_slice_problem(problem, lo, hi), engine)))
    sweeps = _run_parallel(jobs, executor)

    pool: list[Solution] = list(plan.endpoints)
    for sweep in sweeps:
        pool.extend(sweep.solutions)
    front = pareto_filter(pool)

    feasible = 2 + sum(s.feasible for s in sweeps)
    infeasible = sum(s.infeasible for s in sweeps)
    elapsed = tuple(
        sweeps[lane].elapsed if lane is not None else 0.0 for lane in lanes
    )
    stats = RunStats(
        ip_solves=feasible + infeasible,
        feasible_solves=feasible,
        infeasible_solves=infeasible,
        worker_elapsed=elapsed,
        pareto_size=len(front),
    )
    return front, stats


# ---------------------------------------------------------------------------
# meeting
# ---------------------------------------------------------------------------

def _meeting_sweep(
    problem: Problem,
    worker: int,
    store: SharedBounds,
    backend: SolverBackend,
    delays: Optional[DelaySpec],
) -> _SweepOutcome:
    """One meeting worker: sweep under its own cap plus the other's bound.

    Worker 1 runs order (f2, f1) with its own cap l1; worker 2 runs
    (f1, f2) with its own cap l2.  Before every solve the other worker's
    cap is re-read from the store; after every find the worker's own new
    cap is published before the next feasibility test.
    """
    order = ObjectiveOrder.F2_FIRST if worker == 1 else ObjectiveOrder.F1_FIRST
    own, other = worker, 3 - worker
    nap = delays.sleeper(worker) if delays is not None else None
    start = time.perf_counter()
    found: list[Solution] = []
    own_cap: Optional[int] = None
    feasible = infeasible = 0
    while True:
        if nap is not None:
            nap()
        other_cap = store.read(other)
        extras = []
        if own_cap is not None:
            extras.append(ExtraConstraint(own, own_cap))
        if other_cap is not None:
            extras.append(ExtraConstraint(other, other_cap))
        res = backend.solve_lex(problem, order, extras)
        if not res.is_optimal:
            infeasible += 1
            break
        assert res.solution is not None
        feasible += 1
        found.append(res.solution)
        own_cap = res.solution.outcome.component(own)
        if nap is not None:
            nap()
        store.publish(own, own_cap)
    return _SweepOutcome(tuple(found), feasible, infeasible, time.perf_counter() - start)


def meeting_boip(
    problem: Problem,
    backends: Optional[Sequence[SolverBackend]] = None,
    bounds: Optional[SharedBounds] = None,
    executor: str = "process",
    delays: Optional[DelaySpec] = None,
) -> tuple[ParetoSet, RunStats]:
    """Enumerate the front with two opposed sweeps sharing monotone bounds.

    The union of the two harvests, deduplicated by outcome, is the complete
    front under every read/write interleaving; worker 2's representative is
    kept when both workers find the same outcome.  No dominance filter is
    applied — the staircase validation in ParetoSet doubles as a hard check
    of that guarantee.
    """
    engines = tuple(backends) if backends is not None else _default_backends(2)
    if len(engines) != 2:
        raise ValueError("meeting needs exactly two backends")
    store = bounds if bounds is not None else SharedBounds()
    if store.l1 is not None or store.l2 is not None:
        raise ValueError("meeting needs a fresh SharedBounds store")
    jobs = [
        (_meeting_sweep, (problem, 1, store, engines[0], delays)),
        (_meeting_sweep, (problem, 2, store, engines[1], delays)),
    ]
    sweep1, sweep2 = _run_parallel(jobs, executor)

    by_outcome: dict[OutcomeVector, Solution] = {}
    for sol in sweep1.solutions:
        by_outcome[sol.outcome] = sol
    for sol in sweep2.solutions:  # worker 2 wins representative collisions
        by_outcome[sol.outcome] = sol
    ordered = sorted(by_outcome.values(), key=lambda s: s.outcome.as_tuple())
    front = ParetoSet(tuple(ordered))

    feasible = sweep1.feasible + sweep2.feasible
    infeasible = sweep1.infeasible + sweep2.infeasible
    stats = RunStats(
        ip_solves=feasible + infeasible,
        feasible_solves=feasible,
        infeasible_solves=infeasible,
        worker_elapsed=(sweep1.elapsed, sweep2.elapsed),
        pareto_size=len(front),
    )
    return front, stats


def check_two_sided_cover(
    low_sweep: Iterable[Solution],
    high_sweep: Iterable[Solution],
    meeting_point: Optional[OutcomeVector],
    reference: ParetoSet,
) -> bool:
    """Do two opposed partial sweeps plus their meeting point cover a front?

    The caller vouches for provenance: ``low_sweep`` collected from the
    f2-first end, ``high_sweep`` from the f1-first end, ``meeting_point``
    (if any) non-dominated.  True iff the union of their outcomes, dedup-
    licated, equals the reference front's outcomes exactly.
    """
    outcomes = {sol.outcome for sol in low_sweep}
    outcomes.update(sol.outcome for sol in high_sweep)
    if meeting_point is not None:
        outcomes.add(meeting_point)
    return outcomes == set(reference.outcomes())


# ---------------------------------------------------------------------------
# worker execution
# ---------------------------------------------------------------------------

def _pipe_runner(conn, fn, args) -> None:
    try:
        conn.send(("ok", fn(*args)))
    except BaseException:  # noqa: BLE001 — the parent re-raises with context
        conn.send(("error", traceback.format_exc()))
    finally:
        conn.close()


def _run_parallel(jobs: Sequence[tuple], executor: str) -> list:
    """Run (fn, args) jobs on two-or-so workers; propagate failures."""
    if executor == "thread":
        slots: list = [None] * len(jobs)

        def tail(i: int, fn, args) -> None:
            try:
                slots[i] = ("ok", fn(*args))
            except BaseException:  # noqa: BLE001
                slots[i] = ("error", traceback.format_exc())

        threads = [
            threading.Thread(target=tail, args=(i, fn, args), daemon=True)
            for i, (fn, args) in enumerate(jobs)
        ]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
    elif executor == "process":
        ctx = multiprocessing.get_context("fork")
        procs = []
        parents = []
        for fn, args in jobs:
            parent, child = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_pipe_runner, args=(child, fn, args))
            proc.start()
            child.close()
            parents.append(parent)
            procs.append(proc)
        slots = []
        for parent, proc in zip(parents, procs):
            try:
                slots.append(parent.recv())
            except EOFError:
                slots.append(("error", "worker exited without reporting"))
            finally:
                parent.close()
        for proc in procs:
            proc.join()
    else:
        raise ValueError(f"unknown executor {executor!r} (use 'process' or 'thread')")

    results = []
    for tag, payload in slots:
        if tag == "error":
            raise BioptError(f"worker failed:\n{payload}")
        results.append(payload)
    return results
