"""Brute-force Pareto oracle, independent of the LP/branch-and-bound stack.

This module exists to check the clever code: it enumerates the feasible
lattice points directly (no LP relaxations, no epsilon constraints) and
filters them to the non-dominated set.  It deliberately imports nothing from
the solver layers, so an agreement between the two routes is meaningful
evidence of correctness.

Enumeration walks the variable box depth first in row-major order (variables
by index, values ascending) and prunes with per-row interval arithmetic:
for every constraint it keeps the running prefix sum plus precomputed
minimum/maximum contributions of the remaining variables, and abandons a
prefix as soon as the constraint can no longer be satisfied.  Points are
produced in row-major order, so the representative kept for each outcome is
the lexicographically smallest feasible assignment attaining it.

A budget guard refuses variable boxes whose raw size exceeds the budget,
because even well-pruned enumeration is exponential in the worst case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from biopt.errors import BudgetExceeded
from biopt.model import ParetoSet, Problem, Relation, make_solution, pareto_filter

DEFAULT_MAX_POINTS = 10_000_000


@dataclass(frozen=True)
class EnumerationBudget:
    """Cap on the raw lattice-box size the oracle will accept."""

    max_points: int = DEFAULT_MAX_POINTS

    def check(self, box_size: int) -> None:
        if box_size > self.max_points:
            raise BudgetExceeded(box_size, self.max_points)


def iter_feasible(problem: Problem) -> Iterator[tuple[int, ...]]:
    """All feasible assignments, in row-major (lexicographic) order."""
    n = problem.num_vars
    bounds = problem.var_bounds
    rows = problem.constraints
    m = len(rows)

    # suffix_min[i][j] / suffix_max[i][j]: extreme contribution of variables
    # j.. to row i over the box
    suffix_min = [[0] * (n + 1) for _ in range(m)]
    suffix_max = [[0] * (n + 1) for _ in range(m)]
    for i, con in enumerate(rows):
        for j in range(n - 1, -1, -1):
            lo, hi = bounds[j]
            a, b = con.coeffs[j] * lo, con.coeffs[j] * hi
            suffix_min[i][j] = suffix_min[i][j + 1] + min(a, b)
            suffix_max[i][j] = suffix_max[i][j + 1] + max(a, b)

    acc = [0] * m
    point = [0] * n

    def prefix_viable(j: int) -> bool:
        for i in range(m):
            low = acc[i] + suffix_min[i][j]
            high = acc[i] + suffix_max[i][j]
            rel = rows[i].relation
            rhs = rows[i].rhs
            if rel is Relation.LE:
                if low > rhs:
                    return False
            elif rel is Relation.GE:
                if high < rhs:
                    return False
            else:
                if low > rhs or high < rhs:
                    return False
        return True

    def descend(j: int) -> Iterator[tuple[int, ...]]:
        if j == n:
            yield tuple(point)
            return
        lo, hi = bounds[j]
        for v in range(lo, hi + 1):
            point[j] = v
            for i in range(m):
                acc[i] += rows[i].coeffs[j] * v
            if prefix_viable(j + 1):
                yield from descend(j + 1)
            for i in range(m):
                acc[i] -= rows[i].coeffs[j] * v

    if prefix_viable(0):
        yield from descend(0)


def brute_force_pareto(
    problem: Problem, budget: EnumerationBudget | None = None
) -> ParetoSet:
    """The complete non-dominated set by exhaustive feasibility enumeration."""
    (budget or EnumerationBudget()).check(problem.box_size())
    return pareto_filter(
        make_solution(problem, point) for point in iter_feasible(problem)
    )
