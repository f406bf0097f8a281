"""Shared fixtures: small hand-analyzed problems and a tiny-instance sampler."""

import random

import pytest

from biopt.model import LinearConstraint, Problem, Relation, Sense, build_problem

# One line per release-gate criterion, filled in by tests/test_acceptance.py
# and replayed at the end of the run so the verdicts are visible in plain
# `pytest -v` output.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)


@pytest.fixture
def cover() -> Problem:
    """min (x1, x2) s.t. x1 + x2 >= 3 on [0,3]^2.

    Front: (0,3), (1,2), (2,1), (3,0).  The sequential sweep needs five
    subproblem solves on it: four finds plus the closing infeasible probe.
    """
    return build_problem(
        num_vars=2,
        objectives=[(1, 0), (0, 1)],
        constraints=[LinearConstraint((1, 1), Relation.GE, 3)],
        var_bounds=[(0, 3), (0, 3)],
    )


@pytest.fixture
def knapsack() -> Problem:
    """max (3,1,4).x, (1,4,2).x s.t. (2,3,4).x <= 4, x binary.

    Feasible supports: {}, {1}, {2}, {3}.  User-sense front: (4,2), (1,4);
    internal-min front: (-4,-2), (-1,-4).
    """
    return build_problem(
        num_vars=3,
        objectives=[(3, 1, 4), (1, 4, 2)],
        constraints=[LinearConstraint((2, 3, 4), Relation.LE, 4)],
        var_bounds=[(0, 1)] * 3,
        sense=(Sense.MAX, Sense.MAX),
    )


@pytest.fixture
def three_outcomes() -> Problem:
    """Pick exactly one of three items; outcomes (1,5), (10,7), (12,1).

    (10,7) is dominated by (1,5), so the front is {(1,5), (12,1)} while the
    dominated outcome sits strictly between them in f1 — useful for showing
    that slice-local optima of a split f1 range need a global merge filter.
    """
    return build_problem(
        num_vars=3,
        objectives=[(1, 10, 12), (5, 7, 1)],
        constraints=[LinearConstraint((1, 1, 1), Relation.EQ, 1)],
        var_bounds=[(0, 1)] * 3,
    )


def random_tiny_problem(rng: random.Random) -> Problem:
    """A small random bi-objective IP with a nonempty chance of infeasibility."""
    n = rng.randint(1, 4)
    bounds = []
    for _ in range(n):
        lo = rng.randint(-2, 2)
        bounds.append((lo, lo + rng.randint(0, 3)))
    m = rng.randint(0, 3)
    relations = [Relation.LE, Relation.GE, Relation.EQ]
    constraints = [
        LinearConstraint(
            tuple(rng.randint(-4, 4) for _ in range(n)),
            relations[rng.randrange(3)],
            rng.randint(-8, 8),
        )
        for _ in range(m)
    ]
    objectives = [
        [rng.randint(-6, 6) for _ in range(n)],
        [rng.randint(-6, 6) for _ in range(n)],
    ]
    return build_problem(n, objectives, constraints, bounds)
