"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BioptError(Exception):
    """Base class for all package-specific errors."""


class ParseError(BioptError):
    """An instance or result file did not conform to the line format."""


class NodeLimitExceeded(BioptError):
    """Branch and bound hit its node cap before proving optimality.

    Raised as a hard error rather than returning a possibly wrong answer:
    the enumeration algorithms rely on every single-objective solve being
    exact.
    """

    def __init__(self, limit: int) -> None:
        super().__init__(f"branch-and-bound node limit of {limit} exceeded")
        self.limit = limit


class BudgetExceeded(BioptError):
    """The exhaustive oracle refused a search box larger than its budget."""

    def __init__(self, box_size: int, budget: int) -> None:
        super().__init__(
            f"enumeration box has {box_size} lattice points, budget is {budget}"
        )
        self.box_size = box_size
        self.budget = budget


class BoundRegression(BioptError):
    """A shared bound was asked to move in the non-monotone direction.

    The meeting algorithm's correctness argument requires published bounds
    to only ever tighten; an increasing write indicates a logic error.
    """
