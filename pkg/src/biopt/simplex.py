"""Exact two-phase primal simplex for LPs with bounded integer data.

The solver is the workhorse under the branch-and-bound backend, so it must be
exact: every quantity is a rational number, never a float.  Storing a dense
``Fraction`` tableau is an order of magnitude too slow in CPython, so each
tableau row is kept as a list of integer numerators with one shared positive
integer denominator, gcd-reduced after every pivot.  Only the (few) basic
variable values and ratio-test quantities are materialized as ``Fraction``.

Formulation notes:

* Every structural variable has finite integer bounds ``lo <= x <= hi``; it
  is shifted to ``y = x - lo`` with ``0 <= y <= u``.  Slack and artificial
  columns have lower bound 0 and no upper bound.
* Rows are normalized to nonnegative right-hand sides.  A ``<=`` row with
  nonnegative rhs starts with its slack basic; every other row gets a basic
  artificial, and phase 1 minimizes the artificial sum.  Leftover basic
  artificials at value zero are driven out; rows that cannot pivot them out
  are redundant and dropped.  Artificial columns are barred in phase 2.
* Anti-cycling is Bland's rule throughout: the entering column is the
  lowest-index eligible one, and ratio-test ties are broken by the lowest
  blocker variable index, with the entering variable's own opposite bound
  competing under its own index (a tie won there is a bound flip).

Termination is therefore guaranteed, and with a bounded variable box the
LP can never be unbounded; an unbounded ray indicates a bug and raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from biopt.errors import BioptError
from biopt.model import LinearConstraint, Relation


class SolveStatus(Enum):
    """Outcome of an exact solve (LPs here, IPs in the layer above).

    UNBOUNDED cannot occur while problems keep finite variable boxes; it is
    reported rather than silently mis-solved so that a model-construction
    bug upstream surfaces immediately.
    """

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class _UnboundedRay(Exception):
    """Internal signal: an improving direction has no blocking bound."""


@dataclass(frozen=True)
class LpResult:
    """Exact LP outcome: rational optimum and argmin in original coordinates."""

    status: SolveStatus
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL


class _VarState(Enum):
    BASIC = 0
    AT_LOWER = 1
    AT_UPPER = 2


def _reduced(nums: list[int], den: int) -> tuple[list[int], int]:
    """Normalize a scaled row: positive denominator, gcd canceled."""
    if den < 0:
        nums = [-v for v in nums]
        den = -den
    g = gcd(den, *nums)
    if g > 1:
        nums = [v // g for v in nums]
        den //= g
    return nums, den


class _Tableau:
    """Canonical simplex dictionary with row-scaled integer arithmetic.

    Invariant: for every row ``i`` with basic column ``b = basis[i]``,
    ``rows[i][b] == dens[i]`` and ``rows[k][b] == 0`` for ``k != i`` (the
    true coefficient matrix is ``rows[i] / dens[i]``).  The last entry of
    each row is its right-hand side.
    """

    def __init__(self, ncols: int, upper: list[Optional[int]]) -> None:
        self.ncols = ncols
        self.upper = upper
        self.rows: list[list[int]] = []
        self.dens: list[int] = []
        self.basis: list[int] = []
        self.vals: list[Fraction] = []
        self.state: list[_VarState] = [_VarState.AT_LOWER] * ncols
        self.onums: list[int] = [0] * (ncols + 1)
        self.oden: int = 1

    # -- construction -------------------------------------------------

    def add_row(self, nums: list[int], rhs: int, basic_col: int) -> None:
        row = nums + [rhs]
        row, den = _reduced(row, 1)
        self.rows.append(row)
        self.dens.append(den)
        self.basis.append(basic_col)
        self.vals.append(Fraction(rhs))
        self.state[basic_col] = _VarState.BASIC

    def set_objective(self, costs: dict[int, int]) -> None:
        """Install a cost vector and cancel it on the current basic columns."""
        self.onums = [costs.get(j, 0) for j in range(self.ncols)] + [0]
        self.oden = 1
        for i, b in enumerate(self.basis):
            if self.onums[b] != 0:
                self._eliminate_objective(i)

    def _eliminate_objective(self, i: int) -> None:
        b = self.basis[i]
        e = self.onums[b]
        row, den = self.rows[i], self.dens[i]
        merged = [t * den - e * p for t, p in zip(self.onums, row)]
        self.onums, self.oden = _reduced(merged, self.oden * den)

    # -- inspection ----------------------------------------------------

    def value_of(self, j: int) -> Fraction:
        st = self.state[j]
        if st is _VarState.AT_LOWER:
            return Fraction(0)
        if st is _VarState.AT_UPPER:
            u = self.upper[j]
            assert u is not None
            return Fraction(u)
        return self.vals[self.basis.index(j)]

    # -- pivoting ------------------------------------------------------

    def pivot(self, r: int, c: int) -> None:
        """Make column ``c`` basic in row ``r`` (pure algebra, no values)."""
        prow = self.rows[r]
        p = prow[c]
        if p == 0:
            raise BioptError("pivot on zero entry")
        if p < 0:
            prow = [-v for v in prow]
            p = -p
        prow, pden = _reduced(prow, p)
        for i in range(len(self.rows)):
            if i == r:
                continue
            e = self.rows[i][c]
            if e == 0:
                continue
            merged = [a * pden - e * b for a, b in zip(self.rows[i], prow)]
            self.rows[i], self.dens[i] = _reduced(merged, self.dens[i] * pden)
        e = self.onums[c]
        if e != 0:
            merged = [a * pden - e * b for a, b in zip(self.onums, prow)]
            self.onums, self.oden = _reduced(merged, self.oden * pden)
        self.rows[r] = prow
        self.dens[r] = pden

    # -- simplex iterations ---------------------------------------------

    def choose_entering(self, barred: frozenset[int]) -> Optional[int]:
        """Bland: lowest-index nonbasic column with an improving direction."""
        for j in range(self.ncols):
            st = self.state[j]
            if st is _VarState.BASIC or j in barred:
                continue
            if self.upper[j] == 0:
                continue  # fixed variable, can never move
            d = self.onums[j]
            if st is _VarState.AT_LOWER and d < 0:
                return j
            if st is _VarState.AT_UPPER and d > 0:
                return j
        return None

    def ratio_test(
        self, j: int, direction: int
    ) -> Optional[tuple[Fraction, int, _VarState]]:
        """Largest step for column ``j`` moving off its bound.

        Returns ``(step, row, landing)`` where ``row`` is the blocking row
        (-1 for the entering variable's own opposite bound) and ``landing``
        the bound the leaving variable ends on.  ``None`` means unbounded.
        """
        best_t: Optional[Fraction] = None
        best_row = -1
        best_var = j
        best_land = _VarState.AT_UPPER if direction > 0 else _VarState.AT_LOWER
        uj = self.upper[j]
        if uj is not None:
            best_t = Fraction(uj)
        for i in range(len(self.rows)):
            a = self.rows[i][j]
            if a == 0:
                continue
            increases = (a > 0) == (direction < 0)
            if increases:
                ub = self.upper[self.basis[i]]
                if ub is None:
                    continue
                limit = (ub - self.vals[i]) * Fraction(self.dens[i], abs(a))
                land = _VarState.AT_UPPER
            else:
                limit = self.vals[i] * Fraction(self.dens[i], abs(a))
                land = _VarState.AT_LOWER
            bi = self.basis[i]
            if best_t is None or limit < best_t or (limit == best_t and bi < best_var):
                best_t, best_row, best_var, best_land = limit, i, bi, land
        if best_t is None:
            return None
        return best_t, best_row, best_land

    def step(self, j: int, direction: int, t: Fraction, row: int,
             landing: _VarState) -> None:
        """Move column ``j`` by ``t`` along ``direction`` and update the basis."""
        if t:
            for i in range(len(self.rows)):
                a = self.rows[i][j]
                if a:
                    self.vals[i] -= direction * t * Fraction(a, self.dens[i])
        if row < 0:
            self.state[j] = (
                _VarState.AT_UPPER if direction > 0 else _VarState.AT_LOWER
            )
            return
        leaving = self.basis[row]
        self.pivot(row, j)
        self.basis[row] = j
        self.state[leaving] = landing
        self.state[j] = _VarState.BASIC
        if direction > 0:
            self.vals[row] = t
        else:
            u = self.upper[j]
            assert u is not None
            self.vals[row] = Fraction(u) - t

    def run(self, barred: frozenset[int]) -> None:
        """Iterate to optimality of the installed objective."""
        while True:
            j = self.choose_entering(barred)
            if j is None:
                return
            direction = 1 if self.state[j] is _VarState.AT_LOWER else -1
            hit = self.ratio_test(j, direction)
            if hit is None:
                raise _UnboundedRay
            t, row, landing = hit
            self.step(j, direction, t, row, landing)


def solve_lp(
    costs: Sequence[int],
    rows: Sequence[LinearConstraint],
    bounds: Sequence[tuple[int, int]],
) -> LpResult:
    """Minimize ``costs . x`` over integer-data rows and finite variable bounds.

    Data must be integers; the answer is exact.  Returns the rational
    optimum and one optimal point, or an infeasible status.
    """
    n = len(bounds)
    if len(costs) != n:
        raise ValueError("costs length must match bounds length")
    lows = [lo for lo, _ in bounds]
    shifted_upper: list[Optional[int]] = []
    for lo, hi in bounds:
        if hi < lo:
            return LpResult(SolveStatus.INFEASIBLE)
        shifted_upper.append(hi - lo)

    # Normalize each row to nonnegative rhs in shifted coordinates and
    # decide its slack sign and whether it needs an artificial.
    prepared: list[tuple[list[int], int, int, bool]] = []  # coeffs, rhs, slack, art?
    for con in rows:
        coeffs = list(con.coeffs)
        if len(coeffs) != n:
            raise ValueError("constraint arity mismatch")
        b = con.rhs - sum(c * lo for c, lo in zip(coeffs, lows))
        rel = con.relation
        if rel is Relation.GE:
            coeffs, b, rel = [-c for c in coeffs], -b, Relation.LE
        if rel is Relation.LE:
            if b >= 0:
                prepared.append((coeffs, b, 1, False))
            else:
                # flip to a >=-style row with positive rhs: slack -1 + artificial
                prepared.append(([-c for c in coeffs], -b, -1, True))
        else:  # EQ: always carried by an artificial, even at rhs 0
            if b < 0:
                coeffs, b = [-c for c in coeffs], -b
            prepared.append((coeffs, b, 0, True))

    m = len(prepared)
    n_slacks = sum(1 for _, _, s, _ in prepared if s != 0)
    n_arts = sum(1 for _, _, _, a in prepared if a)
    ncols = n + n_slacks + n_arts
    upper: list[Optional[int]] = shifted_upper + [None] * (n_slacks + n_arts)
    tab = _Tableau(ncols, upper)

    art_cols: list[int] = []
    slack_at = n
    art_at = n + n_slacks
    for coeffs, b, slack_sign, needs_art in prepared:
        full = coeffs + [0] * (n_slacks + n_arts)
        if slack_sign != 0:
            full[slack_at] = slack_sign
            slack_col = slack_at
            slack_at += 1
        if needs_art:
            full[art_at] = 1
            basic = art_at
            art_cols.append(art_at)
            art_at += 1
        else:
            basic = slack_col  # a <= row with nonnegative rhs
        tab.add_row(full, b, basic)

    no_bar: frozenset[int] = frozenset()
    try:
        if art_cols:
            tab.set_objective({c: 1 for c in art_cols})
            tab.run(no_bar)
            art_total = sum(tab.value_of(c) for c in art_cols)
            if art_total > 0:
                return LpResult(SolveStatus.INFEASIBLE)
            _drive_out_artificials(tab, frozenset(art_cols))

        tab.set_objective({j: int(c) for j, c in enumerate(costs)})
        tab.run(frozenset(art_cols))
    except _UnboundedRay:
        return LpResult(SolveStatus.UNBOUNDED)

    x = tuple(
        Fraction(lo) + tab.value_of(j) for j, lo in enumerate(lows)
    )
    objective = sum(
        (Fraction(c) * xi for c, xi in zip(costs, x)), start=Fraction(0)
    )
    return LpResult(SolveStatus.OPTIMAL, x, objective)


def _drive_out_artificials(tab: _Tableau, art_cols: frozenset[int]) -> None:
    """Pivot zero-valued basic artificials out; drop redundant rows."""
    r = 0
    while r < len(tab.rows):
        b = tab.basis[r]
        if b not in art_cols:
            r += 1
            continue
        pivot_col = None
        for j in range(tab.ncols):
            if j in art_cols or tab.state[j] is _VarState.BASIC:
                continue
            if tab.rows[r][j] != 0:
                pivot_col = j
                break
        if pivot_col is None:
            # row is a linear combination of the others: delete it
            tab.state[b] = _VarState.AT_LOWER
            del tab.rows[r], tab.dens[r], tab.basis[r], tab.vals[r]
            continue
        entering_value = tab.value_of(pivot_col)
        tab.pivot(r, pivot_col)
        tab.state[b] = _VarState.AT_LOWER
        tab.state[pivot_col] = _VarState.BASIC
        tab.basis[r] = pivot_col
        tab.vals[r] = entering_value
        r += 1
