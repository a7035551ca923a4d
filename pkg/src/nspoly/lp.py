"""Exact rational linear programming.

A dense two-phase simplex over gmpy2.mpq with Bland's pivoting rule, which
guarantees termination. All feasibility and optimization questions in this
package (model-set membership, noise resistances, bounds) go through
lp_solve(); outcomes carry exact certificate points.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from .rational import ZERO, ONE, Rational

log = logging.getLogger(__name__)


@dataclass
class LinearProgram:
    """min/max objective . x  subject to  A_eq x = b_eq,  A_ge x >= b_ge,  x >= 0.

    Variables are nonnegative by default; set free_vars to lift the bound on
    selected indices. Redundant equality rows are tolerated.
    """

    objective: Sequence
    maximize: bool = False
    a_eq: Sequence[Sequence] = field(default_factory=list)
    b_eq: Sequence = field(default_factory=list)
    a_ge: Sequence[Sequence] = field(default_factory=list)
    b_ge: Sequence = field(default_factory=list)
    free_vars: frozenset = frozenset()
    # known bound on the optimal value (lower if minimizing, upper if
    # maximizing): permits an early exit from degenerate pivoting at the optimum
    value_bound: Optional[Rational] = None

    def __post_init__(self):
        n = len(self.objective)
        for row in self.a_eq:
            assert len(row) == n
        for row in self.a_ge:
            assert len(row) == n
        assert len(self.a_eq) == len(self.b_eq)
        assert len(self.a_ge) == len(self.b_ge)


@dataclass
class LpOutcome:
    status: str  # 'optimal' | 'infeasible' | 'unbounded'
    value: Optional[Rational] = None
    point: Optional[list] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class _Tableau:
    """Simplex tableau for min c x, A x = b, x >= 0 (b >= 0 after setup).

    The objective row (reduced costs) and objective value are maintained
    incrementally through pivots.
    """

    def __init__(self, a: list[list], b: list):
        self.m = len(a)
        self.n = len(a[0]) if a else 0
        self.rows = [list(r) for r in a]
        self.rhs = list(b)
        self.basis: list[int] = [-1] * self.m
        self.cost: list = []
        self.obj = ZERO

    def add_artificials(self) -> list[int]:
        art = []
        for i in range(self.m):
            if self.rhs[i] < 0:
                self.rows[i] = [-x for x in self.rows[i]]
                self.rhs[i] = -self.rhs[i]
        for i in range(self.m):
            col = self.n
            for k in range(self.m):
                self.rows[k].append(ONE if k == i else ZERO)
            self.basis[i] = col
            art.append(col)
            self.n += 1
        return art

    def set_cost(self, c: list):
        """Install objective c (length n) and price out the current basis."""
        red = list(c) + [ZERO] * (self.n - len(c))
        obj = ZERO
        for i, bi in enumerate(self.basis):
            cb = red[bi]
            if cb:
                ri = self.rows[i]
                for j in range(self.n):
                    if ri[j]:
                        red[j] -= cb * ri[j]
                obj += cb * self.rhs[i]
        self.cost = red
        self.obj = obj

    def pivot(self, row: int, col: int):
        prow = self.rows[row]
        piv = prow[col]
        if piv != 1:
            inv = 1 / piv
            self.rows[row] = prow = [x * inv for x in prow]
            self.rhs[row] *= inv
        nz = [j for j, x in enumerate(prow) if x]
        dense = len(nz) * 3 > self.n  # full-row zip beats indexed access
        rr = self.rhs[row]
        for i in range(self.m):
            if i == row:
                continue
            f = self.rows[i][col]
            if f:
                ri = self.rows[i]
                if dense:
                    self.rows[i] = [a - f * b if b else a for a, b in zip(ri, prow)]
                else:
                    for j in nz:
                        ri[j] -= f * prow[j]
                self.rhs[i] -= f * rr
        f = self.cost[col]
        if f:
            cost = self.cost
            if dense:
                self.cost = [a - f * b if b else a for a, b in zip(cost, prow)]
            else:
                for j in nz:
                    cost[j] -= f * prow[j]
            self.obj += f * rr
        self.basis[row] = col

    # consecutive degenerate pivots before falling back from Dantzig to Bland
    STALL_LIMIT = 40

    def _ratio_row(
        self, enter: int, lex_cols: Optional[list], rank: Optional[list] = None
    ) -> int:
        """Leaving row for the entering column, or -1 if none (unbounded).

        With lex_cols (the artificial columns, whose block tracks the basis
        inverse), ties in rhs/a are broken lexicographically, which keeps all
        rows lex-positive and rules out cycling. Without it, ties go to the
        basic variable with the smallest index."""
        cand: list[int] = []
        best = None
        for i in range(self.m):
            a = self.rows[i][enter]
            if a > 0:
                ratio = self.rhs[i] / a
                if best is None or ratio < best:
                    best = ratio
                    cand = [i]
                elif ratio == best:
                    cand.append(i)
        if not cand:
            return -1
        if len(cand) > 1 and lex_cols is not None:
            for c in lex_cols:
                best_v = None
                keep: list[int] = []
                for i in cand:
                    v = self.rows[i][c] / self.rows[i][enter]
                    if best_v is None or v < best_v:
                        best_v = v
                        keep = [i]
                    elif v == best_v:
                        keep.append(i)
                cand = keep
                if len(cand) == 1:
                    break
        elif len(cand) > 1:
            key = (lambda i: rank[self.basis[i]]) if rank else (lambda i: self.basis[i])
            cand.sort(key=key)
        return cand[0]

    def solve(
        self,
        banned: frozenset = frozenset(),
        target=None,
        lex_cols: Optional[list] = None,
    ) -> str:
        """Simplex from the current basic feasible point; target is a known
        lower bound on the objective, allowing an early exit.

        Entering variables follow Dantzig's rule (most negative reduced
        cost). Termination: with lex_cols the lexicographic ratio test cannot
        cycle; otherwise the rule falls back to Bland's after STALL_LIMIT
        consecutive degenerate pivots, under a column order reshuffled (with
        a fixed seed, so runs stay deterministic) at each stall episode, and
        returns to Dantzig once the objective strictly improves. Any fixed
        order keeps Bland's no-cycling guarantee, so every degenerate plateau
        is eventually left.
        """
        it = 0
        stalled = 0
        rng = random.Random(0x5EED)
        order = list(range(self.n))  # Bland scan order under stall fallback
        rank = list(range(self.n))  # column index -> position in that order
        while True:
            if target is not None and self.obj <= target:
                return OPTIMAL
            cost = self.cost
            enter = -1
            bland = lex_cols is None and stalled >= self.STALL_LIMIT
            if not bland:
                best_c = ZERO
                for j in range(self.n):
                    if cost[j] < best_c and j not in banned:
                        best_c = cost[j]
                        enter = j
            else:
                if stalled == self.STALL_LIMIT:
                    rng.shuffle(order)
                    for r, j in enumerate(order):
                        rank[j] = r
                for j in order:
                    if cost[j] < 0 and j not in banned:
                        enter = j
                        break
            if enter < 0:
                return OPTIMAL
            leave = self._ratio_row(enter, lex_cols, rank if bland else None)
            if leave < 0:
                return UNBOUNDED
            before = self.obj
            self.pivot(leave, enter)
            stalled = 0 if self.obj != before else stalled + 1
            it += 1
            if it % 200 == 0:
                log.info("simplex: %d pivots, objective %s", it, self.obj)

    def point(self) -> list:
        x = [ZERO] * self.n
        for i, bi in enumerate(self.basis):
            x[bi] = self.rhs[i]
        return x

    def drop_row(self, i: int):
        del self.rows[i]
        del self.rhs[i]
        del self.basis[i]
        self.m -= 1


def lp_solve(lp: LinearProgram) -> LpOutcome:
    """Exact optimum of lp with an exact certificate point."""
    n = len(lp.objective)
    free = sorted(lp.free_vars)
    # standard form: free variable f -> f+ - f-, appended negative parts;
    # inequality rows get surplus variables.
    neg_col = {v: n + k for k, v in enumerate(free)}

    def std_row(row) -> list:
        r = [mpq(x) for x in row] + [ZERO] * (len(free) + len(lp.a_ge))
        for v in free:
            r[neg_col[v]] = -r[v]
        return r

    rows = []
    rhs = []
    for row, b in zip(lp.a_eq, lp.b_eq):
        rows.append(std_row(row))
        rhs.append(mpq(b))
    for k, (row, b) in enumerate(zip(lp.a_ge, lp.b_ge)):
        r = std_row(row)
        r[n + len(free) + k] = mpq(-1)
        rows.append(r)
        rhs.append(mpq(b))

    tab = _Tableau(rows, rhs)
    art = tab.add_artificials()
    art_set = frozenset(art)

    # Phase I: minimize the sum of artificials
    c1 = [ZERO] * tab.n
    for j in art:
        c1[j] = ONE
    tab.set_cost(c1)
    tab.solve(banned=art_set, target=ZERO, lex_cols=art)
    if tab.obj != 0:
        return LpOutcome(INFEASIBLE)
    # pivot remaining artificials out; an all-zero row is redundant and dropped
    for i in reversed(range(tab.m)):
        if tab.basis[i] in art_set:
            col = next(
                (j for j in range(tab.n) if j not in art_set and tab.rows[i][j]),
                None,
            )
            if col is None:
                tab.drop_row(i)
            else:
                tab.pivot(i, col)

    # Phase II
    sign = -1 if lp.maximize else 1
    c2 = [ZERO] * tab.n
    for j in range(n):
        c2[j] = sign * mpq(lp.objective[j])
    for v in free:
        c2[neg_col[v]] = -c2[v]
    tab.set_cost(c2)
    target = None if lp.value_bound is None else sign * mpq(lp.value_bound)
    # the basis columns are an identity block across the rows at this point,
    # so every row is lex-positive w.r.t. them: the lexicographic ratio test
    # applies in Phase II just as it does in Phase I
    status = tab.solve(banned=art_set, target=target, lex_cols=list(tab.basis))
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED)
    xs = tab.point()
    x = [xs[j] for j in range(n)]
    for v in free:
        x[v] -= xs[neg_col[v]]
    return LpOutcome(OPTIMAL, value=sign * tab.obj, point=x)
