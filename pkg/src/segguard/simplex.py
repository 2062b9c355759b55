"""Exact two-phase simplex over the rationals.

The tableau is kept fraction-free: every stored entry is an integer and the
true tableau is ``T / D`` where ``D`` is the previous pivot element (the
integer-preserving scheme of Edmonds and Bareiss). Every division in a pivot is
exact, so the solver never touches ``Fraction`` arithmetic inside the pivot
loop and never rounds.

Pivoting follows Bland's least-index rule in both phases, so the solver
terminates on degenerate problems and is deterministic: the same program always
yields the same optimal vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import Infeasible, Unbounded

__all__ = ["LinearProgram", "LPSolution", "solve_lp"]


@dataclass(frozen=True)
class LinearProgram:
    """``min/max c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0``."""

    objective: tuple[Fraction, ...]
    eq_rows: tuple[tuple[Fraction, ...], ...] = ()
    eq_rhs: tuple[Fraction, ...] = ()
    ub_rows: tuple[tuple[Fraction, ...], ...] = ()
    ub_rhs: tuple[Fraction, ...] = ()
    maximize: bool = False

    def __post_init__(self):
        n = len(self.objective)
        for rows, rhs, kind in ((self.eq_rows, self.eq_rhs, "equality"), (self.ub_rows, self.ub_rhs, "inequality")):
            if len(rows) != len(rhs):
                raise ValueError(f"{kind} rows and right-hand sides differ in length")
            for row in rows:
                if len(row) != n:
                    raise ValueError(f"{kind} row has {len(row)} coefficients, expected {n}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        """Exact membership test for the feasible region."""
        if len(x) != self.num_vars or any(v < 0 for v in x):
            return False
        for row, b in zip(self.eq_rows, self.eq_rhs):
            if sum(a * v for a, v in zip(row, x)) != b:
                return False
        for row, b in zip(self.ub_rows, self.ub_rhs):
            if sum(a * v for a, v in zip(row, x)) > b:
                return False
        return True

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def _integer_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int]:
    # ints and Fractions both expose numerator/denominator; avoid re-wrapping
    vals = [*coeffs, rhs]
    den = lcm(*(v.denominator for v in vals))
    ints = [v.numerator * (den // v.denominator) for v in vals]
    return ints[:-1], ints[-1]


class _Tableau:
    """Integer tableau; the true entries are ``rows / D``."""

    def __init__(self, rows: list[list[int]], basis: list[int], objectives: list[list[int]]):
        self.rows = rows
        self.basis = basis
        self.objectives = objectives
        self.D = 1
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        D = self.D
        prow = self.rows[r]
        p = prow[c]

        def update(row: list[int]) -> list[int]:
            a = row[c]
            if a == 0:
                if p == D:
                    return row
                return [v * p // D for v in row]
            return [(v * p - a * w) // D for v, w in zip(row, prow)]

        self.rows = [prow if i == r else update(row) for i, row in enumerate(self.rows)]
        self.objectives = [update(row) for row in self.objectives]
        if p < 0:
            # keep D > 0 so that signs of stored entries are signs of true values
            self.rows = [[-v for v in row] for row in self.rows]
            self.objectives = [[-v for v in row] for row in self.objectives]
            p = -p
        self.D = p
        self.basis[r] = c
        self.pivots += 1

    def entering(self, obj: int, allowed: Sequence[bool]) -> int | None:
        z = self.objectives[obj]
        for j, ok in enumerate(allowed):
            if ok and z[j] < 0:
                return j
        return None

    def leaving(self, c: int) -> int | None:
        best = None
        best_num = best_den = 0
        for i, row in enumerate(self.rows):
            a = row[c]
            if a <= 0:
                continue
            b = row[-1]
            if best is None:
                best, best_num, best_den = i, b, a
                continue
            lhs, rhs = b * best_den, best_num * a
            if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                best, best_num, best_den = i, b, a
        return best

    def run(self, obj: int, allowed: Sequence[bool]) -> None:
        while True:
            c = self.entering(obj, allowed)
            if c is None:
                return
            r = self.leaving(c)
            if r is None:
                raise Unbounded("objective unbounded on the feasible region")
            self.pivot(r, c)


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solve ``lp`` exactly.

    Raises :class:`Infeasible` when the region is empty and :class:`Unbounded`
    when the objective is unbounded in the optimizing direction.
    """
    n = lp.num_vars
    constraint_rows: list[tuple[list[int], int, str]] = []
    for row, b in zip(lp.eq_rows, lp.eq_rhs):
        a, rhs = _integer_row(row, b)
        constraint_rows.append((a, rhs, "eq"))
    for row, b in zip(lp.ub_rows, lp.ub_rhs):
        a, rhs = _integer_row(row, b)
        constraint_rows.append((a, rhs, "ub"))

    m = len(constraint_rows)
    n_slack = sum(1 for *_, kind in constraint_rows if kind == "ub")
    # rows needing an artificial: equalities and <= rows with negative rhs
    needs_art = [kind == "eq" or rhs < 0 for _, rhs, kind in constraint_rows]
    n_art = sum(needs_art)
    ncols = n + n_slack + n_art

    rows: list[list[int]] = []
    basis: list[int] = []
    slack_col = n
    art_col = n + n_slack
    for (a, rhs, kind), art in zip(constraint_rows, needs_art):
        row = a + [0] * (n_slack + n_art) + [rhs]
        if kind == "ub":
            row[slack_col] = 1
            slack_col += 1
        if rhs < 0:
            row = [-v for v in row]
        if art:
            row[art_col] = 1
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(slack_col - 1)
        rows.append(row)

    c_int, _ = _integer_row([-c if lp.maximize else c for c in lp.objective], Fraction(0))
    c_scale = lcm(*(Fraction(c).denominator for c in lp.objective)) if n else 1
    phase2 = c_int + [0] * (n_slack + n_art) + [0]
    phase1 = [0] * (ncols + 1)
    for row, art in zip(rows, needs_art):
        if art:
            phase1 = [p - v for p, v in zip(phase1, row)]
    for j in range(n + n_slack, ncols):
        phase1[j] = 0

    tab = _Tableau(rows, basis, [phase2, phase1])
    is_art = [j >= n + n_slack for j in range(ncols)]

    if n_art:
        tab.run(1, [not a for a in is_art])
        if tab.objectives[1][-1] != 0:
            raise Infeasible("no point satisfies the constraints")
        redundant = []
        for i in range(m):
            if not is_art[tab.basis[i]]:
                continue
            row = tab.rows[i]
            j = next((j for j in range(ncols) if not is_art[j] and row[j] != 0), None)
            if j is None:
                redundant.append(i)
            else:
                tab.pivot(i, j)
        keep = [i for i in range(m) if i not in redundant]
        cols = [j for j in range(ncols) if not is_art[j]] + [ncols]
        tab.rows = [[tab.rows[i][j] for j in cols] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
        tab.objectives = [[tab.objectives[0][j] for j in cols]]
        ncols = n + n_slack

    tab.run(0, [True] * ncols)

    D = tab.D
    x = [Fraction(0)] * n
    for i, col in enumerate(tab.basis):
        if col < n:
            x[col] = Fraction(tab.rows[i][-1], D)
    # the objective row's rhs holds -(scaled objective) * D
    value = Fraction(-tab.objectives[0][-1], D * c_scale)
    if lp.maximize:
        value = -value
    return LPSolution(value=value, x=tuple(x), pivots=tab.pivots)
