"""Exact rational linear programming and Fourier-Motzkin projection.

``lp_min`` is a two-phase tableau simplex over :class:`~fractions.Fraction`
with Bland's least-index rule, so it terminates on degenerate problems and
its output depends only on the input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .rational import ZERO, ONE, QVec, dot, primitive_int, rat, vec

log = logging.getLogger(__name__)

LE = "<="
EQ = "=="

Constraint = Tuple[QVec, Fraction, str]


@dataclass(frozen=True)
class LinearProgram:
    """Minimise ``objective . x`` subject to ``a . x (<= | ==) b`` rows.

    Variables are free unless listed in ``nonneg``; a bound like ``x >= 0``
    may also be written as an ordinary row.
    """

    objective: QVec
    constraints: Tuple[Constraint, ...]
    num_vars: int
    nonneg: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length differs from num_vars")
        for a, _, rel in self.constraints:
            if len(a) != self.num_vars:
                raise ValueError("constraint length differs from num_vars")
            if rel not in (LE, EQ):
                raise ValueError(f"unknown relation {rel!r}")

    @classmethod
    def build(cls, objective, constraints, num_vars=None, nonneg=()) -> "LinearProgram":
        objective = vec(objective)
        rows = tuple((vec(a), rat(b), rel) for a, b, rel in constraints)
        n = len(objective) if num_vars is None else num_vars
        return cls(objective, rows, n, frozenset(nonneg))

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        if any(x[j] < 0 for j in self.nonneg):
            return False
        for a, b, rel in self.constraints:
            lhs = dot(a, x)
            if (rel == LE and lhs > b) or (rel == EQ and lhs != b):
                return False
        return True


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    point: Optional[QVec] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Standard-form tableau ``A x = b, x >= 0`` with an explicit basis."""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int, red: Optional[List[Fraction]] = None) -> None:
        """Pivot on ``(r, c)``, updating the reduced-cost row ``red`` if given."""
        row = self.rows[r]
        p = row[c]
        if p != 1:
            row = [a / p for a in row]
            self.rows[r] = row
            self.rhs[r] /= p
        b = self.rhs[r]
        nz = [(j, a) for j, a in enumerate(row) if a]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j, a in nz:
                    other[j] -= f * a
                self.rhs[i] -= f * b
        if red is not None:
            f = red[c]
            if f:
                for j, a in nz:
                    red[j] -= f * a
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction]) -> List[Fraction]:
        red = list(cost)
        for i, bvar in enumerate(self.basis):
            cb = cost[bvar]
            if cb:
                for j, a in enumerate(self.rows[i]):
                    if a:
                        red[j] -= cb * a
        return red

    def run(self, cost: Sequence[Fraction], allowed: int) -> str:
        """Bland's rule on columns ``< allowed``.  Returns optimal/unbounded."""
        red = self.reduced_costs(cost)
        while True:
            enter = next((j for j in range(allowed) if red[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter, red)


def lp_min(p: LinearProgram) -> LpOutcome:
    """Exact optimum of ``p``; infeasible and unbounded are statuses."""
    # column layout: for each original var either one column (nonneg) or a
    # +/- pair, then one slack per <= row, then one artificial per row
    col_of = []
    ncols = 0
    for j in range(p.num_vars):
        if j in p.nonneg:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2
    n_struct = ncols
    n_slack = sum(1 for _, _, rel in p.constraints if rel == LE)
    m = len(p.constraints)
    total = n_struct + n_slack + m

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    basis: List[int] = []
    slack = n_struct
    for i, (a, b, rel) in enumerate(p.constraints):
        row = [ZERO] * total
        for j, coef in enumerate(a):
            if coef:
                plus, minus = col_of[j]
                row[plus] = coef
                if minus is not None:
                    row[minus] = -coef
        slack_col = None
        if rel == LE:
            row[slack] = ONE
            slack_col = slack
            slack += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        if slack_col is not None and row[slack_col] == 1:
            basis.append(slack_col)
        else:
            art = n_struct + n_slack + i
            row[art] = ONE
            basis.append(art)
        rows.append(row)
        rhs.append(b)

    tab = _Tableau(rows, rhs, basis)
    first_art = n_struct + n_slack
    if any(bv >= first_art for bv in basis):
        phase1 = [ZERO] * first_art + [ONE] * m
        tab.run(phase1, total)
        infeas = sum((tab.rhs[i] for i, bv in enumerate(tab.basis) if bv >= first_art), ZERO)
        if infeas > 0:
            return LpOutcome("infeasible")
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= first_art:
                col = next((j for j in range(first_art) if tab.rows[i][j]), None)
                if col is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1

    cost = [ZERO] * total
    for j, c in enumerate(p.objective):
        plus, minus = col_of[j]
        cost[plus] = c
        if minus is not None:
            cost[minus] = -c
    if tab.run(cost, first_art) == "unbounded":
        return LpOutcome("unbounded")

    values = [ZERO] * total
    for i, bv in enumerate(tab.basis):
        values[bv] = tab.rhs[i]
    point = tuple(values[plus] - (values[minus] if minus is not None else ZERO)
                  for plus, minus in col_of)
    return LpOutcome("optimal", dot(p.objective, point), point)


def lp_max(objective, constraints, num_vars, nonneg=()) -> LpOutcome:
    """Convenience wrapper: maximise instead of minimise."""
    prog = LinearProgram.build([-c for c in vec(objective)], constraints, num_vars, nonneg)
    out = lp_min(prog)
    if out.optimal:
        return LpOutcome("optimal", -out.value, out.point)
    return out


def is_feasible(constraints, num_vars) -> bool:
    prog = LinearProgram.build([0] * num_vars, constraints, num_vars)
    return lp_min(prog).optimal


# --------------------------------------------------------------------------
# Fourier-Motzkin

Ineq = Tuple[QVec, Fraction]


def _normalize(a: QVec, b: Fraction) -> Ineq:
    if b != 0:
        s = abs(b)
        return tuple(x / s for x in a), b / s
    ints = primitive_int(a)
    return tuple(Fraction(x) for x in ints), ZERO


def _remove_redundant(system: List[Ineq], n: int) -> List[Ineq]:
    kept = list(system)
    i = 0
    while i < len(kept):
        a, b = kept[i]
        others = kept[:i] + kept[i + 1:]
        out = lp_max(a, [(c, d, LE) for c, d in others], n)
        if out.optimal and out.value <= b:
            del kept[i]
        else:
            i += 1
    return kept


def _canonical(system: Iterable[Ineq]) -> List[Ineq]:
    return sorted(set(_normalize(a, b) for a, b in system))


def fm_project(constraints: Sequence[Ineq], keep: Iterable[int], num_vars: Optional[int] = None
               ) -> List[Ineq]:
    """Project ``{x : a . x <= b}`` onto the coordinates in ``keep``.

    Output rows are over the kept coordinates in increasing index order,
    normalised (``|b| = 1`` or primitive integer ``a`` when ``b = 0``),
    irredundant and sorted.  An infeasible input projects to the single
    row ``0 <= -1``.
    """
    constraints = [(vec(a), rat(b)) for a, b in constraints]
    if num_vars is None:
        if not constraints:
            raise ValueError("num_vars is required for an empty system")
        num_vars = len(constraints[0][0])
    keep = sorted(set(keep))
    if any(k < 0 or k >= num_vars for k in keep):
        raise ValueError("keep index out of range")
    kdim = len(keep)

    if not is_feasible([(a, b, LE) for a, b in constraints], num_vars):
        return [(tuple([ZERO] * kdim), Fraction(-1))]

    live = list(range(num_vars))  # original index of each current column
    system = [(a, b) for a, b in constraints]
    for drop in [j for j in range(num_vars) if j not in keep]:
        col = live.index(drop)
        pos = [(a, b) for a, b in system if a[col] > 0]
        negs = [(a, b) for a, b in system if a[col] < 0]
        rest = [(a[:col] + a[col + 1:], b) for a, b in system if a[col] == 0]
        for ap, bp in pos:
            for an, bn in negs:
                sp, sn = ap[col], -an[col]
                a = tuple(sn * x + sp * y for x, y in zip(ap, an))
                rest.append((a[:col] + a[col + 1:], sn * bp + sp * bn))
        live.pop(col)
        nz = []
        for a, b in rest:
            if all(x == 0 for x in a):
                if b < 0:  # cannot happen after the feasibility check
                    return [(tuple([ZERO] * kdim), Fraction(-1))]
                continue
            nz.append((a, b))
        system = _remove_redundant(_canonical(nz), len(live))
        log.debug("eliminated x%d: %d inequalities remain", drop, len(system))
    return _canonical(_remove_redundant(_canonical(system), kdim))
