"""Exact rational linear programming.

Two-phase primal simplex over fractions.Fraction with Bland's
anti-cycling rule.  Problems are given in the form

    minimize  <c, x>   subject to   A x <= b,   x free,

free variables are split internally into differences of nonnegatives.
Deterministic pivot order makes repeated solves reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import LPInfeasible, LPUnbounded


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class _Tableau:
    def __init__(self, nvars: int):
        self.n = nvars
        self.rows: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        self.basis: list[int] = []
        self.cost: list[Fraction] = [Fraction(0)] * nvars
        self.obj = Fraction(0)

    def pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        self.rows[r] = [v / piv for v in self.rows[r]]
        self.rhs[r] /= piv
        for i in range(len(self.rows)):
            if i != r and self.rows[i][c] != 0:
                f = self.rows[i][c]
                self.rows[i] = [v - f * w for v, w in zip(self.rows[i], self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        if self.cost[c] != 0:
            f = self.cost[c]
            self.cost = [v - f * w for v, w in zip(self.cost, self.rows[r])]
            self.obj -= f * self.rhs[r]
        self.basis[r] = c

    def run(self) -> None:
        """Bland's rule: entering = lowest index with negative reduced cost;
        leaving = lowest basis index among minimum-ratio rows."""
        while True:
            enter = next((j for j in range(self.n) if self.cost[j] < 0), None)
            if enter is None:
                return
            best = None
            for i in range(len(self.rows)):
                a = self.rows[i][enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise LPUnbounded("no blocking constraint in entering column")
            self.pivot(best[1], enter)


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence):
    """Returns (optimal value, minimizer) of min <c,x> s.t. Ax <= b.

    Raises LPInfeasible / LPUnbounded.  The reported minimizer is the
    basic optimum reached by the deterministic pivot order.
    """
    m, nfree = len(A), len(c)
    c = [_frac(v) for v in c]
    # columns: x+ (nfree), x- (nfree), slack (m)
    nvars = 2 * nfree + m
    t = _Tableau(nvars)
    art_cols: list[int] = []
    for i in range(m):
        row = [Fraction(0)] * nvars
        rhs = _frac(b[i])
        for j in range(nfree):
            row[j] = _frac(A[i][j])
            row[nfree + j] = -_frac(A[i][j])
        row[2 * nfree + i] = Fraction(1)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            col = nvars + len(art_cols)
            art_cols.append(col)
            row.append(Fraction(1))
            t.basis.append(col)
        else:
            t.basis.append(2 * nfree + i)
        t.rows.append(row)
        t.rhs.append(rhs)
    if art_cols:
        width = nvars + len(art_cols)
        for i, row in enumerate(t.rows):
            row.extend([Fraction(0)] * (width - len(row)))
        t.n = width
        t.cost = [Fraction(0)] * width
        for col in art_cols:
            t.cost[col] = Fraction(1)
        # price out the artificial basis
        for i, bcol in enumerate(t.basis):
            if bcol in art_cols:
                t.cost = [v - w for v, w in zip(t.cost, t.rows[i])]
                t.obj -= t.rhs[i]
        t.run()
        if -t.obj != 0:
            raise LPInfeasible("phase-1 optimum is nonzero")
        # drive any artificial variable out of the basis
        for i in range(len(t.basis)):
            if t.basis[i] in art_cols:
                col = next((j for j in range(nvars) if t.rows[i][j] != 0), None)
                if col is not None:
                    t.pivot(i, col)
        keep = [i for i in range(len(t.basis)) if t.basis[i] < nvars]
        t.rows = [t.rows[i][:nvars] for i in keep]
        t.rhs = [t.rhs[i] for i in keep]
        t.basis = [t.basis[i] for i in keep]
        t.n = nvars
    # phase 2
    t.cost = [Fraction(0)] * t.n
    t.obj = Fraction(0)
    for j in range(nfree):
        t.cost[j] = c[j]
        t.cost[nfree + j] = -c[j]
    for i, bcol in enumerate(t.basis):
        if t.cost[bcol] != 0:
            f = t.cost[bcol]
            t.cost = [v - f * w for v, w in zip(t.cost, t.rows[i])]
            t.obj -= f * t.rhs[i]
    t.run()
    xplus = [Fraction(0)] * nfree
    xminus = [Fraction(0)] * nfree
    for i, bcol in enumerate(t.basis):
        if bcol < nfree:
            xplus[bcol] = t.rhs[i]
        elif bcol < 2 * nfree:
            xminus[bcol - nfree] = t.rhs[i]
    x = [p - q for p, q in zip(xplus, xminus)]
    return -t.obj, x
