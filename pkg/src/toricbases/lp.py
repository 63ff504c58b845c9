"""Exact rational feasibility for small linear systems (phase-one simplex, Bland's rule)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = Sequence[int]


def feasible_point(ge: Sequence[tuple[Row, int]] = (), eq: Sequence[tuple[Row, int]] = (),
                   nvars: int | None = None) -> list[Fraction] | None:
    """Return some rational ``x`` with ``a.x >= b`` for every ``(a, b)`` in ``ge`` and
    ``a.x == b`` for every ``(a, b)`` in ``eq``, or ``None`` if there is none.

    Variables are free; internally each is split as ``x = p - q`` with ``p, q >= 0``.
    """
    if nvars is None:
        rows_all = list(ge) + list(eq)
        if not rows_all:
            return []
        nvars = len(rows_all[0][0])
    n_ge = len(ge)
    ncols = 2 * nvars + n_ge  # p, q, surplus
    tableau: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    artificial_rows = []
    for k, (a, b) in enumerate(list(ge) + list(eq)):
        row = [Fraction(0)] * ncols
        for i, c in enumerate(a):
            row[i] = Fraction(c)
            row[nvars + i] = Fraction(-c)
        if k < n_ge:
            row[2 * nvars + k] = Fraction(-1)
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        r = len(tableau)
        tableau.append(row)
        rhs.append(b)
        if k < n_ge and row[2 * nvars + k] == 1:
            basis.append(2 * nvars + k)
        else:
            basis.append(ncols + r)  # artificial
            artificial_rows.append(r)

    # phase-one reduced costs: d_j = -sum of artificial rows
    cost = [Fraction(0)] * ncols
    objective = Fraction(0)
    for r in artificial_rows:
        for j, x in enumerate(tableau[r]):
            if x:
                cost[j] -= x
        objective -= rhs[r]

    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for r, row in enumerate(tableau):
            c = row[enter]
            if c > 0:
                ratio = rhs[r] / c
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            # unbounded descent of a nonnegative objective cannot happen
            raise AssertionError("phase-one objective unbounded")
        pr = best[1]
        prow = tableau[pr]
        pv = prow[enter]
        if pv != 1:
            prow = [x / pv for x in prow]
            tableau[pr] = prow
            rhs[pr] /= pv
        nz = [j for j, x in enumerate(prow) if x]
        prhs = rhs[pr]
        for r, row in enumerate(tableau):
            if r == pr:
                continue
            f = row[enter]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                rhs[r] -= f * prhs
        f = cost[enter]
        for j in nz:
            cost[j] -= f * prow[j]
        objective -= f * prhs
        basis[pr] = enter

    if objective != 0:
        return None
    values = [Fraction(0)] * ncols
    for r, j in enumerate(basis):
        if j < ncols:
            values[j] = rhs[r]
    return [values[i] - values[nvars + i] for i in range(nvars)]
