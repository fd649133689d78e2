"""Exact rational linear programming, sized for separability checks.

A dense single-phase simplex (all right-hand sides nonnegative, Bland's
rule) plus an active-set wrapper that decides strict linear separability of
two labeled point sets by maximizing the worst signed margin under a box
bound on the weights.  Everything runs over Fractions, so the separable /
not-separable verdict is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


class Unbounded(RuntimeError):
    pass


def simplex_min(c: Sequence[Fraction], rows: list[list[Fraction]],
                rhs: list[Fraction]) -> tuple[Fraction, list[Fraction]]:
    """Minimize c.x subject to rows.x <= rhs, x >= 0, all rhs >= 0."""
    m, n = len(rows), len(c)
    assert all(b >= 0 for b in rhs)
    # tableau: n structural + m slack columns, then the rhs column
    tab = [list(rows[i]) + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]]
           for i in range(m)]
    cost = [Fraction(ci) for ci in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))
    total = n + m
    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        best_ratio = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < basis[leave]):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            raise Unbounded("objective unbounded below")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [v - f * w for v, w in zip(cost, tab[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * total
    for i, b in enumerate(basis):
        x[b] = tab[i][total]
    return -cost[total], x[:n]


def _separation_lp(points: list[tuple[Vector, int]]) -> tuple[Fraction, Vector, Fraction]:
    """max delta st. y(w.x + b) >= delta, |w_k| <= 1; returns (delta, w, b)."""
    dim = len(points[0][0])
    # variables: w+ (dim), w- (dim), b+, b-, d+, d-
    n = 2 * dim + 4
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for x, y in points:
        row = [Fraction(0)] * n
        for k in range(dim):
            row[k] = Fraction(-y * x[k])
            row[dim + k] = Fraction(y * x[k])
        row[2 * dim] = Fraction(-y)
        row[2 * dim + 1] = Fraction(y)
        row[2 * dim + 2] = Fraction(1)
        row[2 * dim + 3] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    for k in range(dim):
        for sign in (1, -1):
            row = [Fraction(0)] * n
            row[k] = Fraction(sign)
            row[dim + k] = Fraction(-sign)
            rows.append(row)
            rhs.append(Fraction(1))
    c = [Fraction(0)] * n
    c[2 * dim + 2] = Fraction(-1)
    c[2 * dim + 3] = Fraction(1)
    value, x = simplex_min(c, rows, rhs)
    w = tuple(x[k] - x[dim + k] for k in range(dim))
    b = x[2 * dim] - x[2 * dim + 1]
    return -value, w, b  # minimized -delta


def best_separation(points: list[tuple[Vector, int]]) -> tuple[Fraction, Vector, Fraction]:
    """Active-set driver for _separation_lp over a possibly large point set.

    Returns the exact optimal (delta, w, b); delta > 0 iff the labeled
    points are strictly linearly separable.
    """
    if not points:
        return Fraction(1), (), Fraction(0)
    work = list(dict.fromkeys(points))
    if len(work) <= 16:
        return _separation_lp(work)
    # seed with both labels, else the relaxation is unbounded
    active = work[:6]
    for wanted in (1, -1):
        if all(y != wanted for _x, y in active):
            extra = next(((x, y) for x, y in work if y == wanted), None)
            if extra is not None:
                active.append(extra)
    active_set = set(active)
    while True:
        delta, w, b = _separation_lp(active)
        worst = None
        worst_margin = delta
        for x, y in work:
            if (x, y) in active_set:
                continue
            margin = y * (sum(wk * xk for wk, xk in zip(w, x)) + b)
            if margin < worst_margin:
                worst_margin = margin
                worst = (x, y)
        if worst is None:
            return delta, w, b
        active.append(worst)
        active_set.add(worst)


def strictly_separable(good: Sequence[Sequence[int]], bad: Sequence[Sequence[int]]) -> bool:
    points = [(tuple(Fraction(v) for v in g), 1) for g in good]
    points += [(tuple(Fraction(v) for v in x), -1) for x in bad]
    delta, _w, _b = best_separation(points)
    return delta > 0
