"""Hard-margin maximum-margin separation with exact rational output.

Separability is decided by the exact LP in lp.py.  The margin-optimal plane
is then found by a convex QP (cvxopt) and polished: the support set read off
the float solution induces a rational KKT system whose exact solution is
verified against every input point, with active-set repair when the float
guess was off.  The emitted hyperplane has max |weight| = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lp import best_separation

Point = tuple[int, ...]


@dataclass(frozen=True)
class Hyperplane:
    """weights . x + bias, with the good side at positive sign."""

    weights: tuple[Fraction, ...]
    bias: Fraction
    good_side: int = 1
    margin: float = 0.0

    def value(self, point: Sequence[int | Fraction]) -> Fraction:
        return sum((w * Fraction(x) for w, x in zip(self.weights, point)),
                   start=Fraction(0)) + self.bias

    def distance_squared(self, point: Sequence[int | Fraction]) -> Fraction:
        norm_sq = sum(w * w for w in self.weights)
        v = self.value(point)
        return v * v / norm_sq

    def classifies_good(self, point: Sequence[int | Fraction]) -> bool:
        v = self.value(point)
        side = 1 if v >= 0 else -1
        return side == self.good_side


def _solve_qp_float(points: list[tuple[Point, int]], dim: int) -> tuple[list[float], float] | None:
    from cvxopt import matrix, solvers

    P = matrix([[1.0 if i == j and i < dim else 0.0 for i in range(dim + 1)]
                for j in range(dim + 1)])
    q = matrix([0.0] * (dim + 1))
    G = matrix([[-float(y) * float(x[k]) for x, y in points] for k in range(dim)]
               + [[-float(y) for _x, y in points]])
    h = matrix([-1.0] * len(points))
    options = dict(solvers.options)
    try:
        for tol in (1e-10, 1e-8, None):
            solvers.options.clear()
            solvers.options.update(options)
            solvers.options["show_progress"] = False
            if tol is not None:
                solvers.options.update(abstol=tol, reltol=tol, feastol=tol)
            try:
                sol = solvers.qp(P, q, G, h)
            except (ValueError, ArithmeticError, ZeroDivisionError):
                continue
            if sol["status"] in ("optimal", "unknown") and sol["x"] is not None:
                v = list(sol["x"])
                return v[:dim], v[dim]
    finally:
        solvers.options.clear()
        solvers.options.update(options)
    return None


def _solve_kkt_exact(points: list[tuple[Point, int]], support: list[int],
                     dim: int) -> tuple[tuple[Fraction, ...], Fraction, dict[int, Fraction]] | None:
    """Solve the equality-constrained optimum for a candidate support set.

    Unknowns are the multipliers of the support points and the bias; returns
    None when the linear system is inconsistent.
    """
    s = len(support)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in support:
        xi, yi = points[i]
        row = [Fraction(points[j][1] * sum(a * b for a, b in zip(points[j][0], xi)))
               for j in support]
        row.append(Fraction(1))
        rows.append(row)
        rhs.append(Fraction(yi))
    rows.append([Fraction(points[j][1]) for j in support] + [Fraction(0)])
    rhs.append(Fraction(0))
    solution = _gauss_solve(rows, rhs, s + 1)
    if solution is None:
        return None
    lambdas = {j: solution[idx] for idx, j in enumerate(support)}
    bias = solution[s]
    weights = tuple(
        sum((lambdas[j] * points[j][1] * Fraction(points[j][0][k]) for j in support),
            start=Fraction(0))
        for k in range(dim))
    return weights, bias, lambdas


def _gauss_solve(rows: list[list[Fraction]], rhs: list[Fraction], n: int) -> list[Fraction] | None:
    """Gaussian elimination; redundant rows ok, free variables pinned to 0."""
    m = len(rows)
    aug = [rows[i] + [rhs[i]] for i in range(m)]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None  # inconsistent
    x = [Fraction(0)] * n
    for i, col in enumerate(pivot_cols):
        x[col] = aug[i][n]
    return x


def max_margin_separator(good: Sequence[Point], bad: Sequence[Point]) -> Hyperplane | None:
    """The maximum-margin hyperplane, or None when not strictly separable."""
    if not good or not bad:
        raise ValueError("both point sets must be nonempty")
    dim = len(good[0])
    points = list(dict.fromkeys([(tuple(g), 1) for g in good]
                                + [(tuple(x), -1) for x in bad]))
    frac_points = [(tuple(Fraction(v) for v in x), y) for x, y in points]
    delta, _w, _b = best_separation(frac_points)
    if delta <= 0:
        return None

    def residual(i: int, w, b) -> float:
        x, y = points[i]
        return y * (sum(wk * xk for wk, xk in zip(w, x)) + b)

    seeds: list[list[int]] = []
    qp = _solve_qp_float(points, dim)
    if qp is not None:
        w_float, b_float = qp
        for tol in (1e-4, 1e-2, 1e-6):
            seeds.append(sorted(i for i in range(len(points))
                                if residual(i, w_float, b_float) < 1 + tol))
    # points attaining the exact LP margin are natural support candidates
    lp_active = sorted(
        i for i, (x, y) in enumerate(frac_points)
        if y * (sum(wk * xk for wk, xk in zip(_w, x)) + _b) == delta)
    seeds.append(lp_active)
    exact = None
    tried: set[tuple[int, ...]] = set()
    for seed in seeds:
        key = tuple(seed)
        if key in tried:
            continue
        tried.add(key)
        exact = _polish(points, seed, dim)
        if exact is not None:
            break
    if exact is None:
        # keep the exact-LP separator: correct sides, margin possibly short
        w = tuple(Fraction(v).limit_denominator(10 ** 9) for v in _w)
        b = Fraction(_b)
        weights, bias = w, b
    else:
        weights, bias = exact
    scale = max(abs(w) for w in weights)
    if scale == 0:
        return None
    weights = tuple(w / scale for w in weights)
    bias = bias / scale
    norm = math.sqrt(float(sum(w * w for w in weights)))
    margin = min(
        abs(float(sum(wk * Fraction(xk) for wk, xk in zip(weights, x)) + bias))
        for x, _y in points) / norm
    return Hyperplane(weights, bias, 1, margin)


def _polish(points: list[tuple[Point, int]], support: list[int], dim: int):
    """Active-set repair around a candidate support set; None on failure."""
    support = list(support)
    for _ in range(4 * len(points) + 8):
        if not support or all(points[i][1] == 1 for i in support) \
                or all(points[i][1] == -1 for i in support):
            return None
        solved = _solve_kkt_exact(points, support, dim)
        if solved is None:
            return None
        weights, bias, lambdas = solved
        negative = [j for j in support if lambdas[j] < 0]
        if negative:
            support.remove(min(negative))
            continue
        violated = None
        for i, (x, y) in enumerate(points):
            r = y * (sum(wk * Fraction(xk) for wk, xk in zip(weights, x)) + bias)
            if r < 1 and i not in support:
                violated = i
                break
            if r < 1 and i in support:
                return None  # solved system disagrees with itself
        if violated is None:
            return weights, bias
        support = sorted(support + [violated])
    return None
