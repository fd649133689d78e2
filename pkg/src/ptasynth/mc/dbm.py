"""Difference bound matrices over an arbitrary numeric bound domain.

A bound is (value, strict) meaning `xi - xj < value` when strict else `<=`;
None stands for +infinity.  Index 0 is the reference clock.  Values are
integers during zone exploration and Fractions when solving path delay
constraints, the algorithms are identical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Bound = "tuple[int | Fraction, bool] | None"

LE_ZERO = (0, False)


def bound_add(a, b):
    if a is None or b is None:
        return None
    return (a[0] + b[0], a[1] or b[1])


def bound_lt(a, b) -> bool:
    """Strictly tighter-than in the bound order."""
    if b is None:
        return a is not None
    if a is None:
        return False
    return a[0] < b[0] or (a[0] == b[0] and a[1] and not b[1])


def bound_min(a, b):
    return a if bound_lt(a, b) else b


class Dbm:
    """A (n+1)x(n+1) bound matrix; mutating ops return self for chaining."""

    __slots__ = ("n", "m")

    def __init__(self, n: int, matrix: list[list] | None = None):
        self.n = n
        if matrix is None:
            self.m = [[LE_ZERO] * (n + 1) for _ in range(n + 1)]
        else:
            self.m = matrix

    @staticmethod
    def zero(n: int) -> "Dbm":
        """All clocks exactly 0 (already canonical)."""
        return Dbm(n)

    @staticmethod
    def unconstrained(n: int) -> "Dbm":
        """All clocks >= 0, otherwise free (already canonical)."""
        d = Dbm(n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    d.m[i][j] = None
            d.m[i][0] = None
        return d

    def copy(self) -> "Dbm":
        return Dbm(self.n, [row[:] for row in self.m])

    def key(self) -> tuple:
        return tuple(tuple(row) for row in self.m)

    def canonicalize(self) -> "Dbm":
        """Floyd-Warshall shortest-path closure."""
        m = self.m
        rng = range(self.n + 1)
        for k in rng:
            mk = m[k]
            for i in rng:
                mik = m[i][k]
                if mik is None:
                    continue
                mi = m[i]
                for j in rng:
                    cand = bound_add(mik, mk[j])
                    if bound_lt(cand, mi[j]):
                        mi[j] = cand
        return self

    @property
    def is_empty(self) -> bool:
        return any(bound_lt(self.m[i][i], LE_ZERO) for i in range(self.n + 1))

    def tighten(self, i: int, j: int, bound) -> "Dbm":
        """Raw intersection with xi - xj (<|<=) bound; caller re-canonicalizes."""
        if bound_lt(bound, self.m[i][j]):
            self.m[i][j] = bound
        return self

    def up(self) -> "Dbm":
        """Time elapse: drop upper bounds on xi - x0 (canonical stays canonical)."""
        for i in range(1, self.n + 1):
            self.m[i][0] = None
        return self

    def reset(self, i: int, b) -> "Dbm":
        """xi := b on a canonical matrix; stays canonical."""
        add = bound_add
        for j in range(self.n + 1):
            if j == i:
                continue
            self.m[i][j] = add((b, False), self.m[0][j])
            self.m[j][i] = add(self.m[j][0], (-b, False))
        self.m[i][i] = LE_ZERO
        return self

    def extrapolate(self, k: Sequence[int]) -> "Dbm":
        """Classical max-bound widening; k[0] must be 0. Re-canonicalizes."""
        changed = False
        for i in range(self.n + 1):
            for j in range(self.n + 1):
                if i == j:
                    continue
                b = self.m[i][j]
                if b is None:
                    continue
                if b[0] > k[i]:
                    self.m[i][j] = None
                    changed = True
                elif b[0] < -k[j]:
                    self.m[i][j] = (-k[j], True)
                    changed = True
        if changed:
            self.canonicalize()
        return self

    def includes(self, other: "Dbm") -> bool:
        """other subseteq self, both canonical."""
        for i in range(self.n + 1):
            for j in range(self.n + 1):
                if bound_lt(self.m[i][j], other.m[i][j]):
                    return False
        return True

    def constrain_all(self, triples: Iterable[tuple[int, int, tuple]]) -> "Dbm":
        for i, j, bound in triples:
            self.tighten(i, j, bound)
        return self

    def interval_of(self, i: int):
        """(lower bound, lower strict, upper bound, upper strict) of xi - x0."""
        lo = self.m[0][i]
        hi = self.m[i][0]
        lo_val, lo_strict = (-lo[0], lo[1]) if lo is not None else (None, True)
        hi_val, hi_strict = (hi[0], hi[1]) if hi is not None else (None, True)
        return lo_val, lo_strict, hi_val, hi_strict

    def __repr__(self) -> str:
        def fmt(b):
            if b is None:
                return "inf"
            return "%s%s" % ("<" if b[1] else "<=", b[0])
        return "Dbm(%s)" % "; ".join(
            " ".join(fmt(b) for b in row) for row in self.m)
