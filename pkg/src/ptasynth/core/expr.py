"""Linear expressions over integer parameters and arithmetic with infinities.

Parameter valuations may map upper-bound parameters to infinity, so expression
evaluation works over the integers extended with +inf/-inf under the
conventions 0*inf = 0, c*inf = sign(c)*inf, and inf + (-inf) undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

ParamId = str
ClockId = str

Number = Union[int, Fraction]


class IllFormedEvaluation(ValueError):
    """Raised when an evaluation would add +inf and -inf."""


@dataclass(frozen=True)
class ExtendedInt:
    """An integer extended with +inf / -inf (stored as math.inf floats)."""

    value: int | float

    def __post_init__(self) -> None:
        if isinstance(self.value, float) and not math.isinf(self.value):
            raise ValueError("non-integer finite value: %r" % (self.value,))

    @property
    def is_finite(self) -> bool:
        return not isinstance(self.value, float)

    def __add__(self, other: "ExtendedInt | int") -> "ExtendedInt":
        o = other.value if isinstance(other, ExtendedInt) else other
        v = self.value
        if isinstance(v, float) and isinstance(o, float) and v != o:
            raise IllFormedEvaluation("cannot add +inf and -inf")
        return ExtendedInt(v + o)

    def scale(self, k: int) -> "ExtendedInt":
        """k * self under the convention 0 * inf = 0."""
        if k == 0:
            return ExtendedInt(0)
        return ExtendedInt(k * self.value)

    def _cmp_key(self) -> float | int:
        return self.value

    def __lt__(self, other: "ExtendedInt | Number") -> bool:
        return self.value < _raw(other)

    def __le__(self, other: "ExtendedInt | Number") -> bool:
        return self.value <= _raw(other)

    def __gt__(self, other: "ExtendedInt | Number") -> bool:
        return self.value > _raw(other)

    def __ge__(self, other: "ExtendedInt | Number") -> bool:
        return self.value >= _raw(other)

    def __repr__(self) -> str:
        if self.value == math.inf:
            return "ExtendedInt(inf)"
        if self.value == -math.inf:
            return "ExtendedInt(-inf)"
        return "ExtendedInt(%d)" % self.value


def _raw(v: "ExtendedInt | Number") -> int | float | Fraction:
    return v.value if isinstance(v, ExtendedInt) else v


EXT_INF = ExtendedInt(math.inf)
EXT_NEG_INF = ExtendedInt(-math.inf)


@dataclass(frozen=True)
class LinearExpr:
    """c0 + c1*p1 + ... + cm*pm with integer constant and coefficients.

    ``coeffs`` never stores zero entries, so structural equality coincides
    with semantic equality.
    """

    const: int = 0
    coeffs: tuple[tuple[ParamId, int], ...] = field(default=())

    def __post_init__(self) -> None:
        seen = set()
        for p, c in self.coeffs:
            if c == 0:
                raise ValueError("zero coefficient stored for %s" % p)
            if p in seen:
                raise ValueError("duplicate coefficient for %s" % p)
            seen.add(p)

    @staticmethod
    def of(const: int = 0, **coeffs: int) -> "LinearExpr":
        return LinearExpr.build(const, coeffs)

    @staticmethod
    def build(const: int, coeffs: Mapping[ParamId, int]) -> "LinearExpr":
        items = tuple(sorted((p, c) for p, c in coeffs.items() if c != 0))
        return LinearExpr(const, items)

    @staticmethod
    def constant(c: int) -> "LinearExpr":
        return LinearExpr(c, ())

    @property
    def is_concrete(self) -> bool:
        return not self.coeffs

    def params(self) -> set[ParamId]:
        return {p for p, _ in self.coeffs}

    def coeff(self, p: ParamId) -> int:
        for q, c in self.coeffs:
            if q == p:
                return c
        return 0

    def add(self, other: "LinearExpr") -> "LinearExpr":
        merged = dict(self.coeffs)
        for p, c in other.coeffs:
            merged[p] = merged.get(p, 0) + c
        return LinearExpr.build(self.const + other.const, merged)

    def negate(self) -> "LinearExpr":
        return LinearExpr(-self.const, tuple((p, -c) for p, c in self.coeffs))

    def shift(self, delta: int) -> "LinearExpr":
        return LinearExpr(self.const + delta, self.coeffs)

    def substitute(self, assignment: Mapping[ParamId, int]) -> "LinearExpr":
        """Replace some parameters by concrete naturals, folding them in."""
        const = self.const
        rest: dict[ParamId, int] = {}
        for p, c in self.coeffs:
            if p in assignment:
                const += c * assignment[p]
            else:
                rest[p] = c
        return LinearExpr.build(const, rest)

    def rename_params(self, mapping: Mapping[ParamId, ParamId]) -> "LinearExpr":
        """Rename parameters; distinct parameters may collapse into one."""
        merged: dict[ParamId, int] = {}
        for p, c in self.coeffs:
            q = mapping.get(p, p)
            merged[q] = merged.get(q, 0) + c
        return LinearExpr.build(self.const, merged)

    def __str__(self) -> str:
        parts = []
        if self.const or not self.coeffs:
            parts.append(str(self.const))
        for p, c in self.coeffs:
            if c == 1:
                term = p
            elif c == -1:
                term = "-%s" % p
            else:
                term = "%d*%s" % (c, p)
            if parts and not term.startswith("-"):
                parts.append("+ %s" % term)
            elif parts:
                parts.append("- %s" % term[1:])
            else:
                parts.append(term)
        return " ".join(parts)


def evaluate_expr(e: LinearExpr, valuation: Mapping[ParamId, int | float]) -> ExtendedInt:
    """Evaluate e under a parameter valuation (values in N plus math.inf).

    Follows 0*inf = 0; mixing +inf and -inf contributions raises
    IllFormedEvaluation.  The result is finite iff no infinite parameter
    occurs with a nonzero coefficient.
    """
    acc = ExtendedInt(e.const)
    for p, c in e.coeffs:
        if p not in valuation:
            raise KeyError("parameter %s not in valuation" % p)
        acc = acc + ExtendedInt(valuation[p]).scale(c)
    return acc
