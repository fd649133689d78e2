"""Atomic and simple (conjunctive) clock constraints.

Atoms are kept in the normalized form  LHS < e  or  LHS <= e  where LHS is
one of  x - y,  x,  -x,  or 0 (clock-free).  Lower bounds written with > or
>= are rewritten on construction (x > e becomes -x < -e).  The clock-free
form arises when resets are substituted into an invariant: x <= e under
x := b leaves the parameter condition b <= e, stored as 0 <= e - b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .expr import ClockId, LinearExpr, ParamId, evaluate_expr


@dataclass(frozen=True)
class AtomicConstraint:
    """pos - neg < bound (strict) or pos - neg <= bound (nonstrict).

    ``pos``/``neg`` are clock ids or None; both None gives the clock-free
    form 0 < bound.  In the difference form the two clocks are distinct.
    """

    pos: ClockId | None
    neg: ClockId | None
    strict: bool
    bound: LinearExpr

    def __post_init__(self) -> None:
        if self.pos is not None and self.pos == self.neg:
            raise ValueError("difference constraint needs distinct clocks")

    @staticmethod
    def upper(x: ClockId, strict: bool, e: LinearExpr) -> "AtomicConstraint":
        """x < e or x <= e."""
        return AtomicConstraint(x, None, strict, e)

    @staticmethod
    def lower(x: ClockId, strict: bool, e: LinearExpr) -> "AtomicConstraint":
        """-x < e or -x <= e  (equivalently x > -e / x >= -e)."""
        return AtomicConstraint(None, x, strict, e)

    @staticmethod
    def diff(x: ClockId, y: ClockId, strict: bool, e: LinearExpr) -> "AtomicConstraint":
        """x - y < e or x - y <= e."""
        return AtomicConstraint(x, y, strict, e)

    @staticmethod
    def const(strict: bool, e: LinearExpr) -> "AtomicConstraint":
        """0 < e or 0 <= e (no clocks)."""
        return AtomicConstraint(None, None, strict, e)

    def clocks(self) -> set[ClockId]:
        return {c for c in (self.pos, self.neg) if c is not None}

    def params(self) -> set[ParamId]:
        return self.bound.params()

    @property
    def rel(self) -> str:
        return "<" if self.strict else "<="

    def negate(self) -> "AtomicConstraint":
        """Complement: not(LHS < e) is -LHS <= -e, and dually for <=."""
        return AtomicConstraint(self.neg, self.pos, not self.strict, self.bound.negate())

    def substitute_resets(self, resets: Mapping[ClockId, int]) -> "AtomicConstraint":
        """Atom talking about post-reset values, as a pre-reset condition."""
        pos, neg, bound = self.pos, self.neg, self.bound
        if pos is not None and pos in resets:
            bound = bound.shift(-resets[pos])
            pos = None
        if neg is not None and neg in resets:
            bound = bound.shift(resets[neg])
            neg = None
        return AtomicConstraint(pos, neg, self.strict, bound)

    def rename_params(self, mapping: Mapping[ParamId, ParamId]) -> "AtomicConstraint":
        return AtomicConstraint(self.pos, self.neg, self.strict, self.bound.rename_params(mapping))

    def substitute_params(self, assignment: Mapping[ParamId, int]) -> "AtomicConstraint":
        return AtomicConstraint(self.pos, self.neg, self.strict, self.bound.substitute(assignment))

    def lhs_value(self, clock_values: Mapping[ClockId, Fraction]) -> Fraction:
        v = Fraction(0)
        if self.pos is not None:
            v += clock_values[self.pos]
        if self.neg is not None:
            v -= clock_values[self.neg]
        return v

    def __str__(self) -> str:
        if self.pos is not None and self.neg is not None:
            lhs = "%s - %s" % (self.pos, self.neg)
        elif self.pos is not None:
            lhs = self.pos
        elif self.neg is not None:
            lhs = "-%s" % self.neg
        else:
            lhs = "0"
        return "%s %s %s" % (lhs, self.rel, self.bound)


TRUE_ATOMS: tuple[AtomicConstraint, ...] = ()


@dataclass(frozen=True)
class SimpleConstraint:
    """A finite conjunction of atomic constraints; empty means true."""

    atoms: tuple[AtomicConstraint, ...] = ()

    @staticmethod
    def true() -> "SimpleConstraint":
        return SimpleConstraint(())

    @staticmethod
    def of(*atoms: AtomicConstraint) -> "SimpleConstraint":
        return SimpleConstraint(tuple(atoms))

    @property
    def is_true(self) -> bool:
        return not self.atoms

    def conjoin(self, other: "SimpleConstraint | Iterable[AtomicConstraint]") -> "SimpleConstraint":
        extra = other.atoms if isinstance(other, SimpleConstraint) else tuple(other)
        return SimpleConstraint(self.atoms + tuple(extra))

    def normalize(self) -> "SimpleConstraint":
        """Drop duplicate atoms, keeping first occurrences in order."""
        seen = set()
        out = []
        for a in self.atoms:
            if a not in seen:
                seen.add(a)
                out.append(a)
        return SimpleConstraint(tuple(out))

    def clocks(self) -> set[ClockId]:
        out: set[ClockId] = set()
        for a in self.atoms:
            out |= a.clocks()
        return out

    def params(self) -> set[ParamId]:
        out: set[ParamId] = set()
        for a in self.atoms:
            out |= a.params()
        return out

    def substitute_resets(self, resets: Mapping[ClockId, int]) -> "SimpleConstraint":
        return SimpleConstraint(tuple(a.substitute_resets(resets) for a in self.atoms))

    def rename_params(self, mapping: Mapping[ParamId, ParamId]) -> "SimpleConstraint":
        return SimpleConstraint(tuple(a.rename_params(mapping) for a in self.atoms))

    def substitute_params(self, assignment: Mapping[ParamId, int]) -> "SimpleConstraint":
        return SimpleConstraint(tuple(a.substitute_params(assignment) for a in self.atoms))

    def __str__(self) -> str:
        if not self.atoms:
            return "true"
        return " && ".join(str(a) for a in self.atoms)


def atom_satisfied(
    atom: AtomicConstraint,
    valuation: Mapping[ParamId, int | float],
    clock_values: Mapping[ClockId, Fraction],
) -> bool:
    rhs = evaluate_expr(atom.bound, valuation)
    if not rhs.is_finite:
        return rhs.value > 0  # LHS < +inf true, LHS < -inf false
    lhs = atom.lhs_value(clock_values)
    return lhs < rhs.value if atom.strict else lhs <= rhs.value


def satisfies(
    valuation: Mapping[ParamId, int | float],
    clock_values: Mapping[ClockId, Fraction],
    g: SimpleConstraint,
) -> bool:
    """(valuation, clock_values) |= g, with the infinity conventions."""
    return all(atom_satisfied(a, valuation, clock_values) for a in g.atoms)
