"""State formulas and reachability/safety properties.

A state formula combines clock-constraint atoms and location atoms with
not/and/or; a property wraps one state formula in E<> (some reachable state)
or A[] (all reachable states).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .constraint import AtomicConstraint, atom_satisfied
from .expr import ClockId, ParamId


class StateFormula:
    """Base class; concrete nodes below."""

    def atoms(self) -> Iterator[AtomicConstraint]:
        return iter(())

    def locations(self) -> set[str]:
        return set()

    def clocks(self) -> set[ClockId]:
        return {c for a in self.atoms() for c in a.clocks()}

    def params(self) -> set[ParamId]:
        return {p for a in self.atoms() for p in a.params()}


@dataclass(frozen=True)
class ClockAtom(StateFormula):
    atom: AtomicConstraint

    def atoms(self) -> Iterator[AtomicConstraint]:
        yield self.atom

    def __str__(self) -> str:
        return str(self.atom)


@dataclass(frozen=True)
class LocAtom(StateFormula):
    loc: str

    def locations(self) -> set[str]:
        return {self.loc}

    def __str__(self) -> str:
        return "loc == %s" % self.loc


@dataclass(frozen=True)
class BoolConst(StateFormula):
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Not(StateFormula):
    inner: StateFormula

    def atoms(self) -> Iterator[AtomicConstraint]:
        return self.inner.atoms()

    def locations(self) -> set[str]:
        return self.inner.locations()

    def __str__(self) -> str:
        return "!(%s)" % self.inner


@dataclass(frozen=True)
class And(StateFormula):
    items: tuple[StateFormula, ...]

    def atoms(self) -> Iterator[AtomicConstraint]:
        for f in self.items:
            yield from f.atoms()

    def locations(self) -> set[str]:
        out: set[str] = set()
        for f in self.items:
            out |= f.locations()
        return out

    def __str__(self) -> str:
        return "(" + " && ".join(str(f) for f in self.items) + ")"


@dataclass(frozen=True)
class Or(StateFormula):
    items: tuple[StateFormula, ...]

    def atoms(self) -> Iterator[AtomicConstraint]:
        for f in self.items:
            yield from f.atoms()

    def locations(self) -> set[str]:
        out: set[str] = set()
        for f in self.items:
            out |= f.locations()
        return out

    def __str__(self) -> str:
        return "(" + " || ".join(str(f) for f in self.items) + ")"


class Quantifier(enum.Enum):
    EXISTS_EVENTUALLY = "E<>"
    ALWAYS = "A[]"


@dataclass(frozen=True)
class Property:
    quantifier: Quantifier
    formula: StateFormula

    @property
    def is_reachability(self) -> bool:
        return self.quantifier is Quantifier.EXISTS_EVENTUALLY

    def atoms(self) -> Iterator[AtomicConstraint]:
        return self.formula.atoms()

    def params(self) -> set[ParamId]:
        return self.formula.params()

    def clocks(self) -> set[ClockId]:
        return self.formula.clocks()

    def locations(self) -> set[str]:
        return self.formula.locations()

    def __str__(self) -> str:
        return "%s %s" % (self.quantifier.value, self.formula)


def exists_eventually(f: StateFormula) -> Property:
    return Property(Quantifier.EXISTS_EVENTUALLY, f)


def always(f: StateFormula) -> Property:
    return Property(Quantifier.ALWAYS, f)


def negation_normal_form(f: StateFormula) -> StateFormula:
    """Push negations inward; clock atoms absorb them by complementation.

    In the result, Not appears only directly above LocAtom.
    """
    if isinstance(f, (ClockAtom, LocAtom, BoolConst)):
        return f
    if isinstance(f, And):
        return And(tuple(negation_normal_form(g) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(negation_normal_form(g) for g in f.items))
    if isinstance(f, Not):
        g = f.inner
        if isinstance(g, ClockAtom):
            return ClockAtom(g.atom.negate())
        if isinstance(g, BoolConst):
            return BoolConst(not g.value)
        if isinstance(g, LocAtom):
            return f
        if isinstance(g, Not):
            return negation_normal_form(g.inner)
        if isinstance(g, And):
            return Or(tuple(negation_normal_form(Not(h)) for h in g.items))
        if isinstance(g, Or):
            return And(tuple(negation_normal_form(Not(h)) for h in g.items))
    raise TypeError("unknown formula node %r" % (f,))


@dataclass(frozen=True)
class Disjunct:
    """One conjunctive clause of a DNF: location literals plus clock atoms."""

    pos_locs: tuple[str, ...] = ()
    neg_locs: tuple[str, ...] = ()
    atoms: tuple[AtomicConstraint, ...] = ()

    def admits_location(self, q: str) -> bool:
        if any(p != q for p in self.pos_locs):
            return False
        return q not in self.neg_locs

    def __str__(self) -> str:
        parts = ["loc == %s" % q for q in self.pos_locs]
        parts += ["loc != %s" % q for q in self.neg_locs]
        parts += [str(a) for a in self.atoms]
        return " && ".join(parts) if parts else "true"


def disjunctive_normal_form(f: StateFormula) -> list[Disjunct]:
    """DNF of a formula; an empty list means false.

    The input is first put in negation normal form.  Clause blowup is
    accepted: state formulas are small.
    """
    clauses = _dnf(negation_normal_form(f))
    out = []
    for pos, neg, atoms in clauses:
        if len(set(pos)) > 1:
            continue  # two different required locations: unsatisfiable
        if set(pos) & set(neg):
            continue
        out.append(Disjunct(tuple(dict.fromkeys(pos)), tuple(dict.fromkeys(neg)),
                            tuple(atoms)))
    return out


_Clause = tuple[list[str], list[str], list[AtomicConstraint]]


def _dnf(f: StateFormula) -> list[_Clause]:
    if isinstance(f, BoolConst):
        return [([], [], [])] if f.value else []
    if isinstance(f, ClockAtom):
        return [([], [], [f.atom])]
    if isinstance(f, LocAtom):
        return [([f.loc], [], [])]
    if isinstance(f, Not):
        assert isinstance(f.inner, LocAtom), "input must be in NNF"
        return [([], [f.inner.loc], [])]
    if isinstance(f, Or):
        out: list[_Clause] = []
        for g in f.items:
            out.extend(_dnf(g))
        return out
    if isinstance(f, And):
        acc: list[_Clause] = [([], [], [])]
        for g in f.items:
            new: list[_Clause] = []
            for gp, gn, ga in _dnf(g):
                for ap, an, aa in acc:
                    new.append((ap + gp, an + gn, aa + ga))
            acc = new
        return acc
    raise TypeError("unknown formula node %r" % (f,))


def formula_holds(
    f: StateFormula,
    location: str,
    valuation: Mapping[ParamId, int | float],
    clock_values: Mapping[ClockId, Fraction],
) -> bool:
    """Truth of a state formula at a concrete state."""
    if isinstance(f, BoolConst):
        return f.value
    if isinstance(f, ClockAtom):
        return atom_satisfied(f.atom, valuation, clock_values)
    if isinstance(f, LocAtom):
        return f.loc == location
    if isinstance(f, Not):
        return not formula_holds(f.inner, location, valuation, clock_values)
    if isinstance(f, And):
        return all(formula_holds(g, location, valuation, clock_values) for g in f.items)
    if isinstance(f, Or):
        return any(formula_holds(g, location, valuation, clock_values) for g in f.items)
    raise TypeError("unknown formula node %r" % (f,))


def negate_property_formula(prop: Property) -> StateFormula:
    """The formula whose E<> dualizes an A[] property (and vice versa)."""
    return negation_normal_form(Not(prop.formula))


def map_formula_atoms(f: StateFormula, fn) -> StateFormula:
    """Structure-preserving transform of every clock atom."""
    if isinstance(f, ClockAtom):
        return ClockAtom(fn(f.atom))
    if isinstance(f, (LocAtom, BoolConst)):
        return f
    if isinstance(f, Not):
        return Not(map_formula_atoms(f.inner, fn))
    if isinstance(f, And):
        return And(tuple(map_formula_atoms(g, fn) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(map_formula_atoms(g, fn) for g in f.items))
    raise TypeError("unknown formula node %r" % (f,))


def rename_formula_params(f: StateFormula, mapping) -> StateFormula:
    return map_formula_atoms(f, lambda a: a.rename_params(mapping))


def substitute_formula_params(f: StateFormula, assignment) -> StateFormula:
    return map_formula_atoms(f, lambda a: a.substitute_params(assignment))
