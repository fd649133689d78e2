"""Sign-of-occurrence parameter classification and the stability constant."""

from __future__ import annotations

import enum
import math
from typing import Iterator, Mapping

from .constraint import AtomicConstraint
from .expr import ClockId, LinearExpr, ParamId
from .formula import Property, StateFormula, negation_normal_form
from .pta import Pta


class ParamClass(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"
    MIXED = "mixed"
    UNUSED = "unused"


def _property_atoms(prop: Property | None) -> Iterator[AtomicConstraint]:
    """Atoms of the property with negations pushed into them."""
    if prop is None:
        return
    yield from negation_normal_form(prop.formula).atoms()


def classify_params(pta: Pta, prop: Property | None = None) -> dict[ParamId, ParamClass]:
    """Classify every declared parameter by its occurrence signs.

    A parameter occurring only with positive coefficients is an upper-bound
    parameter, only negative a lower-bound one; both signs make it mixed.
    The property's formula is scanned in negation normal form so that a
    negated atom contributes the sign it actually acts with.
    """
    pos: set[ParamId] = set()
    neg: set[ParamId] = set()

    def scan(e: LinearExpr) -> None:
        for p, c in e.coeffs:
            (pos if c > 0 else neg).add(p)

    for e in pta.expressions():
        scan(e)
    for a in _property_atoms(prop):
        scan(a.bound)

    out: dict[ParamId, ParamClass] = {}
    for p in pta.params:
        if p in pos and p in neg:
            out[p] = ParamClass.MIXED
        elif p in pos:
            out[p] = ParamClass.UPPER
        elif p in neg:
            out[p] = ParamClass.LOWER
        else:
            out[p] = ParamClass.UNUSED
    return out


def is_lower_upper(pta: Pta, prop: Property | None = None) -> bool:
    return ParamClass.MIXED not in classify_params(pta, prop).values()


def parametric_clocks(pta: Pta, prop: Property | None = None) -> set[ClockId]:
    """Clocks appearing in some constraint that also mentions a parameter."""
    out: set[ClockId] = set()
    for g in pta.guard_and_invariant_constraints():
        for a in g.atoms:
            if a.params():
                out |= a.clocks()
    for a in _property_atoms(prop):
        if a.params():
            out |= a.clocks()
    return out


def constant_c(pta: Pta, prop: Property) -> int:
    """2 * max(maxC, maxV) + 2.

    maxC is the largest |constant term| over guard, invariant, and reset
    expressions of the automaton; maxV the largest |constant| in the
    property.
    """
    max_c = 0
    for e in pta.expressions():
        max_c = max(max_c, abs(e.const))
    for b in pta.reset_constants():
        max_c = max(max_c, abs(b))
    max_v = 0
    for a in prop.atoms():
        max_v = max(max_v, abs(a.bound.const))
    return 2 * max(max_c, max_v) + 2


def smallest_constant(pta: Pta, formula: StateFormula) -> int:
    """The smallest constant term occurring in the automaton and formula."""
    consts = [e.const for e in pta.expressions()]
    consts += list(pta.reset_constants())
    consts += [a.bound.const for a in formula.atoms()]
    return min(consts, default=0)


def validate_param_valuation(
    pta: Pta,
    valuation: Mapping[ParamId, int | float],
    prop: Property | None = None,
) -> None:
    """Check totality, naturality, and that only upper-bound parameters get inf."""
    classes = classify_params(pta, prop)
    for p in pta.params:
        if p not in valuation:
            raise ValueError("valuation missing parameter %s" % p)
        v = valuation[p]
        if isinstance(v, float):
            if v != math.inf:
                raise ValueError("parameter %s must be a natural or inf" % p)
            if classes[p] is not ParamClass.UPPER:
                raise ValueError(
                    "inf assigned to %s, which is not an upper-bound parameter" % p)
        elif v < 0:
            raise ValueError("negative value for parameter %s" % p)
    extra = set(valuation) - set(pta.params)
    if extra:
        raise ValueError("valuation mentions undeclared parameter(s) %s" % sorted(extra))


def zero_inf_valuation(pta: Pta, prop: Property | None = None) -> dict[ParamId, int | float]:
    """0 on lower-bound (and unused) parameters, inf on upper-bound ones."""
    classes = classify_params(pta, prop)
    if ParamClass.MIXED in classes.values():
        mixed = sorted(p for p, c in classes.items() if c is ParamClass.MIXED)
        raise ValueError("mixed parameter(s) %s: not an L/U automaton" % mixed)
    return {p: (math.inf if classes[p] is ParamClass.UPPER else 0) for p in pta.params}
