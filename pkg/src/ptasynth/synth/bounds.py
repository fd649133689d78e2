"""Effective guard bounds and feasible-run generation for single-parameter runs.

On a reset-free run every clock carries the same value, so each guard's
lower and upper conjuncts bound one scalar.  The dominance order compares
parameter coefficients first, then constants, then strictness on equal
expressions; the dominant lower bound fixes the earliest entry value, and a
monotone repair pass turns those entry values into a feasible run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..core import LinearExpr, SimpleConstraint, evaluate_expr, satisfies
from ..mc.witness import ConcreteRun, RunState, RunStep
from .runs import SyntacticRun


@dataclass(frozen=True)
class EffectiveBound:
    """The dominant lower/upper conjunct of a guard, or its sentinel.

    The lower sentinel is exactly `x > -1`, the upper sentinel `x < inf`
    (expr None).
    """

    kind: str  # "lower" | "upper"
    strict: bool
    expr: LinearExpr | None
    is_sentinel: bool = False

    def coefficient(self, p: str) -> int | float:
        if self.expr is None:
            return float("inf")
        return self.expr.coeff(p)

    def __str__(self) -> str:
        if self.kind == "lower":
            return "x %s %s" % (">" if self.strict else ">=", self.expr)
        rhs = "inf" if self.expr is None else str(self.expr)
        return "x %s %s" % ("<" if self.strict else "<=", rhs)


LOWER_SENTINEL = EffectiveBound("lower", True, LinearExpr.constant(-1), True)
UPPER_SENTINEL = EffectiveBound("upper", True, None, True)


def lower_bound_dominates(b1: EffectiveBound, b2: EffectiveBound, p: str) -> bool:
    """b1 is at least as strong a lower bound as b2 for large p."""
    e1, e2 = b1.expr, b2.expr
    if e1.coeff(p) > e2.coeff(p):
        return True
    if e1.coeff(p) == e2.coeff(p) and e1.const > e2.const:
        return True
    if e1 == e2 and b1.strict:
        return True
    if e1 == e2 and not b2.strict:
        return True
    return False


def upper_bound_dominates(b1: EffectiveBound, b2: EffectiveBound, p: str) -> bool:
    """b1 is at least as strong an upper bound as b2 for large p."""
    if b1.expr is None or b2.expr is None:
        return b2.expr is None
    e1, e2 = b1.expr, b2.expr
    if e1.coeff(p) < e2.coeff(p):
        return True
    if e1.coeff(p) == e2.coeff(p) and e1.const < e2.const:
        return True
    if e1 == e2 and b1.strict:
        return True
    if e1 == e2 and not b2.strict:
        return True
    return False


def _guard_lower_bounds(g: SimpleConstraint) -> list[EffectiveBound]:
    # -x < e  <=>  x > -e ; clock-free and difference atoms bound nothing here
    return [EffectiveBound("lower", a.strict, a.bound.negate())
            for a in g.atoms if a.neg is not None and a.pos is None]


def _guard_upper_bounds(g: SimpleConstraint) -> list[EffectiveBound]:
    return [EffectiveBound("upper", a.strict, a.bound)
            for a in g.atoms if a.pos is not None and a.neg is None]


def _pick(bounds: list[EffectiveBound], dominates, p: str, sentinel: EffectiveBound) -> EffectiveBound:
    if not bounds:
        return sentinel
    best = bounds[0]
    for cand in bounds[1:]:
        # replace only on strict dominance; ties and incomparable pairs keep
        # the earlier conjunct
        if dominates(cand, best, p) and not dominates(best, cand, p):
            best = cand
    return best


def effective_lower_bound(g: SimpleConstraint, p: str) -> EffectiveBound:
    return _pick(_guard_lower_bounds(g), lower_bound_dominates, p, LOWER_SENTINEL)


def effective_upper_bound(g: SimpleConstraint, p: str) -> EffectiveBound:
    return _pick(_guard_upper_bounds(g), upper_bound_dominates, p, UPPER_SENTINEL)


def earliest_entry_value(g: SimpleConstraint, p: str, t_value: int) -> int:
    """The smallest natural satisfying the guard's dominant lower bound at p=t."""
    elb = effective_lower_bound(g, p)
    v = evaluate_expr(elb.expr, {p: t_value})
    assert v.is_finite
    return max(0, v.value + 1) if elb.strict else max(0, v.value)


def initial_entry_values(run: SyntacticRun, p: str, t_value: int) -> list[int]:
    """Entry value 0 at the start, then each guard's earliest entry value."""
    return [0] + [earliest_entry_value(s.guard, p, t_value) for s in run.steps]


class InfeasibleRun(ValueError):
    """The generated value sequence violates a guard: the run has no
    feasible instantiation at any large parameter value."""


def generate_feasible_run(run: SyntacticRun, t_value: int) -> ConcreteRun:
    """Monotone-repair construction of a feasible run at p = t_value.

    Requires a reset-free run with true invariants over at most one
    parameter, known feasible at some parameter value >= the stability
    constant.  Entry values start from the guards' earliest entry values and
    are lifted to the previous value wherever they decrease; the result is
    replayed and InfeasibleRun raised if any guard fails.
    """
    if not run.is_reset_free():
        raise ValueError("run must be reset-free")
    if not run.has_true_invariants():
        raise ValueError("run must have true invariants")
    params = run.params()
    if len(params) > 1:
        raise ValueError("run must involve at most one parameter")
    p = next(iter(params), "p")

    omega = initial_entry_values(run, p, t_value)
    changed = True
    while changed:
        changed = False
        for i in range(1, len(omega)):
            if omega[i] < omega[i - 1]:
                omega[i] = omega[i - 1]
                changed = True

    valuation = {p: t_value} if params else {}
    for i, step in enumerate(run.steps, start=1):
        values = {c: Fraction(omega[i]) for c in run.clocks}
        if not satisfies(valuation, values, step.guard):
            raise InfeasibleRun(
                "guard %d (%s) fails at value %d under %s=%d"
                % (i, step.guard, omega[i], p, t_value))

    locations = run.locations()
    initial = RunState(locations[0], {c: Fraction(0) for c in run.clocks})
    steps: list[RunStep] = []
    for i, step in enumerate(run.steps, start=1):
        values = {c: Fraction(omega[i]) for c in run.clocks}
        steps.append(RunStep(RunState(locations[i - 1], dict(values)),
                             delay=Fraction(omega[i] - omega[i - 1])))
        steps.append(RunStep(RunState(locations[i], dict(values)), action=step.action))
    return ConcreteRun(initial, tuple(steps), max(omega) if omega else 0)
