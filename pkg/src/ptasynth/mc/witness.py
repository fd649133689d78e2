"""Concrete run extraction for satisfied reachability properties.

A symbolic path found by the zone explorer is concretized by solving the
path's difference constraints over transition-time variables: shortest-path
closure over a rational-bound DBM, then a lexicographically minimal choice
of firing times (strict lower bounds, which have no attained minimum, take
the midpoint of the allowed interval, or lower + 1/2 when unbounded).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from ..core import (
    Property,
    Pta,
    Quantifier,
    StateFormula,
    Transition,
    disjunctive_normal_form,
    exists_eventually,
    formula_holds,
    satisfies,
    validate_param_valuation,
)
from .concrete import ConcreteAtom, concretize, concretize_atoms, concretize_disjuncts, remove_diagonals
from .dbm import Dbm
from .zone import _Explorer


@dataclass(frozen=True)
class RunState:
    location: str
    clock_values: dict[str, Fraction]

    def __repr__(self) -> str:
        vals = ", ".join("%s=%s" % (c, v) for c, v in sorted(self.clock_values.items()))
        return "(%s | %s)" % (self.location, vals)


@dataclass(frozen=True)
class RunStep:
    """Either a delay step (delay set) or an action step (action set)."""

    state: RunState
    delay: Fraction | None = None
    action: str | None = None


@dataclass(frozen=True)
class ConcreteRun:
    initial: RunState
    steps: tuple[RunStep, ...]
    max_clock_ceiling: int

    @property
    def last_state(self) -> RunState:
        return self.steps[-1].state if self.steps else self.initial

    def replay(self, pta: Pta, valuation: Mapping[str, int | float],
               goal: StateFormula | None = None) -> bool:
        """Re-check every delay, guard, reset, and invariant exactly."""
        inv_map = dict(pta.invariants)
        trans_index = {
            (t.source, t.action, t.target): t for t in pta.transitions}
        current = self.initial
        if any(v != 0 for v in current.clock_values.values()):
            return False
        if not satisfies(valuation, current.clock_values, inv_map[current.location]):
            return False
        for step in self.steps:
            nxt = step.state
            if step.delay is not None:
                if step.delay < 0 or nxt.location != current.location:
                    return False
                expected = {c: v + step.delay for c, v in current.clock_values.items()}
                if expected != nxt.clock_values:
                    return False
            else:
                t = trans_index.get((current.location, step.action, nxt.location))
                if t is None:
                    return False
                if not satisfies(valuation, current.clock_values, t.guard):
                    return False
                if t.resets.apply(current.clock_values) != nxt.clock_values:
                    return False
            if not satisfies(valuation, nxt.clock_values, inv_map[nxt.location]):
                return False
            current = nxt
        if goal is not None:
            return formula_holds(goal, current.location, valuation, current.clock_values)
        return True


class UnexpectedInfeasiblePath(RuntimeError):
    pass


def witness_run(pta: Pta, valuation: Mapping[str, int | float],
                formula: StateFormula) -> ConcreteRun | None:
    """A concrete run reaching a formula state, or None when unreachable."""
    validate_param_valuation(pta, valuation)
    disjuncts = concretize_disjuncts(disjunctive_normal_form(formula), valuation)
    cta = concretize(pta, valuation)
    tcta, goal = remove_diagonals(cta, disjuncts)
    ex = _Explorer(tcta, goal, record_parents=True)
    ex.run(stop_on_goal=True)
    if ex.goal_hit is None:
        return None
    q, zone, d = ex.goal_hit
    hit_index = next(i for i, (dd, _bits) in enumerate(goal) if dd is d)
    final_atoms = disjuncts[hit_index].atoms

    path: list[Transition] = []
    key = (q, zone.key())
    while key in ex.parents:
        pq, pzkey, ct = ex.parents[key]
        path.append(ct.origin)
        key = (pq, pzkey)
    path.reverse()
    return _concretize_path(pta, valuation, path, final_atoms)


def _concretize_path(pta: Pta, valuation, path: list[Transition],
                     final_atoms: tuple[ConcreteAtom, ...]) -> ConcreteRun:
    """Solve firing times T_1..T_L and an observation time lexicographically."""
    inv_map = dict(pta.invariants)
    length = len(path)
    obs = length + 1
    d = Dbm.unconstrained(obs)  # variable i is T_i; index 0 is T_0 = 0
    for i in range(1, obs + 1):
        d.tighten(i - 1, i, (0, False))  # time is nondecreasing
        d.tighten(0, i, (0, False))

    last_reset: dict[str, tuple[int, int]] = {c: (0, 0) for c in pta.clocks}

    def apply_atoms(atoms, at: int, resets: Mapping[str, tuple[int, int]]) -> None:
        for a in atoms:
            if a.pos is not None and a.neg is not None:
                rx, bx = resets[a.pos]
                ry, by = resets[a.neg]
                d.tighten(ry, rx, (a.c - bx + by, a.strict))
            elif a.pos is not None:
                r, b = resets[a.pos]
                d.tighten(at, r, (a.c - b, a.strict))
            elif a.neg is not None:
                r, b = resets[a.neg]
                d.tighten(r, at, (a.c + b, a.strict))
            else:
                if not a.holds_at_zero():
                    raise UnexpectedInfeasiblePath("constant atom is false")

    def concretized(g) -> list[ConcreteAtom]:
        atoms = concretize_atoms(g.atoms, valuation)
        if atoms == "unsat":
            raise UnexpectedInfeasiblePath("guard concretizes to false")
        return atoms

    init_inv = concretized(inv_map[pta.init])
    for a in init_inv:
        if not a.holds_at_zero():
            raise UnexpectedInfeasiblePath("initial invariant fails at zero")
    location = pta.init
    exit_inv_atoms = init_inv
    for i, t in enumerate(path, start=1):
        apply_atoms(exit_inv_atoms, i, last_reset)  # invariant holds until exit
        apply_atoms(concretized(t.guard), i, last_reset)
        for clock, b in t.resets.entries:
            last_reset[clock] = (i, b)
        location = t.target
        entry_inv = concretized(inv_map[location])
        apply_atoms(entry_inv, i, last_reset)
        exit_inv_atoms = entry_inv
    apply_atoms(exit_inv_atoms, obs, last_reset)
    apply_atoms(final_atoms, obs, last_reset)

    d.canonicalize()
    if d.is_empty:
        raise UnexpectedInfeasiblePath("path constraints unsatisfiable")

    times: list[Fraction] = [Fraction(0)]
    for i in range(1, obs + 1):
        lo_val, lo_strict, hi_val, hi_strict = d.interval_of(i)
        lo = Fraction(lo_val)
        if not lo_strict:
            v = lo
        elif hi_val is None:
            v = lo + Fraction(1, 2)
        else:
            v = lo + (Fraction(hi_val) - lo) / 2
        times.append(v)
        d.tighten(i, 0, (v, False))
        d.tighten(0, i, (-v, False))
        d.canonicalize()
        if d.is_empty:
            raise UnexpectedInfeasiblePath("lexicographic choice broke feasibility")

    # Rebuild the alternating run from the firing times.
    values = {c: Fraction(0) for c in pta.clocks}
    location = pta.init
    initial = RunState(location, dict(values))
    steps: list[RunStep] = []
    max_clock = Fraction(0)

    def note_max() -> None:
        nonlocal max_clock
        if values:
            max_clock = max(max_clock, max(values.values()))

    prev_time = Fraction(0)
    for i, t in enumerate(path, start=1):
        delay = times[i] - prev_time
        values = {c: v + delay for c, v in values.items()}
        note_max()
        steps.append(RunStep(RunState(location, dict(values)), delay=delay))
        reset_map = t.resets.mapping()
        values = {c: Fraction(reset_map[c]) if c in reset_map else v
                  for c, v in values.items()}
        note_max()
        location = t.target
        steps.append(RunStep(RunState(location, dict(values)), action=t.action))
        prev_time = times[i]
    delay = times[obs] - prev_time
    values = {c: v + delay for c, v in values.items()}
    note_max()
    steps.append(RunStep(RunState(location, dict(values)), delay=delay))
    return ConcreteRun(initial, tuple(steps), int(math.ceil(max_clock)))
