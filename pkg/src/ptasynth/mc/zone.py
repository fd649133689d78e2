"""Zone-based forward reachability and the concrete-valuation checker."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from ..core import (
    Property,
    Pta,
    Quantifier,
    disjunctive_normal_form,
    exists_eventually,
    negate_property_formula,
    validate_param_valuation,
)
from .concrete import (
    UNSAT,
    ConcreteAtom,
    ConcreteDisjunct,
    ConcreteTA,
    concretize,
    concretize_disjuncts,
    remove_diagonals,
)
from .dbm import Dbm


@dataclass(frozen=True)
class SymState:
    """A location paired with a nonempty canonical zone."""

    location: str
    zone_key: tuple

    def __repr__(self) -> str:
        return "SymState(%r)" % (self.location,)


class _Explorer:
    """Breadth-first zone exploration with subsumption and extrapolation."""

    def __init__(self, cta: ConcreteTA, goal: Sequence[tuple[ConcreteDisjunct, tuple]],
                 record_parents: bool = False):
        self.cta = cta
        self.goal = goal
        self.clock_index = {c: i + 1 for i, c in enumerate(cta.clocks)}
        self.n = len(cta.clocks)
        self.kbounds = self._max_bounds()
        self.record_parents = record_parents
        self.parents: dict[tuple[Any, tuple], tuple] = {}
        self.visited: dict[Any, list[Dbm]] = {}
        self.states: list[tuple[Any, Dbm]] = []
        self.goal_hit: tuple[Any, Dbm, ConcreteDisjunct] | None = None

    def _max_bounds(self) -> list[int]:
        k = {c: 0 for c in self.cta.clocks}

        def feed(atoms: Iterable[ConcreteAtom]) -> None:
            for a in atoms:
                if a.pos is not None:
                    k[a.pos] = max(k[a.pos], abs(a.c))
                if a.neg is not None:
                    k[a.neg] = max(k[a.neg], abs(a.c))

        for inv in self.cta.invariants.values():
            if inv != UNSAT:
                feed(inv)
        for ts in self.cta.transitions_from.values():
            for t in ts:
                feed(t.atoms)
        for d, _bits in self.goal:
            feed(d.atoms)
        return [0] + [k[c] for c in self.cta.clocks]

    def _triples(self, atoms: Iterable[ConcreteAtom]):
        ci = self.clock_index
        for a in atoms:
            i = ci[a.pos] if a.pos is not None else 0
            j = ci[a.neg] if a.neg is not None else 0
            yield i, j, (a.c, a.strict)

    def _apply(self, zone: Dbm, atoms) -> Dbm | None:
        if atoms == UNSAT:
            return None
        z = zone.copy().constrain_all(self._triples(atoms)).canonicalize()
        return None if z.is_empty else z

    def _initial(self) -> tuple[Any, Dbm] | None:
        q = self.cta.init
        inv = self.cta.invariant(q)
        if inv == UNSAT:
            return None
        zero = Dbm.zero(self.n)
        z = self._apply(zero, inv)
        if z is None:
            return None  # omega = 0 violates the initial invariant
        z = self._apply(z.up(), inv)
        if z is None:
            return None
        z.extrapolate(self.kbounds)
        return q, z

    def _matches_goal(self, q: Any, zone: Dbm) -> ConcreteDisjunct | None:
        orig = self.cta.original_location[q]
        bits = q[1] if isinstance(q, tuple) else ()
        for d, required_bits in self.goal:
            if not d.admits_location(orig):
                continue
            if any(bits[i] != want for i, want in required_bits):
                continue
            if not d.atoms:
                return d
            z = self._apply(zone, d.atoms)
            if z is not None:
                return d
        return None

    def run(self, stop_on_goal: bool) -> None:
        start = self._initial()
        if start is None:
            return
        queue: deque[tuple[Any, Dbm]] = deque()

        def visit(q: Any, z: Dbm, parent=None) -> bool:
            """Returns True when the goal was hit and we should stop."""
            zones = self.visited.setdefault(q, [])
            if any(old.includes(z) for old in zones):
                return False
            zones[:] = [old for old in zones if not z.includes(old)]
            zones.append(z)
            self.states.append((q, z))
            if self.record_parents and parent is not None:
                self.parents[(q, z.key())] = parent
            queue.append((q, z))
            if self.goal_hit is None:
                d = self._matches_goal(q, z)
                if d is not None:
                    self.goal_hit = (q, z, d)
                    return stop_on_goal
            return False

        if visit(*start):
            return
        while queue:
            q, zone = queue.popleft()
            for t in self.cta.outgoing(q):
                z = self._apply(zone, t.atoms)
                if z is None:
                    continue
                for clock, b in t.resets:
                    z.reset(self.clock_index[clock], b)
                inv = self.cta.invariant(t.target)
                z = self._apply(z, inv)
                if z is None:
                    continue
                z = self._apply(z.up(), inv)
                if z is None:
                    continue
                z.extrapolate(self.kbounds)
                parent = (q, zone.key(), t) if self.record_parents else None
                if visit(t.target, z, parent):
                    return


def _prepare(pta: Pta, valuation, formula) -> tuple[ConcreteTA, list]:
    disjuncts = concretize_disjuncts(disjunctive_normal_form(formula), valuation)
    cta = concretize(pta, valuation)
    return remove_diagonals(cta, disjuncts)


def check(pta: Pta, valuation: Mapping[str, int | float], prop: Property) -> bool:
    """Decide pta[valuation] |= prop by zone-based forward reachability."""
    validate_param_valuation(pta, valuation, prop)
    _validate_property(pta, prop)
    if prop.quantifier is Quantifier.ALWAYS:
        dual = exists_eventually(negate_property_formula(prop))
        return not check(pta, valuation, dual)
    cta, goal = _prepare(pta, valuation, prop.formula)
    ex = _Explorer(cta, goal)
    ex.run(stop_on_goal=True)
    return ex.goal_hit is not None


def reach_zone_graph(pta: Pta, valuation: Mapping[str, int | float]) -> set[SymState]:
    """The full symbolic state space under subsumption and extrapolation."""
    validate_param_valuation(pta, valuation)
    cta, goal = _prepare(pta, valuation, _false_formula())
    ex = _Explorer(cta, goal)
    ex.run(stop_on_goal=False)
    return {SymState(cta.original_location[q], z.key())
            for q, zones in ex.visited.items() for z in zones}


def _false_formula():
    from ..core import BoolConst
    return BoolConst(False)


def _validate_property(pta: Pta, prop: Property) -> None:
    bad_p = prop.params() - set(pta.params)
    bad_c = prop.clocks() - set(pta.clocks)
    bad_l = prop.locations() - set(pta.locations)
    if bad_p or bad_c or bad_l:
        parts = []
        if bad_p:
            parts.append("parameter(s) %s" % sorted(bad_p))
        if bad_c:
            parts.append("clock(s) %s" % sorted(bad_c))
        if bad_l:
            parts.append("location(s) %s" % sorted(bad_l))
        raise ValueError("property references undeclared " + ", ".join(parts))
