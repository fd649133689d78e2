"""Parametric timed automata: locations, invariants, guarded transitions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .constraint import SimpleConstraint
from .expr import ClockId, LinearExpr, ParamId


@dataclass(frozen=True)
class ResetSet:
    """Clock updates x := b, at most one per clock, b a natural."""

    entries: tuple[tuple[ClockId, int], ...] = ()

    def __post_init__(self) -> None:
        clocks = [c for c, _ in self.entries]
        if len(set(clocks)) != len(clocks):
            raise ValueError("duplicate reset for a clock")
        for c, b in self.entries:
            if b < 0:
                raise ValueError("negative reset constant for %s" % c)

    @staticmethod
    def of(**assignments: int) -> "ResetSet":
        return ResetSet(tuple(sorted(assignments.items())))

    @staticmethod
    def from_mapping(m: Mapping[ClockId, int]) -> "ResetSet":
        return ResetSet(tuple(sorted(m.items())))

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def value(self, clock: ClockId) -> int | None:
        for c, b in self.entries:
            if c == clock:
                return b
        return None

    def clocks(self) -> set[ClockId]:
        return {c for c, _ in self.entries}

    def mapping(self) -> dict[ClockId, int]:
        return dict(self.entries)

    def apply(self, clock_values: Mapping[ClockId, Fraction]) -> dict[ClockId, Fraction]:
        out = dict(clock_values)
        for c, b in self.entries:
            out[c] = Fraction(b)
        return out

    def __str__(self) -> str:
        return ", ".join("%s := %d" % (c, b) for c, b in self.entries)


@dataclass(frozen=True)
class Transition:
    source: str
    guard: SimpleConstraint
    action: str
    resets: ResetSet
    target: str

    def __str__(self) -> str:
        return "%s -> %s {%s & %s [%s]}" % (
            self.source, self.target, self.guard, self.action, self.resets)


@dataclass(frozen=True)
class Pta:
    """A parametric timed automaton.

    Invariants map every location to a simple constraint; transitions carry
    simple-constraint guards and natural-constant resets.  All clocks and
    parameters referenced anywhere must be declared.
    """

    name: str
    clocks: tuple[ClockId, ...]
    params: tuple[ParamId, ...]
    locations: tuple[str, ...]
    init: str
    invariants: tuple[tuple[str, SimpleConstraint], ...]
    transitions: tuple[Transition, ...]
    actions: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        locs = set(self.locations)
        if self.init not in locs:
            raise ValueError("initial location %r not declared" % self.init)
        if len(locs) != len(self.locations):
            raise ValueError("duplicate location")
        inv_locs = [q for q, _ in self.invariants]
        if sorted(inv_locs) != sorted(self.locations):
            raise ValueError("invariants must cover exactly the locations")
        declared_clocks = set(self.clocks)
        declared_params = set(self.params)
        for q, inv in self.invariants:
            self._check_symbols(inv, declared_clocks, declared_params, "invariant of %s" % q)
        for t in self.transitions:
            if t.source not in locs or t.target not in locs:
                raise ValueError("transition endpoint not declared: %s" % (t,))
            self._check_symbols(t.guard, declared_clocks, declared_params, "guard of %s" % (t,))
            bad = t.resets.clocks() - declared_clocks
            if bad:
                raise ValueError("reset of undeclared clock(s) %s" % sorted(bad))
        if not self.actions:
            object.__setattr__(
                self, "actions", tuple(sorted({t.action for t in self.transitions})))

    @staticmethod
    def _check_symbols(g: SimpleConstraint, clocks: set[str], params: set[str], where: str) -> None:
        bad_c = g.clocks() - clocks
        bad_p = g.params() - params
        if bad_c:
            raise ValueError("undeclared clock(s) %s in %s" % (sorted(bad_c), where))
        if bad_p:
            raise ValueError("undeclared parameter(s) %s in %s" % (sorted(bad_p), where))

    @cached_property
    def _invariant_map(self) -> dict[str, SimpleConstraint]:
        return dict(self.invariants)

    @cached_property
    def _outgoing(self) -> dict[str, tuple[Transition, ...]]:
        out: dict[str, list[Transition]] = {q: [] for q in self.locations}
        for t in self.transitions:
            out[t.source].append(t)
        return {q: tuple(ts) for q, ts in out.items()}

    def invariant(self, q: str) -> SimpleConstraint:
        return self._invariant_map[q]

    def transitions_from(self, q: str) -> tuple[Transition, ...]:
        return self._outgoing[q]

    def guard_and_invariant_constraints(self) -> Iterator[SimpleConstraint]:
        for _, inv in self.invariants:
            yield inv
        for t in self.transitions:
            yield t.guard

    def expressions(self) -> Iterator[LinearExpr]:
        """Every linear expression in guards and invariants."""
        for g in self.guard_and_invariant_constraints():
            for a in g.atoms:
                yield a.bound

    def reset_constants(self) -> Iterator[int]:
        for t in self.transitions:
            for _, b in t.resets.entries:
                yield b

    def substitute_params(self, assignment: Mapping[ParamId, int]) -> "Pta":
        """Fix some parameters to concrete naturals, removing them."""
        remaining = tuple(p for p in self.params if p not in assignment)
        return Pta(
            name=self.name,
            clocks=self.clocks,
            params=remaining,
            locations=self.locations,
            init=self.init,
            invariants=tuple((q, inv.substitute_params(assignment)) for q, inv in self.invariants),
            transitions=tuple(
                Transition(t.source, t.guard.substitute_params(assignment), t.action,
                           t.resets, t.target)
                for t in self.transitions),
            actions=self.actions,
        )

    def rename_params(self, mapping: Mapping[ParamId, ParamId], new_params: Iterable[ParamId]) -> "Pta":
        """Rename (possibly collapsing) parameters."""
        return Pta(
            name=self.name,
            clocks=self.clocks,
            params=tuple(new_params),
            locations=self.locations,
            init=self.init,
            invariants=tuple((q, inv.rename_params(mapping)) for q, inv in self.invariants),
            transitions=tuple(
                Transition(t.source, t.guard.rename_params(mapping), t.action,
                           t.resets, t.target)
                for t in self.transitions),
            actions=self.actions,
        )
