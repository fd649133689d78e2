"""Syntactic runs: goal encoding into final guards and invariant absorption."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..core import (
    AtomicConstraint,
    BoolConst,
    LocAtom,
    Pta,
    ResetSet,
    SimpleConstraint,
    StateFormula,
    Transition,
    disjunctive_normal_form,
    map_formula_atoms,
)
from ..core.formula import And, ClockAtom, Not, Or
from ..mc import path_entry_feasible


@dataclass(frozen=True)
class SyntacticStep:
    guard: SimpleConstraint
    action: str
    resets: ResetSet
    target: str
    target_invariant: SimpleConstraint


@dataclass(frozen=True)
class SyntacticRun:
    """Consecutive transitions of a PTA, starting at its initial location."""

    clocks: tuple[str, ...]
    init: str
    init_invariant: SimpleConstraint
    steps: tuple[SyntacticStep, ...]

    @staticmethod
    def from_transitions(pta: Pta, transitions: Sequence[Transition]) -> "SyntacticRun":
        loc = pta.init
        steps = []
        for t in transitions:
            if t.source != loc:
                raise ValueError("transition %s does not continue the run at %s" % (t, loc))
            steps.append(SyntacticStep(t.guard, t.action, t.resets, t.target,
                                       pta.invariant(t.target)))
            loc = t.target
        return SyntacticRun(pta.clocks, pta.init, pta.invariant(pta.init), tuple(steps))

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def final_location(self) -> str:
        return self.steps[-1].target if self.steps else self.init

    @property
    def final_invariant(self) -> SimpleConstraint:
        return self.steps[-1].target_invariant if self.steps else self.init_invariant

    def locations(self) -> list[str]:
        return [self.init] + [s.target for s in self.steps]

    def guards(self) -> list[SimpleConstraint]:
        return [s.guard for s in self.steps]

    def params(self) -> set[str]:
        out = self.init_invariant.params()
        for s in self.steps:
            out |= s.guard.params() | s.target_invariant.params()
        return out

    def is_reset_free(self) -> bool:
        return all(s.resets.is_empty for s in self.steps)

    def has_true_invariants(self) -> bool:
        return self.init_invariant.is_true and all(
            s.target_invariant.is_true for s in self.steps)

    def with_final_invariant(self, inv: SimpleConstraint) -> "SyntacticRun":
        if not self.steps:
            return SyntacticRun(self.clocks, self.init, inv, self.steps)
        last = self.steps[-1]
        new_last = SyntacticStep(last.guard, last.action, last.resets, last.target, inv)
        return SyntacticRun(self.clocks, self.init, self.init_invariant,
                            self.steps[:-1] + (new_last,))

    def feasible(self, valuation: Mapping[str, int | float],
                 final_atoms: Sequence[AtomicConstraint] = ()) -> bool:
        """Nonemptiness of the run's reachable-state set at the final entry."""
        return path_entry_feasible(
            self.clocks, self.init_invariant,
            [(s.guard, s.resets, s.target_invariant) for s in self.steps],
            valuation, final_atoms)

    def to_pta(self, params: Iterable[str], name: str = "run") -> Pta:
        """A linear PTA with fresh location names s0..sl."""
        locs = tuple("s%d" % i for i in range(self.length + 1))
        invs = [(locs[0], self.init_invariant)]
        trans = []
        for i, s in enumerate(self.steps):
            invs.append((locs[i + 1], s.target_invariant))
            trans.append(Transition(locs[i], s.guard, s.action, s.resets, locs[i + 1]))
        return Pta(name=name, clocks=self.clocks, params=tuple(params),
                   locations=locs, init=locs[0], invariants=tuple(invs),
                   transitions=tuple(trans))


def encode_goal_at_location(formula: StateFormula, q: str) -> StateFormula:
    """Resolve location atoms against q; clock atoms and connectives stay."""
    if isinstance(formula, LocAtom):
        return BoolConst(formula.loc == q)
    if isinstance(formula, (ClockAtom, BoolConst)):
        return formula
    if isinstance(formula, Not):
        return Not(encode_goal_at_location(formula.inner, q))
    if isinstance(formula, And):
        return And(tuple(encode_goal_at_location(g, q) for g in formula.items))
    if isinstance(formula, Or):
        return Or(tuple(encode_goal_at_location(g, q) for g in formula.items))
    raise TypeError("unknown formula node %r" % (formula,))


def goal_run_variants(run: SyntacticRun, formula: StateFormula) -> list[SyntacticRun]:
    """One run per DNF disjunct of the goal resolved at the final location.

    Each variant conjoins its disjunct's atoms to the final invariant, so
    guards stay simple constraints; an empty list means the goal is false at
    the final location.
    """
    resolved = encode_goal_at_location(formula, run.final_location)
    variants = []
    for disjunct in disjunctive_normal_form(resolved):
        inv = run.final_invariant.conjoin(disjunct.atoms)
        variants.append(run.with_final_invariant(inv))
    return variants


def absorb_invariants(run: SyntacticRun) -> SyntacticRun:
    """Move location invariants into guards: g becomes g and I(source) and
    I(target) with the step's resets substituted; invariants become true."""
    true = SimpleConstraint.true()
    steps = []
    prev_inv = run.init_invariant
    for s in run.steps:
        guard = s.guard.conjoin(prev_inv).conjoin(
            s.target_invariant.substitute_resets(s.resets.mapping()))
        steps.append(SyntacticStep(guard, s.action, s.resets, s.target, true))
        prev_inv = s.target_invariant
    return SyntacticRun(run.clocks, run.init, true, tuple(steps))


def satisfies_goal(run: SyntacticRun, valuation: Mapping[str, int | float],
                   formula: StateFormula) -> bool:
    """Whether some complete traversal of the run ends in a goal state."""
    return any(variant.feasible(valuation) for variant in goal_run_variants(run, formula))
