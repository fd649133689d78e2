"""Concretization of a PTA under a parameter valuation.

Evaluating every guard/invariant expression yields integer-constant atoms;
atoms bounded by +inf are dropped as true and -inf kills the constraint.
Diagonal (clock-difference) atoms are then compiled away: the truth value of
x - y < c only changes at resets, so locations are augmented with a truth
bit per diagonal atom and transitions split on single-clock conditions that
pin the post-reset truth.  Max-bound extrapolation is only sound without
diagonal constraints, which this transformation guarantees.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from ..core import AtomicConstraint, Disjunct, Pta, Transition, evaluate_expr
from ..core.expr import ClockId, ParamId


@dataclass(frozen=True)
class ConcreteAtom:
    """pos - neg (<|<=) c with an integer constant."""

    pos: ClockId | None
    neg: ClockId | None
    strict: bool
    c: int

    @property
    def is_diagonal(self) -> bool:
        return self.pos is not None and self.neg is not None

    def holds_at_zero(self) -> bool:
        return 0 < self.c if self.strict else 0 <= self.c

    def negate(self) -> "ConcreteAtom":
        return ConcreteAtom(self.neg, self.pos, not self.strict, -self.c)


UNSAT = "unsat"


def concretize_atom(atom: AtomicConstraint, valuation: Mapping[ParamId, int | float]):
    """ConcreteAtom, or True (drop) / False (unsatisfiable)."""
    rhs = evaluate_expr(atom.bound, valuation)
    if not rhs.is_finite:
        return rhs.value == math.inf
    c = rhs.value
    if atom.pos is None and atom.neg is None:
        return 0 < c if atom.strict else 0 <= c
    return ConcreteAtom(atom.pos, atom.neg, atom.strict, c)


def concretize_atoms(atoms: Iterable[AtomicConstraint], valuation) -> list[ConcreteAtom] | str:
    """A list of concrete atoms, or UNSAT."""
    out: list[ConcreteAtom] = []
    for a in atoms:
        r = concretize_atom(a, valuation)
        if r is False:
            return UNSAT
        if r is True:
            continue
        out.append(r)
    return out


@dataclass(frozen=True)
class ConcreteDisjunct:
    """A DNF clause of the goal formula after concretization."""

    pos_locs: tuple[str, ...]
    neg_locs: tuple[str, ...]
    atoms: tuple[ConcreteAtom, ...]

    def admits_location(self, q: str) -> bool:
        if any(p != q for p in self.pos_locs):
            return False
        return q not in self.neg_locs


def concretize_disjuncts(disjuncts: Sequence[Disjunct], valuation) -> list[ConcreteDisjunct]:
    out = []
    for d in disjuncts:
        atoms = concretize_atoms(d.atoms, valuation)
        if atoms == UNSAT:
            continue
        out.append(ConcreteDisjunct(d.pos_locs, d.neg_locs, tuple(atoms)))
    return out


@dataclass(frozen=True)
class ConcreteTransition:
    source: Any
    atoms: tuple[ConcreteAtom, ...]
    resets: tuple[tuple[ClockId, int], ...]
    target: Any
    origin: Transition | None = None


@dataclass
class ConcreteTA:
    """A concrete TA over hashable location keys, guards as atom lists."""

    clocks: tuple[ClockId, ...]
    init: Any
    invariants: dict[Any, tuple[ConcreteAtom, ...] | str]  # atoms or UNSAT
    transitions_from: dict[Any, list[ConcreteTransition]]
    original_location: dict[Any, str] = field(default_factory=dict)

    def invariant(self, q: Any):
        return self.invariants[q]

    def outgoing(self, q: Any) -> list[ConcreteTransition]:
        return self.transitions_from.get(q, [])


def concretize(pta: Pta, valuation: Mapping[ParamId, int | float]) -> ConcreteTA:
    invariants: dict[Any, tuple[ConcreteAtom, ...] | str] = {}
    for q, inv in pta.invariants:
        atoms = concretize_atoms(inv.atoms, valuation)
        invariants[q] = UNSAT if atoms == UNSAT else tuple(atoms)
    transitions: dict[Any, list[ConcreteTransition]] = {q: [] for q in pta.locations}
    for t in pta.transitions:
        atoms = concretize_atoms(t.guard.atoms, valuation)
        if atoms == UNSAT:
            continue
        transitions[t.source].append(
            ConcreteTransition(t.source, tuple(atoms), t.resets.entries, t.target, t))
    return ConcreteTA(
        clocks=pta.clocks,
        init=pta.init,
        invariants=invariants,
        transitions_from=transitions,
        original_location={q: q for q in pta.locations},
    )


def diagonal_atoms_of(cta: ConcreteTA, disjuncts: Sequence[ConcreteDisjunct]) -> list[ConcreteAtom]:
    seen: dict[ConcreteAtom, None] = {}
    for inv in cta.invariants.values():
        if inv == UNSAT:
            continue
        for a in inv:
            if a.is_diagonal:
                seen.setdefault(a)
    for ts in cta.transitions_from.values():
        for t in ts:
            for a in t.atoms:
                if a.is_diagonal:
                    seen.setdefault(a)
    for d in disjuncts:
        for a in d.atoms:
            if a.is_diagonal:
                seen.setdefault(a)
    return list(seen)


def _diag_truth_at_zero(diag: ConcreteAtom) -> bool:
    return diag.holds_at_zero()


def _pin_atom(diag: ConcreteAtom, resets: Mapping[ClockId, int]) -> ConcreteAtom | bool:
    """Post-reset truth of a diagonal atom, as a pre-reset single-clock atom.

    Returns True/False when the truth is already determined by the resets.
    """
    x, y = diag.pos, diag.neg
    bx, by = resets.get(x), resets.get(y)
    if bx is not None and by is not None:
        v = bx - by
        return v < diag.c if diag.strict else v <= diag.c
    if bx is not None:
        # bx - y < c  <=>  -y < c - bx
        return ConcreteAtom(None, y, diag.strict, diag.c - bx)
    if by is not None:
        # x - by < c  <=>  x < c + by
        return ConcreteAtom(x, None, diag.strict, diag.c + by)
    raise AssertionError("no reset touches the diagonal atom")


def remove_diagonals(
    cta: ConcreteTA, disjuncts: Sequence[ConcreteDisjunct]
) -> tuple[ConcreteTA, list[tuple[ConcreteDisjunct, tuple[tuple[int, bool], ...]]]]:
    """Split locations on diagonal-atom truth bits.

    Returns the diagonal-free automaton (locations become (q, bits)) and the
    goal disjuncts rewritten as (single-clock disjunct, required bits).
    """
    diags = diagonal_atoms_of(cta, disjuncts)
    if not diags:
        return cta, [(d, ()) for d in disjuncts]
    index = {d: i for i, d in enumerate(diags)}

    def split_atoms(atoms: Iterable[ConcreteAtom]):
        """(single-clock atoms, required diag indices)."""
        plain: list[ConcreteAtom] = []
        required: list[int] = []
        for a in atoms:
            if a.is_diagonal:
                required.append(index[a])
            else:
                plain.append(a)
        return tuple(plain), tuple(required)

    init_bits = tuple(_diag_truth_at_zero(d) for d in diags)
    init = (cta.init, init_bits)

    invariants: dict[Any, tuple[ConcreteAtom, ...] | str] = {}
    transitions: dict[Any, list[ConcreteTransition]] = {}
    original: dict[Any, str] = {}

    inv_split: dict[Any, tuple] = {}
    for q, inv in cta.invariants.items():
        inv_split[q] = UNSAT if inv == UNSAT else split_atoms(inv)

    def location(q: Any, bits: tuple[bool, ...]) -> Any:
        key = (q, bits)
        if key in invariants:
            return key
        inv = inv_split[q]
        if inv == UNSAT or any(not bits[i] for i in inv[1]):
            invariants[key] = UNSAT
        else:
            invariants[key] = inv[0]
        original[key] = cta.original_location[q]
        transitions[key] = []
        for t in cta.outgoing(q):
            plain, required = split_atoms(t.atoms)
            if any(not bits[i] for i in required):
                continue
            resets = dict(t.resets)
            fixed: dict[int, bool] = {}
            branch_pins: list[tuple[int, ConcreteAtom]] = []
            for i, d in enumerate(diags):
                if d.pos not in resets and d.neg not in resets:
                    fixed[i] = bits[i]
                    continue
                pin = _pin_atom(d, resets)
                if isinstance(pin, bool):
                    fixed[i] = pin
                else:
                    branch_pins.append((i, pin))
            for choice in itertools.product((True, False), repeat=len(branch_pins)):
                new_bits = list(init_bits)
                for i in fixed:
                    new_bits[i] = fixed[i]
                extra: list[ConcreteAtom] = []
                for (i, pin), value in zip(branch_pins, choice):
                    new_bits[i] = value
                    extra.append(pin if value else pin.negate())
                transitions[key].append(ConcreteTransition(
                    key, plain + tuple(extra), t.resets,
                    (t.target, tuple(new_bits)), t.origin))
        return key

    # Build reachable product locations on demand, starting from init.
    pending = [init]
    location(*init)
    seen = {init}
    while pending:
        q, bits = pending.pop()
        for t in transitions[(q, bits)]:
            if t.target not in seen:
                seen.add(t.target)
                location(*t.target)
                pending.append(t.target)

    new_cta = ConcreteTA(
        clocks=cta.clocks,
        init=init,
        invariants=invariants,
        transitions_from=transitions,
        original_location=original,
    )
    new_disjuncts = []
    for d in disjuncts:
        plain, required = split_atoms(d.atoms)
        new_disjuncts.append((
            ConcreteDisjunct(d.pos_locs, d.neg_locs, plain),
            tuple((i, True) for i in required),
        ))
    return new_cta, new_disjuncts
