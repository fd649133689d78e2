"""Independent brute-force oracle: explicit clock-region graph exploration.

Regions track, per clock, the integer part up to a per-clock maximum
constant plus the ordering of fractional parts; clocks beyond their maximum
are abstracted away.  Clock-difference atoms are not region-definable, so
their truth values (which only change at resets) are carried alongside each
explored state and updated from single-clock conditions whose constants are
folded into the per-clock maxima.  This route shares no zone or DBM code
with the main checker.
"""

from __future__ import annotations

from collections import deque
from typing import Any, Iterable, Mapping

from ..core import (
    And,
    BoolConst,
    ClockAtom,
    LocAtom,
    Not,
    Or,
    Property,
    Pta,
    Quantifier,
    StateFormula,
    validate_param_valuation,
)
from .concrete import UNSAT, ConcreteAtom, ConcreteTA, concretize, concretize_atom

DEFAULT_CONSTANT_CAP = 64


class CapExceeded(ValueError):
    """A concretized constant exceeds the region-count safety cap."""


# A region: ints[i] is the integer part of clock i or None when the clock
# sits above its maximum; groups is a tuple of clock-index tuples ordered by
# increasing fractional part, groups[0] being the (possibly empty) zero-
# fraction group.
RegionRep = tuple[tuple[int | None, ...], tuple[tuple[int, ...], ...]]


def _initial_region(n: int) -> RegionRep:
    return (tuple(0 for _ in range(n)), (tuple(range(n)),))


def _atom_true_on_region(region: RegionRep, clock: int, upper: bool, strict: bool, c: int) -> bool:
    """Truth of x < c / x <= c (upper) or -x < c / -x <= c on a region."""
    ints, groups = region
    i = ints[clock]
    if i is None:  # clock above its max constant, so above |c| as well
        return not upper
    frac_zero = clock in groups[0]
    if upper:
        if frac_zero:
            return i < c if strict else i <= c
        return i + 1 <= c
    # -x < c  <=>  x > -c ; -x <= c  <=>  x >= -c
    if frac_zero:
        return i > -c if strict else i >= -c
    return i >= -c


def _concrete_atom_true(region: RegionRep, bits_map: Mapping[ConcreteAtom, bool],
                        clock_index: Mapping[str, int], atom: ConcreteAtom) -> bool:
    if atom.pos is not None and atom.neg is not None:
        return bits_map[atom]
    if atom.pos is not None:
        return _atom_true_on_region(region, clock_index[atom.pos], True, atom.strict, atom.c)
    if atom.neg is not None:
        return _atom_true_on_region(region, clock_index[atom.neg], False, atom.strict, atom.c)
    return atom.holds_at_zero()


def _time_successor(region: RegionRep, kmax: list[int]) -> RegionRep | None:
    """The immediate delay successor, or None when fully unbounded."""
    ints, groups = region
    tracked = [i for i in range(len(ints)) if ints[i] is not None]
    if not tracked:
        return None
    zero = groups[0]
    if zero:
        return (ints, ((),) + (zero,) + groups[1:])
    last = groups[-1]
    new_ints = list(ints)
    survivors = []
    for c in last:
        v = ints[c] + 1
        if v > kmax[c]:
            new_ints[c] = None
        else:
            new_ints[c] = v
            survivors.append(c)
    return (tuple(new_ints), (tuple(sorted(survivors)),) + groups[1:-1])


def _reset_region(region: RegionRep, clock: int, b: int, kmax: list[int]) -> RegionRep:
    ints, groups = region
    new_groups = []
    for gi, g in enumerate(groups):
        g2 = tuple(c for c in g if c != clock)
        if gi == 0 or g2:
            new_groups.append(g2)
    new_ints = list(ints)
    if b > kmax[clock]:
        new_ints[clock] = None
    else:
        new_ints[clock] = b
        new_groups[0] = tuple(sorted(new_groups[0] + (clock,)))
    return (tuple(new_ints), tuple(new_groups))


class _RegionExplorer:
    def __init__(self, cta: ConcreteTA, diag_atoms: list[ConcreteAtom],
                 pins: dict, kmax: list[int]):
        self.cta = cta
        self.diag_atoms = diag_atoms
        self.pins = pins
        self.kmax = kmax
        self.clock_index = {c: i for i, c in enumerate(cta.clocks)}

    def _invariant_ok(self, q: Any, region: RegionRep, bits: tuple[bool, ...]) -> bool:
        inv = self.cta.invariant(q)
        if inv == UNSAT:
            return False
        bits_map = dict(zip(self.diag_atoms, bits))
        return all(_concrete_atom_true(region, bits_map, self.clock_index, a) for a in inv)

    def _next_bits(self, region: RegionRep, bits: tuple[bool, ...],
                   resets: Mapping[str, int]) -> tuple[bool, ...]:
        bits_map = dict(zip(self.diag_atoms, bits))
        out = []
        for d, bit in zip(self.diag_atoms, bits):
            pin = self.pins.get((d, tuple(sorted(resets.items()))))
            if pin is None:
                out.append(bit)
            elif isinstance(pin, bool):
                out.append(pin)
            else:
                out.append(_concrete_atom_true(region, bits_map, self.clock_index, pin))
        return tuple(out)

    def explore(self) -> Iterable[tuple[Any, RegionRep, tuple[bool, ...]]]:
        n = len(self.cta.clocks)
        init_bits = tuple(d.holds_at_zero() for d in self.diag_atoms)
        start = (self.cta.init, _initial_region(n), init_bits)
        if not self._invariant_ok(self.cta.init, start[1], init_bits):
            return
        seen = {start}
        queue = deque([start])
        yield start
        while queue:
            q, region, bits = queue.popleft()
            succs = []
            nxt = _time_successor(region, self.kmax)
            if nxt is not None and self._invariant_ok(q, nxt, bits):
                succs.append((q, nxt, bits))
            bits_map = dict(zip(self.diag_atoms, bits))
            for t in self.cta.outgoing(q):
                if not all(_concrete_atom_true(region, bits_map, self.clock_index, a)
                           for a in t.atoms):
                    continue
                resets = dict(t.resets)
                new_bits = self._next_bits(region, bits, resets)
                new_region = region
                for clock, b in t.resets:
                    new_region = _reset_region(new_region, self.clock_index[clock], b, self.kmax)
                if self._invariant_ok(t.target, new_region, new_bits):
                    succs.append((t.target, new_region, new_bits))
            for s in succs:
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
                    yield s


def _formula_true(f: StateFormula, location: str, region: RegionRep,
                  bits_map: Mapping[ConcreteAtom, bool], clock_index, valuation) -> bool:
    if isinstance(f, BoolConst):
        return f.value
    if isinstance(f, LocAtom):
        return f.loc == location
    if isinstance(f, Not):
        return not _formula_true(f.inner, location, region, bits_map, clock_index, valuation)
    if isinstance(f, And):
        return all(_formula_true(g, location, region, bits_map, clock_index, valuation)
                   for g in f.items)
    if isinstance(f, Or):
        return any(_formula_true(g, location, region, bits_map, clock_index, valuation)
                   for g in f.items)
    if isinstance(f, ClockAtom):
        r = concretize_atom(f.atom, valuation)
        if isinstance(r, bool):
            return r
        return _concrete_atom_true(region, bits_map, clock_index, r)
    raise TypeError("unknown formula node %r" % (f,))


def check_bruteforce(
    pta: Pta,
    valuation: Mapping[str, int | float],
    prop: Property,
    cap: int = DEFAULT_CONSTANT_CAP,
) -> bool:
    """Same verdict contract as zone.check, via the explicit region graph."""
    validate_param_valuation(pta, valuation, prop)
    if prop.quantifier is Quantifier.ALWAYS:
        from ..core import exists_eventually, negate_property_formula
        dual = exists_eventually(negate_property_formula(prop))
        return not check_bruteforce(pta, valuation, dual, cap)

    cta = concretize(pta, valuation)
    formula = prop.formula

    # Diagonal atoms from the automaton and the goal formula.
    diag: dict[ConcreteAtom, None] = {}
    all_atoms: list[ConcreteAtom] = []
    for inv in cta.invariants.values():
        if inv != UNSAT:
            all_atoms.extend(inv)
    for ts in cta.transitions_from.values():
        for t in ts:
            all_atoms.extend(t.atoms)
    goal_atoms = []
    for a in formula.atoms():
        r = concretize_atom(a, valuation)
        if not isinstance(r, bool):
            goal_atoms.append(r)
    for a in all_atoms + goal_atoms:
        if a.is_diagonal:
            diag.setdefault(a)
    diag_atoms = list(diag)

    # Per-diagonal-atom, per-reset-set pin conditions (single-clock atoms).
    pins: dict = {}
    pin_atoms: list[ConcreteAtom] = []
    for ts in cta.transitions_from.values():
        for t in ts:
            resets = dict(t.resets)
            rkey = tuple(sorted(resets.items()))
            for d in diag_atoms:
                if d.pos not in resets and d.neg not in resets:
                    continue
                bx, by = resets.get(d.pos), resets.get(d.neg)
                if bx is not None and by is not None:
                    v = bx - by
                    pins[(d, rkey)] = v < d.c if d.strict else v <= d.c
                elif bx is not None:
                    pin = ConcreteAtom(None, d.neg, d.strict, d.c - bx)
                    pins[(d, rkey)] = pin
                    pin_atoms.append(pin)
                else:
                    pin = ConcreteAtom(d.pos, None, d.strict, d.c + by)
                    pins[(d, rkey)] = pin
                    pin_atoms.append(pin)

    clock_index = {c: i for i, c in enumerate(cta.clocks)}
    kmax = [0] * len(cta.clocks)
    biggest = 0
    for a in all_atoms + goal_atoms + pin_atoms:
        biggest = max(biggest, abs(a.c))
        if a.is_diagonal:
            continue
        clock = a.pos if a.pos is not None else a.neg
        if clock is not None:
            kmax[clock_index[clock]] = max(kmax[clock_index[clock]], abs(a.c))
    for t in pta.transitions:
        for _, b in t.resets.entries:
            biggest = max(biggest, b)
    if biggest > cap:
        raise CapExceeded("constant %d exceeds the cap %d" % (biggest, cap))

    explorer = _RegionExplorer(cta, diag_atoms, pins, kmax)
    for q, region, bits in explorer.explore():
        bits_map = dict(zip(diag_atoms, bits))
        if _formula_true(formula, q, region, bits_map, clock_index, valuation):
            return True
    return False
