"""Exact feasibility of a fixed transition sequence (no extrapolation).

Decides whether a linear path can be traversed under a concrete valuation,
with the goal atoms evaluated at entry to the final location; this is the
reachability notion used by the run-level machinery of the synthesizers.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..core import AtomicConstraint, ResetSet, SimpleConstraint
from .concrete import concretize_atoms
from .dbm import Dbm


def path_entry_feasible(
    clocks: Sequence[str],
    init_invariant: SimpleConstraint,
    steps: Iterable[tuple[SimpleConstraint, ResetSet, SimpleConstraint]],
    valuation: Mapping[str, int | float],
    final_atoms: Sequence[AtomicConstraint] = (),
) -> bool:
    """steps are (guard, resets, target invariant) triples from the source."""
    index = {c: i + 1 for i, c in enumerate(clocks)}

    def apply(zone: Dbm, atoms) -> Dbm | None:
        concrete = concretize_atoms(atoms, valuation)
        if concrete == "unsat":
            return None
        for a in concrete:
            i = index[a.pos] if a.pos is not None else 0
            j = index[a.neg] if a.neg is not None else 0
            zone.tighten(i, j, (a.c, a.strict))
        zone.canonicalize()
        return None if zone.is_empty else zone

    zone = apply(Dbm.zero(len(clocks)), init_invariant.atoms)
    if zone is None:
        return False
    previous_inv = init_invariant
    for guard, resets, target_inv in steps:
        zone = apply(zone.up(), previous_inv.atoms)
        if zone is None:
            return False
        zone = apply(zone, guard.atoms)
        if zone is None:
            return False
        for clock, b in resets.entries:
            zone.reset(index[clock], b)
        zone = apply(zone, target_inv.atoms)
        if zone is None:
            return False
        previous_inv = target_inv
    return apply(zone, tuple(final_atoms)) is not None
