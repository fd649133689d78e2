"""Concrete-valuation model checking: zone engine, region oracle, witnesses."""

from .concrete import ConcreteAtom, ConcreteTA, concretize
from .dbm import Dbm, bound_add, bound_lt, bound_min
from .paths import path_entry_feasible
from .regiongraph import DEFAULT_CONSTANT_CAP, CapExceeded, check_bruteforce
from .witness import ConcreteRun, RunState, RunStep, UnexpectedInfeasiblePath, witness_run
from .zone import SymState, check, reach_zone_graph

__all__ = [
    "CapExceeded", "ConcreteAtom", "ConcreteRun", "ConcreteTA", "Dbm",
    "DEFAULT_CONSTANT_CAP", "RunState", "RunStep", "SymState",
    "UnexpectedInfeasiblePath", "bound_add", "bound_lt", "bound_min", "check",
    "check_bruteforce", "concretize", "path_entry_feasible",
    "reach_zone_graph", "witness_run",
]
