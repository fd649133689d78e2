"""Exact parameter synthesis for the decidable PTA classes."""

from .bounds import (
    EffectiveBound,
    InfeasibleRun,
    LOWER_SENTINEL,
    UPPER_SENTINEL,
    earliest_entry_value,
    effective_lower_bound,
    effective_upper_bound,
    generate_feasible_run,
    initial_entry_values,
    lower_bound_dominates,
    upper_bound_dominates,
)
from .exact import (
    PreconditionError,
    SynthesisResult,
    lu_emptiness,
    synthesize,
    synthesize_all_lower,
    synthesize_all_upper,
    synthesize_lu_one_param,
    synthesize_one_one,
)
from .runs import (
    SyntacticRun,
    SyntacticStep,
    absorb_invariants,
    encode_goal_at_location,
    goal_run_variants,
    satisfies_goal,
)

__all__ = [
    "EffectiveBound", "InfeasibleRun", "LOWER_SENTINEL", "PreconditionError",
    "SynthesisResult", "SyntacticRun", "SyntacticStep", "UPPER_SENTINEL",
    "absorb_invariants", "earliest_entry_value", "effective_lower_bound",
    "effective_upper_bound", "encode_goal_at_location",
    "generate_feasible_run", "goal_run_variants", "initial_entry_values",
    "lower_bound_dominates", "lu_emptiness", "satisfies_goal", "synthesize",
    "synthesize_all_lower", "synthesize_all_upper", "synthesize_lu_one_param",
    "synthesize_one_one", "upper_bound_dominates",
]
