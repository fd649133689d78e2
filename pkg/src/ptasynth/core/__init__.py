"""Immutable domain model: expressions, constraints, automata, formulas, regions."""

from .analysis import (
    ParamClass,
    classify_params,
    constant_c,
    is_lower_upper,
    parametric_clocks,
    smallest_constant,
    validate_param_valuation,
    zero_inf_valuation,
)
from .constraint import AtomicConstraint, SimpleConstraint, atom_satisfied, satisfies
from .expr import (
    EXT_INF,
    EXT_NEG_INF,
    ClockId,
    ExtendedInt,
    IllFormedEvaluation,
    LinearExpr,
    ParamId,
    evaluate_expr,
)
from .formula import (
    And,
    BoolConst,
    ClockAtom,
    Disjunct,
    LocAtom,
    Not,
    Or,
    Property,
    Quantifier,
    StateFormula,
    always,
    disjunctive_normal_form,
    exists_eventually,
    formula_holds,
    map_formula_atoms,
    negate_property_formula,
    negation_normal_form,
    rename_formula_params,
    substitute_formula_params,
)
from .pta import Pta, ResetSet, Transition
from .region import Box, DimensionMismatch, Interval, Region

__all__ = [
    "And", "AtomicConstraint", "BoolConst", "Box", "ClockAtom", "ClockId",
    "DimensionMismatch", "Disjunct", "EXT_INF", "EXT_NEG_INF", "ExtendedInt",
    "IllFormedEvaluation", "Interval", "LinearExpr", "LocAtom", "Not", "Or",
    "ParamClass", "ParamId", "Property", "Pta", "Quantifier", "Region",
    "ResetSet", "SimpleConstraint", "StateFormula", "Transition", "always",
    "atom_satisfied", "classify_params", "constant_c",
    "disjunctive_normal_form", "evaluate_expr", "exists_eventually",
    "formula_holds", "is_lower_upper", "map_formula_atoms",
    "negate_property_formula", "negation_normal_form", "parametric_clocks",
    "rename_formula_params", "satisfies", "substitute_formula_params",
    "smallest_constant", "validate_param_valuation", "zero_inf_valuation",
]
