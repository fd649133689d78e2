"""Exact feasible-region synthesis for the decidable automaton classes.

One parameter with one parametrically constrained clock: decide the verdict
at the stability constant C (beyond which it cannot change), then scan the
finitely many values below.  Single lower/upper-bound parameters admit the
same scan with monotone thresholds; all-lower/all-upper multi-parameter
automata reduce to the collapsed single-parameter problem plus recursion on
parameter fixings.  A[] properties are synthesized as complements of the
E<> synthesis for the negated formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from ..core import (
    ParamClass,
    Property,
    Pta,
    Quantifier,
    Region,
    StateFormula,
    classify_params,
    constant_c,
    exists_eventually,
    negate_property_formula,
    parametric_clocks,
    smallest_constant,
    substitute_formula_params,
    rename_formula_params,
)
from .. import mc


@dataclass
class SynthesisResult:
    region: Region
    method: str
    constant: int | None = None
    certificate_checks: list[tuple[tuple[tuple[str, int | float], ...], bool]] = field(
        default_factory=list)


class PreconditionError(ValueError):
    """The model/property pair is outside the algorithm's decidable class."""


class _Oracle:
    """mc.check with a certificate log."""

    def __init__(self) -> None:
        self.log: list[tuple[tuple[tuple[str, int | float], ...], bool]] = []

    def __call__(self, pta: Pta, valuation: Mapping[str, int | float], prop: Property) -> bool:
        verdict = mc.check(pta, valuation, prop)
        self.log.append((tuple(sorted(valuation.items())), verdict))
        return verdict


def _require_one_parametric_clock(pta: Pta, prop: Property) -> None:
    pclocks = parametric_clocks(pta, prop)
    if len(pclocks) != 1:
        raise PreconditionError(
            "expected exactly one parametrically constrained clock, found %s"
            % (sorted(pclocks) or "none"))


def synthesize_one_one(pta: Pta, prop: Property) -> SynthesisResult:
    """Full feasible region for a one-parameter, one-parametric-clock PTA."""
    if len(pta.params) != 1:
        raise PreconditionError("expected exactly one parameter, found %d" % len(pta.params))
    _require_one_parametric_clock(pta, prop)
    if prop.quantifier is Quantifier.ALWAYS:
        inner = exists_eventually(negate_property_formula(prop))
        res = synthesize_one_one(pta, inner)
        return SynthesisResult(res.region.complement(), "dual", res.constant,
                               res.certificate_checks)
    oracle = _Oracle()
    p = pta.params[0]
    c = constant_c(pta, prop)
    region = Region.empty(1)
    if oracle(pta, {p: c}, prop):
        region = region.union(Region.single_interval(c, math.inf))
    for i in range(c):
        if oracle(pta, {p: i}, prop):
            region = region.union(Region.single_interval(i, i))
    return SynthesisResult(region, "one_one", c, oracle.log)


def lu_emptiness(pta: Pta, formula: StateFormula) -> bool:
    """Nonemptiness of the feasible region of an L/U automaton for E<>.

    Equals the concrete verdict at the valuation sending lower-bound
    parameters to 0 and upper-bound ones to infinity.
    """
    from ..core import zero_inf_valuation

    prop = exists_eventually(formula)
    valuation = zero_inf_valuation(pta, prop)  # raises on mixed parameters
    return mc.check(pta, valuation, prop)


def _one_param_exists_region(pta: Pta, prop: Property, oracle: _Oracle) -> tuple[Region, int | None]:
    """Region over one L/U parameter for an E<> property.

    Lower parameter: downward closed, scan below C.  Upper parameter: upward
    closed, scan bounded by T + |T'| + 1 from a witness at infinity.
    """
    p = pta.params[0]
    classes = classify_params(pta, prop)
    cls = classes[p]
    if cls is ParamClass.MIXED:
        raise PreconditionError("parameter %s occurs with both signs" % p)
    if cls is ParamClass.UNUSED:
        verdict = oracle(pta, {p: 0}, prop)
        return (Region.universe(1) if verdict else Region.empty(1)), None
    if cls is ParamClass.LOWER:
        c = constant_c(pta, prop)
        if not oracle(pta, {p: 0}, prop):
            return Region.empty(1), c
        if oracle(pta, {p: c}, prop):
            # downward closure plus verdict stability above C give all of N;
            # scan anyway and insist on contiguity
            for i in range(c):
                if not oracle(pta, {p: i}, prop):
                    raise AssertionError(
                        "monotonicity violated at %s=%d below C=%d" % (p, i, c))
            return Region.universe(1), c
        for i in range(c - 1, -1, -1):
            if oracle(pta, {p: i}, prop):
                return Region.single_interval(0, i), c
        raise AssertionError("verdict at %s=0 changed between checks" % p)
    # upper-bound parameter
    if not oracle(pta, {p: math.inf}, prop):
        return Region.empty(1), None
    run = mc.witness_run(pta, {p: math.inf}, prop.formula)
    assert run is not None, "witness must exist when the check passes"
    bound = run.max_clock_ceiling + abs(smallest_constant(pta, prop.formula)) + 1
    for i in range(bound + 1):
        if oracle(pta, {p: i}, prop):
            return Region.single_interval(i, math.inf), bound
    raise AssertionError("no threshold at or below the witness bound %d" % bound)


def synthesize_lu_one_param(pta: Pta, prop: Property) -> SynthesisResult:
    """Feasible region for a one-parameter L/U PTA with one parametric clock."""
    if len(pta.params) != 1:
        raise PreconditionError("expected exactly one parameter, found %d" % len(pta.params))
    _require_one_parametric_clock(pta, prop)
    if prop.quantifier is Quantifier.ALWAYS:
        inner = exists_eventually(negate_property_formula(prop))
        res = synthesize_lu_one_param(pta, inner)
        return SynthesisResult(res.region.complement(), "dual", res.constant,
                               res.certificate_checks)
    oracle = _Oracle()
    region, constant = _one_param_exists_region(pta, prop, oracle)
    return SynthesisResult(region, "lu_one_param", constant, oracle.log)


def _collapse_params(pta: Pta, formula: StateFormula) -> tuple[Pta, StateFormula, str]:
    fresh = "p"
    while fresh in pta.params:
        fresh += "_"
    mapping = {q: fresh for q in pta.params}
    return (pta.rename_params(mapping, (fresh,)),
            rename_formula_params(formula, mapping), fresh)


def _synthesize_all_one_sign(pta: Pta, prop: Property, lower: bool) -> SynthesisResult:
    sign_class = ParamClass.LOWER if lower else ParamClass.UPPER
    method = "l_only" if lower else "u_only"
    if not pta.params:
        raise PreconditionError("expected at least one parameter")
    if prop.quantifier is Quantifier.ALWAYS:
        inner = exists_eventually(negate_property_formula(prop))
        res = _synthesize_all_one_sign(pta, inner, lower)
        return SynthesisResult(res.region.complement(), "dual", res.constant,
                               res.certificate_checks)
    classes = classify_params(pta, prop)
    bad = sorted(p for p, c in classes.items()
                 if c not in (sign_class, ParamClass.UNUSED))
    if bad:
        raise PreconditionError(
            "parameter(s) %s are not all %s-bound" % (bad, sign_class.value))
    _require_one_parametric_clock(pta, prop)
    oracle = _Oracle()
    memo: dict[tuple[tuple[str, int], ...], Region] = {}

    def recurse(auto: Pta, formula: StateFormula,
                fixed: tuple[tuple[str, int], ...]) -> Region:
        key = fixed
        if key in memo:
            return memo[key]
        m = len(auto.params)
        inner_prop = exists_eventually(formula)
        if m == 1:
            region, _ = _one_param_exists_region(auto, inner_prop, oracle)
            memo[key] = region
            return region
        collapsed, collapsed_formula, _ = _collapse_params(auto, formula)
        base, _ = _one_param_exists_region(
            collapsed, exists_eventually(collapsed_formula), oracle)
        if base.is_empty:
            region = Region.empty(m)
        elif base.equal(Region.universe(1)):
            region = Region.universe(m)
        else:
            lo, hi = base.normalize().boxes[0][0]
            region = Region.empty(m)
            if lower:
                threshold = hi  # base is [0, threshold]
                assert lo == 0 and isinstance(hi, int)
                pairs = [(i, j) for i in range(m) for j in range(threshold + 1)]
            else:
                threshold = lo  # base is [threshold, inf)
                assert hi == math.inf and threshold > 0
                up_corner = Region(m, (tuple((threshold, math.inf) for _ in range(m)),))
                region = region.union(up_corner)
                pairs = [(i, j) for i in range(m) for j in range(threshold)]
            for i, j in pairs:
                p = auto.params[i]
                sub_auto = auto.substitute_params({p: j})
                sub_formula = substitute_formula_params(formula, {p: j})
                sub_region = recurse(sub_auto, sub_formula,
                                     tuple(sorted(fixed + ((p, j),))))
                region = region.union(sub_region.embed(i, j))
        memo[key] = region
        return region

    region = recurse(pta, prop.formula, ())
    return SynthesisResult(region, method, None, oracle.log)


def synthesize_all_lower(pta: Pta, prop: Property) -> SynthesisResult:
    """Region for an all-lower-bound-parameter PTA with one parametric clock."""
    return _synthesize_all_one_sign(pta, prop, lower=True)


def synthesize_all_upper(pta: Pta, prop: Property) -> SynthesisResult:
    """Region for an all-upper-bound-parameter PTA with one parametric clock."""
    return _synthesize_all_one_sign(pta, prop, lower=False)


_MODES: list[tuple[str, Callable[[Pta, Property], SynthesisResult]]] = [
    ("one-one", synthesize_one_one),
    ("lu-one", synthesize_lu_one_param),
    ("l-only", synthesize_all_lower),
    ("u-only", synthesize_all_upper),
]


def synthesize(pta: Pta, prop: Property, mode: str = "auto") -> SynthesisResult:
    """Dispatch to the first applicable exact algorithm."""
    if mode != "auto":
        for name, fn in _MODES:
            if name == mode:
                return fn(pta, prop)
        raise ValueError("unknown synthesis mode %r" % mode)
    errors = []
    for name, fn in _MODES:
        try:
            return fn(pta, prop)
        except PreconditionError as exc:
            errors.append("%s: %s" % (name, exc))
    raise PreconditionError("no exact mode applies (%s)" % "; ".join(errors))
