"""Stable serialization of models, regions, runs, and classifiers.

All JSON is emitted with sorted keys and compact separators so identical
inputs produce byte-identical output.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Mapping

from ..core import AtomicConstraint, Pta, Region, SimpleConstraint

if TYPE_CHECKING:  # pragma: no cover
    from ..learn.loop import LearnResult
    from ..mc.witness import ConcreteRun


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def region_document(region: Region) -> dict[str, Any]:
    region = region.normalize()
    boxes = [[[lo, "inf" if hi == math.inf else hi] for lo, hi in box]
             for box in region.boxes]
    return {"dims": region.dims, "boxes": boxes}


def emit_region(region: Region) -> str:
    return dumps(region_document(region))


def valuation_document(valuation: Mapping[str, int | float]) -> dict[str, Any]:
    return {p: ("inf" if isinstance(v, float) and math.isinf(v) else v)
            for p, v in valuation.items()}


def _rat(q: Fraction) -> str:
    return str(q)


def run_document(run: "ConcreteRun") -> dict[str, Any]:
    def state(s: Any) -> dict[str, Any]:
        return {"loc": s.location, "clocks": {c: _rat(v) for c, v in sorted(s.clock_values.items())}}

    steps: list[dict[str, Any]] = []
    for step in run.steps:
        if step.delay is not None:
            steps.append({"delay": _rat(step.delay), "to": state(step.state)})
        else:
            steps.append({"action": step.action, "to": state(step.state)})
    return {"initial": state(run.initial), "steps": steps, "max_clock": run.max_clock_ceiling}


def emit_run(run: "ConcreteRun") -> str:
    return dumps(run_document(run))


def classifier_document(result: "LearnResult") -> dict[str, Any]:
    segments = [
        {"weights": [_rat(w) for w in seg.weights],
         "bias": _rat(seg.bias),
         "good_side": seg.good_side}
        for seg in result.classifier.segments
    ]
    archive = [
        {"point": list(s.point), "label": s.label, "round": s.round_index}
        for s in result.classifier.archive
    ]
    cfg = result.config
    return {
        "segments": segments,
        "archive": archive,
        "config": {
            "samples_per_round": cfg.samples_per_round,
            "box_bound": cfg.box_bound,
            "margin": _rat(Fraction(cfg.margin)),
            "max_rounds": cfg.max_rounds,
            "seed": cfg.seed,
        },
        "rounds_run": result.rounds_run,
        "notes": sorted(result.notes),
    }


def emit_classifier(result: "LearnResult") -> str:
    return dumps(classifier_document(result))


def emit_model(pta: Pta) -> str:
    """Render a model back into the textual grammar."""
    lines = ["pta %s {" % pta.name]
    lines.append("  clocks: %s;" % ", ".join(pta.clocks))
    lines.append("  params: %s;" % ", ".join(pta.params))
    lines.append("  init: %s;" % pta.init)
    inv_map = dict(pta.invariants)
    for q in pta.locations:
        lines.append("  loc %s { inv: %s; }" % (q, _constraint_text(inv_map[q])))
    for t in pta.transitions:
        resets = ", ".join(
            c if b == 0 else "%s := %d" % (c, b) for c, b in t.resets.entries)
        lines.append(
            "  trans %s -> %s { act: %s; guard: %s; reset: %s; }"
            % (t.source, t.target, t.action, _constraint_text(t.guard), resets))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _constraint_text(g: SimpleConstraint) -> str:
    if g.is_true:
        return "true"
    return " && ".join(_atom_text(a) for a in g.atoms)


def _atom_text(a: AtomicConstraint) -> str:
    if a.pos is None and a.neg is None:
        raise ValueError("clock-free atom %s has no textual form" % a)
    if a.pos is not None and a.neg is not None:
        lhs = "%s - %s" % (a.pos, a.neg)
    elif a.pos is not None:
        lhs = a.pos
    else:
        lhs = "-%s" % a.neg
    return "%s %s %s" % (lhs, a.rel, a.bound)
