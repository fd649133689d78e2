"""Command-line front end.

Subcommands: check (concrete verdict), synth (exact region), empty (L/U
emptiness), learn (boundary classifier), run (witness extraction).  JSON
goes to stdout with sorted keys; diagnostics go to stderr.  Exit codes:
0 true/success, 1 false verdict, 2 usage or validation error, 3 no exact
synthesis mode applies.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

from . import mc
from .core import Property, Pta, Quantifier
from .learn import LearnConfig, learn_boundary
from .synth import PreconditionError, lu_emptiness, synthesize
from .textio import (
    ModelSource,
    ParseError,
    classifier_document,
    dumps,
    parse_model,
    parse_property,
    parse_valuation,
    region_document,
    run_document,
    valuation_document,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_UNDECIDABLE = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _load_model(path: str) -> Pta:
    try:
        if path == "-":
            return parse_model(ModelSource(sys.stdin.read(), "<stdin>"))
        with open(path, "r", encoding="utf-8") as fh:
            return parse_model(ModelSource(fh.read(), path))
    except OSError as exc:
        raise _CliError("cannot read model: %s" % exc)
    except ParseError as exc:
        raise _CliError("%s: %s" % (path, exc))


def _load_property(text: str, pta: Pta) -> Property:
    try:
        return parse_property(text, pta)
    except ParseError as exc:
        raise _CliError("property: %s" % exc)


def _load_valuation(text: str, pta: Pta, prop: Property) -> dict[str, Any]:
    try:
        return parse_valuation(text, pta, prop)
    except ParseError as exc:
        raise _CliError("valuation: %s" % exc)


def _emit(doc: dict[str, Any]) -> None:
    sys.stdout.write(dumps(doc) + "\n")


def cmd_check(args: argparse.Namespace) -> int:
    pta = _load_model(args.model)
    prop = _load_property(args.property, pta)
    valuation = _load_valuation(args.valuation, pta, prop)
    verdict = mc.check(pta, valuation, prop)
    _emit({"verdict": verdict, "valuation": valuation_document(valuation),
           "method": "zone"})
    return EXIT_TRUE if verdict else EXIT_FALSE


def cmd_synth(args: argparse.Namespace) -> int:
    pta = _load_model(args.model)
    prop = _load_property(args.property, pta)
    try:
        result = synthesize(pta, prop, args.mode)
    except PreconditionError as exc:
        sys.stderr.write(
            "no exact synthesis mode applies: %s\n"
            "hint: `learn` approximates boundaries for general L/U automata\n" % exc)
        return EXIT_UNDECIDABLE
    doc = {
        "region": region_document(result.region),
        "method": result.method,
        "constant_c": result.constant,
        "checks": len(result.certificate_checks),
    }
    _emit(doc)
    return EXIT_TRUE


def cmd_empty(args: argparse.Namespace) -> int:
    pta = _load_model(args.model)
    prop = _load_property(args.property, pta)
    if prop.quantifier is not Quantifier.EXISTS_EVENTUALLY:
        raise _CliError("emptiness needs an E<> property")
    try:
        nonempty = lu_emptiness(pta, prop.formula)
    except ValueError as exc:
        raise _CliError(str(exc))
    _emit({"nonempty": nonempty, "method": "zero-inf-check"})
    return EXIT_TRUE if nonempty else EXIT_FALSE


def cmd_learn(args: argparse.Namespace) -> int:
    pta = _load_model(args.model)
    prop = _load_property(args.property, pta)
    try:
        cfg = LearnConfig(samples_per_round=args.samples, box_bound=args.box,
                          margin=args.margin, max_rounds=args.rounds, seed=args.seed)
        result = learn_boundary(pta, prop, cfg)
    except ValueError as exc:
        raise _CliError(str(exc))
    doc = classifier_document(result)
    if args.eval_grid or args.dump_grid:
        grid, agree = _grid_eval(pta, prop, result, args.box)
        if args.eval_grid:
            doc["grid_accuracy"] = agree
        if args.dump_grid:
            doc["grid"] = grid
    _emit(doc)
    return EXIT_TRUE


def _grid_eval(pta: Pta, prop: Property, result, box: int):
    points: list[tuple[int, ...]] = [()]
    for _ in pta.params:
        points = [p + (v,) for p in points for v in range(box + 1)]
    grid = []
    agree = 0
    for p in points:
        truth = "good" if mc.check(pta, dict(zip(pta.params, p)), prop) else "bad"
        predicted = result.classifier.classify(p)
        agree += truth == predicted
        grid.append({"point": list(p), "label": truth, "predicted": predicted})
    return grid, agree / len(points)


def cmd_run(args: argparse.Namespace) -> int:
    pta = _load_model(args.model)
    prop = _load_property(args.property, pta)
    if prop.quantifier is not Quantifier.EXISTS_EVENTUALLY:
        raise _CliError("run extraction needs an E<> property")
    valuation = _load_valuation(args.valuation, pta, prop)
    run = mc.witness_run(pta, valuation, prop.formula)
    if run is None:
        _emit({"verdict": False, "valuation": valuation_document(valuation)})
        return EXIT_FALSE
    doc = run_document(run)
    doc["valuation"] = valuation_document(valuation)
    _emit(doc)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptasynth",
        description="Parameter synthesis and model checking for parametric timed automata")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide model |= property at a valuation")
    p.add_argument("model")
    p.add_argument("property")
    p.add_argument("--valuation", required=True, help='e.g. "p1=3,p2=inf"')
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("synth", help="compute the exact feasible region")
    p.add_argument("model")
    p.add_argument("property")
    p.add_argument("--mode", default="auto",
                   choices=["auto", "one-one", "lu-one", "l-only", "u-only"])
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("empty", help="decide feasible-region nonemptiness (L/U)")
    p.add_argument("model")
    p.add_argument("property")
    p.set_defaults(fn=cmd_empty)

    p = sub.add_parser("learn", help="learn a boundary classifier (L/U)")
    p.add_argument("model")
    p.add_argument("property")
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("--rounds", type=int, default=5)
    p.add_argument("--box", type=int, default=10)
    p.add_argument("--margin", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eval-grid", action="store_true",
                   help="report oracle agreement over the sampling box")
    p.add_argument("--dump-grid", action="store_true",
                   help="emit labeled grid points for external plotting")
    p.set_defaults(fn=cmd_learn)

    p = sub.add_parser("run", help="extract a concrete witness run")
    p.add_argument("model")
    p.add_argument("property")
    p.add_argument("--valuation", required=True)
    p.set_defaults(fn=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except _CliError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return exc.code
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
