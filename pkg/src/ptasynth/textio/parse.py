"""Parsers for the model, property, valuation, and region formats."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from ..core import (
    And,
    AtomicConstraint,
    ClockAtom,
    LinearExpr,
    LocAtom,
    Not,
    Or,
    Property,
    Pta,
    Quantifier,
    Region,
    ResetSet,
    SimpleConstraint,
    StateFormula,
    Transition,
    validate_param_valuation,
)
from .lexer import ParseError, Token, TokenStream, tokenize


@dataclass(frozen=True)
class ModelSource:
    text: str
    origin: str = "<string>"


def parse_model(src: ModelSource | str) -> Pta:
    """Parse a PTA from its textual form; raises ParseError with positions."""
    text = src.text if isinstance(src, ModelSource) else src
    ts = TokenStream(tokenize(text))
    ts.expect_ident("pta")
    name = ts.expect_ident().text
    ts.expect_sym("{")

    ts.expect_ident("clocks")
    ts.expect_sym(":")
    clocks = _ident_list(ts)
    ts.expect_sym(";")
    ts.expect_ident("params")
    ts.expect_sym(":")
    params = _ident_list(ts)
    ts.expect_sym(";")
    ts.expect_ident("init")
    ts.expect_sym(":")
    init_tok = ts.expect_ident()
    ts.expect_sym(";")

    symbols = _Symbols(set(clocks), set(params))

    locations: list[str] = []
    invariants: list[tuple[str, SimpleConstraint]] = []
    loc_tokens: dict[str, Token] = {}
    while ts.at_ident("loc"):
        ts.next()
        name_tok = ts.expect_ident()
        if name_tok.text in loc_tokens:
            raise ParseError.at(name_tok.line, name_tok.col,
                                "duplicate location %r" % name_tok.text)
        loc_tokens[name_tok.text] = name_tok
        ts.expect_sym("{")
        ts.expect_ident("inv")
        ts.expect_sym(":")
        inv = _parse_constraint(ts, symbols)
        ts.expect_sym(";")
        ts.expect_sym("}")
        locations.append(name_tok.text)
        invariants.append((name_tok.text, inv))

    transitions: list[Transition] = []
    while ts.at_ident("trans"):
        ts.next()
        src_tok = ts.expect_ident()
        ts.expect_sym("->")
        dst_tok = ts.expect_ident()
        ts.expect_sym("{")
        ts.expect_ident("act")
        ts.expect_sym(":")
        action = ts.expect_ident().text
        ts.expect_sym(";")
        ts.expect_ident("guard")
        ts.expect_sym(":")
        guard = _parse_constraint(ts, symbols)
        ts.expect_sym(";")
        ts.expect_ident("reset")
        ts.expect_sym(":")
        resets = _parse_resets(ts, symbols)
        ts.expect_sym(";")
        ts.expect_sym("}")
        for tok in (src_tok, dst_tok):
            if tok.text not in loc_tokens:
                raise ParseError.at(tok.line, tok.col, "undeclared location %r" % tok.text)
        transitions.append(Transition(src_tok.text, guard, action, resets, dst_tok.text))

    ts.expect_sym("}")
    ts.expect_eof()
    if init_tok.text not in loc_tokens:
        raise ParseError.at(init_tok.line, init_tok.col,
                            "undeclared initial location %r" % init_tok.text)
    return Pta(
        name=name,
        clocks=tuple(clocks),
        params=tuple(params),
        locations=tuple(locations),
        init=init_tok.text,
        invariants=tuple(invariants),
        transitions=tuple(transitions),
    )


def parse_property(text: str, pta: Pta | None = None) -> Property:
    """Parse 'E<> formula' or 'A[] formula'."""
    ts = TokenStream(tokenize(text))
    head = ts.expect_ident()
    if head.text == "E":
        ts.expect_sym("<>")
        quant = Quantifier.EXISTS_EVENTUALLY
    elif head.text == "A":
        ts.expect_sym("[]")
        quant = Quantifier.ALWAYS
    else:
        raise ParseError.at(head.line, head.col,
                            "property must start with E<> or A[], found %r" % head.text)
    symbols = None
    if pta is not None:
        symbols = _Symbols(set(pta.clocks), set(pta.params), set(pta.locations))
    formula = _parse_formula_or(ts, symbols)
    ts.expect_eof()
    return Property(quant, formula)


def parse_valuation(text: str, pta: Pta | None = None, prop: Property | None = None) -> dict[str, int | float]:
    """Parse 'p1=3,p2=inf' into a parameter valuation.

    With a model given, checks totality, declaredness, and that inf lands
    only on upper-bound parameters.
    """
    ts = TokenStream(tokenize(text))
    out: dict[str, int | float] = {}
    if not ts.at_ident() and ts.peek().kind == "eof":
        pass
    else:
        while True:
            name_tok = ts.expect_ident()
            ts.expect_sym("=")
            t = ts.peek()
            if t.kind == "ident" and t.text == "inf":
                ts.next()
                value: int | float = math.inf
            elif t.kind == "sym" and t.text == "-":
                raise ParseError.at(t.line, t.col,
                                    "negative parameter value for %r" % name_tok.text)
            else:
                value = int(ts.expect_nat().text)
            if name_tok.text in out:
                raise ParseError.at(name_tok.line, name_tok.col,
                                    "duplicate parameter %r" % name_tok.text)
            out[name_tok.text] = value
            if ts.at_sym(","):
                ts.next()
                continue
            break
        ts.expect_eof()
    if pta is not None:
        try:
            validate_param_valuation(pta, out, prop)
        except ValueError as exc:
            raise ParseError.at(1, 1, str(exc)) from exc
    return out


def parse_region(text: str) -> Region:
    """Parse the JSON region format produced by emit_region."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError.at(exc.lineno, exc.colno, "bad region JSON: %s" % exc.msg) from exc
    try:
        dims = doc["dims"]
        boxes = [
            [(int(lo), math.inf if hi == "inf" else int(hi)) for lo, hi in box]
            for box in doc["boxes"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError.at(1, 1, "bad region document: %s" % exc) from exc
    return Region.of_boxes(dims, boxes)


@dataclass
class _Symbols:
    clocks: set[str]
    params: set[str]
    locations: set[str] | None = None


def _ident_list(ts: TokenStream) -> list[str]:
    out: list[str] = []
    if not ts.at_ident():
        return out
    out.append(ts.expect_ident().text)
    while ts.at_sym(","):
        ts.next()
        out.append(ts.expect_ident().text)
    return out


def _parse_constraint(ts: TokenStream, symbols: _Symbols) -> SimpleConstraint:
    if ts.at_ident("true"):
        ts.next()
        return SimpleConstraint.true()
    atoms = list(_parse_atom(ts, symbols))
    while ts.at_sym("&&"):
        ts.next()
        atoms.extend(_parse_atom(ts, symbols))
    return SimpleConstraint(tuple(atoms))


def _parse_atom(ts: TokenStream, symbols: _Symbols | None) -> list[AtomicConstraint]:
    """One source atom; equality desugars into the two inequalities."""
    negated = False
    if ts.at_sym("-"):
        ts.next()
        negated = True
    clock_tok = ts.expect_ident()
    _check_clock(clock_tok, symbols)
    second: Token | None = None
    if not negated and ts.at_sym("-"):
        ts.next()
        second = ts.expect_ident()
        _check_clock(second, symbols)
        if second.text == clock_tok.text:
            raise ParseError.at(second.line, second.col,
                                "difference of a clock with itself")
    rel_tok = ts.peek()
    if not (rel_tok.kind == "sym" and rel_tok.text in ("<", "<=", ">", ">=", "==")):
        raise ParseError.at(rel_tok.line, rel_tok.col,
                            "expected a relation, found %r" % (rel_tok.text or "end of input"))
    ts.next()
    rel = rel_tok.text
    expr = _parse_expr(ts, symbols)

    x = clock_tok.text
    if second is not None:
        y = second.text
        if rel == "<":
            return [AtomicConstraint.diff(x, y, True, expr)]
        if rel == "<=":
            return [AtomicConstraint.diff(x, y, False, expr)]
        if rel == ">":
            return [AtomicConstraint.diff(y, x, True, expr.negate())]
        if rel == ">=":
            return [AtomicConstraint.diff(y, x, False, expr.negate())]
        return [AtomicConstraint.diff(x, y, False, expr),
                AtomicConstraint.diff(y, x, False, expr.negate())]
    if negated:
        if rel == "<":
            return [AtomicConstraint.lower(x, True, expr)]
        if rel == "<=":
            return [AtomicConstraint.lower(x, False, expr)]
        if rel == ">":
            return [AtomicConstraint.upper(x, True, expr.negate())]
        if rel == ">=":
            return [AtomicConstraint.upper(x, False, expr.negate())]
        return [AtomicConstraint.lower(x, False, expr),
                AtomicConstraint.upper(x, False, expr.negate())]
    if rel == "<":
        return [AtomicConstraint.upper(x, True, expr)]
    if rel == "<=":
        return [AtomicConstraint.upper(x, False, expr)]
    if rel == ">":
        return [AtomicConstraint.lower(x, True, expr.negate())]
    if rel == ">=":
        return [AtomicConstraint.lower(x, False, expr.negate())]
    return [AtomicConstraint.upper(x, False, expr),
            AtomicConstraint.lower(x, False, expr.negate())]


def _check_clock(tok: Token, symbols: _Symbols | None) -> None:
    if symbols is not None and tok.text not in symbols.clocks:
        raise ParseError.at(tok.line, tok.col, "undeclared clock %r" % tok.text)


def _parse_expr(ts: TokenStream, symbols: _Symbols | None) -> LinearExpr:
    """Sums and differences of c, p, and c*p terms."""
    const = 0
    coeffs: dict[str, int] = {}

    def add_term(sign: int) -> None:
        nonlocal const
        t = ts.peek()
        if t.kind == "nat":
            ts.next()
            value = int(t.text)
            if ts.at_sym("*"):
                ts.next()
                p = ts.expect_ident()
                _check_param(p, symbols)
                coeffs[p.text] = coeffs.get(p.text, 0) + sign * value
            else:
                const += sign * value
        elif t.kind == "ident":
            ts.next()
            _check_param(t, symbols)
            coeffs[t.text] = coeffs.get(t.text, 0) + sign
        else:
            raise ParseError.at(t.line, t.col,
                                "expected a term, found %r" % (t.text or "end of input"))

    sign = 1
    if ts.at_sym("-"):
        ts.next()
        sign = -1
    add_term(sign)
    while ts.at_sym("+") or ts.at_sym("-"):
        sign = 1 if ts.next().text == "+" else -1
        add_term(sign)
    return LinearExpr.build(const, coeffs)


def _check_param(tok: Token, symbols: _Symbols | None) -> None:
    if symbols is not None and tok.text not in symbols.params:
        raise ParseError.at(tok.line, tok.col, "undeclared parameter %r" % tok.text)


def _parse_resets(ts: TokenStream, symbols: _Symbols) -> ResetSet:
    entries: dict[str, int] = {}
    if not ts.at_ident():
        return ResetSet()
    while True:
        clock_tok = ts.expect_ident()
        _check_clock(clock_tok, symbols)
        value = 0
        if ts.at_sym(":="):
            ts.next()
            t = ts.peek()
            if t.kind == "sym" and t.text == "-":
                raise ParseError.at(t.line, t.col,
                                    "negative reset constant for %r" % clock_tok.text)
            value = int(ts.expect_nat().text)
        if clock_tok.text in entries:
            raise ParseError.at(clock_tok.line, clock_tok.col,
                                "duplicate reset of clock %r" % clock_tok.text)
        entries[clock_tok.text] = value
        if ts.at_sym(","):
            ts.next()
            continue
        break
    return ResetSet.from_mapping(entries)


def _parse_formula_or(ts: TokenStream, symbols: _Symbols | None) -> StateFormula:
    items = [_parse_formula_and(ts, symbols)]
    while ts.at_sym("||"):
        ts.next()
        items.append(_parse_formula_and(ts, symbols))
    return items[0] if len(items) == 1 else Or(tuple(items))


def _parse_formula_and(ts: TokenStream, symbols: _Symbols | None) -> StateFormula:
    items = [_parse_formula_unary(ts, symbols)]
    while ts.at_sym("&&"):
        ts.next()
        items.append(_parse_formula_unary(ts, symbols))
    return items[0] if len(items) == 1 else And(tuple(items))


def _parse_formula_unary(ts: TokenStream, symbols: _Symbols | None) -> StateFormula:
    if ts.at_sym("!"):
        ts.next()
        return Not(_parse_formula_unary(ts, symbols))
    if ts.at_sym("("):
        ts.next()
        inner = _parse_formula_or(ts, symbols)
        ts.expect_sym(")")
        return inner
    t = ts.peek()
    if t.kind == "ident" and t.text in ("E", "A"):
        nxt = ts.peek_ahead()
        if nxt.kind == "sym" and nxt.text in ("<>", "[]"):
            raise ParseError.at(t.line, t.col, "nested quantifier is not supported")
    if ts.at_ident("loc"):
        ts.next()
        ts.expect_sym("==")
        name = ts.expect_ident()
        if symbols is not None and symbols.locations is not None \
                and name.text not in symbols.locations:
            raise ParseError.at(name.line, name.col, "undeclared location %r" % name.text)
        return LocAtom(name.text)
    atoms = _parse_atom(ts, symbols)
    if len(atoms) == 1:
        return ClockAtom(atoms[0])
    return And(tuple(ClockAtom(a) for a in atoms))
