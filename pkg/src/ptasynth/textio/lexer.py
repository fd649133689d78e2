"""Tokenizer shared by the model, property, and valuation grammars."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    col: int
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return "%d:%d: %s: %s" % (self.line, self.col, self.severity, self.message)


class ParseError(ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))

    @staticmethod
    def at(line: int, col: int, message: str) -> "ParseError":
        return ParseError([ParseDiagnostic(line, col, message)])


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "nat", "sym", "eof"
    text: str
    line: int
    col: int


_TWO_CHAR = ("->", ":=", "==", "<=", ">=", "&&", "||", "<>", "[]")
_ONE_CHAR = "{};:,()!<>*+-="


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        two = text[i:i + 2]
        if two in _TWO_CHAR:
            tokens.append(Token("sym", two, line, col))
            i += 2
            col += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("nat", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token("sym", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError.at(line, col, "unexpected character %r" % ch)
    tokens.append(Token("eof", "", line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> Token:
        return self._tokens[self._pos]

    def peek_ahead(self, k: int = 1) -> Token:
        return self._tokens[min(self._pos + k, len(self._tokens) - 1)]

    def next(self) -> Token:
        t = self._tokens[self._pos]
        if t.kind != "eof":
            self._pos += 1
        return t

    def at_sym(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "sym" and t.text == text

    def at_ident(self, text: str | None = None) -> bool:
        t = self.peek()
        return t.kind == "ident" and (text is None or t.text == text)

    def expect_sym(self, text: str) -> Token:
        t = self.peek()
        if t.kind != "sym" or t.text != text:
            raise ParseError.at(t.line, t.col, "expected %r, found %r" % (text, t.text or "end of input"))
        return self.next()

    def expect_ident(self, text: str | None = None) -> Token:
        t = self.peek()
        if t.kind != "ident" or (text is not None and t.text != text):
            what = "identifier" if text is None else repr(text)
            raise ParseError.at(t.line, t.col, "expected %s, found %r" % (what, t.text or "end of input"))
        return self.next()

    def expect_nat(self) -> Token:
        t = self.peek()
        if t.kind != "nat":
            raise ParseError.at(t.line, t.col, "expected a natural number, found %r" % (t.text or "end of input"))
        return self.next()

    def expect_eof(self) -> None:
        t = self.peek()
        if t.kind != "eof":
            raise ParseError.at(t.line, t.col, "unexpected trailing input %r" % t.text)
