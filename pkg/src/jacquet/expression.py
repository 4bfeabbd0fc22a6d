"""Surface syntax for products of segment representations.

Grammar (whitespace is insignificant, ``;`` may separate declarations)::

    expression  := declaration* product?
    declaration := "let" IDENT ":" INT ";"?
    product     := segment ("*" segment)*
    segment     := "Z" "[" INT ".." INT "]" "@" IDENT

For example ``let rho:1  Z[0..1]@rho * Z[3..4]@rho``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .segments import CuspidalLine, Multisegment, Segment

__all__ = ["Expression", "ParseError", "parse", "print_expression", "from_multisegment"]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"[+-]?[0-9]+\Z")
_STOP = set("[]@*:;")


class ParseError(ValueError):
    """A diagnostic with a stable code and a 1-based source position."""

    def __init__(self, code: str, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {code}: {message}")
        self.code = code
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Expression:
    declarations: tuple[tuple[str, int], ...] = ()
    product: tuple[tuple[int, int, str], ...] = ()

    def lines(self) -> dict[str, CuspidalLine]:
        return {name: CuspidalLine(name, dim) for name, dim in self.declarations}

    def multisegment(self) -> Multisegment:
        lines = self.lines()
        return Multisegment(Segment(lines[name], a, b) for a, b, name in self.product)

    def __str__(self):
        return print_expression(self)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, code, message, pos=None):
        raise ParseError(code, message, *self.where(pos))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            found = self.text[self.pos:self.pos + 8] or "end of input"
            self.fail("SYNTAX", f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def ident(self) -> tuple[str, int]:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.fail("SYNTAX", "expected an identifier")
        self.pos = m.end()
        return m.group(), m.start()

    def integer(self) -> int:
        self.skip()
        start = end = self.pos
        # The whole run up to a delimiter is one token, so "1x" is a bad integer, not "1".
        while (end < len(self.text) and not self.text[end].isspace()
               and self.text[end] not in _STOP and not self.text.startswith("..", end)):
            end += 1
        tok = self.text[start:end]
        if not tok:
            self.fail("BAD_INTEGER", "expected an integer")
        if not _INT.match(tok):
            self.fail("BAD_INTEGER", f"malformed integer {tok!r}", start)
        self.pos = end
        return int(tok)

    def keyword_let(self) -> bool:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        return bool(m) and m.group() == "let"

    def parse(self) -> Expression:
        decls: dict[str, int] = {}
        while self.keyword_let():
            self.pos += 3
            name, at = self.ident()
            self.expect(":")
            dim_at = self.pos
            dim = self.integer()
            if dim < 1:
                self.fail("BAD_DIM", f"line dimension must be positive, got {dim}", dim_at)
            if name in decls:
                self.fail("DUPLICATE_LINE", f"line {name!r} declared twice", at)
            decls[name] = dim
            if self.peek(";"):
                self.pos += 1
        product = []
        if not self.at_end():
            product.append(self.segment(decls))
            while self.peek("*"):
                self.pos += 1
                product.append(self.segment(decls))
        if not self.at_end():
            self.fail("SYNTAX", f"unexpected {self.text[self.pos]!r}")
        return Expression(tuple(decls.items()), tuple(product))

    def segment(self, decls) -> tuple[int, int, str]:
        self.skip()
        start = self.pos
        self.expect("Z")
        self.expect("[")
        a = self.integer()
        self.expect("..")
        b = self.integer()
        self.expect("]")
        self.expect("@")
        name, at = self.ident()
        if name not in decls:
            self.fail("UNKNOWN_LINE", f"line {name!r} is not declared", at)
        if a > b:
            self.fail("A_GT_B", f"segment [{a}..{b}] has a > b", start)
        return a, b, name


def parse(text: str) -> Expression:
    return _Parser(text).parse()


def print_expression(expr: Expression) -> str:
    parts = [f"let {name}:{dim};" for name, dim in expr.declarations]
    if expr.product:
        parts.append(" * ".join(f"Z[{a}..{b}]@{name}" for a, b, name in expr.product))
    return " ".join(parts)


def from_multisegment(ms: Multisegment) -> Expression:
    lines = ms.lines()
    return Expression(
        tuple((line.id, line.dim) for line in lines),
        tuple((s.a, s.b, s.line.id) for s in ms),
    )
