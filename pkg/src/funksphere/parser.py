"""Recursive-descent parser for polynomial text.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ['+' | '-'] atom ('^' uint)*
    atom   := rational | var | '(' expr ')'
    var    := 'x' uint            (1 <= index <= m)
    rational := uint ('/' uint)?

Whitespace is ignored between tokens.  Offsets in errors are byte offsets
into the UTF-8 encoded input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polycore import Polynomial
from .scalar import Q

MAX_EXPONENT = 64


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass
class _Cursor:
    text: str
    pos: int = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def offset(self, pos: int | None = None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.offset(pos))

    def uint(self) -> tuple[int, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an unsigned integer")
        return int(self.text[start:self.pos]), start


class _Parser:
    def __init__(self, text: str, dim: int):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.c = _Cursor(text)
        self.dim = dim

    def parse(self) -> Polynomial:
        if not self.c.peek():
            raise self.c.error("empty expression")
        out = self.expr()
        if self.c.peek():
            ch = self.c.peek()
            raise self.c.error(f"unexpected character {ch!r}")
        return out

    def expr(self) -> Polynomial:
        out = self.term()
        while self.c.peek() in ("+", "-"):
            op = self.c.peek()
            self.c.pos += 1
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Polynomial:
        out = self.factor()
        while True:
            ch = self.c.peek()
            if ch == "*":
                self.c.pos += 1
                out = out * self.factor()
            elif ch and (ch.isdigit() or ch in "x("):
                hint = "implicit multiplication is not allowed; write an explicit '*'"
                raise self.c.error(hint)
            else:
                return out

    def factor(self) -> Polynomial:
        ch = self.c.peek()
        if ch in ("+", "-"):
            self.c.pos += 1
            inner = self.factor()
            return -inner if ch == "-" else inner
        base = self.atom()
        while self.c.peek() == "^":
            self.c.pos += 1
            n, start = self.c.uint()
            if n > MAX_EXPONENT:
                raise self.c.error(f"exponent {n} exceeds the limit {MAX_EXPONENT}", start)
            base = base ** n
        return base

    def atom(self) -> Polynomial:
        ch = self.c.peek()
        start = self.c.pos
        if ch == "(":
            self.c.pos += 1
            inner = self.expr()
            if self.c.peek() != ")":
                raise self.c.error("expected ')'")
            self.c.pos += 1
            return inner
        if ch == "x":
            self.c.pos += 1
            if not (self.c.pos < len(self.c.text) and self.c.text[self.c.pos].isdigit()):
                raise self.c.error("expected a variable index after 'x'")
            idx, _ = self.c.uint()
            if not 1 <= idx <= self.dim:
                raise self.c.error(f"variable index out of range (x{idx} with m={self.dim})", start)
            return Polynomial.variable(self.dim, idx - 1)
        if ch.isdigit():
            num, _ = self.c.uint()
            if self.c.peek() == "/":
                self.c.pos += 1
                den, dstart = self.c.uint()
                if den == 0:
                    raise self.c.error("zero denominator", dstart)
                return Polynomial.constant(self.dim, Q(num, den))
            return Polynomial.constant(self.dim, num)
        if not ch:
            raise self.c.error("unexpected end of input")
        raise self.c.error(f"unexpected character {ch!r}")


def parse_polynomial(text: str, dim: int) -> Polynomial:
    """Parse and fully expand ``text`` into a Polynomial in ``dim`` variables."""
    return _Parser(text, dim).parse()


__all__ = ["ParseError", "parse_polynomial", "MAX_EXPONENT"]
