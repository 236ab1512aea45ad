"""Parser for exact polynomial expressions in x, y, z.

Grammar (whitespace insignificant):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | base (('^' | '**') uint)?
    base     := 'x' | 'y' | 'z' | rational | '(' expr ')'
    rational := uint ('/' uint)?

There is no implicit multiplication: "2x" is a syntax error, "2*x"
parses.  Unary minus binds looser than '^', so "-x^2" is -(x^2).
Coefficients are exact rationals.
"""

from fractions import Fraction

from .poly import Poly, X, Y, Z

_VARS = {"x": X, "y": Y, "z": Z}


class ParseError(ValueError):
    """Syntax or lexical error, carrying the 0-based input position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        self.skip_ws()
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def try_take(self, tok: str) -> bool:
        self.skip_ws()
        if self.text.startswith(tok, self.pos):
            self.pos += len(tok)
            return True
        return False

    def uint(self, what: str) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError(f"expected {what}", start)
        return int(self.text[start:self.pos])


def parse_poly(text: str) -> Poly:
    """Parse an expression into a polynomial; raises ParseError otherwise."""
    s = _Scanner(text)
    value = _expr(s)
    s.skip_ws()
    if s.pos != len(s.text):
        raise ParseError(f"unexpected {s.text[s.pos]!r}", s.pos)
    return value


def _expr(s: _Scanner) -> Poly:
    value = _term(s)
    while s.peek() in ("+", "-"):
        op = s.take()
        rhs = _term(s)
        value = value + rhs if op == "+" else value - rhs
    return value


def _term(s: _Scanner) -> Poly:
    value = _factor(s)
    while s.peek() == "*":
        s.take()
        value = value * _factor(s)
    return value


def _factor(s: _Scanner) -> Poly:
    if s.peek() == "-":
        s.take()
        return -_factor(s)
    value = _base(s)
    if s.try_take("^") or s.try_take("**"):
        if s.peek() == "-":
            raise ParseError("exponent must be a nonnegative integer", s.pos)
        return value ** s.uint("an exponent")
    return value


def _base(s: _Scanner) -> Poly:
    ch = s.peek()
    if ch == "":
        raise ParseError("unexpected end of input", s.pos)
    if ch == "(":
        s.take()
        value = _expr(s)
        if s.peek() != ")":
            raise ParseError("expected ')'", s.pos)
        s.take()
        return value
    if ch in _VARS:
        s.take()
        return _VARS[ch]
    if ch.isalpha():
        raise ParseError(f"unknown identifier {ch!r} (only x, y, z)", s.pos)
    if ch.isdigit():
        return Poly.const(_rational(s))
    raise ParseError(f"unexpected {ch!r}", s.pos)


def _rational(s: _Scanner) -> Fraction:
    num = s.uint("a number")
    if s.peek() == "/":
        s.take()
        den = s.uint("a denominator")
        if den == 0:
            raise ParseError("zero denominator", s.pos)
        return Fraction(num, den)
    return Fraction(num)
