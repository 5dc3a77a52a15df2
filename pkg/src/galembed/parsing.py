"""Parser and renderer for the element expression grammar.

The surface syntax is products of integer-exponent factors over polynomials
in the arena variable (s for the ramified arena, t for the constant-field
arena), with constants either plain integers or polynomials in the
representation root z of an extension constants field:

    3*(s+6)^2*(s^2+1)^-1        (s^3+6)         2*(t+4)^-1       (z+1)*(t+3)

Parsing evaluates the expression exactly as a rational function and returns
the canonical factored element (reducible inputs are auto-factored).  The
renderer emits the canonical form, which re-parses to the same element.
"""

from __future__ import annotations

from . import polynomials as pl
from .arena import Arena, ArenaError, FieldElement


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_CHARS = set("+-*^()")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            tokens.append(("name", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over +,-,*,^ and parentheses; values are exact
    rational functions (numerator, denominator) over the constants field."""

    def __init__(self, tokens, arena: Arena):
        self.tokens = tokens
        self.pos = 0
        self.arena = arena
        self.ff = arena.ff

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[0]}", tok[2])
        self.pos += 1
        return tok

    # rational helpers ----------------------------------------------------------

    def _r_mul(self, a, b):
        return (pl.mul(self.ff, a[0], b[0]), pl.mul(self.ff, a[1], b[1]))

    def _r_add(self, a, b, sign=1):
        n2 = b[0] if sign == 1 else pl.neg(self.ff, b[0])
        num = pl.add(self.ff, pl.mul(self.ff, a[0], b[1]), pl.mul(self.ff, n2, a[1]))
        den = pl.mul(self.ff, a[1], b[1])
        return (num, den)

    def _r_pow(self, a, e: int, pos: int):
        if pl.is_zero(a[0]) and e < 0:
            raise ParseError("zero raised to a negative power", pos)
        num, den = a
        if e < 0:
            num, den = den, num
            e = -e
        rn, rd = (1,), (1,)
        for _ in range(e):
            rn = pl.mul(self.ff, rn, num)
            rd = pl.mul(self.ff, rd, den)
        return (rn, rd)

    # grammar -------------------------------------------------------------------

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return val

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok[0] in ("+", "-"):
            self.take()
            sign = -1 if tok[0] == "-" else 1
        val = self.term()
        if sign == -1:
            val = (pl.neg(self.ff, val[0]), val[1])
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = self._r_add(val, rhs, 1 if op == "+" else -1)
        return val

    def term(self):
        val = self.power()
        while self.peek()[0] in ("*", "(", "name", "int"):
            if self.peek()[0] == "*":
                self.take()
            rhs = self.power()
            val = self._r_mul(val, rhs)
        return val

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            tok = self.take("int")
            return self._r_pow(base, sign * tok[1], tok[2])
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return ((tok[1] % self.ff.p0,) if tok[1] % self.ff.p0 else (), (1,))
        if tok[0] == "name":
            self.take()
            name = tok[1]
            if name == self.arena.var:
                return ((0, 1), (1,))
            if name == "z":
                if self.ff.n == 1:
                    raise ParseError("constant z is not in the constants field", tok[2])
                return ((self.ff.from_digits([0, 1]),), (1,))
            raise ParseError(f"unknown name {name!r} (variable is {self.arena.var!r})", tok[2])
        if tok[0] == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_element(text: str, arena: Arena) -> FieldElement:
    """Parse an expression into a canonical factored element; raises
    ParseError (with position) or ArenaError (for the zero element)."""
    tokens = _tokenize(text)
    num, den = _Parser(tokens, arena).parse()
    if pl.is_zero(num):
        raise ArenaError("the zero element is not a valid field element")
    if pl.is_zero(den):
        raise ArenaError("division by the zero polynomial")
    return arena.from_rational(num, den)


def render_poly(atom: pl.Poly, arena: Arena) -> str:
    """Canonical polynomial text, descending degree; extension-field
    coefficients appear as z-expressions, parenthesized when they are sums."""
    ff = arena.ff
    var = arena.var
    terms = []
    for k in reversed(range(len(atom))):
        c = atom[k]
        if c == 0:
            continue
        cs = ff.render(c)
        multi = "+" in cs
        if k == 0:
            terms.append(f"({cs})" if multi else cs)
            continue
        vs = var if k == 1 else f"{var}^{k}"
        if c == 1:
            terms.append(vs)
        elif multi:
            terms.append(f"({cs})*{vs}")
        else:
            terms.append(f"{cs}*{vs}")
    return "+".join(terms) if terms else "0"


def render_element(x: FieldElement) -> str:
    """Canonical product form; a bare monic atom with exponent 1 renders
    without parentheses."""
    arena = x.arena
    ff = arena.ff
    parts = []
    if x.constant != 1 or not x.factors:
        cs = ff.render(x.constant)
        parts.append(f"({cs})" if "+" in cs or "*" in cs else cs)
    for atom, e in x.factors:
        body = render_poly(atom, arena)
        if e == 1:
            parts.append(f"({body})")
        else:
            parts.append(f"({body})^{e}")
    if len(parts) == 1 and x.factors and x.factors[0][1] == 1 and x.constant == 1:
        return render_poly(x.factors[0][0], arena)
    return "*".join(parts)
