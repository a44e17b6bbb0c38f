"""Polynomial expression front end.

Accepts +, -, *, ^ and parentheses over the variables T and X (or
X1..Xn) with integer or rational literals like 2/3.  '/' only forms
rational literals; it is not a general operator.  Parsing is exact and
whitespace-insensitive; errors carry line and column.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .exactpoly import BiPoly
from .reinhardt import MultiBiPoly

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<num>\d+)
      | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<op>[-+*^()/])
    """,
    re.VERBOSE,
)

_VAR_RE = re.compile(r"^X(\d+)?$")

_MAX_EXPONENT = 512


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _PolyVal:
    """Sparse polynomial in T and X1..Xn used during parsing."""

    __slots__ = ("n", "terms")

    def __init__(self, n=0, terms=None):
        self.n = n
        self.terms = terms or {}

    @classmethod
    def const(cls, c: Fraction):
        return cls(0, {(0, ()): c} if c else {})

    @classmethod
    def var_t(cls):
        return cls(0, {(1, ()): Fraction(1)})

    @classmethod
    def var_x(cls, index):
        xs = tuple(1 if i == index else 0 for i in range(index + 1))
        return cls(index + 1, {(0, xs): Fraction(1)})

    def _pad(self, n):
        if self.n >= n:
            return self
        out = {}
        for (t, xs), c in self.terms.items():
            out[(t, xs + (0,) * (n - len(xs)))] = c
        return _PolyVal(n, out)

    def __add__(self, other):
        n = max(self.n, other.n)
        a, b = self._pad(n), other._pad(n)
        out = dict(a.terms)
        for k, c in b.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _PolyVal(n, out)

    def __neg__(self):
        return _PolyVal(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        n = max(self.n, other.n)
        a, b = self._pad(n), other._pad(n)
        out = {}
        for (t1, x1), c1 in a.terms.items():
            for (t2, x2), c2 in b.terms.items():
                key = (t1 + t2, tuple(u + v for u, v in zip(x1, x2)))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return _PolyVal(n, out)

    def pow(self, k):
        result = _PolyVal.const(Fraction(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.line, tok.col)
        return self.advance()

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return val

    def expr(self):
        val = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                rhs = self.term()
                val = val + rhs if tok.text == "+" else val - rhs
            else:
                return val

    def term(self):
        val = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                val = val * self.factor()
            else:
                return val

    def factor(self):
        sign = 1
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                if tok.text == "-":
                    sign = -sign
            else:
                break
        val = self.power()
        return val if sign > 0 else -val

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            etok = self.peek()
            if etok.kind == "op" and etok.text == "-":
                raise ParseError(
                    "exponent must be a nonnegative integer", etok.line, etok.col
                )
            if etok.kind != "num":
                raise ParseError(
                    "exponent must be a nonnegative integer", etok.line, etok.col
                )
            self.advance()
            k = int(etok.text)
            if k > _MAX_EXPONENT:
                raise ParseError(
                    f"exponent exceeds the supported bound {_MAX_EXPONENT}",
                    etok.line,
                    etok.col,
                )
            return base.pow(k)
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            num = int(tok.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "/":
                self.advance()
                dtok = self.peek()
                if dtok.kind != "num":
                    raise ParseError(
                        "'/' forms rational literals only; expected an integer",
                        dtok.line,
                        dtok.col,
                    )
                self.advance()
                if int(dtok.text) == 0:
                    raise ParseError("zero denominator", dtok.line, dtok.col)
                return _PolyVal.const(Fraction(num, int(dtok.text)))
            return _PolyVal.const(Fraction(num))
        if tok.kind == "name":
            self.advance()
            if tok.text == "T":
                return _PolyVal.var_t()
            m = _VAR_RE.match(tok.text)
            if m:
                idx = int(m.group(1)) - 1 if m.group(1) else 0
                if m.group(1) and int(m.group(1)) == 0:
                    raise ParseError("variables are X1, X2, ...", tok.line, tok.col)
                return _PolyVal.var_x(idx)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.col)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            val = self.expr()
            self.expect_op(")")
            return val
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.col)


def parse_polynomial(text: str) -> MultiBiPoly:
    """Parse source text into an exact polynomial in T and X1..Xn."""
    if not text or not text.strip():
        raise ParseError("empty polynomial", 1, 1)
    val = _Parser(text).parse()
    n = max(val.n, 1)
    deg_t = max((t for t, _ in val.terms), default=0)
    tcoeffs = [dict() for _ in range(deg_t + 1)]
    for (t, xs), c in val.terms.items():
        key = tuple(xs) + (0,) * (n - len(xs))
        tcoeffs[t][key] = c
    return MultiBiPoly(n, tcoeffs)


def parse_bipoly(text: str) -> BiPoly:
    """Parse text that must involve only X (= X1) and T."""
    p = parse_polynomial(text)
    if p.n != 1:
        raise ParseError("this command accepts a single series variable X", 1, 1)
    return p.to_bipoly()


def poly_to_text(p: MultiBiPoly) -> str:
    """Canonical rendering that reparses to an identical polynomial."""
    names = (
        ["X"] if p.n == 1 else [f"X{i+1}" for i in range(p.n)]
    )
    parts = []
    for t in range(p.deg_t, -1, -1):
        if t >= len(p.tcoeffs):
            continue
        for xs in sorted(p.tcoeffs[t], reverse=True):
            c = p.tcoeffs[t][xs]
            factors = []
            for name, e in zip(names, xs):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if t == 1:
                factors.append("T")
            elif t > 1:
                factors.append(f"T^{t}")
            mag = abs(c)
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
    if not parts:
        return "0"
    return " ".join(parts)


def bipoly_to_text(p: BiPoly) -> str:
    m = MultiBiPoly(
        1,
        [
            {(i,): c for i, c in enumerate(u.coeffs) if c}
            for u in p.tcoeffs
        ],
    )
    return poly_to_text(m)
