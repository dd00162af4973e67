"""Parser for Laurent polynomial and scalar text.

Grammar (whitespace ignored; positions reported on errors):

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := power (('*'|'/') power)*
    power    := atom ['^' exponent]
    exponent := ['-'] INT | '(' ['-'] INT ')'
    atom     := INT | 'z' | 'x'INT | '(' expr ')'

Values are multivariate Laurent polynomials over the coefficient field
(Q, or Q(z) when 'z' occurs).  Division and negative powers require the
divisor or base to be a single term, so '(z-1)/(z^2+1)' and 'x1^-2' work and
'1/(x1+1)' is rejected.  The parser expands products, so '(z^2+1)*(x1+x2-5)'
parses to the expanded polynomial.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import PolySyntaxError, RankMismatch
from .scalars import FIELD_Q, FIELD_QZ, Poly, RationalFunction, Z


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch == "z":
            tokens.append(("z", None, i))
            i += 1
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolySyntaxError("variable needs an index, like x1", i)
            tokens.append(("var", int(text[i + 1 : j]), i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, None, i))
            i += 1
            continue
        raise PolySyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Terms:
    """Mutable term map {exponent tuple: coefficient} during parsing."""

    __slots__ = ("rank", "field", "terms")

    def __init__(self, rank, field, terms=None):
        self.rank = rank
        self.field = field
        self.terms = terms if terms is not None else {}

    @classmethod
    def const(cls, rank, field, c):
        coeff = Fraction(c) if field == FIELD_Q else RationalFunction.const(c)
        return cls(rank, field, {(0,) * rank: coeff})

    @classmethod
    def scalar(cls, rank, field, s):
        return cls(rank, field, {(0,) * rank: s})

    @classmethod
    def variable(cls, rank, field, k):
        exp = tuple(1 if i == k else 0 for i in range(rank))
        one = Fraction(1) if field == FIELD_Q else RationalFunction.const(1)
        return cls(rank, field, {exp: one})

    def _clean(self):
        self.terms = {e: c for e, c in self.terms.items() if c != 0}
        return self

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return _Terms(self.rank, self.field, out)._clean()

    def __neg__(self):
        return _Terms(self.rank, self.field, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return _Terms(self.rank, self.field, out)._clean()

    def single_term(self):
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))

    def inverse(self, pos):
        single = self.single_term()
        if single is None:
            raise PolySyntaxError("can only divide by a single term", pos)
        e, c = single
        if c == 0:
            raise PolySyntaxError("division by zero", pos)
        inv = (Fraction(1) / c) if isinstance(c, Fraction) else (RationalFunction.const(1) / c)
        return _Terms(self.rank, self.field, {tuple(-x for x in e): inv})

    def power(self, k, pos):
        if k < 0:
            return self.inverse(pos).power(-k, pos)
        out = _Terms.const(self.rank, self.field, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


class _Parser:
    def __init__(self, text, rank, field):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.rank = rank
        self.field = field

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind}, found {tok[0]}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected {tok[0]}", tok[2])
        return val

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + (-rhs if op == "-" else rhs)
        return val

    def term(self):
        val = self.power()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.power()
            val = val * (rhs.inverse(pos) if op == "/" else rhs)
        return val

    def power(self):
        val = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            val = val.power(self.exponent(), pos)
        return val

    def exponent(self):
        parens = False
        if self.peek()[0] == "(":
            self.take()
            parens = True
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        tok = self.take("int")
        if parens:
            self.take(")")
        return sign * tok[1]

    def atom(self):
        tok = self.peek()
        kind, value, pos = tok
        if kind == "int":
            self.take()
            return _Terms.const(self.rank, self.field, value)
        if kind == "z":
            self.take()
            if self.field != FIELD_QZ:
                raise PolySyntaxError("the variable z needs the field Q(z)", pos)
            return _Terms.scalar(self.rank, self.field, RationalFunction(Z))
        if kind == "var":
            self.take()
            if value < 1 or value > self.rank:
                raise RankMismatch(
                    f"variable x{value} outside rank {self.rank} (position {pos})"
                )
            return _Terms.variable(self.rank, self.field, value - 1)
        if kind == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        raise PolySyntaxError(f"unexpected {kind}", pos)


def scan_rank(text) -> int:
    """Largest variable index appearing in the text (0 if none)."""
    return max(
        (value for kind, value, _ in _tokenize(text) if kind == "var"), default=0
    )


def scan_field(text) -> str:
    return (
        FIELD_QZ
        if any(kind == "z" for kind, _, _ in _tokenize(text))
        else FIELD_Q
    )


def parse_terms(text, rank, field) -> dict:
    """{exponent tuple: nonzero coefficient}; may be empty after cancellation."""
    return _Parser(text, rank, field).parse().terms


def parse_scalar(text, field):
    """A single coefficient per the scalar grammar."""
    terms = parse_terms(text, 0, field)
    if not terms:
        from .errors import ZeroInput

        raise ZeroInput(f"scalar {text!r} is zero")
    return terms[()]


def parse_poly_z(text) -> Poly:
    """A plain polynomial in z (denominator-free), for place strings."""
    s = parse_scalar(text, FIELD_QZ)
    if isinstance(s, RationalFunction):
        if s.den != Poly.const(1):
            raise PolySyntaxError(f"{text!r} is not a polynomial in z", 0)
        return s.num
    return Poly.const(s)
