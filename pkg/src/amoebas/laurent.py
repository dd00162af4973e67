"""Laurent polynomials: parsing, canonical form, Newton polytopes, bad places.

A Laurent polynomial is a finite sum of terms (integer exponent vector,
nonzero coefficient) over Q or Q(z), kept sorted lexicographically by
exponent.  The tropical side only ever consumes coefficient valuations, so
scaling by a nonzero scalar never changes any downstream complex; bad-place
discovery therefore works with coefficient ratios.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import parsing
from .errors import DimensionMismatch, EmptyPolynomial, MonomialInput, RankMismatch
from .polyhedral import LPOptimal, lp_solve, polyhedron
from .scalars import (
    FIELD_Q,
    FIELD_QZ,
    RationalFunction,
    field_of,
    scalar_to_str,
    support_places,
)


@dataclass(frozen=True)
class LaurentPoly:
    rank: int
    field: str
    terms: tuple  # ((exponent tuple, coefficient), ...) sorted by exponent

    @property
    def nterms(self):
        return len(self.terms)

    def exponents(self):
        return [e for e, _ in self.terms]

    def coefficients(self):
        return [c for _, c in self.terms]

    def __str__(self):
        return poly_to_str(self)


def make_laurent(rank, field, terms) -> LaurentPoly:
    """Canonicalize: combine like terms, drop zeros, sort by exponent."""
    if rank < 1:
        raise RankMismatch("ambient rank must be at least 1")
    if field not in (FIELD_Q, FIELD_QZ):
        raise ValueError(f"unknown field {field!r}")
    combined: dict = {}
    items = terms.items() if isinstance(terms, dict) else terms
    for exp, coeff in items:
        exp = tuple(int(x) for x in exp)
        if len(exp) != rank:
            raise RankMismatch(f"exponent {exp} does not have rank {rank}")
        if field == FIELD_Q:
            coeff = Fraction(coeff) if not isinstance(coeff, Fraction) else coeff
        else:
            if not isinstance(coeff, RationalFunction):
                coeff = RationalFunction.const(coeff)
        combined[exp] = combined.get(exp, 0) + coeff
    cleaned = [(e, c) for e, c in combined.items() if c != 0]
    if not cleaned:
        raise EmptyPolynomial("all terms cancel")
    for _, c in cleaned:
        if field_of(c) != field:
            raise ValueError("coefficient field mismatch")
    return LaurentPoly(rank, field, tuple(sorted(cleaned, key=lambda t: t[0])))


def parse_poly(text, rank=None, field=None) -> LaurentPoly:
    """Parse polynomial text; rank and field are inferred when omitted."""
    if rank is None:
        rank = max(parsing.scan_rank(text), 1)
    if field is None:
        field = parsing.scan_field(text)
    terms = parsing.parse_terms(text, rank, field)
    if not terms:
        raise EmptyPolynomial(f"{text!r} cancels to zero")
    return make_laurent(rank, field, terms)


def _coeff_sign_split(c):
    """(sign, |c|) with the sign read off the leading numerator coefficient."""
    if isinstance(c, Fraction):
        return (1, c) if c > 0 else (-1, -c)
    if c.num.leading > 0:
        return 1, c
    return -1, -c


def _coeff_str(c) -> str:
    s = scalar_to_str(c)
    if isinstance(c, RationalFunction) and (c.den.degree >= 1 or c.num.degree >= 1):
        if not (s.startswith("(") and s.endswith(")")):
            s = f"({s})"
    return s


def _monomial_str(exp) -> str:
    pieces = []
    for i, e in enumerate(exp):
        if e == 0:
            continue
        pieces.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
    return "*".join(pieces)


def poly_to_str(f: LaurentPoly) -> str:
    parts = []
    for exp, coeff in f.terms:
        sign, mag = _coeff_sign_split(coeff)
        mono = _monomial_str(exp)
        if not mono:
            body = _coeff_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coeff_str(mag)}*{mono}"
        if not parts:
            parts.append(body if sign > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if sign > 0 else f"- {body}")
    return " ".join(parts)


def poly_to_json(f: LaurentPoly) -> dict:
    return {
        "rank": f.rank,
        "field": f.field,
        "terms": [
            {"exp": list(e), "coeff": scalar_to_str(c)} for e, c in f.terms
        ],
    }


def poly_from_json(obj) -> LaurentPoly:
    field = obj["field"]
    terms = [
        (tuple(t["exp"]), parsing.parse_scalar(t["coeff"], field))
        for t in obj["terms"]
    ]
    return make_laurent(obj["rank"], field, terms)


def scale(f: LaurentPoly, c) -> LaurentPoly:
    if c == 0:
        raise EmptyPolynomial("scaling by zero")
    return make_laurent(f.rank, f.field, [(e, a * c) for e, a in f.terms])


def normalize(f: LaurentPoly) -> LaurentPoly:
    """Divide through so the lexicographically smallest exponent has
    coefficient one."""
    lead = f.terms[0][1]
    one = Fraction(1) if f.field == FIELD_Q else RationalFunction.const(1)
    return scale(f, one / lead)


@dataclass(frozen=True)
class NewtonPolytope:
    points: tuple
    vertex_indices: tuple


def strict_vertex_direction(points, i):
    """A direction v with <points[i], v> strictly below all others, or None.

    LP over (v, t): maximize t subject to <u_i - u_j, v> + t <= 0 and t <= 1;
    the optimum is 1 when a separating direction exists and 0 otherwise.
    """
    n = len(points[i])
    ineqs = []
    for j, u in enumerate(points):
        if j == i:
            continue
        row = [a - b for a, b in zip(points[i], u)] + [1]
        ineqs.append((row, Fraction(0)))
    ineqs.append(([0] * n + [1], Fraction(1)))
    res = lp_solve([0] * n + [1], polyhedron(n + 1, (), ineqs))
    assert isinstance(res, LPOptimal)
    if res.value > 0:
        return res.point[:n]
    return None


def newton_polytope(f: LaurentPoly) -> NewtonPolytope:
    """Exponent points plus the indices that are vertices of their hull."""
    points = f.exponents()
    vertices = []
    for i in range(len(points)):
        if len(points) == 1 or strict_vertex_direction(points, i) is not None:
            vertices.append(i)
    return NewtonPolytope(tuple(points), tuple(vertices))


def convex_certificate(np_: NewtonPolytope, i):
    """Exact convex combination of the vertices equal to points[i], as a
    {vertex index: weight} dict, or None when i is a vertex."""
    if i in np_.vertex_indices:
        return None
    vs = list(np_.vertex_indices)
    n = len(np_.points[i])
    k = len(vs)
    eqs = []
    for c in range(n):
        eqs.append(([np_.points[j][c] for j in vs], Fraction(np_.points[i][c])))
    eqs.append(([1] * k, Fraction(1)))
    ineqs = [([-1 if t == s else 0 for t in range(k)], Fraction(0)) for s in range(k)]
    res = lp_solve([0] * k, polyhedron(k, eqs, ineqs))
    if not isinstance(res, LPOptimal):
        return None
    return {vs[s]: res.point[s] for s in range(k) if res.point[s] != 0}


def bad_places(f: LaurentPoly) -> frozenset:
    """Finite places where the coefficient valuation vector is not constant.

    Works on the ratios a_j / a_1 so that global scaling never contributes a
    spurious place.
    """
    if f.nterms < 2:
        raise MonomialInput("a single term has no hypersurface")
    a1 = f.terms[0][1]
    ratios = [c / a1 for _, c in f.terms[1:]]
    ratios = [r for r in ratios if r != 1]
    if not ratios:
        return frozenset()
    return support_places(ratios)


def pullback_matrix_identity(rank):
    return [[1 if j == i else 0 for j in range(rank)] for i in range(rank)]


def apply_monomial_map(point, matrix):
    """Image of a point under an integer matrix (rows act by dot product)."""
    if any(len(row) != len(point) for row in matrix):
        raise DimensionMismatch("matrix/point shape mismatch")
    return tuple(sum(a * x for a, x in zip(row, point)) for row in matrix)
