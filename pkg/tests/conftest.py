"""Shared fixtures: the worked-example corpus, expected complexes, random
generators, and a brute-force LP oracle for small bounded polytopes."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from amoebas.laurent import make_laurent, parse_poly
from amoebas.polyhedral import (
    Cell,
    from_generators,
    make_complex,
)
from amoebas.scalars import (
    FIELD_Q,
    FIELD_QZ,
    GENERIC,
    FinitePrime,
    Poly,
    RationalFunction,
    place_from_str,
)
from amoebas.tropical import trop_hypersurface


def ray(rank, base, direction):
    return from_generators(rank, [base], [direction])


def segment(rank, a, b):
    return from_generators(rank, [a, b])


def cells_of(rank, polys):
    return make_complex(rank, [Cell(P) for P in polys])


# ---------------------------------------------------------------------------
# worked examples


@pytest.fixture(scope="session")
def ex_curve_qz():
    # the three-term curve over Q(z) with bad places z, z-1, z-2
    return parse_poly("z*x1 + (z-1)*x2 + (z-2)")


@pytest.fixture(scope="session")
def ex_curve_q():
    # the four-term curve over Q with bad place 2 and a pinched archimedean amoeba
    return parse_poly("x1*x2 - 2*x1 - 2*x2 + 1")


@pytest.fixture(scope="session")
def ex_line_q():
    return parse_poly("x1 + x2 - 2")


def tripod(base):
    """Rays from base in directions e1, e2, -(e1+e2)."""
    return cells_of(
        2,
        [
            ray(2, base, (1, 0)),
            ray(2, base, (0, 1)),
            ray(2, base, (-1, -1)),
        ],
    )


@pytest.fixture(scope="session")
def expected_tripods():
    return {
        "generic": tripod((0, 0)),
        "q:z": tripod((-1, 0)),
        "q:z-1": tripod((0, -1)),
        "q:z-2": tripod((1, 1)),
    }


@pytest.fixture(scope="session")
def expected_axes():
    return cells_of(
        2,
        [
            ray(2, (0, 0), (1, 0)),
            ray(2, (0, 0), (-1, 0)),
            ray(2, (0, 0), (0, 1)),
            ray(2, (0, 0), (0, -1)),
        ],
    )


@pytest.fixture(scope="session")
def expected_curve_q_at_two():
    v = (1, -1)
    mv = (-1, 1)
    return cells_of(
        2,
        [
            segment(2, v, mv),
            ray(2, v, (1, 0)),
            ray(2, v, (0, -1)),
            ray(2, mv, (-1, 0)),
            ray(2, mv, (0, 1)),
        ],
    )


@pytest.fixture(scope="session")
def corpus(ex_curve_qz, ex_curve_q, ex_line_q):
    """Hypersurface/place pairs exercising both fields, shifts, and
    multiplicities; used by the oracle, purity, and balancing criteria."""
    pairs = []
    for p in ("generic", "q:z", "q:z-1", "q:z-2"):
        pairs.append((ex_curve_qz, place_from_str(p) if p != "generic" else GENERIC))
    for p in (GENERIC, FinitePrime(2)):
        pairs.append((ex_curve_q, p))
    pairs.append((ex_line_q, GENERIC))
    pairs.append((ex_line_q, FinitePrime(2)))
    pairs.append((parse_poly("x1 + x2 + 1"), GENERIC))
    pairs.append((parse_poly("x1*x2^2 - 1"), GENERIC))
    pairs.append((parse_poly("x1*x2^2 - 1"), FinitePrime(3)))
    pairs.append((parse_poly("x1^2 + x2 + 1"), GENERIC))  # multiplicity-2 ray
    pairs.append((parse_poly("4*x1 + 2*x2 + 1"), FinitePrime(2)))
    pairs.append((parse_poly("x1 - x3 - 2", rank=3), GENERIC))
    pairs.append((parse_poly("x1 - x3 - 2", rank=3), FinitePrime(2)))
    pairs.append((parse_poly("x1^2 + x1 + 1"), GENERIC))
    return pairs


@pytest.fixture(scope="session")
def corpus_trops(corpus):
    return [(f, p, trop_hypersurface(f, p)) for f, p in corpus]


# ---------------------------------------------------------------------------
# randomness


@pytest.fixture()
def rng():
    return random.Random(20260809)


def rand_fraction(rng, num=50, den=30):
    n = 0
    while n == 0:
        n = rng.randint(-num, num)
    return Fraction(n, rng.randint(1, den))


_FACTOR_POOL = [
    Poly((0, 1)),       # z
    Poly((-1, 1)),      # z - 1
    Poly((1, 1)),       # z + 1
    Poly((-2, 1)),      # z - 2
    Poly((1, 0, 1)),    # z^2 + 1
    Poly((3, 1)),       # z + 3
]


def rand_ratfunc(rng, max_factors=2):
    num = Poly.const(rand_fraction(rng, 9, 5))
    den = Poly.const(1)
    for _ in range(rng.randint(0, max_factors)):
        num = num * rng.choice(_FACTOR_POOL)
    for _ in range(rng.randint(0, max_factors)):
        den = den * rng.choice(_FACTOR_POOL)
    return RationalFunction(num, den)


def rand_exponents(rng, rank, count, spread=3):
    out = set()
    while len(out) < count:
        out.add(tuple(rng.randint(-spread, spread) for _ in range(rank)))
    return sorted(out)


def rand_poly_q(rng, rank=2, terms=None):
    s = terms or rng.randint(2, 5)
    exps = rand_exponents(rng, rank, s)
    return make_laurent(rank, FIELD_Q, [(e, rand_fraction(rng)) for e in exps])


def rand_poly_qz_constant(rng, rank=2, terms=None):
    s = terms or rng.randint(2, 6)
    exps = rand_exponents(rng, rank, s)
    return make_laurent(
        rank,
        FIELD_QZ,
        [(e, RationalFunction.const(rand_fraction(rng))) for e in exps],
    )


def rand_poly_qz(rng, rank=2, terms=None):
    s = terms or rng.randint(2, 6)
    exps = rand_exponents(rng, rank, s)
    return make_laurent(rank, FIELD_QZ, [(e, rand_ratfunc(rng)) for e in exps])


def rand_point(rng, rank, num=12, den=4):
    return tuple(
        Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(rank)
    )


# ---------------------------------------------------------------------------
# naive LP oracle (bounded pointed polyhedra only)


def brute_force_lp(objective, P, sense="max"):
    """Enumerate basic solutions from all rank-sized constraint subsets and
    optimize over the feasible ones.  Returns (value, point) or None when no
    feasible basic solution exists."""
    n = P.rank
    rows = [(row, rhs) for row, rhs, _ in P.constraints()]
    best = None
    for combo in itertools.combinations(range(len(rows)), n):
        mat = [list(map(Fraction, rows[i][0])) for i in combo]
        rhs = [Fraction(rows[i][1]) for i in combo]
        point = _solve_square(mat, rhs)
        if point is None:
            continue
        from amoebas.polyhedral import contains_point

        if not contains_point(P, point):
            continue
        value = sum(Fraction(o) * x for o, x in zip(objective, point))
        if best is None:
            best = (value, point)
        elif (sense == "max" and value > best[0]) or (
            sense == "min" and value < best[0]
        ):
            best = (value, point)
    return best


def _solve_square(mat, rhs):
    n = len(mat)
    A = [row[:] + [b] for row, b in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(A[r][n] for r in range(n))
