"""Exact rational polyhedra, linear programming, and polyhedral complexes.

Polyhedra are stored in H-representation with primitive integer rows and
rational right-hand sides.  The LP solver is a two-phase tableau simplex over
``fractions.Fraction`` with Bland's rule, so every answer is exact and
termination is guaranteed.  Projections use a change of coordinates plus
Fourier-Motzkin elimination with LP-based redundancy removal.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, InternalInvariantError, RankDeficient
from .lattices import rank_of_rows

Row = tuple  # tuple[int, ...]
LinCon = tuple  # (Row, Fraction)


def _canon_constraint(row, rhs, is_equality):
    """Scale to a primitive integer row; returns None for vacuous rows and
    the string "infeasible" for unsatisfiable zero rows."""
    fr = [Fraction(x) for x in row]
    rhs = Fraction(rhs)
    if all(x == 0 for x in fr):
        if rhs == 0 or (not is_equality and rhs > 0):
            return None
        return "infeasible"
    denlcm = math.lcm(*(x.denominator for x in fr), rhs.denominator)
    ints = [int(x * denlcm) for x in fr]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    rhs = rhs * denlcm / g
    if is_equality:
        lead = next(x for x in ints if x != 0)
        if lead < 0:
            ints = [-x for x in ints]
            rhs = -rhs
    return tuple(ints), rhs


_INFEASIBLE_MARK = "infeasible"


@dataclass(frozen=True)
class Polyhedron:
    """H-representation: {v : eq. rows v = rhs, ineq. rows v <= rhs}."""

    rank: int
    equalities: tuple
    inequalities: tuple

    def constraints(self):
        return [(r, b, True) for (r, b) in self.equalities] + [
            (r, b, False) for (r, b) in self.inequalities
        ]

    def sort_key(self):
        return (
            self.rank,
            tuple((r, (b.numerator, b.denominator)) for (r, b) in self.equalities),
            tuple((r, (b.numerator, b.denominator)) for (r, b) in self.inequalities),
        )


def polyhedron(rank, equalities=(), inequalities=()):
    """Canonicalizing constructor: primitive rows, sorted, deduplicated."""
    eqs = set()
    ineqs = set()
    infeasible = False
    for row, rhs in equalities:
        c = _canon_constraint(row, rhs, True)
        if c == _INFEASIBLE_MARK:
            infeasible = True
        elif c is not None:
            eqs.add(c)
    for row, rhs in inequalities:
        c = _canon_constraint(row, rhs, False)
        if c == _INFEASIBLE_MARK:
            infeasible = True
        elif c is not None:
            ineqs.add(c)
    if infeasible:
        return empty_polyhedron(rank)
    key = lambda c: (c[0], (c[1].numerator, c[1].denominator))
    return Polyhedron(rank, tuple(sorted(eqs, key=key)), tuple(sorted(ineqs, key=key)))


def empty_polyhedron(rank):
    return Polyhedron(rank, (((0,) * rank, Fraction(1)),), ())


def whole_space(rank):
    return Polyhedron(rank, (), ())


def intersect(*polys):
    rank = polys[0].rank
    if any(p.rank != rank for p in polys):
        raise DimensionMismatch("intersecting polyhedra of different ranks")
    return polyhedron(
        rank,
        [c for p in polys for c in p.equalities],
        [c for p in polys for c in p.inequalities],
    )


def translate(P, w):
    """The translate P + w."""
    w = [Fraction(x) for x in w]
    move = lambda cons: [(r, b + sum(a * x for a, x in zip(r, w))) for (r, b) in cons]
    return polyhedron(P.rank, move(P.equalities), move(P.inequalities))


def contains_point(P, v) -> bool:
    v = [Fraction(x) for x in v]
    if len(v) != P.rank:
        raise DimensionMismatch("point rank mismatch")
    for row, rhs in P.equalities:
        if sum(a * x for a, x in zip(row, v)) != rhs:
            return False
    for row, rhs in P.inequalities:
        if sum(a * x for a, x in zip(row, v)) > rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# exact simplex


@dataclass(frozen=True)
class LPOptimal:
    value: Fraction
    point: tuple


@dataclass(frozen=True)
class LPUnbounded:
    ray: tuple
    point: tuple


@dataclass(frozen=True)
class LPInfeasible:
    farkas: tuple  # multipliers over constraints() order, or None


def _pivot(T, basis, r, c):
    m = len(T)
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    for i in range(m):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            Tr = T[r]
            T[i] = [x - f * y for x, y in zip(T[i], Tr)]
    basis[r] = c


def _run_simplex(T, basis, ncols):
    """Bland's-rule simplex on a tableau whose last row holds reduced costs
    (minimization).  Returns "optimal" or ("unbounded", entering_col)."""
    m = len(T) - 1
    while True:
        cost = T[-1]
        enter = -1
        for j in range(ncols):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return ("unbounded", enter)
        _pivot(T, basis, leave, enter)


def lp_solve(objective, P: Polyhedron, sense="max"):
    """Exact LP over the polyhedron: maximize or minimize objective . v.

    Returns LPOptimal (value and a witness point), LPUnbounded (an improving
    ray from a feasible point), or LPInfeasible (with Farkas multipliers for
    the constraints in P.constraints() order).
    """
    n = P.rank
    obj = [Fraction(x) for x in objective]
    if len(obj) != n:
        raise DimensionMismatch("objective rank mismatch")
    if sense == "min":
        res = lp_solve([-x for x in obj], P, "max")
        if isinstance(res, LPOptimal):
            return LPOptimal(-res.value, res.point)
        return res
    if sense != "max":
        raise ValueError("sense must be 'max' or 'min'")

    eqs = list(P.equalities)
    ineqs = list(P.inequalities)
    m = len(eqs) + len(ineqs)
    nfree = 2 * n
    nslack = len(ineqs)
    ncols = nfree + nslack

    # rows: [y+ block | y- block | slacks | rhs], with rhs made nonnegative
    rows = []
    flips = []
    kinds = []
    for row, rhs in eqs:
        r = [Fraction(x) for x in row] + [Fraction(-x) for x in row] + [Fraction(0)] * nslack
        rows.append((r, Fraction(rhs)))
        kinds.append("eq")
    for s, (row, rhs) in enumerate(ineqs):
        r = [Fraction(x) for x in row] + [Fraction(-x) for x in row] + [Fraction(0)] * nslack
        r[nfree + s] = Fraction(1)
        rows.append((r, Fraction(rhs)))
        kinds.append("le")
    for i, (r, b) in enumerate(rows):
        if b < 0:
            rows[i] = ([-x for x in r], -b)
            flips.append(True)
        else:
            flips.append(False)

    # artificial columns where the slack cannot serve as an initial basis
    art_of_row = {}
    ncols_art = ncols
    for i in range(m):
        if kinds[i] == "le" and not flips[i]:
            continue
        art_of_row[i] = ncols_art
        ncols_art += 1

    T = []
    basis = []
    for i, (r, b) in enumerate(rows):
        full = r + [Fraction(0)] * (ncols_art - ncols) + [b]
        if i in art_of_row:
            full[art_of_row[i]] = Fraction(1)
            basis.append(art_of_row[i])
        else:
            slack_col = nfree + (i - len(eqs))
            basis.append(slack_col)
        T.append(full)

    # phase 1: minimize the sum of artificials
    cost = [Fraction(0)] * (ncols_art + 1)
    for i, a in art_of_row.items():
        cost[a] = Fraction(1)
    for i in range(m):
        if basis[i] in art_of_row.values():
            cost = [c - x for c, x in zip(cost, T[i])]
    T.append(cost)
    status = _run_simplex(T, basis, ncols_art)
    if status != "optimal":
        raise InternalInvariantError("phase 1 cannot be unbounded")
    if T[-1][-1] != 0:
        # infeasible; recover Farkas multipliers from the phase-1 duals
        yrow = T[-1]
        lam = []
        for i in range(m):
            if i in art_of_row:
                y = Fraction(1) - yrow[art_of_row[i]]
            else:
                slack_col = nfree + (i - len(eqs))
                y = -yrow[slack_col]
            if flips[i]:
                y = -y
            lam.append(-y)
        # verify the certificate: sum lam_i row_i = 0, lam . rhs < 0,
        # lam >= 0 on inequality rows
        allrows = eqs + ineqs
        comb = [sum(lam[i] * allrows[i][0][j] for i in range(m)) for j in range(n)]
        combrhs = sum(lam[i] * allrows[i][1] for i in range(m))
        ok = all(x == 0 for x in comb) and combrhs < 0
        ok = ok and all(lam[len(eqs) + s] >= 0 for s in range(len(ineqs)))
        return LPInfeasible(tuple(lam) if ok else None)

    # drive artificials out of the basis, dropping redundant rows
    art_cols = set(art_of_row.values())
    drop = []
    for i in range(m):
        if basis[i] in art_cols:
            piv = next((j for j in range(ncols) if T[i][j] != 0), None)
            if piv is None:
                drop.append(i)
            else:
                _pivot(T, basis, i, piv)
    for i in sorted(drop, reverse=True):
        del T[i]
        del basis[i]
    mm = len(T) - 1

    # phase 2: minimize -obj . (y+ - y-); strip artificial columns
    T = [row[:ncols] + [row[-1]] for row in T[:-1]]
    cost = [Fraction(0)] * (ncols + 1)
    for k in range(n):
        cost[k] = -obj[k]
        cost[n + k] = obj[k]
    for i in range(mm):
        if cost[basis[i]] != 0:
            f = cost[basis[i]]
            cost = [c - f * x for c, x in zip(cost, T[i])]
    T.append(cost)
    status = _run_simplex(T, basis, ncols)

    def current_point():
        x = [Fraction(0)] * ncols
        for i in range(mm):
            x[basis[i]] = T[i][-1]
        return tuple(x[k] - x[n + k] for k in range(n))

    if status == "optimal":
        pt = current_point()
        value = sum(o * x for o, x in zip(obj, pt))
        return LPOptimal(value, pt)
    _, enter = status
    d = [Fraction(0)] * ncols
    d[enter] = Fraction(1)
    for i in range(mm):
        d[basis[i]] = -T[i][enter]
    ray = tuple(d[k] - d[n + k] for k in range(n))
    return LPUnbounded(ray, current_point())


def is_empty(P: Polyhedron) -> bool:
    res = lp_solve([0] * P.rank, P)
    return isinstance(res, LPInfeasible)


@functools.lru_cache(maxsize=None)
def _implicit_equality_flags(P: Polyhedron):
    """For each inequality, whether it holds with equality on all of P."""
    flags = []
    for row, rhs in P.inequalities:
        res = lp_solve(row, P, sense="min")
        flags.append(isinstance(res, LPOptimal) and res.value == rhs)
    return tuple(flags)


@functools.lru_cache(maxsize=None)
def affine_hull_rows(P: Polyhedron):
    """Independent integer rows spanning the normal space of aff(P)."""
    rows = [row for row, _ in P.equalities]
    flags = _implicit_equality_flags(P)
    rows += [row for (row, _), f in zip(P.inequalities, flags) if f]
    keep = []
    for row in rows:
        if rank_of_rows(keep + [row]) > len(keep):
            keep.append(row)
    return tuple(keep)


@functools.lru_cache(maxsize=None)
def dimension(P: Polyhedron) -> int:
    """Dimension of P; -1 when empty."""
    if is_empty(P):
        return -1
    return P.rank - len(affine_hull_rows(P))


def relative_interior_point(P: Polyhedron):
    """A rational point in the relative interior of nonempty P."""
    flags = _implicit_equality_flags(P)
    strict = [c for c, f in zip(P.inequalities, flags) if not f]
    n = P.rank
    # variables (v, t): maximize t with row.v + t <= rhs on non-implicit rows
    eqs = [(list(row) + [0], rhs) for row, rhs in P.equalities]
    eqs += [(list(row) + [0], rhs) for (row, rhs), f in zip(P.inequalities, flags) if f]
    ineqs = [(list(row) + [1], rhs) for row, rhs in strict]
    ineqs.append(([0] * n + [1], Fraction(1)))
    ext = polyhedron(n + 1, eqs, ineqs)
    res = lp_solve([0] * n + [1], ext)
    if isinstance(res, LPInfeasible):
        raise InternalInvariantError("relative interior of empty polyhedron")
    if isinstance(res, LPUnbounded):
        raise InternalInvariantError("interior slack is capped, cannot be unbounded")
    if strict and res.value <= 0:
        raise InternalInvariantError("no relative interior slack found")
    return res.point[:n]


def poly_contains(P: Polyhedron, Q: Polyhedron) -> bool:
    """Whether Q is a subset of P, decided by LP over Q per constraint of P."""
    if P.rank != Q.rank:
        raise DimensionMismatch("rank mismatch")
    if is_empty(Q):
        return True
    for row, rhs in P.equalities:
        hi = lp_solve(row, Q, "max")
        if not (isinstance(hi, LPOptimal) and hi.value == rhs):
            return False
        lo = lp_solve(row, Q, "min")
        if not (isinstance(lo, LPOptimal) and lo.value == rhs):
            return False
    for row, rhs in P.inequalities:
        hi = lp_solve(row, Q, "max")
        if not (isinstance(hi, LPOptimal) and hi.value <= rhs):
            return False
    return True


def poly_equal(P: Polyhedron, Q: Polyhedron) -> bool:
    return poly_contains(P, Q) and poly_contains(Q, P)


def remove_redundancy(P: Polyhedron) -> Polyhedron:
    """Drop inequalities implied by the remaining constraints."""
    if is_empty(P):
        return empty_polyhedron(P.rank)
    eqs = list(P.equalities)
    ineqs = list(P.inequalities)
    kept = list(ineqs)
    for con in list(ineqs):
        others = [c for c in kept if c != con]
        test = Polyhedron(P.rank, tuple(eqs), tuple(others))
        res = lp_solve(con[0], test, "max")
        if isinstance(res, LPOptimal) and res.value <= con[1]:
            kept = others
    return polyhedron(P.rank, eqs, kept)


# ---------------------------------------------------------------------------
# projection and preimage


def _eliminate_variable(eqs, ineqs, idx):
    """One elimination step on rational working rows (lists, Fraction rhs)."""
    pivot = None
    for i, (row, rhs) in enumerate(eqs):
        if row[idx] != 0:
            pivot = i
            break
    if pivot is not None:
        prow, prhs = eqs[pivot]
        c = prow[idx]

        def subst(con):
            row, rhs = con
            if row[idx] == 0:
                return con
            f = row[idx] / c
            return [a - f * b for a, b in zip(row, prow)], rhs - f * prhs

        eqs = [subst(con) for i, con in enumerate(eqs) if i != pivot]
        ineqs = [subst(con) for con in ineqs]
        return eqs, ineqs
    pos = [(row, rhs) for row, rhs in ineqs if row[idx] > 0]
    neg = [(row, rhs) for row, rhs in ineqs if row[idx] < 0]
    zero = [(row, rhs) for row, rhs in ineqs if row[idx] == 0]
    combos = []
    for prow, prhs in pos:
        for nrow, nrhs in neg:
            a, b = prow[idx], -nrow[idx]
            row = [b * x + a * y for x, y in zip(prow, nrow)]
            combos.append((row, b * prhs + a * nrhs))
    return eqs, zero + combos


def project(P: Polyhedron, phi) -> Polyhedron:
    """Image of P under the surjective integer matrix phi (m x n)."""
    m = len(phi)
    n = P.rank
    if any(len(row) != n for row in phi):
        raise DimensionMismatch("projection matrix shape mismatch")
    if rank_of_rows(phi) != m:
        raise RankDeficient("projection matrix must have full row rank")
    # variables (w, v) with w = phi v; eliminate all of v
    eqs = []
    for i in range(m):
        row = [Fraction(0)] * (m + n)
        row[i] = Fraction(1)
        for j in range(n):
            row[m + j] = Fraction(-phi[i][j])
        eqs.append((row, Fraction(0)))
    for row, rhs in P.equalities:
        eqs.append(([Fraction(0)] * m + [Fraction(x) for x in row], Fraction(rhs)))
    ineqs = [
        ([Fraction(0)] * m + [Fraction(x) for x in row], Fraction(rhs))
        for row, rhs in P.inequalities
    ]
    for j in range(n):
        eqs, ineqs = _eliminate_variable(eqs, ineqs, m + j)
        # keep rows primitive between steps to stop coefficient growth
        new_eqs = []
        for r, b in eqs:
            c = _canon_constraint(r, b, True)
            if c == _INFEASIBLE_MARK:
                return empty_polyhedron(m)
            if c is not None:
                new_eqs.append(([Fraction(x) for x in c[0]], c[1]))
        new_ineqs = set()
        for r, b in ineqs:
            c = _canon_constraint(r, b, False)
            if c == _INFEASIBLE_MARK:
                return empty_polyhedron(m)
            if c is not None:
                new_ineqs.add((c[0], c[1]))
        eqs = new_eqs
        ineqs = [
            ([Fraction(x) for x in r], b)
            for r, b in sorted(
                new_ineqs, key=lambda c: (c[0], (c[1].numerator, c[1].denominator))
            )
        ]
    out = polyhedron(
        m,
        [([x for x in row[:m]], rhs) for row, rhs in eqs],
        [([x for x in row[:m]], rhs) for row, rhs in ineqs],
    )
    return remove_redundancy(out)


def preimage(P: Polyhedron, phi) -> Polyhedron:
    """{v : phi v in P} for an integer matrix phi (m x n), P in R^m."""
    m = len(phi)
    if P.rank != m:
        raise DimensionMismatch("preimage matrix shape mismatch")
    n = len(phi[0]) if m else 0
    comp = lambda row: [sum(row[i] * phi[i][j] for i in range(m)) for j in range(n)]
    return polyhedron(
        n,
        [(comp(row), rhs) for row, rhs in P.equalities],
        [(comp(row), rhs) for row, rhs in P.inequalities],
    )


def from_generators(rank, points, rays=(), lines=()):
    """Polyhedron conv(points) + cone(rays) + span(lines), via projection."""
    points = [list(map(Fraction, p)) for p in points]
    rays = [list(map(Fraction, r)) for r in rays]
    lines = [list(map(Fraction, l)) for l in lines]
    if not points:
        raise ValueError("need at least one point")
    np_, nr, nl = len(points), len(rays), len(lines)
    total = rank + np_ + nr + nl
    eqs = []
    for c in range(rank):
        row = [Fraction(0)] * total
        row[c] = Fraction(1)
        for k, p in enumerate(points):
            row[rank + k] = -p[c]
        for k, r in enumerate(rays):
            row[rank + np_ + k] = -r[c]
        for k, l in enumerate(lines):
            row[rank + np_ + nr + k] = -l[c]
        eqs.append((row, Fraction(0)))
    mu = [Fraction(0)] * total
    for k in range(np_):
        mu[rank + k] = Fraction(1)
    eqs.append((mu, Fraction(1)))
    ineqs = []
    for k in range(np_ + nr):
        row = [Fraction(0)] * total
        row[rank + k] = Fraction(-1)
        ineqs.append((row, Fraction(0)))
    big = polyhedron(total, eqs, ineqs)
    eye = [[1 if j == i else 0 for j in range(total)] for i in range(rank)]
    return project(big, eye)


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class Cell:
    """A polyhedron with optional corner-locus labels: the set of term
    indices achieving the minimum on it, and its lattice multiplicity."""

    polyhedron: Polyhedron
    tie_set: frozenset | None = None
    multiplicity: int | None = None

    def sort_key(self):
        tie = tuple(sorted(self.tie_set)) if self.tie_set is not None else ()
        return (tie, self.polyhedron.sort_key())


@dataclass(frozen=True)
class PolyhedralComplex:
    rank: int
    cells: tuple


def make_complex(rank, cells) -> PolyhedralComplex:
    cells = tuple(sorted(cells, key=lambda c: c.sort_key()))
    for c in cells:
        if c.polyhedron.rank != rank:
            raise DimensionMismatch("cell rank mismatch")
    return PolyhedralComplex(rank, cells)


def complex_membership(C: PolyhedralComplex, v):
    """Index of the first cell containing v, or None."""
    v = tuple(Fraction(x) for x in v)
    if len(v) != C.rank:
        raise DimensionMismatch("point rank mismatch")
    for i, cell in enumerate(C.cells):
        if contains_point(cell.polyhedron, v):
            return i
    return None


def translate_complex(C: PolyhedralComplex, w) -> PolyhedralComplex:
    return make_complex(
        C.rank,
        [Cell(translate(c.polyhedron, w), c.tie_set, c.multiplicity) for c in C.cells],
    )


def covered_by(P: Polyhedron, polys) -> bool:
    """Whether P is contained in the union of the given polyhedra.

    If no single piece contains P, split P along a constraint hyperplane of a
    piece overlapping it full-dimensionally and recurse.  A hyperplane can
    properly split any chain at most once, so this terminates; if the union
    covers P, some piece always overlaps full-dimensionally.
    """
    if is_empty(P):
        return True
    for Q in polys:
        if poly_contains(Q, P):
            return True
    dP = dimension(P)
    for Q in polys:
        if dimension(intersect(P, Q)) != dP:
            continue
        for row, rhs, _ in Q.constraints():
            hi = lp_solve(row, P, "max")
            hi_exceeds = isinstance(hi, LPUnbounded) or hi.value > rhs
            if not hi_exceeds:
                continue
            lo = lp_solve(row, P, "min")
            lo_below = isinstance(lo, LPUnbounded) or lo.value < rhs
            if not lo_below:
                continue
            P1 = intersect(P, polyhedron(P.rank, (), [(row, rhs)]))
            P2 = intersect(P, polyhedron(P.rank, (), [(tuple(-x for x in row), -rhs)]))
            return covered_by(P1, polys) and covered_by(P2, polys)
        # a full-dimensional overlap with no proper split means P lies in Q
        return True
    return False


def complexes_equal(C1: PolyhedralComplex, C2: PolyhedralComplex) -> bool:
    """Set equality of supports, by double inclusion on cells."""
    if C1.rank != C2.rank:
        return False
    polys1 = [c.polyhedron for c in C1.cells]
    polys2 = [c.polyhedron for c in C2.cells]
    return all(covered_by(P, polys2) for P in polys1) and all(
        covered_by(Q, polys1) for Q in polys2
    )


def prune_to_maximal(polys):
    """Deduplicate and keep inclusion-maximal polyhedra (deterministic)."""
    polys = [P for P in polys if not is_empty(P)]
    uniq = []
    for P in polys:
        if not any(P == Q or poly_equal(P, Q) for Q in uniq):
            uniq.append(P)
    keep = []
    for i, P in enumerate(uniq):
        covered = any(
            poly_contains(Q, P) for j, Q in enumerate(uniq) if j != i and not poly_contains(P, Q)
        )
        if not covered:
            keep.append(P)
    return keep


# ---------------------------------------------------------------------------
# JSON


def _frac_to_str(x: Fraction) -> str:
    return str(x)


def _frac_from_str(s) -> Fraction:
    return Fraction(s)


def polyhedron_to_json(P: Polyhedron) -> dict:
    return {
        "rank": P.rank,
        "equalities": [
            {"row": list(r), "rhs": _frac_to_str(b)} for r, b in P.equalities
        ],
        "inequalities": [
            {"row": list(r), "rhs": _frac_to_str(b)} for r, b in P.inequalities
        ],
    }


def polyhedron_from_json(obj) -> Polyhedron:
    return polyhedron(
        obj["rank"],
        [(tuple(c["row"]), _frac_from_str(c["rhs"])) for c in obj["equalities"]],
        [(tuple(c["row"]), _frac_from_str(c["rhs"])) for c in obj["inequalities"]],
    )


def complex_to_json(C: PolyhedralComplex) -> dict:
    cells = []
    for c in C.cells:
        d = polyhedron_to_json(c.polyhedron)
        d["tie_set"] = sorted(c.tie_set) if c.tie_set is not None else None
        d["multiplicity"] = c.multiplicity
        cells.append(d)
    return {"rank": C.rank, "cells": cells}


def complex_from_json(obj) -> PolyhedralComplex:
    cells = []
    for d in obj["cells"]:
        tie = frozenset(d["tie_set"]) if d.get("tie_set") is not None else None
        cells.append(Cell(polyhedron_from_json(d), tie, d.get("multiplicity")))
    return make_complex(obj["rank"], cells)
