"""Halfspace disjointness decisions and the disjointness trichotomy.

An open halfspace is the Minkowski sum of a rational linear boundary space
and an open half line.  Nonarchimedean disjointness from a complex is decided
exactly by LP cell by cell (the open end is honored: touching at t = 0 counts
as disjoint).  For relative-interior directions of vertex cones there is a
fast valuation comparison with an explicit crossing witness when it fails.
The trichotomy report combines the nonarchimedean verdicts with archimedean
grid scans and checks the applicable structural conclusion: declared small
image, image defined over the scalars, or a torsion binomial.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .archimedean import (
    INSIDE,
    OUTSIDE,
    lopsided_outside,
    sampled_inside,
    triangle_exact_membership,
)
from .errors import (
    DependentDirection,
    DimensionMismatch,
    MissingImagePresentation,
    MonomialInput,
    ZeroCoordinate,
)
from .lattices import independent_subset, in_rational_span, primitive_vector, quotient_map as _lattice_quotient
from .laurent import LaurentPoly, apply_monomial_map, bad_places, newton_polytope, strict_vertex_direction
from .polyhedral import (
    LPOptimal,
    LPUnbounded,
    PolyhedralComplex,
    intersect,
    lp_solve,
    polyhedron,
)
from .scalars import FIELD_Q, FIELD_QZ, place_to_str
from .tropical import (
    AdelicAmoeba,
    PrevarietySystem,
    contains_zero,
    generic_skeleton,
    tropical_data,
    trop_hypersurface,
)

DISJOINT = "disjoint"
MEETS = "meets"
NOT_RELINT = "not-relint"


@dataclass(frozen=True)
class Halfspace:
    """Open halfspace: span(boundary) + positive multiples of direction."""

    rank: int
    direction: tuple
    boundary: tuple = ()

    def __post_init__(self):
        direction = tuple(int(x) for x in self.direction)
        if len(direction) != self.rank or not any(direction):
            raise DependentDirection("direction must be a nonzero rank-length vector")
        gens = [tuple(int(x) for x in g) for g in self.boundary]
        keep = independent_subset(gens)
        gens = tuple(gens[i] for i in keep)
        if in_rational_span(list(direction), [list(g) for g in gens]):
            raise DependentDirection("direction lies in the boundary span")
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "boundary", gens)

    def codimension(self):
        return self.rank - len(self.boundary)


@dataclass(frozen=True)
class QuotientMap:
    """Split surjection of lattices killing the boundary span."""

    matrix: tuple
    right_inverse: tuple

    @property
    def target_rank(self):
        return len(self.matrix)

    def apply(self, v):
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)


def halfspace_quotient(H: Halfspace) -> QuotientMap:
    phi, rinv = _lattice_quotient([list(g) for g in H.boundary], H.rank)
    return QuotientMap(
        tuple(tuple(r) for r in phi), tuple(tuple(r) for r in rinv)
    )


def halfline_disjoint_fast(f: LaurentPoly, place, v):
    """Valuation comparison for a half line in a vertex cone's interior.

    Returns (DISJOINT, None), (MEETS, witness point on the ray), or
    (NOT_RELINT, None) when the direction ties several exponents and the LP
    path must decide instead.
    """
    if f.nterms < 2:
        raise MonomialInput("need at least two terms")
    v = tuple(Fraction(x) for x in v)
    data = tropical_data(f, place)
    vals = [sum(a * x for a, x in zip(u, v)) for u in data.exponents]
    best = min(vals)
    winners = [i for i, t in enumerate(vals) if t == best]
    if len(winners) != 1:
        return NOT_RELINT, None
    i = winners[0]
    ci = data.shifts[i]
    if all(ci <= cj for cj in data.shifts):
        return DISJOINT, None
    crossing = Fraction(0)
    for j, cj in enumerate(data.shifts):
        if cj < ci:
            c = Fraction(ci - cj, 1) / (vals[j] - vals[i])
            crossing = max(crossing, c)
    witness = tuple(crossing * x for x in v)
    return MEETS, witness


def halfspace_meets_complex(H: Halfspace, C: PolyhedralComplex):
    """First witness point of C in the open halfspace, or None.

    Per cell: maximize t over {x in cell, x = sum(lambda_a g_a) + t v,
    t >= 0}; the cell meets H exactly when the optimum is positive or
    unbounded (optimum zero only touches the closed boundary).
    """
    if H.rank != C.rank:
        raise DimensionMismatch("halfspace/complex rank mismatch")
    n = H.rank
    k = len(H.boundary)
    total = n + k + 1
    obj = [0] * (n + k) + [1]
    for cell in C.cells:
        P = cell.polyhedron
        eqs = []
        for c in range(n):
            row = [0] * total
            row[c] = 1
            for a, g in enumerate(H.boundary):
                row[n + a] = -g[c]
            row[n + k] = -H.direction[c]
            eqs.append((row, Fraction(0)))
        eqs += [(list(r) + [0] * (k + 1), b) for r, b in P.equalities]
        ineqs = [(list(r) + [0] * (k + 1), b) for r, b in P.inequalities]
        tpos = [0] * total
        tpos[n + k] = -1
        ineqs.append((tpos, Fraction(0)))
        ext = polyhedron(total, eqs, ineqs)
        res = lp_solve(obj, ext)
        if isinstance(res, LPUnbounded):
            cap = polyhedron(total, (), [([0] * (n + k) + [1], Fraction(1))])
            res = lp_solve(obj, intersect(ext, cap))
        if isinstance(res, LPOptimal) and res.value > 0:
            return res.point[:n]
    return None


# ---------------------------------------------------------------------------
# archimedean point classification

CERTIFIED_OUTSIDE = "certified-outside"
EVIDENCE_ONLY = "evidence-only"


@dataclass(frozen=True)
class ArchPointVerdict:
    point: tuple
    verdict: str  # certified-outside | meets | evidence-only
    certificate: dict

    def to_json(self):
        return {
            "point": [str(x) for x in self.point],
            "verdict": self.verdict,
            "certificate": self.certificate,
        }


def _witness_json(w):
    return [[x.real, x.imag] for x in w]


def _classify_arch_hypersurface(f, point, trials, tol, rng):
    if f.nterms == 3:
        verdict = triangle_exact_membership(f, point)
        if verdict == OUTSIDE:
            return ArchPointVerdict(point, CERTIFIED_OUTSIDE, {"kind": "triangle"})
        if verdict == INSIDE:
            cert = {"kind": "triangle"}
            w = sampled_inside(f, point, trials=trials, tol=tol, rng=rng)
            if w is not None:
                cert["witness"] = _witness_json(w)
            return ArchPointVerdict(point, MEETS, cert)
    if lopsided_outside(f, point):
        return ArchPointVerdict(point, CERTIFIED_OUTSIDE, {"kind": "lopsided"})
    w = sampled_inside(f, point, trials=trials, tol=tol, rng=rng)
    if w is not None:
        return ArchPointVerdict(point, MEETS, {"kind": "witness", "witness": _witness_json(w)})
    return ArchPointVerdict(point, EVIDENCE_ONLY, {"kind": "undecided"})


def _classify_arch_system(system, point, trials, tol, rng):
    for idx, con in enumerate(system.constraints):
        image = apply_monomial_map(point, con.matrix(system.rank))
        g = con.poly
        if g.nterms == 3 and triangle_exact_membership(g, image) == OUTSIDE:
            return ArchPointVerdict(
                point, CERTIFIED_OUTSIDE, {"kind": "triangle", "constraint": idx}
            )
        if lopsided_outside(g, image):
            return ArchPointVerdict(
                point, CERTIFIED_OUTSIDE, {"kind": "lopsided", "constraint": idx}
            )
    return ArchPointVerdict(point, EVIDENCE_ONLY, {"kind": "no-constraint-certifies"})


def classify_arch_point(source, point, trials=200, tol=1e-9, rng=None):
    point = tuple(Fraction(x) for x in point)
    if isinstance(source, LaurentPoly):
        return _classify_arch_hypersurface(source, point, trials, tol, rng)
    if isinstance(source, PrevarietySystem):
        return _classify_arch_system(source, point, trials, tol, rng)
    raise TypeError("source must be a hypersurface or a prevariety system")


def default_arch_grid(H: Halfspace, count=20):
    """Grid points along the open half line (boundary coefficients zero):
    t = 1/2, 1, ..., count/2 in the ray direction."""
    return [
        tuple(Fraction(i, 2) * x for x in H.direction) for i in range(1, count + 1)
    ]


# ---------------------------------------------------------------------------
# adelic disjointness report


@dataclass(frozen=True)
class PlaceCheck:
    place: str
    disjoint: bool
    witness: tuple | None

    def to_json(self):
        return {
            "place": self.place,
            "verdict": DISJOINT if self.disjoint else MEETS,
            "witness": [str(x) for x in self.witness] if self.witness else None,
        }


@dataclass(frozen=True)
class AdelicReport:
    nonarchimedean: tuple
    archimedean: tuple | None
    overall: str
    archimedean_certified: bool | None

    def to_json(self):
        return {
            "nonarchimedean": [c.to_json() for c in self.nonarchimedean],
            "archimedean": (
                None
                if self.archimedean is None
                else [a.to_json() for a in self.archimedean]
            ),
            "overall": self.overall,
            "archimedean_certified": self.archimedean_certified,
        }


def _source_field(source):
    if isinstance(source, LaurentPoly):
        return source.field
    return source.field()


def adelic_disjoint(
    amoeba: AdelicAmoeba, H: Halfspace, arch_grid=None, trials=200, tol=1e-9, rng=None
) -> AdelicReport:
    """Check the halfspace against the generic and every special complex;
    over Q, additionally scan the archimedean place along the halfspace.

    The overall verdict is disjoint only if every nonarchimedean part is
    disjoint and the archimedean scan (when applicable) found no witness.
    Certification status records whether every scanned point was decided by
    an exact test.
    """
    checks = []
    w = halfspace_meets_complex(H, amoeba.generic)
    checks.append(PlaceCheck("generic", w is None, w))
    for place, C in amoeba.special:
        w = halfspace_meets_complex(H, C)
        checks.append(PlaceCheck(place_to_str(place), w is None, w))
    arch = None
    certified = None
    if amoeba.source is not None and _source_field(amoeba.source) == FIELD_Q:
        if not isinstance(rng, random.Random):
            rng = random.Random(0 if rng is None else rng)
        grid = arch_grid if arch_grid is not None else default_arch_grid(H)
        arch = tuple(
            classify_arch_point(amoeba.source, p, trials=trials, tol=tol, rng=rng)
            for p in grid
        )
        certified = all(a.verdict == CERTIFIED_OUTSIDE for a in arch)
    disjoint = all(c.disjoint for c in checks) and not (
        arch is not None and any(a.verdict == MEETS for a in arch)
    )
    return AdelicReport(tuple(checks), arch, DISJOINT if disjoint else MEETS, certified)


# ---------------------------------------------------------------------------
# structural conclusions


def defined_over_k_test(f: LaurentPoly):
    """Index i such that every coefficient ratio a_j / a_i is a constant, or
    None; constancy for one index implies it for all, so the smallest (0) is
    returned."""
    if f.field != FIELD_QZ:
        raise ValueError("defined-over-scalars test needs coefficients in Q(z)")
    if f.nterms < 2:
        raise MonomialInput("need at least two terms")
    a1 = f.terms[0][1]
    if all((c / a1).is_constant() for _, c in f.terms[1:]):
        return 0
    return None


def torsion_point_test(coords) -> bool:
    """Over Q a point is torsion exactly when every coordinate is 1 or -1
    (valuation zero at every prime and archimedean absolute value one)."""
    out = True
    for x in coords:
        x = Fraction(x)
        if x == 0:
            raise ZeroCoordinate("torsion test needs nonzero coordinates")
        out = out and x in (1, -1)
    return out


def torsion_coset_test(f: LaurentPoly):
    """The defining hyperplane when f is a binomial whose coefficient ratio
    is a root of unity in Q (so the hypersurface is a torsion translate of a
    subtorus), else None."""
    if f.field != FIELD_Q:
        raise ValueError("torsion coset test needs coefficients in Q")
    if f.nterms < 2:
        raise MonomialInput("need at least two terms")
    if f.nterms != 2:
        return None
    (u, a), (wexp, b) = f.terms
    if -b / a not in (1, -1):
        return None
    row = tuple(x - y for x, y in zip(u, wexp))
    return polyhedron(f.rank, [(row, Fraction(0))], ())


# ---------------------------------------------------------------------------
# half-line search and consistency report


def uniform_minimal_vertices(f: LaurentPoly):
    """Vertex indices whose coefficient valuation is minimal at every bad
    place (the candidate apexes for a disjoint open half line)."""
    places = sorted(bad_places(f), key=place_to_str)
    shift_table = [tropical_data(f, p).shifts for p in places]
    np_ = newton_polytope(f)
    out = []
    for i in np_.vertex_indices:
        if all(shifts[i] == min(shifts) for shifts in shift_table):
            out.append(i)
    return out, places, np_


def disjoint_halfline_search(
    f: LaurentPoly, trials=200, tol=1e-9, rng=None, grid_count=20
):
    """Search for an open half line disjoint from every amoeba of f.

    Candidates come from the valuation criterion over all bad places; each
    candidate ray is cross-checked per place, and over Q additionally scanned
    at archimedean grid points, where a verified witness rejects it.  Returns
    (found, rejected, caveat): the accepted candidate as a dict or None, the
    per-candidate rejections, and whether an accepted candidate rests on any
    archimedean point that no exact test decided.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(0 if rng is None else rng)
    candidates, places, np_ = uniform_minimal_vertices(f)
    rejected = []
    for i in candidates:
        direction = strict_vertex_direction(np_.points, i)
        assert direction is not None
        direction = primitive_vector(direction)
        for p in places:
            verdict, witness = halfline_disjoint_fast(f, p, direction)
            if verdict != DISJOINT:
                raise AssertionError("candidate filter and fast path disagree")
        caveat = False
        arch_meet = None
        if f.field == FIELD_Q:
            for t in range(1, grid_count + 1):
                point = tuple(Fraction(t, 2) * x for x in direction)
                res = classify_arch_point(f, point, trials=trials, tol=tol, rng=rng)
                if res.verdict == MEETS:
                    arch_meet = res
                    break
                if res.verdict == EVIDENCE_ONLY:
                    caveat = True
        if arch_meet is not None:
            rejected.append(
                {"vertex": i, "direction": direction, "archimedean": arch_meet}
            )
            continue
        return (
            {"vertex": i, "direction": direction},
            rejected,
            caveat,
        )
    return None, rejected, False


@dataclass(frozen=True)
class EklReport:
    field: str
    halfline: dict | None
    rejected: tuple
    zero_membership: dict | None
    side: str
    archimedean_caveat: bool

    def to_json(self):
        return {
            "field": self.field,
            "halfline": (
                None
                if self.halfline is None
                else {
                    "vertex": self.halfline["vertex"],
                    "direction": list(self.halfline["direction"]),
                }
            ),
            "rejected_candidates": [
                {
                    "vertex": r["vertex"],
                    "direction": list(r["direction"]),
                    "archimedean": r["archimedean"].to_json(),
                }
                for r in self.rejected
            ],
            "zero_membership": self.zero_membership,
            "side": self.side,
            "archimedean_caveat": self.archimedean_caveat,
        }


def ekl_consistency_check(
    f: LaurentPoly, trials=200, tol=1e-9, rng=None, grid_count=20
) -> EklReport:
    """Search for a disjoint open half line; when none exists, verify that
    the generic and every special complex contain the origin."""
    if f.nterms < 2:
        raise MonomialInput("need at least two terms")
    found, rejected, caveat = disjoint_halfline_search(
        f, trials=trials, tol=tol, rng=rng, grid_count=grid_count
    )
    if found is not None:
        return EklReport(f.field, found, tuple(rejected), None, "hypothesis", caveat)
    membership = {"generic": contains_zero(generic_skeleton(f))}
    for p in sorted(bad_places(f), key=place_to_str):
        membership[place_to_str(p)] = contains_zero(trop_hypersurface(f, p))
    side = "conclusion" if all(membership.values()) else "violation"
    return EklReport(f.field, None, tuple(rejected), membership, side, False)


# ---------------------------------------------------------------------------
# the trichotomy report


@dataclass(frozen=True)
class TheoremReport:
    disjointness: AdelicReport
    conclusion_case: int | None
    certificates: tuple
    violation: bool

    def to_json(self):
        return {
            "hypothesis": self.disjointness.to_json(),
            "conclusion_case": self.conclusion_case,
            "certificates": list(self.certificates),
            "violation": self.violation,
        }


def theorem1_report(
    source,
    H: Halfspace,
    image_hypersurface: LaurentPoly | None = None,
    declared_codim_gt_one: bool = False,
    arch_grid=None,
    trials=200,
    tol=1e-9,
    rng=None,
) -> TheoremReport:
    """Decide disjointness and verify the applicable structural conclusion.

    The source is a hypersurface (boundary-free halfspace; the quotient is
    the identity) or a prevariety system, in which case the hypersurface
    image under the boundary quotient must be supplied, or its codimension
    declared to exceed one (the declaration is echoed, never computed).
    Violation is flagged when certified disjointness holds but no conclusion
    checks out, which would falsify the implementation.
    """
    from .tropical import adelic_amoeba, adelic_amoeba_of_system

    if image_hypersurface is not None and declared_codim_gt_one:
        raise ValueError("supply an image hypersurface or a declaration, not both")
    if isinstance(source, LaurentPoly):
        amoeba = adelic_amoeba(source)
    elif isinstance(source, PrevarietySystem):
        amoeba = adelic_amoeba_of_system(source)
    else:
        raise TypeError("source must be a hypersurface or a prevariety system")
    report = adelic_disjoint(amoeba, H, arch_grid=arch_grid, trials=trials, tol=tol, rng=rng)
    if report.overall != DISJOINT:
        return TheoremReport(report, None, (), False)

    field = _source_field(source)
    if declared_codim_gt_one:
        return TheoremReport(
            report, 1, ({"kind": "declared-codimension-greater-than-one"},), False
        )
    if isinstance(source, LaurentPoly):
        if H.boundary:
            raise MissingImagePresentation(
                "a boundary quotient needs the image hypersurface or a declaration"
            )
        image = source
    else:
        if image_hypersurface is None:
            raise MissingImagePresentation(
                "prevariety sources need the image hypersurface or a declaration"
            )
        image = image_hypersurface
        qm = halfspace_quotient(H)
        if image.rank != qm.target_rank:
            raise DimensionMismatch(
                f"image hypersurface rank {image.rank} != quotient rank {qm.target_rank}"
            )
    certified = field == FIELD_QZ or report.archimedean_certified is True
    if field == FIELD_QZ:
        idx = defined_over_k_test(image)
        if idx is not None:
            return TheoremReport(
                report, 2, ({"kind": "defined-over-scalars", "index": idx},), False
            )
    else:
        hyper = torsion_coset_test(image)
        if hyper is not None:
            from .polyhedral import polyhedron_to_json

            return TheoremReport(
                report,
                3,
                ({"kind": "torsion-coset", "hyperplane": polyhedron_to_json(hyper)},),
                False,
            )
    return TheoremReport(report, None, (), certified)
