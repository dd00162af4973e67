"""SVG rendering of rank-2 complexes and archimedean membership scans.

Everything is drawn by clipping cells to a square viewport; rationals are
converted to floats at render time only.  Output is deterministic text.
"""
from __future__ import annotations

from fractions import Fraction

from .archimedean import (
    lopsided_outside,
    triangle_applicable,
    triangle_exact_membership,
)
from .errors import DimensionMismatch
from .polyhedral import (
    LPOptimal,
    PolyhedralComplex,
    affine_hull_rows,
    contains_point,
    dimension,
    intersect,
    is_empty,
    lp_solve,
    polyhedron,
    relative_interior_point,
)


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _box(rank, extent):
    e = Fraction(extent)
    ineqs = []
    for c in range(rank):
        row = [0] * rank
        row[c] = 1
        ineqs.append((tuple(row), e))
        row = [0] * rank
        row[c] = -1
        ineqs.append((tuple(row), e))
    return polyhedron(rank, (), ineqs)


def _segment_endpoints(P):
    rows = affine_hull_rows(P)
    assert len(rows) == 1
    a, b = rows[0]
    direction = (-b, a)
    lo = lp_solve(direction, P, "min")
    hi = lp_solve(direction, P, "max")
    assert isinstance(lo, LPOptimal) and isinstance(hi, LPOptimal)
    return lo.point, hi.point


def _polygon_vertices(P):
    cons = [(row, rhs) for row, rhs, _ in P.constraints()]
    pts = set()
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            (a1, b1), (a2, b2) = cons[i], cons[j]
            det = a1[0] * a2[1] - a1[1] * a2[0]
            if det == 0:
                continue
            x = Fraction(b1 * a2[1] - b2 * a1[1], det)
            y = Fraction(a1[0] * b2 - a2[0] * b1, det)
            if contains_point(P, (x, y)):
                pts.add((x, y))
    pts = list(pts)
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    import math

    pts.sort(key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))
    return pts


def render_complex_svg(C: PolyhedralComplex, extent=4, size=480) -> str:
    """Cells drawn in black on a light grid; extent is the half-width of the
    viewport in lattice units."""
    if C.rank != 2:
        raise DimensionMismatch("can only draw rank-2 complexes")
    extent = Fraction(extent)
    scale = size / (2 * float(extent))

    def sx(x):
        return (float(x) + float(extent)) * scale

    def sy(y):
        return (float(extent) - float(y)) * scale

    box = _box(2, extent)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{_fmt(sx(-extent))}" y1="{_fmt(sy(0))}" x2="{_fmt(sx(extent))}" '
        f'y2="{_fmt(sy(0))}" stroke="#dddddd" stroke-width="1"/>',
        f'<line x1="{_fmt(sx(0))}" y1="{_fmt(sy(-extent))}" x2="{_fmt(sx(0))}" '
        f'y2="{_fmt(sy(extent))}" stroke="#dddddd" stroke-width="1"/>',
    ]
    for cell in C.cells:
        P = intersect(cell.polyhedron, box)
        if is_empty(P):
            continue
        d = dimension(P)
        if d == 0:
            p = relative_interior_point(P)
            parts.append(
                f'<circle cx="{_fmt(sx(p[0]))}" cy="{_fmt(sy(p[1]))}" r="3" fill="black"/>'
            )
        elif d == 1:
            p, q = _segment_endpoints(P)
            parts.append(
                f'<line x1="{_fmt(sx(p[0]))}" y1="{_fmt(sy(p[1]))}" '
                f'x2="{_fmt(sx(q[0]))}" y2="{_fmt(sy(q[1]))}" '
                f'stroke="black" stroke-width="2"/>'
            )
        else:
            pts = _polygon_vertices(P)
            path = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)
            parts.append(f'<polygon points="{path}" fill="#777777" opacity="0.6"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_arch_scan_svg(f, center=(0, 0), radius=3, grid_n=41, size=480) -> str:
    """Membership heat scan at the archimedean place over a square grid.

    Certified-inside points (trinomial test) are dark, certified-outside
    white, undecided gray.
    """
    if f.rank != 2:
        raise DimensionMismatch("can only scan rank-2 hypersurfaces")
    cx, cy = (Fraction(c) for c in center)
    radius = Fraction(radius)
    tri = f.nterms == 3 and triangle_applicable(f)
    cellpx = size / grid_n
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i in range(grid_n):
        for j in range(grid_n):
            vx = cx - radius + 2 * radius * Fraction(i, grid_n - 1)
            vy = cy - radius + 2 * radius * Fraction(j, grid_n - 1)
            if tri:
                verdict = triangle_exact_membership(f, (vx, vy))
                color = {"inside": "#1f4f8f", "outside": None}.get(verdict, "#bbbbbb")
            else:
                color = None if lopsided_outside(f, (vx, vy)) else "#bbbbbb"
            if color is None:
                continue
            x = i * cellpx
            y = (grid_n - 1 - j) * cellpx
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(cellpx)}" '
                f'height="{_fmt(cellpx)}" fill="{color}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
