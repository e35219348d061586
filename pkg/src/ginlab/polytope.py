"""Exact Newton polyhedra of monomial ideals.

A Newton polyhedron is conv(vertices) + the nonnegative orthant. Facets are
inequalities <a, x> >= b with a >= 0 a primitive integer vector; all
arithmetic is in ``Fraction``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import reduce as _fold
from math import factorial
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import _linalg
from .staircase import MonomialIdeal

__all__ = [
    "Facet",
    "NewtonPolyhedron",
    "newton_polyhedron",
    "halfspace_rep",
    "scale",
    "contains_polyhedron",
    "complement_volume",
    "polytope_volume",
    "simplex_volume",
    "MAX_DIM",
]

MAX_DIM = 6

Point = Tuple[Fraction, ...]


class Facet(NamedTuple):
    normal: Tuple[int, ...]
    rhs: Fraction

    def value(self, x: Sequence) -> Fraction:
        return sum((a * xi for a, xi in zip(self.normal, x)), Fraction(0))

    def satisfied(self, x: Sequence, strict: bool = False) -> bool:
        v = self.value(x)
        return v > self.rhs if strict else v >= self.rhs

    @property
    def is_coordinate(self) -> bool:
        return self.rhs == 0

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "rhs": _fmt(self.rhs)}


def _fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _primitive(a: Sequence[Fraction], b: Fraction) -> Facet:
    den = _fold(math.lcm, (Fraction(x).denominator for x in a), 1)
    ints = [int(Fraction(x) * den) for x in a]
    g = _fold(math.gcd, ints, 0) or 1
    return Facet(tuple(x // g for x in ints), Fraction(b) * den / g)


def _dot(a, x) -> Fraction:
    return sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))


def _facet_sort_key(f: Facet):
    return (not f.is_coordinate, [-x for x in f.normal], f.rhs)


def _facets_of_points(points: Sequence[Point], m: int) -> List[Facet]:
    """All facets of conv(points) + orthant, by exhaustive search.

    A facet with zero normal entries on the coordinate set K is spanned by
    the rays e_k (k in K) and m - |K| of its points; every such choice is
    tried and the resulting hyperplane kept when it is valid for all points.
    """
    if m > MAX_DIM:
        raise ValueError(f"dimension {m} exceeds the cap of {MAX_DIM}")
    found = set()
    for s in range(m):
        for rays in itertools.combinations(range(m), s):
            free = [k for k in range(m) if k not in rays]
            k = len(free)
            # restrict to points distinct on the free coordinates
            proj = sorted({tuple(p[i] for i in free) for p in points})
            for chosen in itertools.combinations(proj, k):
                rows = [list(q) + [Fraction(-1)] for q in chosen]
                ns = _linalg.nullspace(rows, k + 1)
                if len(ns) != 1:
                    continue
                v = ns[0]
                a_free, b = v[:k], v[k]
                if all(x >= 0 for x in a_free):
                    pass
                elif all(x <= 0 for x in a_free):
                    a_free, b = [-x for x in a_free], -b
                else:
                    continue
                if not any(a_free):
                    continue
                a = [Fraction(0)] * m
                for i, x in zip(free, a_free):
                    a[i] = x
                if all(_dot(a, p) >= b for p in points):
                    found.add(_primitive(a, b))
    return sorted(found, key=_facet_sort_key)


class NewtonPolyhedron:
    """conv(vertices) + R^m_{>=0}. Facets are computed on first use and cached."""

    def __init__(self, vertices: Iterable[Sequence], dim: int, facets: Optional[Sequence[Facet]] = None):
        pts = sorted({tuple(Fraction(x) for x in v) for v in vertices})
        if not pts:
            raise ValueError("a Newton polyhedron needs at least one point")
        if any(len(v) != dim for v in pts):
            raise ValueError("vertex dimension mismatch")
        self.dim = dim
        self._facets = list(facets) if facets is not None else None
        if facets is None:
            pts = _extreme_points(pts, self.facets_of(pts, dim), dim)
        self.vertices: Tuple[Point, ...] = tuple(pts)

    @staticmethod
    def facets_of(points, dim):
        return _facets_of_points(points, dim)

    @property
    def facets(self) -> List[Facet]:
        if self._facets is None:
            # assignment is atomic: concurrent readers see None or the full list
            self._facets = _facets_of_points(self.vertices, self.dim)
        return self._facets

    def contains_point(self, x: Sequence, strict: bool = False) -> bool:
        """Membership; ``strict`` tests the interior (strict on non-coordinate facets)."""
        if any(xi < 0 for xi in x):
            return False
        return all(f.satisfied(x, strict and not f.is_coordinate) for f in self.facets)

    def axis_intercepts(self) -> List[Optional[Fraction]]:
        """Smallest t with t*e_i in the polyhedron, None when the axis misses it."""
        out = []
        for i in range(self.dim):
            best = None
            for f in self.facets:
                if f.is_coordinate:
                    continue
                if f.normal[i] == 0:
                    best = None
                    break
                t = f.rhs / f.normal[i]
                best = t if best is None else max(best, t)
            else:
                out.append(best if best is not None else Fraction(0))
                continue
            out.append(None)
        return out

    def to_json(self, halfspace: bool = True) -> dict:
        data = {"dim": self.dim, "vertices": [[_fmt(x) for x in v] for v in self.vertices]}
        if halfspace:
            data["facets"] = [f.to_json() for f in self.facets]
        return data

    def __eq__(self, other):
        if not isinstance(other, NewtonPolyhedron):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __repr__(self):
        return f"NewtonPolyhedron(dim={self.dim}, vertices={[tuple(map(_fmt, v)) for v in self.vertices]})"


def _extreme_points(points: Sequence[Point], facets: Sequence[Facet], m: int) -> List[Point]:
    """Points at which the tight facet normals have full rank."""
    out = []
    for p in points:
        tight = [list(f.normal) for f in facets if f.value(p) == f.rhs]
        if len(tight) >= m and _linalg.rank(tight) == m:
            out.append(p)
    return out


def newton_polyhedron(J: MonomialIdeal) -> NewtonPolyhedron:
    if J.is_zero():
        raise ValueError("the zero ideal has no Newton polyhedron")
    pts = [tuple(Fraction(x) for x in g) for g in J.gens]
    facets = _facets_of_points(pts, J.nvars)
    return NewtonPolyhedron(_extreme_points(pts, facets, J.nvars), J.nvars, facets)


def halfspace_rep(P: NewtonPolyhedron) -> List[Facet]:
    if P.dim > MAX_DIM:
        raise ValueError(f"dimension {P.dim} exceeds the cap of {MAX_DIM}")
    return list(P.facets)


def scale(P: NewtonPolyhedron, t) -> NewtonPolyhedron:
    t = Fraction(t)
    if t <= 0:
        raise ValueError("scale factor must be positive")
    facets = [Facet(f.normal, f.rhs * t) for f in P.facets]
    return NewtonPolyhedron([tuple(x * t for x in v) for v in P.vertices], P.dim, facets)


def contains_polyhedron(inner: NewtonPolyhedron, outer: NewtonPolyhedron) -> bool:
    """inner is a subset of outer (both have the orthant as recession cone)."""
    if inner.dim != outer.dim:
        raise ValueError("dimension mismatch")
    return all(f.satisfied(v) for v in inner.vertices for f in outer.facets)


def simplex_volume(vertices: Sequence[Sequence]) -> Fraction:
    """Volume of the simplex spanned by the origin and r points in R^r."""
    r = len(vertices)
    if r == 0 or any(len(v) != r for v in vertices):
        raise ValueError("need r points in r-space")
    cols = [[Fraction(vertices[j][i]) for j in range(r)] for i in range(r)]
    return abs(_linalg.det(cols)) / factorial(r)


def _affine_rank(pts: Sequence[Point]) -> int:
    if not pts:
        return -1
    base = pts[0]
    return _linalg.rank([[a - b for a, b in zip(p, base)] for p in pts[1:]])


def _polytope_vertices(constraints: Sequence[Tuple[Sequence, Fraction]], m: int) -> List[Point]:
    verts = set()
    for combo in itertools.combinations(constraints, m):
        sol = _linalg.solve([list(a) for a, _ in combo], [b for _, b in combo])
        if sol is None:
            continue
        if all(_dot(a, sol) >= b for a, b in constraints):
            verts.add(tuple(sol))
    return sorted(verts)


def polytope_volume(constraints: Sequence[Tuple[Sequence, Fraction]], m: int) -> Fraction:
    """Exact volume of the bounded polytope {x : <a, x> >= b for all (a, b)}.

    Triangulated by coning from the lowest-indexed vertex of each face over
    the facets of that face that avoid it.
    """
    verts = _polytope_vertices(constraints, m)
    if len(verts) <= m:
        return Fraction(0)
    tight = [frozenset(c for c, (a, b) in enumerate(constraints) if _dot(a, v) == b) for v in verts]
    memo = {}

    def triangulate(face: frozenset, dim: int):
        if dim == 0:
            return [[next(iter(face))]]
        key = face
        if key in memo:
            return memo[key]
        v0 = min(face)
        subfaces = set()
        for c in range(len(constraints)):
            S = frozenset(v for v in face if c in tight[v])
            if not S or S == face or v0 in S or S in subfaces:
                continue
            if _affine_rank([verts[v] for v in sorted(S)]) == dim - 1:
                subfaces.add(S)
        out = []
        for S in sorted(subfaces, key=sorted):
            out.extend([v0] + simplex for simplex in triangulate(S, dim - 1))
        memo[key] = out
        return out

    full = frozenset(range(len(verts)))
    if _affine_rank(verts) < m:
        return Fraction(0)
    total = Fraction(0)
    for simplex in triangulate(full, m):
        base = verts[simplex[0]]
        total += simplex_volume([[a - b for a, b in zip(verts[v], base)] for v in simplex[1:]])
    return total


def complement_volume(P: NewtonPolyhedron) -> Fraction:
    """Volume of the closure of the orthant minus P (bounded case only)."""
    if P.dim > MAX_DIM:
        raise ValueError(f"dimension {P.dim} exceeds the cap of {MAX_DIM}")
    intercepts = P.axis_intercepts()
    if any(t is None for t in intercepts):
        axis = intercepts.index(None) + 1
        raise ValueError(f"complement is unbounded along x{axis}")
    B = max(intercepts)
    if B == 0:
        return Fraction(0)
    m = P.dim
    box = [(tuple(-int(i == j) for j in range(m)), -B) for i in range(m)]
    coords = [(tuple(int(i == j) for j in range(m)), Fraction(0)) for i in range(m)]
    cons = [(f.normal, f.rhs) for f in P.facets if not f.is_coordinate] + coords + box
    return B ** m - polytope_volume(cons, m)
