"""
Junior fans
The junior polygon, its maximal triangulation and the join fan built from it
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Any, List, Optional, Sequence, Tuple

import numpy as np

from .checks import CheckRegistry, FanReport, create_default_registry
from .config import resolve_guard
from .criterion import TwoParamType, decide_two_param
from .errors import GuardExceededError, InconsistencyError, NotResolvableError
from .lattice import Vector, boundary_cycle, convex_hull, cross, polygon_area
from .quotient import ScaledLatticePoint

logger = logging.getLogger(__name__)

Point3 = Tuple[int, int, int]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass
class PolygonQG:
    """
    The junior polygon in planar coordinates (X, Y).

    e_{r-1} sits at (0,0), e_r at (1,0) and the barycentric point at
    ((α+r-2)/(r-2), l/(r-2)). `chain` runs from w over the top to w'.
    """
    type: TwoParamType
    points: List[Vector] = field(default_factory=list)
    vertices: List[Vector] = field(default_factory=list)
    boundary: List[Vector] = field(default_factory=list)
    chain: List[Vector] = field(default_factory=list)
    w: Vector = (0, 0)
    w_prime: Vector = (1, 0)

    @property
    def area(self) -> Fraction:
        return polygon_area(self.vertices)

    @property
    def boundary_count(self) -> int:
        return len(self.boundary)

    @property
    def interior(self) -> List[Vector]:
        on_boundary = set(self.boundary)
        return [p for p in self.points if p not in on_boundary]

    @property
    def rho(self) -> int:
        return len(self.chain) - 2 if self.chain else 0

    @property
    def mu(self) -> Fraction:
        return self.type.mu

    @property
    def v_g(self) -> Tuple[Fraction, Fraction]:
        t = self.type
        return Fraction(t.alpha + t.m, t.m), Fraction(t.l, t.m)

    @property
    def eta(self) -> Point3:
        """The primitive point of N̄_G on the barycentric ray"""
        t = self.type
        return (-t.beta // t.g, -t.alpha // t.g, t.l // t.g)

    def lift(self, pt: Sequence[int]) -> ScaledLatticePoint:
        """Planar point -> age-1 point of N_G (scaled by l)"""
        t = self.type
        x, y = pt
        coords = (y,) * t.m + (y * t.alpha + t.l * (1 - x), y * t.beta + t.l * (x - y))
        return ScaledLatticePoint(coords, t.l, element=y % t.l)

    @staticmethod
    def phi(pt: Sequence[int]) -> Point3:
        """Planar point -> N̄_G coordinates, with e_r = (1,0,0) and e_{r-1} = (0,1,0)"""
        x, y = pt
        return (x - y, 1 - x, y)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.type.label,
            "vertices": [list(v) for v in self.vertices],
            "points": len(self.points),
            "boundary": self.boundary_count,
            "area": f"{self.area.numerator}/{self.area.denominator}",
            "chain": [list(c) for c in self.chain],
            "rho": self.rho,
        }


@dataclass
class Triangulation:
    points: List[Vector]
    triangles: List[Tuple[int, int, int]]


@dataclass
class JuniorFan:
    """Maximal cones as index tuples into the generator list; coordinates scaled by l"""
    type: TwoParamType
    generators: List[ScaledLatticePoint] = field(default_factory=list)
    cones: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def scale(self) -> int:
        return self.type.l

    @property
    def dimension(self) -> int:
        return self.type.r

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.type.label,
            "scale": self.scale,
            "generators": [list(g.coords) for g in self.generators],
            "cones": [list(c) for c in self.cones],
        }


def build_polygon(t: TwoParamType) -> PolygonQG:
    """Enumerate every lattice point of the junior triangle of the three-dimensional sublattice"""
    m, l, alpha, beta = t.m, t.l, t.alpha, t.beta
    points: List[Vector] = []
    for y in range(l // m + 1):
        lo = _ceil_div(y * (l - beta), l)
        hi = 1 + (y * alpha) // l
        points.extend((x, y) for x in range(lo, hi + 1))

    vertices = convex_hull(points)
    boundary = boundary_cycle(vertices)
    t1, t2 = math.gcd(alpha, l), math.gcd(beta, l)
    w = ((t2 // m) * (alpha + m) // t2, (t2 // m) * l // t2)
    w_prime = (1 + (t1 // m) * alpha // t1, (t1 // m) * l // t1)

    chain: List[Vector] = []
    if t.mu != 1:
        start, stop = boundary.index(w_prime), boundary.index(w)
        n = len(boundary)
        chain = [boundary[(start + k) % n] for k in range((stop - start) % n + 1)]
        chain.reverse()
    logger.debug("%s: polygon with %d points, %d vertices, chain %s", t.label, len(points), len(vertices), chain)
    return PolygonQG(t, points, vertices, boundary, chain, w, w_prime)


def _locate(tri: Sequence[Vector], p: Vector) -> Optional[List[int]]:
    """None if p is outside the CCW triangle, else the edges (0,1,2) p lies on"""
    signs = [cross(tri[k], tri[(k + 1) % 3], p) for k in range(3)]
    if any(s < 0 for s in signs):
        return None
    return [k for k in range(3) if signs[k] == 0]


def triangulate_polygon_max(poly: PolygonQG) -> Triangulation:
    """
    Triangulation using every lattice point as a vertex.

    Starts from a fan over the hull vertices and inserts the remaining points in
    sorted order, splitting the triangle containing a point into three or the
    triangles sharing its edge into two.
    """
    pts = sorted(poly.points)
    index = {p: i for i, p in enumerate(pts)}
    hull = poly.vertices
    triangles: List[Tuple[int, int, int]] = [
        (index[hull[0]], index[hull[i]], index[hull[i + 1]]) for i in range(1, len(hull) - 1)
    ]
    placed = set(hull)

    for p in pts:
        if p in placed:
            continue
        pi = index[p]
        updated: List[Tuple[int, int, int]] = []
        hit = False
        for tri in triangles:
            corners = [pts[i] for i in tri]
            edges = _locate(corners, p)
            if edges is None:
                updated.append(tri)
                continue
            hit = True
            for k in range(3):
                if k in edges:
                    continue
                updated.append((tri[k], tri[(k + 1) % 3], pi))
        if not hit:
            raise InconsistencyError(f"lattice point {p} lies outside the polygon")
        triangles = updated
        placed.add(p)

    for tri in triangles:
        a, b, c = (pts[i] for i in tri)
        if cross(a, b, c) != 1:
            raise InconsistencyError(f"triangle {a}, {b}, {c} is not unimodular")
    logger.debug("%s: %d triangles", poly.type.label, len(triangles))
    return Triangulation(pts, triangles)


def build_join_fan(t: TwoParamType, triangulation: Optional[Triangulation] = None) -> JuniorFan:
    """Triangles joined with (r-3)-subsets of e_1..e_{r-2}, plus the chain segments joined with all of them"""
    decision = decide_two_param(t)
    if not decision.resolvable:
        raise NotResolvableError(f"{t.label} admits no crepant resolution ({decision.branch.value})")

    poly = build_polygon(t)
    tri = triangulation or triangulate_polygon_max(poly)
    m = t.m
    units = [ScaledLatticePoint(tuple(t.l if k == i else 0 for k in range(t.r)), t.l) for i in range(m)]
    generators = units + [poly.lift(p) for p in tri.points]
    offset = {p: m + i for i, p in enumerate(tri.points)}

    cones: List[Tuple[int, ...]] = []
    for a, b, c in tri.triangles:
        for subset in combinations(range(m), m - 1):
            cones.append(subset + (m + a, m + b, m + c))
    if t.mu != 1:
        for u, v in zip(poly.chain, poly.chain[1:]):
            cones.append(tuple(range(m)) + (offset[u], offset[v]))
    logger.debug("%s: join fan with %d generators and %d cones", t.label, len(generators), len(cones))
    return JuniorFan(t, generators, cones)


def verify_fan(t: TwoParamType, fan: JuniorFan, registry: Optional[CheckRegistry] = None) -> FanReport:
    """Run every registered check against the fan"""
    registry = registry or create_default_registry()
    return registry.run_all(fan, label=t.label)


def central_hilbert_basis(t: TwoParamType, guard: Optional[int] = None) -> List[Point3]:
    """
    Hilbert basis of pos(e_r, e_{r-1}, η) in N̄_G = Z^3 by brute force over the
    closed fundamental parallelepiped.
    """
    b1, a1, l1 = (t.beta // t.g, t.alpha // t.g, t.l // t.g)
    limit = resolve_guard(guard)
    needed = (4 * (l1 + 1)) ** 2
    if needed > limit:
        raise GuardExceededError(needed, limit, what=f"central Hilbert basis of {t.label}")

    cands: List[Point3] = []
    for k in range(l1 + 1):
        xs = range(_ceil_div(-k * b1, l1), (l1 - k * b1) // l1 + 1)
        ys = range(_ceil_div(-k * a1, l1), (l1 - k * a1) // l1 + 1)
        cands.extend((x, y, k) for x in xs for y in ys if (x, y, k) != (0, 0, 0))

    v = np.asarray(cands, dtype=np.int64)
    # cone coordinates scaled by l1: (l1*x + z*b1, l1*y + z*a1, z)
    s = np.stack([l1 * v[:, 0] + v[:, 2] * b1, l1 * v[:, 1] + v[:, 2] * a1, v[:, 2]], axis=1)
    below = np.all(s[None, :, :] <= s[:, None, :], axis=2)
    np.fill_diagonal(below, False)
    reducible = below.any(axis=1)
    return sorted(tuple(int(c) for c in cands[i]) for i in range(len(cands)) if not reducible[i])


def central_hilbert_matches(t: TwoParamType, guard: Optional[int] = None) -> bool:
    """Whether the central Hilbert basis is {η} together with the polygon's lattice points"""
    poly = build_polygon(t)
    expected = {poly.eta} | {poly.phi(p) for p in poly.points}
    return set(central_hilbert_basis(t, guard=guard)) == expected
