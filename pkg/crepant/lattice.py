"""
Planar lattice helpers
Exact integer primitives shared by the cone and polygon code
"""
import math
from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .errors import InconsistencyError, InvalidInputError

Vector = Tuple[int, int]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def cross(o: Sequence[int], a: Sequence[int], b: Sequence[int]) -> int:
    """Twice the signed area of the triangle (o, a, b); positive when counter-clockwise"""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def combine(a: int, u: Sequence[int], b: int, v: Sequence[int]) -> Vector:
    """a*u + b*v"""
    return (a * u[0] + b * v[0], a * u[1] + b * v[1])


def is_primitive(v: Sequence[int]) -> bool:
    return math.gcd(v[0], v[1]) == 1


def solve2(columns: Tuple[Sequence[int], Sequence[int]], v: Sequence[int]) -> Vector:
    """Integer coordinates of v in the basis given by two columns"""
    b1, b2 = columns
    d = det2(b1, b2)
    if d == 0:
        raise InvalidInputError("degenerate basis")
    x_num = det2(v, b2)
    y_num = det2(b1, v)
    if x_num % d or y_num % d:
        raise InvalidInputError(f"{tuple(v)} is not in the lattice spanned by {tuple(b1)}, {tuple(b2)}")
    return x_num // d, y_num // d


def lattice_basis(generators: Sequence[Sequence[int]]) -> Tuple[Vector, Vector]:
    """
    Basis (as two column vectors) of the rank-2 lattice spanned by the generators.

    Uses the Hermite normal form; the result is checked against the gcd of all
    2x2 minors, which is the index of the spanned lattice.
    """
    gens = [tuple(int(c) for c in g) for g in generators]
    index = reduce(math.gcd, (abs(det2(u, v)) for i, u in enumerate(gens) for v in gens[i + 1:]), 0)
    if index == 0:
        raise InvalidInputError("generators do not span a rank-2 lattice")

    hnf = hermite_normal_form(Matrix([[g[0] for g in gens], [g[1] for g in gens]]))
    cols = [(int(hnf[0, j]), int(hnf[1, j])) for j in range(hnf.cols)]
    cols = [c for c in cols if c != (0, 0)]
    if len(cols) != 2 or abs(det2(cols[0], cols[1])) != index:
        raise InconsistencyError(f"Hermite normal form {cols} does not match lattice index {index}")
    basis = (cols[0], cols[1])
    for g in gens:
        solve2(basis, g)
    return basis


def convex_hull(points: Sequence[Sequence[int]]) -> List[Vector]:
    """Hull vertices in counter-clockwise order, collinear points dropped (monotone chain)"""
    pts = sorted(set((int(p[0]), int(p[1])) for p in points))
    if len(pts) <= 2:
        return pts
    lower: List[Vector] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Vector] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def segment_points(u: Sequence[int], v: Sequence[int]) -> List[Vector]:
    """Lattice points on the segment [u, v], from u up to but excluding v"""
    dx, dy = v[0] - u[0], v[1] - u[1]
    g = math.gcd(dx, dy)
    if g == 0:
        return []
    return [(u[0] + k * dx // g, u[1] + k * dy // g) for k in range(g)]


def boundary_cycle(vertices: Sequence[Vector]) -> List[Vector]:
    """All lattice points on the boundary of a lattice polygon, in the vertices' cyclic order"""
    cycle: List[Vector] = []
    n = len(vertices)
    for i in range(n):
        cycle.extend(segment_points(vertices[i], vertices[(i + 1) % n]))
    return cycle


def polygon_area(vertices: Sequence[Vector]) -> Fraction:
    """Euclidean area by the shoelace formula"""
    n = len(vertices)
    twice = sum(det2(vertices[i], vertices[(i + 1) % n]) for i in range(n))
    return Fraction(abs(twice), 2)
