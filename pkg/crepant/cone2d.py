"""
Two-dimensional cones
(p,q) normal form, socius, duality, Kleinian vertices and Hilbert bases
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cfrac import convergents, negreg_expand, regular_expand, xgcd
from .errors import InvalidInputError
from .lattice import Vector, combine, det2, is_primitive, solve2

logger = logging.getLogger(__name__)

IDENTITY: Tuple[Vector, Vector] = ((1, 0), (0, 1))


@dataclass(frozen=True)
class PqCone:
    """
    A (p,q)-cone: generated by y1 and p*y1 + q*y2 for an adapted basis (y1, y2)
    of the lattice.

    `basis` holds y1, y2 as ambient column vectors and `lattice` a basis of the
    lattice the cone lives in (the standard lattice unless a sublattice was given).
    """
    p: int
    q: int
    basis: Tuple[Vector, Vector] = IDENTITY
    lattice: Tuple[Vector, Vector] = IDENTITY

    def __post_init__(self):
        if self.q < 1 or not 0 <= self.p < self.q or math.gcd(self.p, self.q) != 1:
            raise InvalidInputError(f"({self.p}, {self.q}) is not a valid (p,q) pair")
        if abs(det2(*self.basis)) != abs(det2(*self.lattice)):
            raise InvalidInputError("adapted basis is not a basis of the lattice")

    @classmethod
    def standard(cls, p: int, q: int) -> "PqCone":
        return cls(p, q)

    @property
    def is_basic(self) -> bool:
        return self.q == 1

    @property
    def generators(self) -> Tuple[Vector, Vector]:
        y1, y2 = self.basis
        return y1, combine(self.p, y1, self.q, y2)

    def to_ambient(self, coords: Sequence[int]) -> Vector:
        """Adapted coordinates -> ambient vector"""
        return combine(coords[0], self.basis[0], coords[1], self.basis[1])

    def to_adapted(self, v: Sequence[int]) -> Vector:
        """Ambient vector -> adapted coordinates"""
        return solve2(self.basis, v)

    def to_dict(self):
        return {
            "p": self.p,
            "q": self.q,
            "basis": [list(b) for b in self.basis],
            "generators": [list(g) for g in self.generators],
        }


@dataclass(frozen=True)
class SupportPolygonPoints:
    """Lattice points u_0..u_{rho+1} on the compact boundary of conv(sigma ∩ N \\ {0})"""
    points: Tuple[Vector, ...]
    vertex_flags: Tuple[bool, ...]
    entries: Tuple[int, ...]

    @property
    def rho(self) -> int:
        return len(self.points) - 2

    @property
    def vertices(self) -> Tuple[Vector, ...]:
        return tuple(u for u, flag in zip(self.points, self.vertex_flags) if flag)


@dataclass(frozen=True)
class KleinianVertices:
    primal: Tuple[Vector, ...]
    dual: Tuple[Vector, ...]
    dual_cone: PqCone


def pq_normal_form(n1: Sequence[int], n2: Sequence[int],
                   lattice: Optional[Tuple[Sequence[int], Sequence[int]]] = None) -> PqCone:
    """Bring pos(n1, n2) into (p,q) normal form w.r.t. the given lattice basis"""
    lat = IDENTITY if lattice is None else (tuple(lattice[0]), tuple(lattice[1]))
    c1 = solve2(lat, n1)
    c2 = solve2(lat, n2)
    if not is_primitive(c1) or not is_primitive(c2):
        raise InvalidInputError(f"generators {tuple(n1)}, {tuple(n2)} are not primitive")
    d = det2(c1, c2)
    if d == 0:
        raise InvalidInputError(f"generators {tuple(n1)}, {tuple(n2)} are parallel")

    _, s, t = xgcd(c1[0], c1[1])
    sign = 1 if d > 0 else -1
    y2 = (sign * -t, sign * s)  # det(c1, y2) == sign
    q = abs(d)
    c = sign * det2(c2, y2)
    p = c % q
    y2 = combine(1, y2, (c - p) // q, c1)

    basis = (tuple(n1), combine(y2[0], lat[0], y2[1], lat[1]))
    logger.debug("normal form of pos(%s, %s): p=%d q=%d", tuple(n1), tuple(n2), p, q)
    return PqCone(p, q, basis=basis, lattice=lat)


def socius(p: int, q: int) -> int:
    """The inverse of p modulo q"""
    if q == 1 and p == 0:
        return 0
    if not 0 < p < q or math.gcd(p, q) != 1:
        raise InvalidInputError(f"socius needs 0 < p < q coprime, got ({p}, {q})")
    return pow(p, -1, q)


def socius_voronoi(p: int, q: int) -> int:
    """Voronoi's closed formula for the socius"""
    if not 0 < p < q or math.gcd(p, q) != 1:
        raise InvalidInputError(f"socius needs 0 < p < q coprime, got ({p}, {q})")
    total = sum((j * q // p) ** 2 for j in range(1, p))
    return (3 - 2 * p + 6 * total) % q


def cones_isomorphic(c1: PqCone, c2: PqCone) -> bool:
    """Germ isomorphism of two 2D cones"""
    if c1.q != c2.q:
        return False
    return c1.p == c2.p or c1.p == socius(c2.p, c2.q)


def dual_cone(c: PqCone) -> PqCone:
    """
    The dual cone in the coordinates dual to the adapted basis of c.

    sigma = pos((1,0), (p,q)) gives sigma^dual = pos((0,1), (q,-p)).
    """
    return pq_normal_form((0, 1), (c.q, -c.p))


def dual_pq(c: PqCone) -> PqCone:
    """(q-p, q) parameters of the dual cone"""
    return dual_cone(c)


def _require_non_basic(c: PqCone) -> None:
    if c.q < 2:
        raise InvalidInputError("basic cone: the compact boundary is a single edge")


def boundary_points(c: PqCone) -> SupportPolygonPoints:
    """Lattice points on the compact boundary, driven by [[b_1..b_rho]] = q/(q-p)"""
    _require_non_basic(c)
    b = negreg_expand(c.q, c.q - c.p)
    table = convergents(b)
    rho = b.length
    points: List[Vector] = []
    for j in range(rho + 2):
        r_prev, s_prev = table.pair(j - 1)
        points.append(c.to_ambient((r_prev - s_prev, r_prev)))
    flags = [True] + [bj != 2 for bj in b.entries] + [True]
    return SupportPolygonPoints(tuple(points), tuple(flags), b.entries)


def kleinian_points(c: PqCone) -> Tuple[Vector, ...]:
    """v_0 = y1, v_1 = y2, v_i = a_{i-1} v_{i-1} + v_{i-2} with q/p = [a_1..a_k]"""
    _require_non_basic(c)
    a = regular_expand(c.q, c.p).entries
    pts: List[Vector] = [(1, 0), (0, 1)]
    for a_i in a:
        pts.append(combine(a_i, pts[-1], 1, pts[-2]))
    return tuple(c.to_ambient(v) for v in pts)


def _even_vertices(pts: Sequence[Vector]) -> Tuple[Vector, ...]:
    k_plus_1 = len(pts) - 1
    chosen = [pts[i] for i in range(0, k_plus_1 + 1, 2)]
    if k_plus_1 % 2:
        chosen.append(pts[k_plus_1])
    return tuple(chosen)


def kleinian_vertices(c: PqCone) -> KleinianVertices:
    """
    Vertices of the compact boundaries of the cone and of its dual.

    The primal vertices are the even-index Kleinian points together with v_{k+1};
    the dual ones come from the same recurrence run on the dual (q-p, q)-cone.
    """
    if c.p == 0:
        raise InvalidInputError("p = 0: the vertices are just the two generators")
    dc = dual_cone(c)
    return KleinianVertices(
        primal=_even_vertices(kleinian_points(c)),
        dual=_even_vertices(kleinian_points(dc)),
        dual_cone=dc,
    )


def hilbert_basis_2d(c: PqCone) -> List[Vector]:
    """Hilbert basis of the cone's lattice points, listed from n1 to n2"""
    if c.q == 1:
        return list(c.generators)
    return list(boundary_points(c).points)
