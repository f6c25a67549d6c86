"""
Ehrhart polynomials and cohomology dimensions
Junior-simplex Ehrhart polynomials from the polygon data, δ-vectors via the transfer matrix
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Any, List, Sequence, Tuple

from sympy import Matrix, Poly, Rational, Symbol, interpolate
from sympy.functions.combinatorial.numbers import stirling

from .criterion import TwoParamType, decide_two_param, one_param_dims, tau_cone_params
from .errors import InconsistencyError, InvalidInputError, NotResolvableError
from .fan import PolygonQG, build_polygon
from .quotient import age_histogram
from .report import format_rational, parse_rational

logger = logging.getLogger(__name__)

_NU = Symbol("nu")


def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class EhrhartPoly:
    """Coefficients a_0 .. a_d of ν ↦ #(νP ∩ N)"""
    coefficients: Tuple[Fraction, ...]

    @property
    def dimension(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def evaluate(self, nu: int) -> Fraction:
        value = Fraction(0)
        for a in reversed(self.coefficients):
            value = value * nu + a
        return value

    @classmethod
    def interpolate(cls, values: Sequence[int], start: int = 1) -> "EhrhartPoly":
        """Exact interpolation through (start, values[0]), (start+1, values[1]), ..."""
        data = [(start + k, int(v)) for k, v in enumerate(values)]
        expr = interpolate(data, _NU)
        coeffs = [_to_fraction(c) for c in reversed(Poly(expr, _NU).all_coeffs())]
        coeffs += [Fraction(0)] * (len(values) - len(coeffs))
        return cls(tuple(coeffs[:len(values)]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "coefficients": [format_rational(a) for a in self.coefficients],
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "EhrhartPoly":
        return EhrhartPoly(tuple(parse_rational(a) for a in data["coefficients"]))


@dataclass(frozen=True)
class DeltaVector:
    entries: Tuple[int, ...]

    @property
    def volume(self) -> int:
        return sum(self.entries)

    def to_list(self) -> List[int]:
        return list(self.entries)


@dataclass(frozen=True)
class PolygonData:
    """Vertex count, area and boundary count of a lattice polygon"""
    f0: int
    area: Fraction
    boundary: int

    @classmethod
    def from_polygon(cls, poly: PolygonQG) -> "PolygonData":
        return cls(len(poly.points), poly.area, poly.boundary_count)

    @property
    def edges(self) -> int:
        """Edges of any triangulation using every lattice point"""
        value = 3 * self.area + Fraction(self.boundary, 2)
        if value.denominator != 1:
            raise InconsistencyError(f"edge count {value} is not an integer")
        return int(value)

    @property
    def triangles(self) -> int:
        value = 2 * self.area
        if value.denominator != 1:
            raise InconsistencyError(f"triangle count {value} is not an integer")
        return int(value)


def stirling1(d: int, k: int) -> int:
    """Signed Stirling number of the first kind s(d, k)"""
    if d < 0 or not 0 <= k <= d:
        raise InvalidInputError(f"need 0 <= k <= d, got ({d}, {k})")
    return int(stirling(d, k, kind=1, signed=True))


def transfer_matrix(d: int) -> Matrix:
    """(d+1)x(d+1) matrix with a = M δ, entry (i, j) being the ν^i coefficient of C(ν+d-j, d)"""
    if d < 0:
        raise InvalidInputError("dimension must be non-negative")
    scale = Rational(1, math.factorial(d))
    s = [stirling1(d, xi) for xi in range(d + 1)]
    return Matrix(d + 1, d + 1, lambda i, j: scale * sum(
        s[xi] * math.comb(xi, i) * (d - j) ** (xi - i) for xi in range(i, d + 1)
    ))


def delta_from_a(poly: EhrhartPoly) -> DeltaVector:
    """δ = a · (Mᵀ)⁻¹; entries must come out as non-negative integers"""
    d = poly.dimension
    a = Matrix([[Rational(c.numerator, c.denominator) for c in poly.coefficients]])
    delta = a * transfer_matrix(d).T.inv()
    entries: List[int] = []
    for value in delta:
        value = Rational(value)
        if value.q != 1 or value < 0:
            raise InconsistencyError(f"δ-vector entry {value} is not a non-negative integer")
        entries.append(int(value))
    return DeltaVector(tuple(entries))


def pick_polygon(poly: PolygonQG) -> EhrhartPoly:
    """Area ν² + ½ boundary ν + 1"""
    return EhrhartPoly((Fraction(1), Fraction(poly.boundary_count, 2), poly.area))


def bpoly(i: int, nu: int, geom: PolygonData) -> int:
    """Lattice points of ν times the join of the polygon with i unit vectors"""
    f = (geom.f0, geom.edges, geom.triangles)
    total = 0
    for j in range(i + 3):
        total += _binom(nu - 1, j) * (
            _binom(i, j + 1) + f[0] * _binom(i, j) + f[1] * _binom(i, j - 1) + f[2] * _binom(i, j - 2)
        )
    return total


def dpoly(i: int, nu: int, rho: int) -> int:
    """Lattice points of ν times the join of the w-chain with i unit vectors"""
    total = 0
    for j in range(i + 2):
        total += _binom(nu - 1, j) * (
            _binom(i, j + 1) + (rho + 2) * _binom(i, j) + (rho + 1) * _binom(i, j - 1)
        )
    return total


def _require_resolvable(t: TwoParamType) -> None:
    decision = decide_two_param(t)
    if not decision.resolvable:
        raise NotResolvableError(f"{t.label} admits no crepant resolution ({decision.branch.value})")


def _chain_rho(t: TwoParamType) -> int:
    return tau_cone_params(t).rho


def closed_form_area(t: TwoParamType) -> Fraction:
    """Area of the junior polygon from l, r and the chain length"""
    _require_resolvable(t)
    if t.mu == 1:
        return Fraction(t.l, 2 * t.m)
    return Fraction(t.l - _chain_rho(t) - 1, 2 * t.m)


def closed_form_boundary(t: TwoParamType) -> int:
    """Boundary lattice points of the junior polygon"""
    _require_resolvable(t)
    m = t.m
    if t.mu == 1:
        a, ab = t.alpha // m, (t.alpha + t.beta) // m
        return math.gcd(a + 1, ab + 1) + math.gcd(a, ab + 1) + 1
    t1, t2 = math.gcd(t.alpha, t.l), math.gcd(t.beta, t.l)
    return _chain_rho(t) + t1 // m + t2 // m + 2


def _junior_value(t: TwoParamType, nu: int, geom: PolygonData, rho: int) -> int:
    m = t.m
    value = sum((-1) ** (m - 1 - i) * math.comb(m, i) * bpoly(i, nu, geom) for i in range(1, m))
    pick = geom.area * nu * nu + Fraction(geom.boundary, 2) * nu + 1
    value += (-1) ** (m - 1) * pick
    if t.mu != 1:
        value += sum((-1) ** (m - i) * math.comb(m, i) * dpoly(i, nu, rho) for i in range(1, m + 1))
        value += (-1) ** m * ((rho + 1) * nu + 1)
    if Fraction(value).denominator != 1:
        raise InconsistencyError(f"{t.label}: non-integral lattice point count {value} at ν={nu}")
    return int(value)


def ehrhart_junior(t: TwoParamType) -> EhrhartPoly:
    """Ehrhart polynomial of the junior simplex w.r.t. N_G, from the polygon and chain data"""
    _require_resolvable(t)
    poly = build_polygon(t)
    geom = PolygonData.from_polygon(poly)

    area, boundary = closed_form_area(t), closed_form_boundary(t)
    if area != geom.area or boundary != geom.boundary:
        raise InconsistencyError(
            f"{t.label}: polygon has area {geom.area} and {geom.boundary} boundary points, "
            f"closed forms give {area} and {boundary}"
        )
    rho = poly.rho
    if t.mu != 1 and rho != _chain_rho(t):
        raise InconsistencyError(f"{t.label}: chain length {rho} differs from the cone's {_chain_rho(t)}")

    d = t.r - 1
    values = [_junior_value(t, nu, geom, rho) for nu in range(1, d + 2)]
    result = EhrhartPoly.interpolate(values)
    if result.coefficients[0] != 1 or result.leading != Fraction(t.l, math.factorial(d)):
        raise InconsistencyError(f"{t.label}: Ehrhart polynomial {result.coefficients} is malformed")
    logger.debug("%s: Ehrhart coefficients %s", t.label, result.coefficients)
    return result


def cohomology_dims(t: TwoParamType) -> DeltaVector:
    """δ-vector of the junior simplex, checked against the age counts"""
    delta = delta_from_a(ehrhart_junior(t))
    ages = age_histogram(t.quotient())
    if delta.entries != ages:
        raise InconsistencyError(f"{t.label}: δ = {delta.entries} but ages count {ages}")
    return delta


def cohomology_dims_one_param(r: int, l: int) -> DeltaVector:
    """Even cohomology dimensions of the one-parameter resolutions"""
    if l % (r - 1) not in (0, 1):
        raise NotResolvableError(f"1/{l}(1,...,1,{l - r + 1}) admits no crepant resolution")
    return DeltaVector(one_param_dims(r, l))
