"""
Resolvability criteria
One-parameter, two-parameter arithmetic, Hilbert-basis and geometric decision procedures
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Any, Iterator, List, Optional, Tuple

from .cfrac import bezout_min, regular_expand
from .cone2d import PqCone, boundary_points, cones_isomorphic, pq_normal_form
from .errors import InconsistencyError, InvalidInputError, NotApplicableError
from .lattice import Vector, det2, lattice_basis, solve2
from .quotient import QuotientType, hilbcon_check, is_gorenstein, splitting_codim
from .report import format_rational, parse_rational

logger = logging.getLogger(__name__)


class Verdict(Enum):
    """Outcome of a decision procedure"""
    RESOLVABLE = "resolvable"
    NOT_RESOLVABLE = "not-resolvable"
    UNKNOWN = "unknown"


class Branch(Enum):
    """Which case of which criterion produced the verdict"""
    CON1 = "CON1"
    CON2 = "CON2"
    CON2_P0 = "CON2-p0"
    FAIL_GCD = "FAIL-gcd"
    FAIL_T = "FAIL-t"
    FAIL_CONGRUENCE = "FAIL-congruence"
    ONE_PARAM = "ONE-PARAM"
    FAIL_ONE_PARAM = "FAIL-ONE-PARAM"
    HILBCON = "HILBCON"
    FAIL_HILBCON = "FAIL-HILBCON"
    NECESSARY_ONLY = "NECESSARY-ONLY"


@dataclass(frozen=True)
class TwoParamType:
    """1/l(1,...,1,α,β) with r-2 leading ones and α + β = l - (r-2)"""
    r: int
    l: int
    alpha: int
    beta: int

    def __post_init__(self):
        if self.r < 4:
            raise InvalidInputError(f"two-parameter types need r >= 4, got r={self.r}")
        if self.l < self.r:
            raise InvalidInputError(f"need l >= r, got l={self.l}, r={self.r}")
        if self.alpha < 1 or self.beta < 1:
            raise InvalidInputError("alpha and beta must be positive")
        if self.alpha + self.beta != self.l - self.m:
            raise InvalidInputError(
                f"alpha + beta must equal l - (r-2) = {self.l - self.m}, got {self.alpha + self.beta}"
            )

    @property
    def m(self) -> int:
        return self.r - 2

    @property
    def g(self) -> int:
        return math.gcd(self.alpha, self.beta, self.l)

    @property
    def mu(self) -> Fraction:
        return Fraction(self.m, self.g)

    @property
    def weights(self) -> Tuple[int, ...]:
        return (1,) * self.m + (self.alpha, self.beta)

    @property
    def label(self) -> str:
        return self.quotient().label

    def quotient(self) -> QuotientType:
        return QuotientType(self.l, self.weights)

    @classmethod
    def from_quotient(cls, t: QuotientType) -> "TwoParamType":
        """Recognise a type with at least r-2 weights equal to 1"""
        if t.r < 4:
            raise NotApplicableError(f"{t.label}: two-parameter types need r >= 4")
        rest = list(t.weights)
        for _ in range(t.r - 2):
            if 1 not in rest:
                raise NotApplicableError(f"{t.label} has fewer than r-2 weights equal to 1")
            rest.remove(1)
        alpha, beta = rest
        if alpha + beta != t.l - (t.r - 2):
            raise NotApplicableError(f"{t.label}: remaining weights do not sum to l - (r-2)")
        return cls(t.r, t.l, alpha, beta)

    def to_dict(self) -> Dict[str, Any]:
        return {"r": self.r, "l": self.l, "alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class CharNumbers:
    """Characteristic numbers of a two-parameter type with gcd(α,β,l) = 1"""
    t1: int
    t2: int
    z1: int
    z2: int
    c1: int
    c2: int
    p_breve: int
    q: int
    p: int
    lam: Tuple[int, ...] = ()

    @property
    def kappa(self) -> int:
        return len(self.lam)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t1": self.t1, "t2": self.t2, "z1": self.z1, "z2": self.z2,
            "c1": self.c1, "c2": self.c2, "p_breve": self.p_breve,
            "q": self.q, "p": self.p, "lambda": list(self.lam), "kappa": self.kappa,
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "CharNumbers":
        return CharNumbers(
            data["t1"], data["t2"], data["z1"], data["z2"], data["c1"], data["c2"],
            data["p_breve"], data["q"], data["p"], tuple(data.get("lambda", ())),
        )


@dataclass(frozen=True)
class Witness:
    """One tested condition"""
    condition: str
    value: int
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"condition": self.condition, "value": self.value, "holds": self.holds}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "Witness":
        return Witness(data["condition"], data["value"], data["holds"])


@dataclass
class Decision:
    """A verdict together with every quantity that produced it"""
    subject: str
    verdict: Verdict
    branch: Branch
    mu: Optional[Fraction] = None
    char: Optional[CharNumbers] = None
    witnesses: List[Witness] = field(default_factory=list)
    dims: Optional[Tuple[int, ...]] = None
    hilbcon: Optional[bool] = None

    @property
    def resolvable(self) -> bool:
        return self.verdict is Verdict.RESOLVABLE

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "type": self.subject,
            "verdict": self.verdict.value,
            "resolvable": self.resolvable,
            "branch": self.branch.value,
            "mu": None if self.mu is None else format_rational(self.mu),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }
        if self.char is not None:
            data["char"] = self.char.to_dict()
        if self.dims is not None:
            data["dims"] = list(self.dims)
        if self.hilbcon is not None:
            data["hilbcon"] = self.hilbcon
        return data

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "Decision":
        return Decision(
            subject=data["type"],
            verdict=Verdict(data["verdict"]),
            branch=Branch(data["branch"]),
            mu=None if data.get("mu") is None else parse_rational(data["mu"]),
            char=CharNumbers.from_dict(data["char"]) if "char" in data else None,
            witnesses=[Witness.from_dict(w) for w in data.get("witnesses", [])],
            dims=tuple(data["dims"]) if "dims" in data else None,
            hilbcon=data.get("hilbcon"),
        )


@dataclass(frozen=True)
class TauCone:
    """
    The planar cone that drives the two-parameter criterion.

    Coordinates are the (r-2)-scaled planar ones; `apex` is the scaled barycentric
    point and `lattice` the basis of the scaled extended lattice.
    """
    cone: PqCone
    rho: int
    multiplicity: Fraction
    apex: Vector
    lattice: Tuple[Vector, Vector]
    boundary: Tuple[Vector, ...]

    @property
    def p(self) -> int:
        return self.cone.p

    @property
    def q(self) -> int:
        return self.cone.q

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "rho": self.rho,
            "multiplicity": format_rational(self.multiplicity),
            "boundary": [list(b) for b in self.boundary],
        }


def _t_conditions_hold(t1: int, t2: int, m: int) -> bool:
    return t1 % m == 1 and t2 % m == 1


def characteristic_numbers(t: TwoParamType) -> CharNumbers:
    """t, z, the normalized Bezout pair (c1, c2), p̆, q, p and the expansion of q/p"""
    if t.g != 1:
        raise NotApplicableError(f"{t.label}: characteristic numbers need gcd(α,β,l) = 1, got {t.g}")
    t1 = math.gcd(t.alpha, t.l)
    t2 = math.gcd(t.beta, t.l)
    z1 = t.l // t2
    z2 = (t.alpha + t.m) // t2

    if z2 == 1:
        c1, c2 = -1, z1 + 1
    else:
        c1, c2 = bezout_min(z1, z2)
        if c1 > 0:
            c1, c2 = c1 - z2, c2 + z1
    if c1 * z1 + c2 * z2 != 1:
        raise InconsistencyError(f"Bezout pair ({c1}, {c2}) fails for ({z1}, {z2})")

    numerator = c1 * t.l + c2 * t.alpha
    if numerator % t1:
        raise InconsistencyError(f"{t.label}: ({c1}*l + {c2}*α) is not divisible by t1 = {t1}")
    p_breve = numerator // t1
    q = t.l // (t1 * t2)
    p = p_breve % q
    lam: Tuple[int, ...] = ()
    if p >= 1 and math.gcd(p, q) == 1:
        lam = regular_expand(q, p).entries
    return CharNumbers(t1, t2, z1, z2, c1, c2, p_breve, q, p, lam)


def decide_two_param(t: TwoParamType) -> Decision:
    """Arithmetic criterion for 1/l(1,...,1,α,β)"""
    m = t.m
    g = t.g
    witnesses = [Witness("gcd(alpha,beta,l)", g, g in (1, m))]

    if g == m:
        return Decision(t.label, Verdict.RESOLVABLE, Branch.CON1, mu=t.mu, witnesses=witnesses)
    if g != 1:
        return Decision(t.label, Verdict.NOT_RESOLVABLE, Branch.FAIL_GCD, mu=t.mu, witnesses=witnesses)

    t1 = math.gcd(t.alpha, t.l)
    t2 = math.gcd(t.beta, t.l)
    witnesses.append(Witness("t1 mod (r-2) == 1", t1 % m, t1 % m == 1))
    witnesses.append(Witness("t2 mod (r-2) == 1", t2 % m, t2 % m == 1))
    if not _t_conditions_hold(t1, t2, m):
        return Decision(t.label, Verdict.NOT_RESOLVABLE, Branch.FAIL_T, mu=t.mu, witnesses=witnesses)

    char = characteristic_numbers(t)
    if char.p == 0:
        if char.q != 1:
            raise InconsistencyError(f"{t.label}: p = 0 with q = {char.q}")
        return Decision(t.label, Verdict.RESOLVABLE, Branch.CON2_P0, mu=t.mu, char=char, witnesses=witnesses)
    if not char.lam:
        raise InconsistencyError(f"{t.label}: gcd(p, q) = gcd({char.p}, {char.q}) != 1")

    s = (char.p_breve - char.p) // char.q
    ok = s % m == 0
    witnesses.append(Witness("(p_breve - p)/q mod (r-2) == 0", s, ok))

    lam, kappa = char.lam, char.kappa
    if kappa >= 3:
        for j in range(2, kappa, 2):
            holds = lam[j - 1] % m == 0
            witnesses.append(Witness(f"lambda_{j} mod (r-2) == 0", lam[j - 1], holds))
            ok = ok and holds
    if kappa % 2 == 0:
        holds = lam[-1] % m == 1
        witnesses.append(Witness(f"lambda_{kappa} mod (r-2) == 1", lam[-1], holds))
        ok = ok and holds

    verdict = Verdict.RESOLVABLE if ok else Verdict.NOT_RESOLVABLE
    branch = Branch.CON2 if ok else Branch.FAIL_CONGRUENCE
    logger.debug("%s: %s via %s", t.label, verdict.value, branch.value)
    return Decision(t.label, verdict, branch, mu=t.mu, char=char, witnesses=witnesses)


def one_param_dims(r: int, l: int) -> Tuple[int, ...]:
    """Even cohomology dimensions of the crepant resolutions of 1/l(1,...,1,l-(r-1))"""
    middle = l // (r - 1)
    return (1,) + (middle,) * (r - 2) + ((l - 1) // (r - 1),)


def decide_one_param(r: int, l: int) -> Decision:
    """Decide 1/l(1,...,1,l-(r-1)) by the residue of l mod (r-1)"""
    t = one_param_type(r, l)
    residue = l % (r - 1)
    ok = residue in (0, 1)
    witnesses = [Witness("l mod (r-1) in {0, 1}", residue, ok)]
    if not ok:
        return Decision(t.label, Verdict.NOT_RESOLVABLE, Branch.FAIL_ONE_PARAM, mu=t.mu, witnesses=witnesses)
    return Decision(t.label, Verdict.RESOLVABLE, Branch.ONE_PARAM, mu=t.mu,
                    witnesses=witnesses, dims=one_param_dims(r, l))


def decide_hilbert_basis(t: QuotientType, guard: Optional[int] = None) -> Decision:
    """
    Hilbert-basis route: decisive when at least r-2 weights coincide,
    otherwise only a necessary condition.
    """
    if t.r < 4:
        raise NotApplicableError(f"{t.label}: r >= 4 required")
    if not is_gorenstein(t):
        raise NotApplicableError(f"{t.label} is not Gorenstein")

    kappa, _ = splitting_codim(t)
    multiplicity = Counter(t.weights).most_common(1)[0][1]
    decisive = multiplicity >= t.r - 2 and kappa == t.r
    hilbcon = hilbcon_check(t, guard=guard)
    witnesses = [
        Witness("largest weight multiplicity >= r-2", multiplicity, multiplicity >= t.r - 2),
        Witness("no zero weights", t.r - kappa, kappa == t.r),
        Witness("HILBCON", int(hilbcon), hilbcon),
    ]

    mu = None
    try:
        mu = TwoParamType.from_quotient(t).mu
    except (NotApplicableError, InvalidInputError):
        pass

    if not hilbcon:
        return Decision(t.label, Verdict.NOT_RESOLVABLE, Branch.FAIL_HILBCON, mu=mu,
                        witnesses=witnesses, hilbcon=False)
    if decisive:
        return Decision(t.label, Verdict.RESOLVABLE, Branch.HILBCON, mu=mu,
                        witnesses=witnesses, hilbcon=True)
    logger.info("%s satisfies HILBCON but fewer than r-2 weights coincide", t.label)
    return Decision(t.label, Verdict.UNKNOWN, Branch.NECESSARY_ONLY, mu=mu,
                    witnesses=witnesses, hilbcon=True)


def _primitive_in(lattice: Tuple[Vector, Vector], v: Vector) -> Vector:
    x, y = solve2(lattice, v)
    k = math.gcd(x, y)
    x, y = x // k, y // k
    return (x * lattice[0][0] + y * lattice[1][0], x * lattice[0][1] + y * lattice[1][1])


def tau_cone_params(t: TwoParamType) -> TauCone:
    """
    The cone at the barycentric point spanned towards w and w'.

    Computed in planar coordinates scaled by r-2, against the extended lattice
    generated by (r-2)Z^2 and the scaled barycentric point.
    """
    if t.g != 1:
        raise NotApplicableError(f"{t.label}: the reduction cone needs gcd(α,β,l) = 1")
    m = t.m
    t1 = math.gcd(t.alpha, t.l)
    t2 = math.gcd(t.beta, t.l)
    apex = (t.alpha + m, t.l)
    lattice = lattice_basis([(m, 0), (0, m), apex])

    n1 = (((t2 % m) * apex[0]) // t2, ((t2 % m) * apex[1]) // t2)
    n2 = (((t1 % m) * t.alpha) // t1, ((t1 % m) * t.l) // t1)
    multiplicity = Fraction(abs(det2(n1, n2)), abs(det2(*lattice)))

    cone = pq_normal_form(_primitive_in(lattice, n1), _primitive_in(lattice, n2), lattice)
    if cone.q >= 2:
        pts = boundary_points(cone)
        rho, boundary = pts.rho, pts.points
    else:
        rho, boundary = 0, cone.generators

    if _t_conditions_hold(t1, t2, m):
        if multiplicity != cone.q:
            raise InconsistencyError(f"{t.label}: cone multiplicity {cone.q} != {multiplicity}")
        char = characteristic_numbers(t)
        if char.q != cone.q or (cone.q > 1 and not cones_isomorphic(cone, PqCone(char.p, char.q))):
            raise InconsistencyError(
                f"{t.label}: cone ({cone.p},{cone.q}) disagrees with characteristic numbers ({char.p},{char.q})"
            )
    logger.debug("%s: tau cone (%d,%d), rho=%d", t.label, cone.p, cone.q, rho)
    return TauCone(cone, rho, multiplicity, apex, lattice, tuple(boundary))


def decide_geometric(t: TwoParamType) -> Decision:
    """
    Independent decision from the reduction cone: resolvable iff every compact
    boundary point l of the cone satisfies v_G - l in Z^2.
    """
    m = t.m
    if t.g == m:
        return Decision(t.label, Verdict.RESOLVABLE, Branch.CON1, mu=t.mu)
    if t.g != 1:
        return Decision(t.label, Verdict.NOT_RESOLVABLE, Branch.FAIL_GCD, mu=t.mu)

    tau = tau_cone_params(t)
    ax, ay = tau.apex
    hits = [(u[0] - ax) % m == 0 and (u[1] - ay) % m == 0 for u in tau.boundary]
    witnesses = [Witness(f"boundary point {i} congruent to apex", i, h) for i, h in enumerate(hits)]
    if all(hits):
        branch = Branch.CON2_P0 if tau.q == 1 else Branch.CON2
        return Decision(t.label, Verdict.RESOLVABLE, branch, mu=t.mu, witnesses=witnesses)
    branch = Branch.FAIL_T if not (hits[0] and hits[-1]) else Branch.FAIL_CONGRUENCE
    return Decision(t.label, Verdict.NOT_RESOLVABLE, branch, mu=t.mu, witnesses=witnesses)


def mohri_family(xi: int) -> TwoParamType:
    """1/4ξ(1,1,2ξ-1,2ξ-1), resolvable for every ξ"""
    return TwoParamType(4, 4 * xi, 2 * xi - 1, 2 * xi - 1)


def con1_family(r: int, xi: int, xi2: int) -> TwoParamType:
    """Types with gcd(α,β,l) = r-2, so μ = 1"""
    m = r - 2
    return TwoParamType(r, (xi + xi2 + 1) * m, xi * m, xi2 * m)


def power_series_family(r: int, i: int) -> TwoParamType:
    """1/l(1,...,1,a,a) with a = (r-1)^i"""
    a = (r - 1) ** i
    return TwoParamType(r, 2 * a + r - 2, a, a)


def one_param_type(r: int, l: int) -> TwoParamType:
    """1/l(1,...,1,l-(r-1)) as the two-parameter type with α = 1"""
    return TwoParamType(r, l, 1, l - r + 1)


def two_param_types(r: int, lmax: int, all_orders: bool = False) -> Iterator[TwoParamType]:
    """Every valid (l, α, β) with r <= l <= lmax; α <= β unless all_orders"""
    m = r - 2
    for l in range(r, lmax + 1):
        for alpha in range(1, l - m):
            beta = l - m - alpha
            if not all_orders and alpha > beta:
                break
            yield TwoParamType(r, l, alpha, beta)
