"""
Cyclic quotient singularity types
Weight lattice points, ages and brute-force Hilbert bases of the positive orthant
"""
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, Any, List, Optional, Sequence, Tuple

import numpy as np

from .config import resolve_guard
from .errors import GuardExceededError, InvalidInputError, NotApplicableError

logger = logging.getLogger(__name__)

_TYPE_PATTERN = re.compile(r"^\s*1\s*/\s*(\d+)\s*\(\s*([\d\s,]+)\)\s*$")


@dataclass(frozen=True)
class QuotientType:
    """A small type 1/l(α1,...,αr) with weights reduced modulo l"""
    l: int
    weights: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.l, int) or self.l < 2:
            raise InvalidInputError(f"group order must be an integer >= 2, got {self.l!r}")
        weights = tuple(int(a) for a in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) < 2:
            raise InvalidInputError("a type needs at least two weights")
        if any(not 0 <= a < self.l for a in weights):
            raise InvalidInputError(f"weights must lie in [0, {self.l - 1}], got {weights}")
        for i in range(len(weights)):
            rest = weights[:i] + weights[i + 1:]
            if reduce(math.gcd, rest, self.l) != 1:
                raise InvalidInputError(
                    f"{self.label} is not small: dropping weight {i + 1} leaves a common factor with l"
                )

    @classmethod
    def parse(cls, text: str) -> "QuotientType":
        """Parse the usual notation, e.g. '1/11(1,1,3,6)'"""
        m = _TYPE_PATTERN.match(text)
        if not m:
            raise InvalidInputError(f"cannot parse type {text!r}; expected '1/l(a1,...,ar)'")
        weights = [int(w) for w in m.group(2).replace(",", " ").split()]
        return cls(int(m.group(1)), tuple(weights))

    @property
    def r(self) -> int:
        return len(self.weights)

    @property
    def label(self) -> str:
        return f"1/{self.l}({','.join(str(a) for a in self.weights)})"

    def to_dict(self) -> Dict[str, Any]:
        return {"l": self.l, "weights": list(self.weights)}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "QuotientType":
        return QuotientType(int(data["l"]), tuple(data["weights"]))

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ScaledLatticePoint:
    """A point coords/scale of the weight lattice; `element` is the group index j when it represents g^j"""
    coords: Tuple[int, ...]
    scale: int
    element: Optional[int] = None

    @property
    def age(self) -> Fraction:
        return Fraction(sum(self.coords), self.scale)

    @property
    def is_junior(self) -> bool:
        return self.element is not None and self.age == 1

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"coords": list(self.coords), "scale": self.scale}
        if self.element is not None:
            data["element"] = self.element
        return data


@dataclass
class HilbertBasisReport:
    """Hilbert basis of the positive orthant with respect to N_G"""
    type: QuotientType
    elements: List[ScaledLatticePoint] = field(default_factory=list)
    all_junior: bool = False

    @property
    def group_elements(self) -> List[ScaledLatticePoint]:
        return [e for e in self.elements if e.element is not None]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.type.label,
            "elements": [e.to_dict() for e in self.elements],
            "all_junior": self.all_junior,
        }


def is_gorenstein(t: QuotientType) -> bool:
    """True when the weights sum to a multiple of l"""
    return sum(t.weights) % t.l == 0


def _require_gorenstein(t: QuotientType) -> None:
    if not is_gorenstein(t):
        raise NotApplicableError(f"{t.label} is not Gorenstein (weight sum {sum(t.weights)})")


def _units(l: int) -> List[int]:
    return [u for u in range(1, l) if math.gcd(u, l) == 1]


def canonical_form(t: QuotientType) -> Tuple[int, ...]:
    """Smallest sorted weight tuple over all unit multipliers"""
    return min(tuple(sorted(u * a % t.l for a in t.weights)) for u in _units(t.l))


def equivalence_witness(t1: QuotientType, t2: QuotientType) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """
    A unit u and a permutation theta with u*α_i ≡ α'_theta(i) (mod l), or None.

    Multipliers are tried in increasing order; the sorted multisets prune the
    permutation search down to a single matching pass.
    """
    if t1.l != t2.l or t1.r != t2.r:
        return None
    target = sorted(t2.weights)
    for u in _units(t1.l):
        scaled = [u * a % t1.l for a in t1.weights]
        if sorted(scaled) != target:
            continue
        free: Dict[int, List[int]] = {}
        for pos, a in enumerate(t2.weights):
            free.setdefault(a, []).append(pos)
        theta = tuple(free[a].pop(0) for a in scaled)
        return u, theta
    return None


def types_equivalent(t1: QuotientType, t2: QuotientType) -> bool:
    """True when t2 arises from t1 by a unit multiple and a permutation"""
    return t1.l == t2.l and t1.r == t2.r and canonical_form(t1) == canonical_form(t2)


def splitting_codim(t: QuotientType) -> Tuple[int, bool]:
    """(number of nonzero weights, whether the singularity is isolated)"""
    kappa = sum(1 for a in t.weights if a != 0)
    isolated = all(math.gcd(a, t.l) == 1 for a in t.weights)
    return kappa, isolated


def group_coordinates(t: QuotientType) -> np.ndarray:
    """l x r array whose row j is ([j α_1]_l, ..., [j α_r]_l)"""
    j = np.arange(t.l, dtype=np.int64)[:, None]
    return (j * np.asarray(t.weights, dtype=np.int64)[None, :]) % t.l


def group_points(t: QuotientType) -> List[ScaledLatticePoint]:
    """The l lattice points representing the group elements g^0 .. g^{l-1}"""
    _require_gorenstein(t)
    coords = group_coordinates(t)
    return [ScaledLatticePoint(tuple(int(c) for c in row), t.l, element=j) for j, row in enumerate(coords)]


def age_histogram(t: QuotientType) -> Tuple[int, ...]:
    """Number of group elements of age 0, 1, ..., r-1"""
    _require_gorenstein(t)
    ages = group_coordinates(t).sum(axis=1) // t.l
    counts = np.bincount(ages, minlength=t.r)
    return tuple(int(c) for c in counts[:t.r])


def unit_vectors(t: QuotientType) -> List[ScaledLatticePoint]:
    """The standard basis e_1, ..., e_r at scale l"""
    return [
        ScaledLatticePoint(tuple(t.l if k == i else 0 for k in range(t.r)), t.l)
        for i in range(t.r)
    ]


def hilbert_basis_bruteforce(t: QuotientType, guard: Optional[int] = None,
                             candidate_order: Optional[Sequence[int]] = None) -> HilbertBasisReport:
    """
    Hilbert basis of the positive orthant w.r.t. N_G by exhaustive decomposition tests.

    A group point g_j is reducible iff some other nonzero group point lies
    coordinate-wise below it; the unit vectors are always irreducible for small types.
    `candidate_order` permutes the group indices before the test.
    """
    _require_gorenstein(t)
    limit = resolve_guard(guard)
    needed = t.l * t.l
    if needed > limit:
        raise GuardExceededError(needed, limit, what=f"Hilbert basis of {t.label}")

    order = list(range(t.l)) if candidate_order is None else [int(j) for j in candidate_order]
    if sorted(order) != list(range(t.l)):
        raise InvalidInputError("candidate_order must be a permutation of 0..l-1")

    coords = group_coordinates(t)[order]
    below = np.all(coords[None, :, :] <= coords[:, None, :], axis=2)
    np.fill_diagonal(below, False)
    zero_pos = order.index(0)
    below[:, zero_pos] = False
    reducible = below.any(axis=1)

    irreducible = sorted(order[i] for i in range(t.l) if order[i] != 0 and not reducible[i])
    raw = group_coordinates(t)
    elements = unit_vectors(t) + [
        ScaledLatticePoint(tuple(int(c) for c in raw[j]), t.l, element=j) for j in irreducible
    ]
    all_junior = all(int(raw[j].sum()) == t.l for j in irreducible)
    logger.debug("Hilbert basis of %s: %d group elements, all junior: %s", t.label, len(irreducible), all_junior)
    return HilbertBasisReport(type=t, elements=elements, all_junior=all_junior)


def hilbcon_check(t: QuotientType, guard: Optional[int] = None) -> bool:
    """Whether the Hilbert basis consists of the unit vectors and junior points only"""
    return hilbert_basis_bruteforce(t, guard=guard).all_junior
