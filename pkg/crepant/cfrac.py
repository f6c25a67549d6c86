"""
Continued fractions
Regular and negative-regular expansions, convergents, conversion and Bezout pairs
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .errors import InvalidInputError

logger = logging.getLogger(__name__)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0"""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        quot, rem = divmod(a, b)
        a, b = b, rem
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _check_fraction(kappa: int, lam: int) -> None:
    if not isinstance(kappa, int) or not isinstance(lam, int):
        raise InvalidInputError(f"expected integers, got ({kappa!r}, {lam!r})")
    if not 0 < lam < kappa:
        raise InvalidInputError(f"need 0 < lambda < kappa, got ({kappa}, {lam})")
    if math.gcd(kappa, lam) != 1:
        raise InvalidInputError(f"({kappa}, {lam}) is not a reduced fraction")


def evaluate_regular(entries: Sequence[int]) -> Fraction:
    """a1 + 1/(a2 + 1/(... + 1/a_nu))"""
    if not entries:
        raise InvalidInputError("empty continued fraction")
    value = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        value = a + 1 / value
    return value


def evaluate_negreg(entries: Sequence[int]) -> Fraction:
    """c1 - 1/(c2 - 1/(... - 1/c_rho))"""
    if not entries:
        raise InvalidInputError("empty continued fraction")
    value = Fraction(entries[-1])
    for c in reversed(entries[:-1]):
        value = c - 1 / value
    return value


def lame_bound(lam: int) -> float:
    """Upper bound on the regular length for a denominator lam"""
    return 5 * math.log10(lam) + 3


@dataclass(frozen=True)
class RegularCF:
    """Regular continued fraction [a1, ..., a_nu] of kappa/lam"""
    entries: Tuple[int, ...]
    kappa: int
    lam: int

    @property
    def length(self) -> int:
        return len(self.entries)

    def value(self) -> Fraction:
        return evaluate_regular(self.entries)

    def to_dict(self):
        return {"kappa": self.kappa, "lambda": self.lam, "entries": list(self.entries)}


@dataclass(frozen=True)
class NegRegCF:
    """Negative-regular continued fraction [[c1, ..., c_rho]] of kappa/lam"""
    entries: Tuple[int, ...]
    kappa: int
    lam: int

    @property
    def length(self) -> int:
        return len(self.entries)

    def value(self) -> Fraction:
        return evaluate_negreg(self.entries)

    def to_dict(self):
        return {"kappa": self.kappa, "lambda": self.lam, "entries": list(self.entries)}


ContinuedFraction = Union[RegularCF, NegRegCF]


@dataclass(frozen=True)
class ConvergentTable:
    """
    Convergent numerators and denominators, stored from index -1 upwards.

    For a regular expansion these are (P_i, Q_i), for a negative-regular one (R_i, S_i).
    """
    numerators: Tuple[int, ...]
    denominators: Tuple[int, ...]
    negative: bool

    def __len__(self) -> int:
        return len(self.numerators)

    def pair(self, i: int) -> Tuple[int, int]:
        """Convergent pair with index i >= -1"""
        if not -1 <= i < len(self.numerators) - 1:
            raise IndexError(f"convergent index {i} out of range")
        return self.numerators[i + 1], self.denominators[i + 1]

    @property
    def last_index(self) -> int:
        return len(self.numerators) - 2

    @property
    def final(self) -> Tuple[int, int]:
        return self.pair(self.last_index)

    def determinant(self, i: int) -> int:
        """P_i Q_{i-1} - P_{i-1} Q_i (regular) or R_{i-1} S_i - R_i S_{i-1} (negative)"""
        num, den = self.pair(i)
        prev_num, prev_den = self.pair(i - 1)
        if self.negative:
            return prev_num * den - num * prev_den
        return num * prev_den - prev_num * den


def regular_expand(kappa: int, lam: int) -> RegularCF:
    """Regular continued fraction expansion of kappa/lam by Euclid's algorithm"""
    _check_fraction(kappa, lam)
    entries: List[int] = []
    num, den = kappa, lam
    while den:
        quot, rem = divmod(num, den)
        entries.append(quot)
        num, den = den, rem
    return RegularCF(tuple(entries), kappa, lam)


def negreg_expand(kappa: int, lam: int) -> NegRegCF:
    """Negative-regular expansion by the modified (ceiling) Euclidean division"""
    _check_fraction(kappa, lam)
    entries: List[int] = []
    num, den = kappa, lam
    while den:
        c = -(-num // den)
        entries.append(c)
        num, den = den, c * den - num
    return NegRegCF(tuple(entries), kappa, lam)


def convergents(cf: ContinuedFraction) -> ConvergentTable:
    """Convergent table of either kind of expansion"""
    if isinstance(cf, RegularCF):
        nums, dens = [0, 1], [1, 0]
        for a in cf.entries:
            nums.append(a * nums[-1] + nums[-2])
            dens.append(a * dens[-1] + dens[-2])
        return ConvergentTable(tuple(nums), tuple(dens), negative=False)
    if isinstance(cf, NegRegCF):
        nums, dens = [0, 1], [-1, 0]
        for c in cf.entries:
            nums.append(c * nums[-1] - nums[-2])
            dens.append(c * dens[-1] - dens[-2])
        return ConvergentTable(tuple(nums), tuple(dens), negative=True)
    raise InvalidInputError(f"not a continued fraction: {cf!r}")


def regular_to_negreg(cf: RegularCF) -> NegRegCF:
    """
    Convert a regular expansion into the negative-regular one of the same fraction.

    Odd-position entries become a_i + 2 (one less at the first and at the last
    position), and each even-position entry a_i becomes a run of a_i - 1 twos.
    """
    nu = cf.length
    out: List[int] = []
    for i, a in enumerate(cf.entries, start=1):
        if i % 2:
            out.append(a + 2 - (i == 1) - (i == nu))
        else:
            out.extend([2] * (a - 1))
    return NegRegCF(tuple(out), cf.kappa, cf.lam)


def bezout_min(kappa: int, lam: int) -> Tuple[int, int]:
    """
    The Bezout pair read off the regular expansion.

    Returns (x0, x0') with kappa*x0 + lam*x0' = 1, x0 = eps*Q_{nu-1},
    x0' = -eps*P_{nu-1} and eps = (-1)^nu.
    """
    cf = regular_expand(kappa, lam)
    table = convergents(cf)
    nu = cf.length
    eps = 1 if nu % 2 == 0 else -1
    p_prev, q_prev = table.pair(nu - 1)
    return eps * q_prev, -eps * p_prev


class DualCase(Enum):
    """How q/(q-p) and q/p expansions relate"""
    PRW = "PRW"  # a1 >= 2, dual = [1, a1-1, a2, ...]
    DEU = "DEU"  # a1 == 1, dual = [a2+1, a3, ...]


@dataclass(frozen=True)
class DualExpansions:
    dual: RegularCF    # q/(q-p)
    primal: RegularCF  # q/p
    case: DualCase

    def expected_dual_entries(self) -> Tuple[int, ...]:
        a = list(self.primal.entries)
        if self.case is DualCase.PRW:
            expected = [1, a[0] - 1] + a[1:]
            if expected[-1] == 1 and len(expected) > 1:
                expected = expected[:-2] + [expected[-2] + 1]
            return tuple(expected)
        return tuple([a[1] + 1] + a[2:])

    def relations_hold(self) -> bool:
        """Entry relations of the two cases, plus the final convergents"""
        if self.dual.entries != self.expected_dual_entries():
            return False
        q, p = self.primal.kappa, self.primal.lam
        return (convergents(self.dual).final == (q, q - p)
                and convergents(self.primal).final == (q, p))


def dual_expansions(q: int, p: int) -> DualExpansions:
    """Regular expansions of q/(q-p) and q/p and the case relating them"""
    if p == 0:
        raise InvalidInputError("p = 0 describes a basic cone; no dual expansion")
    primal = regular_expand(q, p)
    dual = regular_expand(q, q - p)
    case = DualCase.DEU if primal.entries[0] == 1 else DualCase.PRW
    logger.debug("dual expansions of %d/%d: %s / %s (%s)", q, p, primal.entries, dual.entries, case.value)
    return DualExpansions(dual=dual, primal=primal, case=case)
