"""
Brute-force oracles
Independent enumerations used to cross-check the closed-form algorithms
"""
import math
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple

import numpy as np

from .criterion import TwoParamType
from .lattice import Vector, convex_hull, det2, segment_points
from .quotient import QuotientType


def _parallelogram_points(n1: Sequence[int], n2: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """Nonzero lattice points of the closed parallelogram spanned by n1, n2 (det > 0), with cone coordinates"""
    d = det2(n1, n2)
    xs = [0, n1[0], n2[0], n1[0] + n2[0]]
    ys = [0, n1[1], n2[1], n1[1] + n2[1]]
    gx, gy = np.meshgrid(np.arange(min(xs), max(xs) + 1), np.arange(min(ys), max(ys) + 1), indexing="ij")
    px, py = gx.ravel().astype(np.int64), gy.ravel().astype(np.int64)
    s = px * n2[1] - py * n2[0]
    t = n1[0] * py - n1[1] * px
    mask = (s >= 0) & (s <= d) & (t >= 0) & (t <= d) & ((px != 0) | (py != 0))
    pts = np.stack([px[mask], py[mask]], axis=1)
    coords = np.stack([s[mask], t[mask]], axis=1)
    return pts, coords


def cone_hull_oracle(n1: Sequence[int], n2: Sequence[int]) -> Tuple[List[Vector], List[Vector]]:
    """
    (boundary lattice points, vertices) of the compact part of conv(σ ∩ Z² \\ {0})
    for σ = pos(n1, n2), both listed from n1 to n2.
    """
    n1, n2 = tuple(n1), tuple(n2)
    flipped = det2(n1, n2) < 0
    if flipped:
        n1, n2 = n2, n1
    pts, _ = _parallelogram_points(n1, n2)
    hull = convex_hull([tuple(int(c) for c in p) for p in pts])
    i1, i2 = hull.index(n1), hull.index(n2)
    walk = [hull[(i2 + k) % len(hull)] for k in range((i1 - i2) % len(hull) + 1)]
    walk.reverse()

    boundary: List[Vector] = []
    for u, v in zip(walk, walk[1:]):
        boundary.extend(segment_points(u, v))
    boundary.append(walk[-1])
    if flipped:
        boundary.reverse()
        walk.reverse()
    return boundary, walk


def hilbert_basis_2d_bruteforce(n1: Sequence[int], n2: Sequence[int]) -> List[Vector]:
    """Irreducible nonzero lattice points of the parallelogram, sorted"""
    if det2(n1, n2) < 0:
        n1, n2 = n2, n1
    pts, coords = _parallelogram_points(n1, n2)
    below = np.all(coords[None, :, :] <= coords[:, None, :], axis=2)
    np.fill_diagonal(below, False)
    reducible = below.any(axis=1)
    return sorted((int(p[0]), int(p[1])) for p, red in zip(pts, reducible) if not red)


def direct_count(t: QuotientType, nu: int) -> int:
    """#(ν s_G ∩ N_G) as a sum over group elements of compositions of the remaining height"""
    total = 0
    for j in range(t.l):
        age = sum(j * a % t.l for a in t.weights) // t.l
        if nu >= age:
            total += math.comb(nu - age + t.r - 1, t.r - 1)
    return total


def enumerate_dilated_simplex(t: QuotientType, nu: int) -> List[Tuple[int, ...]]:
    """Every point of ν s_G ∩ N_G, scaled by l"""
    points: List[Tuple[int, ...]] = []
    for j in range(t.l):
        base = [j * a % t.l for a in t.weights]
        rest = nu - sum(base) // t.l
        if rest < 0:
            continue
        for combo in combinations_with_replacement(range(t.r), rest):
            x = list(base)
            for k in combo:
                x[k] += t.l
            points.append(tuple(x))
    return points


def join_count(t: TwoParamType, i: int, nu: int) -> int:
    """Lattice points of ν times the join of the junior triangle with e_1..e_i (μ = 1 types)"""
    m = t.m
    count = 0
    for x in enumerate_dilated_simplex(t.quotient(), nu):
        tail = x[i:m]
        if all(c == tail[0] for c in tail) and tail[0] <= min(x[:i]):
            count += 1
    return count
