"""Exact-arithmetic geometric ground truth.

Everything here works on integer coordinates with exact predicates: chirotopes
and radial systems of labeled point sets, a brute-force enumeration of
important sets, and the complete catalogs of 4- and 5-point radial systems
that the combinatorial algorithms match against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache, cmp_to_key
from typing import Optional, Sequence

from .core import (
    ContractViolation,
    CyclicOrder,
    DirectedCycle,
    RadialSystem,
    _canonical_key,
)

Point = tuple[int, int]


def orient_xy(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): +1 ccw, -1 cw, 0 collinear."""
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _norm_dir(dx: int, dy: int) -> tuple[int, int]:
    """Direction reduced by gcd and sign-normalized to a half-plane."""
    g = math.gcd(abs(dx), abs(dy))
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


class PointSet:
    """Labeled points with exact integer coordinates, in general position."""

    def __init__(self, pts: Sequence[Point], trusted: bool = False):
        self.pts: list[Optional[Point]] = [None] + [tuple(p) for p in pts]
        self.n = len(pts)
        if self.n != len({tuple(p) for p in pts}):
            raise ContractViolation("points must be distinct")
        if not trusted:
            self._check_general_position()

    def _check_general_position(self) -> None:
        # three collinear points show up as repeated directions from one anchor
        for i in range(1, self.n + 1):
            seen: dict[tuple[int, int], int] = {}
            xi, yi = self.pts[i]
            for j in range(1, self.n + 1):
                if j == i:
                    continue
                d = _norm_dir(self.pts[j][0] - xi, self.pts[j][1] - yi)
                if d in seen:
                    raise ContractViolation(
                        f"collinear labels {i}, {seen[d]}, {j}"
                    )
                seen[d] = j

    def point(self, i: int) -> Point:
        return self.pts[i]

    def labels(self) -> range:
        return range(1, self.n + 1)

    def subset(self, labels: Sequence[int]) -> "PointSet":
        """Points restricted to `labels`, relabeled 1..k in sorted label order."""
        return PointSet([self.pts[i] for i in sorted(labels)], trusted=True)


def orient(p: PointSet, i: int, j: int, k: int) -> int:
    """Chirotope value of the ordered triple (i, j, k); never 0 in general position."""
    if len({i, j, k}) != 3:
        raise ContractViolation("orient needs three distinct labels")
    v = orient_xy(p.point(i), p.point(j), p.point(k))
    if v == 0:
        raise ContractViolation(f"collinear triple {(i, j, k)}")
    return v


def _ccw_sorted_dirs(center: Point, items: list[tuple[int, Point]]) -> list[int]:
    """Labels of `items` sorted counterclockwise around `center`, exactly."""
    cx, cy = center

    def half(pt: Point) -> int:
        dx, dy = pt[0] - cx, pt[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(a: tuple[int, Point], b: tuple[int, Point]) -> int:
        ha, hb = half(a[1]), half(b[1])
        if ha != hb:
            return -1 if ha < hb else 1
        cr = orient_xy(center, a[1], b[1])
        if cr == 0:
            raise ContractViolation("collinear directions in angular sort")
        return -cr

    if len(items) <= 400:
        return [lab for lab, _ in sorted(items, key=cmp_to_key(cmp))]

    # float presort, then exact adjacent-pair verification with local repair
    def fkey(it: tuple[int, Point]) -> float:
        ang = math.atan2(it[1][1] - cy, it[1][0] - cx)
        return ang if ang >= 0 else ang + 2 * math.pi

    out = sorted(items, key=fkey)
    k = 1
    while k < len(out):
        if cmp(out[k - 1], out[k]) > 0:
            item = out.pop(k)
            pos = k - 1
            while pos > 0 and cmp(out[pos - 1], item) > 0:
                pos -= 1
            out.insert(pos, item)
            k = max(pos, 1)
        else:
            k += 1
    return [lab for lab, _ in out]


def radial_system_of(p: PointSet) -> RadialSystem:
    """Counterclockwise radial system of a point set, by exact angular sorting."""
    orders = {}
    for i in p.labels():
        items = [(j, p.point(j)) for j in p.labels() if j != i]
        orders[i] = CyclicOrder(_ccw_sorted_dirs(p.point(i), items))
    return RadialSystem(p.n, orders)


class DenseChirotope:
    """Orientation table over ordered label triples, stored for i < j < k."""

    MAX_N = 512

    def __init__(self, p: PointSet):
        if p.n > self.MAX_N:
            raise ContractViolation(f"dense chirotope capped at n={self.MAX_N}")
        self.n = p.n
        self._base: dict[tuple[int, int, int], int] = {}
        for i, j, k in itertools.combinations(p.labels(), 3):
            self._base[(i, j, k)] = orient(p, i, j, k)

    def sign(self, i: int, j: int, k: int) -> int:
        if len({i, j, k}) != 3:
            raise ContractViolation("sign needs three distinct labels")
        a, b, c = sorted((i, j, k))
        v = self._base[(a, b, c)]
        # permutation parity of (i, j, k) relative to sorted order
        inv = (i > j) + (i > k) + (j > k)
        return v if inv % 2 == 0 else -v


class PointChirotope:
    """Chirotope backed directly by a point set; no table."""

    def __init__(self, p: PointSet):
        self.n = p.n
        self._p = p

    def sign(self, i: int, j: int, k: int) -> int:
        return orient(self._p, i, j, k)


def chirotope_of(p: PointSet) -> DenseChirotope:
    return DenseChirotope(p)


def convex_hull(p: PointSet) -> DirectedCycle:
    """Counterclockwise convex hull cycle of the labels, via monotone chain."""
    labs = sorted(p.labels(), key=lambda i: p.point(i))
    if len(labs) < 3:
        raise ContractViolation("hull needs >= 3 points")

    def chain(seq: list[int]) -> list[int]:
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and orient_xy(
                p.point(out[-2]), p.point(out[-1]), p.point(i)
            ) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(labs)
    upper = chain(labs[::-1])
    return DirectedCycle(tuple(lower[:-1] + upper[:-1])).canonical()


def segments_cross(p: PointSet, a: int, b: int, c: int, d: int) -> bool:
    """Do segments ab and cd properly cross?  Assumes general position."""
    if len({a, b, c, d}) != 4:
        return False
    return (
        orient(p, a, b, c) != orient(p, a, b, d)
        and orient(p, c, d, a) != orient(p, c, d, b)
    )


def _wedge_membership(p: PointSet, a: int, b: int, c: int, v: int) -> Optional[int]:
    """Which vertex wedge of ccw triangle (a, b, c) contains v, or None.

    Returns the wedge apex label, or None when v is inside the triangle or in
    one of the three edge regions.
    """
    sab = orient(p, a, b, v)
    sbc = orient(p, b, c, v)
    sca = orient(p, c, a, v)
    neg = [s < 0 for s in (sab, sbc, sca)]
    if sum(neg) != 2:
        return None
    if not neg[1]:
        return a  # outside ab and ca, inside bc's halfplane
    if not neg[2]:
        return b
    return c


def important_sets_bruteforce(p: PointSet) -> list[DirectedCycle]:
    """All important sets of the point set's radial system, by direct enumeration.

    The convex hull is always important.  When the hull is a triangle, every
    empty triangle that partitions the rest into its three vertex wedges, with
    every same-wedge pair's line meeting the opposite edge, is important too.
    Inner triangles are emitted clockwise as realized: that is the orientation
    whose directed edges have all other labels to their left in the order type
    that has this triangle as its hull.
    """
    if p.n < 5:
        raise ContractViolation("important-set enumeration needs n >= 5")
    hull = convex_hull(p)
    out = [hull.canonical()]
    if len(hull) != 3:
        return out
    for a, b, c in itertools.combinations(p.labels(), 3):
        if orient(p, a, b, c) < 0:
            a, b = b, a
        if set((a, b, c)) == set(hull.verts):
            continue
        parts: dict[int, list[int]] = {a: [], b: [], c: []}
        ok = True
        for v in p.labels():
            if v in (a, b, c):
                continue
            w = _wedge_membership(p, a, b, c, v)
            if w is None:
                ok = False
                break
            parts[w].append(v)
        if not ok:
            continue
        opposite = {a: (b, c), b: (c, a), c: (a, b)}
        for apex, members in parts.items():
            e1, e2 = opposite[apex]
            for v, w in itertools.combinations(members, 2):
                # line through v and w must separate the opposite edge's endpoints
                if orient(p, v, w, e1) == orient(p, v, w, e2):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(DirectedCycle((a, c, b)).canonical())
    return out


@dataclass(frozen=True)
class K4Entry:
    crossing: Optional[tuple[tuple[int, int], tuple[int, int]]]
    compact: Optional[tuple[int, ...]]


_K4_BASE = [(0, 0), (9, 1), (8, 8), (1, 7)]          # convex position
_K4_TRI = [(0, 0), (12, 1), (5, 11), (5, 4)]         # triangle with one interior point
_K5_CONVEX = [(0, 0), (8, -2), (12, 5), (5, 10), (-3, 4)]
_K5_QUAD = [(0, 0), (11, 1), (9, 9), (-1, 8), (5, 4)]
_K5_TRI = [(0, 0), (14, 1), (6, 12), (6, 4), (5, 7)]


def _radial_of_config(pts: list[Point]) -> dict[int, tuple[int, ...]]:
    ps = PointSet(pts)
    orders = {}
    for i in ps.labels():
        items = [(j, ps.point(j)) for j in ps.labels() if j != i]
        orders[i] = tuple(_ccw_sorted_dirs(ps.point(i), items))
    return orders


@lru_cache(maxsize=1)
def catalog_k4() -> dict[tuple, K4Entry]:
    """All counterclockwise radial systems of 4 labeled points in general position.

    Each entry records the crossing edge pair (None for the triangle
    configuration) and, for convex position, the unique compact directed
    4-cycle.  Complete by construction: the two unlabeled 4-point order types
    under every label permutation.
    """
    catalog: dict[tuple, K4Entry] = {}
    for base in (_K4_BASE, _K4_TRI):
        for perm in itertools.permutations(range(4)):
            pts = [base[perm[k]] for k in range(4)]
            ps = PointSet(pts)
            orders = _radial_of_config(pts)
            key = _canonical_key(orders)
            crossing = None
            for (a, b), (c, d) in (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))):
                if segments_cross(ps, a, b, c, d):
                    crossing = ((a, b), (c, d))
                    break
            compact = tuple(convex_hull(ps).verts) if crossing is not None else None
            entry = K4Entry(crossing=crossing, compact=compact)
            prev = catalog.get(key)
            if prev is not None and prev != entry:
                raise AssertionError("inconsistent K4 catalog entries")
            catalog[key] = entry
    return catalog


@lru_cache(maxsize=1)
def catalog_k5() -> frozenset:
    """Canonical keys of every counterclockwise radial system of 5 labeled points.

    Complete by construction: the three unlabeled 5-point order types under
    every label permutation.
    """
    keys = set()
    for base in (_K5_CONVEX, _K5_QUAD, _K5_TRI):
        for perm in itertools.permutations(range(5)):
            pts = [base[perm[k]] for k in range(5)]
            keys.add(_canonical_key(_radial_of_config(pts)))
    return frozenset(keys)
