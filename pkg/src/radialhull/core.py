"""Radial systems with O(1) counted triple tests and the combinatorial predicates built on them.

Labels are dense 1-based integers.  A radial system stores, for each label i,
the counterclockwise cyclic order of all other labels around i together with a
rank index, so the relative order of any three labels around a fourth is a
constant-time query.  Those queries ("triple tests") are the only counted
operations; rank reads such as successor lookups are free.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence


class RadialHullError(Exception):
    """Base class for errors raised by this package."""


class ContractViolation(RadialHullError):
    """An operation was called with arguments outside its contract."""


class NotRealizable(RadialHullError):
    """The input cannot be the radial system of an abstract order type.

    Carries the pipeline stage that detected the inconsistency.
    """

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"{stage}: {detail}" if detail else stage)


class ParseError(RadialHullError):
    """Malformed input file; `line` is 1-based."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class Classification(Enum):
    COVERS = "covers"
    INSIDE = "inside"
    OUTSIDE = "outside"


class _Counter:
    """Monotone triple-test tally, safe under concurrent increments."""

    __slots__ = ("_lock", "_value")

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._value = 0

    def increment(self) -> None:
        with self._lock:
            self._value += 1

    @property
    def value(self) -> int:
        with self._lock:
            return self._value


class CyclicOrder:
    """A cyclic permutation of distinct labels with an O(1) rank index."""

    __slots__ = ("seq", "rank")

    def __init__(self, seq: Sequence[int]):
        self.seq = tuple(seq)
        if len(set(self.seq)) != len(self.seq):
            raise ContractViolation(f"cyclic order has repeated labels: {seq}")
        self.rank = {label: pos for pos, label in enumerate(self.seq)}

    def __len__(self) -> int:
        return len(self.seq)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicOrder):
            return NotImplemented
        return self.cyclic_equal(other)

    def __hash__(self):
        return hash(self.rotated_to(min(self.seq)).seq if self.seq else ())

    def position(self, label: int) -> int:
        return self.rank[label]

    def succ(self, label: int) -> int:
        return self.seq[(self.rank[label] + 1) % len(self.seq)]

    def pred(self, label: int) -> int:
        return self.seq[(self.rank[label] - 1) % len(self.seq)]

    def between(self, a: int, b: int, c: int) -> bool:
        """True iff sweeping ccw from a meets b before c.  Pure rank math."""
        m = len(self.seq)
        ra = self.rank[a]
        return (self.rank[b] - ra) % m < (self.rank[c] - ra) % m

    def slice_between(self, a: int, b: int) -> list[int]:
        """Labels strictly between a and b going ccw."""
        m = len(self.seq)
        ra, rb = self.rank[a], self.rank[b]
        return [self.seq[(ra + k) % m] for k in range(1, (rb - ra) % m)]

    def reversed_order(self) -> "CyclicOrder":
        return CyclicOrder(tuple(reversed(self.seq)))

    def rotated_to(self, label: int) -> "CyclicOrder":
        r = self.rank[label]
        return CyclicOrder(self.seq[r:] + self.seq[:r])

    def cyclic_equal(self, other: "CyclicOrder") -> bool:
        if len(self.seq) != len(other.seq):
            return False
        if not self.seq:
            return True
        start = self.seq[0]
        if start not in other.rank:
            return False
        return self.seq == other.rotated_to(start).seq

    def insert_after(self, label: int, new: int) -> "CyclicOrder":
        r = self.rank[label]
        return CyclicOrder(self.seq[: r + 1] + (new,) + self.seq[r + 1 :])

    def __repr__(self) -> str:
        return f"CyclicOrder({list(self.seq)})"


def _check_orders(n: int, orders: dict[int, CyclicOrder]) -> None:
    if n < 3:
        raise ContractViolation(f"need n >= 3, got {n}")
    for i in range(1, n + 1):
        o = orders.get(i)
        if o is None:
            raise ContractViolation(f"missing order for label {i}")
        if len(o) != n - 1 or i in o.rank:
            raise ContractViolation(f"order around {i} is not a permutation of the others")


class RadialSystem:
    """Counterclockwise radial system: one CyclicOrder per label, plus a triple-test tally."""

    def __init__(self, n: int, orders: dict[int, CyclicOrder]):
        _check_orders(n, orders)
        self.n = n
        self.orders = dict(orders)
        self._counter = _Counter()

    @classmethod
    def from_sequences(cls, seqs: dict[int, Sequence[int]]) -> "RadialSystem":
        return cls(len(seqs), {i: CyclicOrder(s) for i, s in seqs.items()})

    @property
    def triple_tests(self) -> int:
        return self._counter.value

    def labels(self) -> range:
        return range(1, self.n + 1)

    def order(self, i: int) -> CyclicOrder:
        return self.orders[i]

    def _validate(self, i: int, args: tuple[int, ...]) -> None:
        if i < 1 or i > self.n:
            raise ContractViolation(f"label {i} out of range")
        seen = set(args)
        if len(seen) != len(args) or i in seen:
            raise ContractViolation(f"labels must be distinct: center {i}, args {args}")
        for x in args:
            if x < 1 or x > self.n:
                raise ContractViolation(f"label {x} out of range")

    def ccw_between(self, i: int, a: int, b: int, c: int) -> bool:
        """One counted triple test: sweeping ccw around i from a, is b met before c?"""
        self._validate(i, (a, b, c))
        self._counter.increment()
        return self.orders[i].between(a, b, c)

    def cw_between(self, i: int, a: int, b: int, c: int) -> bool:
        """Sweeping clockwise around i from a, is b met before c?  One counted test."""
        return self.ccw_between(i, c, b, a)

    def gap_and_witness(self, i: int, a: int, b: int) -> tuple[int, Optional[int]]:
        """Count of labels strictly between a and b ccw around i, and the first of them.

        Rank reads only; does not count as a triple test.
        """
        self._validate(i, (a, b))
        o = self.orders[i]
        m = len(o.seq)
        gap = (o.rank[b] - o.rank[a]) % m - 1
        if gap <= 0:
            return 0, None
        return gap, o.seq[(o.rank[a] + 1) % m]

    def copy(self) -> "RadialSystem":
        return RadialSystem(self.n, self.orders)


class UndirectedRadialSystem:
    """Radial system whose individual orders are only known up to reversal."""

    def __init__(self, n: int, orders: dict[int, CyclicOrder]):
        _check_orders(n, orders)
        self.n = n
        self.orders = dict(orders)
        self._counter = _Counter()

    @classmethod
    def from_radial(cls, r: RadialSystem) -> "UndirectedRadialSystem":
        return cls(r.n, r.orders)

    @property
    def triple_tests(self) -> int:
        return self._counter.value

    def order(self, i: int) -> CyclicOrder:
        return self.orders[i]

    def ccw_between(self, i: int, a: int, b: int, c: int) -> bool:
        """Triple test against the stored direction of the order around i."""
        if i < 1 or i > self.n:
            raise ContractViolation(f"label {i} out of range")
        if len({a, b, c, i}) != 4:
            raise ContractViolation("labels must be distinct")
        self._counter.increment()
        return self.orders[i].between(a, b, c)


def reverse_one(u: UndirectedRadialSystem, i: int) -> UndirectedRadialSystem:
    """New system with the order around i reversed, all others unchanged."""
    if i < 1 or i > u.n:
        raise ContractViolation(f"label {i} out of range")
    orders = dict(u.orders)
    orders[i] = orders[i].reversed_order()
    return UndirectedRadialSystem(u.n, orders)


@dataclass(frozen=True)
class DirectedCycle:
    """Cyclic vertex sequence, counterclockwise with the interior to its left."""

    verts: tuple[int, ...]

    def __post_init__(self):
        if len(self.verts) < 3:
            raise ContractViolation(f"cycle needs >= 3 vertices: {self.verts}")
        if len(set(self.verts)) != len(self.verts):
            raise ContractViolation(f"cycle has repeated vertices: {self.verts}")

    def __len__(self) -> int:
        return len(self.verts)

    def __iter__(self):
        return iter(self.verts)

    def index(self, v: int) -> int:
        return self.verts.index(v)

    def pred(self, v: int) -> int:
        return self.verts[self.verts.index(v) - 1]

    def succ(self, v: int) -> int:
        return self.verts[(self.verts.index(v) + 1) % len(self.verts)]

    def canonical(self) -> "DirectedCycle":
        """Rotated so the smallest label comes first."""
        k = self.verts.index(min(self.verts))
        return DirectedCycle(self.verts[k:] + self.verts[:k])

    def reversed_cycle(self) -> "DirectedCycle":
        return DirectedCycle(tuple(reversed(self.verts)))

    def edges(self) -> list[tuple[int, int]]:
        vs = self.verts
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]


def emanates_outside(r: RadialSystem, cycle: DirectedCycle, ci: int, v: int) -> bool:
    """Does the edge ci-v leave the cycle on its exterior side?

    One triple test: v between the cycle predecessor and successor of ci,
    counterclockwise around ci.
    """
    if ci not in cycle.verts:
        raise ContractViolation(f"{ci} is not on the cycle")
    return r.ccw_between(ci, cycle.pred(ci), v, cycle.succ(ci))


def classify_against_cycle(r: RadialSystem, cycle: DirectedCycle, w: int) -> Classification:
    """COVERS if every cycle spoke to w emanates outside, INSIDE if none does."""
    if w in cycle.verts:
        raise ContractViolation(f"{w} is on the cycle")
    out = sum(1 for c in cycle.verts if emanates_outside(r, cycle, c, w))
    if out == len(cycle):
        return Classification.COVERS
    if out == 0:
        return Classification.INSIDE
    return Classification.OUTSIDE


def induced_cycle_around(r, center: int, others: Sequence[int]) -> tuple[int, ...]:
    """Cyclic order of `others` around `center`, built from counted triple tests.

    len(others) - 2 tests; accepts directed and undirected systems.
    """
    others = list(others)
    if len(others) < 3:
        raise ContractViolation("need at least three labels")
    order = [others[0], others[1]]
    for x in others[2:]:
        # insertion by betweenness relative to the first element
        placed = False
        for pos in range(1, len(order)):
            if r.ccw_between(center, order[0], x, order[pos]):
                order.insert(pos, x)
                placed = True
                break
        if not placed:
            order.append(x)
    return tuple(order)


def _canonical_key(orders: dict[int, tuple[int, ...]]) -> tuple:
    """Catalog key: each order rotated to start at its smallest label, in label order."""
    parts = []
    for i in sorted(orders):
        seq = orders[i]
        k = seq.index(min(seq))
        parts.append(seq[k:] + seq[:k])
    return tuple(parts)


def induced_key(r, labels: Sequence[int]) -> tuple:
    """Canonical catalog key of the sub-system induced on `labels` (counted tests)."""
    labels = sorted(labels)
    relabel = {orig: k + 1 for k, orig in enumerate(labels)}
    orders = {}
    for center in labels:
        others = [x for x in labels if x != center]
        cyc = induced_cycle_around(r, center, others)
        orders[relabel[center]] = tuple(relabel[x] for x in cyc)
    return _canonical_key(orders)


def crossing_pair(r, labels: Sequence[int]):
    """The unique crossing pair of vertex-disjoint edges of the K4 on `labels`, or None.

    Matched against the machine-derived K4 catalog; raises NotRealizable when the
    induced system is not that of four points in general position.
    """
    labels = sorted(set(labels))
    if len(labels) != 4:
        raise ContractViolation(f"crossing_pair needs 4 distinct labels, got {labels}")
    from . import oracle

    entry = oracle.catalog_k4().get(induced_key(r, labels))
    if entry is None:
        raise NotRealizable("k4", f"labels {labels} induce no 4-point order type")
    if entry.crossing is None:
        return None
    (a, b), (c, d) = entry.crossing
    back = {k + 1: orig for k, orig in enumerate(labels)}
    e1 = tuple(sorted((back[a], back[b])))
    e2 = tuple(sorted((back[c], back[d])))
    return tuple(sorted((e1, e2)))


def edges_cross(r, p: int, q: int, s: int, t: int) -> bool:
    """Do edges pq and st (vertex-disjoint) cross?  False on any shared label."""
    if len({p, q, s, t}) != 4:
        return False
    pair = crossing_pair(r, (p, q, s, t))
    return pair == tuple(sorted((tuple(sorted((p, q))), tuple(sorted((s, t))))))


def find_compact_4cycle(r, labels: Sequence[int]) -> Optional[DirectedCycle]:
    """The unique compact directed 4-cycle on `labels`, or None if they are not in convex position."""
    labels = sorted(set(labels))
    if len(labels) != 4:
        raise ContractViolation(f"need 4 distinct labels, got {labels}")
    from . import oracle

    entry = oracle.catalog_k4().get(induced_key(r, labels))
    if entry is None:
        raise NotRealizable("k4", f"labels {labels} induce no 4-point order type")
    if entry.compact is None:
        return None
    back = {k + 1: orig for k, orig in enumerate(labels)}
    return DirectedCycle(tuple(back[v] for v in entry.compact)).canonical()


def quad_is_compact(r, quad: Sequence[int]) -> bool:
    """Is this specific directed 4-cycle (pairing and direction included) compact?"""
    if len(set(quad)) != 4:
        raise ContractViolation(f"need 4 distinct labels, got {quad}")
    found = find_compact_4cycle(r, quad)
    return found is not None and _cycles_equal(found, DirectedCycle(tuple(quad)))


def is_compact_cycle(r: RadialSystem, cycle: DirectedCycle) -> bool:
    """Is the cycle plane with every diagonal emanating to its inside?

    O(|C|^2) triple tests; intended for constant-size cycles on hot paths.
    """
    m = len(cycle)
    if m < 4:
        raise ContractViolation("compact cycles have at least 4 vertices")
    if m == 4:
        found = find_compact_4cycle(r, cycle.verts)
        return found is not None and _cycles_equal(found, cycle)
    edges = cycle.edges()
    for i in range(m):
        for j in range(i + 1, m):
            a, b = edges[i]
            c, d = edges[j]
            if len({a, b, c, d}) < 4:
                continue
            if edges_cross(r, a, b, c, d):
                return False
    for v in cycle.verts:
        for w in cycle.verts:
            if w in (v, cycle.pred(v), cycle.succ(v)):
                continue
            if emanates_outside(r, cycle, v, w):
                return False
    return True


def _cycles_equal(a: DirectedCycle, b: DirectedCycle) -> bool:
    return a.canonical().verts == b.canonical().verts


def restrict(r, labels: Iterable[int]) -> tuple["RadialSystem", dict[int, int]]:
    """Induced radial system on `labels`, relabeled 1..|S|; returns the label map.

    Artifact plumbing: reads the stored orders directly, uncounted.
    """
    labels = sorted(set(labels))
    if len(labels) < 4:
        raise ContractViolation(f"restrict needs at least 4 labels, got {len(labels)}")
    keep = set(labels)
    relabel = {orig: k + 1 for k, orig in enumerate(labels)}
    orders = {}
    for orig in labels:
        seq = [relabel[x] for x in r.orders[orig].seq if x in keep]
        orders[relabel[orig]] = CyclicOrder(seq)
    out = RadialSystem(len(labels), orders)
    return out, relabel
