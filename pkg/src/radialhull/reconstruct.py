"""Incremental reconstruction of all important sets of a radial system.

The algorithm grows a hull structure over an increasing subset of the labels:
a compact cycle (Type 1), a compact cycle covered by a top vertex with marked
top triangles (Type 2), or two independent triangles (Type 3).  Insertions
cost O(1) amortized triple tests; a final linear pass extracts exactly the
important sets.  Every emitted cycle is oriented so that each directed edge
has all remaining labels to its left in the order type it is the hull of;
inner triangles therefore come out reversed relative to the orientation the
structure maintains internally.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .core import (
    Classification,
    ContractViolation,
    DirectedCycle,
    NotRealizable,
    RadialSystem,
    classify_against_cycle,
    crossing_pair,
    edges_cross,
    emanates_outside,
    find_compact_4cycle,
    quad_is_compact,
)


class Mark(Enum):
    UNEXAMINED = "unexamined"
    DIRTY = "dirty"
    EMPTY = "empty"


@dataclass
class Type1:
    cycle: DirectedCycle


@dataclass
class Type2:
    cycle: DirectedCycle
    top: int
    marks: dict[tuple[int, int], Mark]


@dataclass
class Type3:
    t1: DirectedCycle
    t2: DirectedCycle
    pairing: dict[int, int]


HullStructure = Type1 | Type2 | Type3


@dataclass
class StepResult:
    kind: str  # "continue" | "hull_edge" | "finalize_ready"
    structure: Optional[object] = None
    inserted: Optional[int] = None
    edge: Optional[tuple[int, int]] = None


@dataclass
class ReconstructionResult:
    n: int
    structure_type: int
    important_sets: list[DirectedCycle]
    triple_tests: int
    trace: list[dict]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "type": self.structure_type,
            "important_sets": [list(c.verts) for c in self.important_sets],
            "triple_tests": self.triple_tests,
            "trace": self.trace,
        }


class _Ring:
    """Doubly linked cyclic vertex list with O(1) neighbor access."""

    __slots__ = ("nxt", "prv")

    def __init__(self, verts: Sequence[int]):
        self.nxt: dict[int, int] = {}
        self.prv: dict[int, int] = {}
        m = len(verts)
        for k, v in enumerate(verts):
            self.nxt[v] = verts[(k + 1) % m]
            self.prv[v] = verts[k - 1]

    def __len__(self) -> int:
        return len(self.nxt)

    def __contains__(self, v: int) -> bool:
        return v in self.nxt

    def remove(self, v: int) -> None:
        p, s = self.prv[v], self.nxt[v]
        self.nxt[p] = s
        self.prv[s] = p
        del self.nxt[v]
        del self.prv[v]

    def insert_after(self, anchor: int, v: int) -> None:
        s = self.nxt[anchor]
        self.nxt[anchor] = v
        self.prv[v] = anchor
        self.nxt[v] = s
        self.prv[s] = v

    def to_cycle(self, start: Optional[int] = None) -> DirectedCycle:
        if start is None:
            start = min(self.nxt)
        out = [start]
        cur = self.nxt[start]
        while cur != start:
            out.append(cur)
            cur = self.nxt[cur]
        return DirectedCycle(tuple(out))


class _T1State:
    def __init__(self, cycle: DirectedCycle):
        self.ring = _Ring(cycle.verts)
        self.probe = min(cycle.verts)

    def cycle(self) -> DirectedCycle:
        return self.ring.to_cycle()


class _T2State:
    def __init__(self, cycle: DirectedCycle, top: int, first_edge: Optional[int] = None):
        self.ring = _Ring(cycle.verts)
        self.top = top
        self.marks: dict[tuple[int, int], Mark] = {}
        self.queue: deque[tuple[int, int]] = deque()
        start = first_edge if first_edge is not None else cycle.verts[0]
        v = start
        for _ in range(len(cycle)):
            e = (v, self.ring.nxt[v])
            self.marks[e] = Mark.UNEXAMINED
            self.queue.append(e)
            v = self.ring.nxt[v]

    def set_mark(self, edge: tuple[int, int], mark: Mark) -> None:
        self.marks[edge] = mark

    def add_edge(self, edge: tuple[int, int], mark: Mark) -> None:
        self.marks[edge] = mark
        if mark is Mark.UNEXAMINED:
            self.queue.append(edge)

    def cycle(self) -> DirectedCycle:
        return self.ring.to_cycle()


class _T3State:
    def __init__(self, t1: tuple[int, ...], t2: tuple[int, ...], pairing: dict[int, int]):
        self.t1 = tuple(t1)
        self.t2 = tuple(t2)
        self.pairing = dict(pairing)  # both directions

    def cycle1(self) -> DirectedCycle:
        return DirectedCycle(self.t1)

    def cycle2(self) -> DirectedCycle:
        return DirectedCycle(self.t2)


def _pairing_both_ways(pairs: Sequence[tuple[int, int]]) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, b in pairs:
        out[a] = b
        out[b] = a
    return out


def init_structure(r: RadialSystem) -> tuple[_T1State, set[int]]:
    """Compact 4-cycle among the first five labels, plus the pending label pool."""
    if r.n < 5:
        raise ContractViolation("reconstruction needs n >= 5")
    import itertools

    for quad in itertools.combinations(range(1, 6), 4):
        cyc = find_compact_4cycle(r, quad)
        if cyc is not None:
            pending = set(r.labels()) - set(cyc.verts)
            return _T1State(cyc), pending
    raise NotRealizable("init", "no compact 4-cycle among the first five labels")


def hull_from_edge(r: RadialSystem, a: int, b: int) -> DirectedCycle:
    """Walk the hull from a directed hull edge ab with all other labels to its left.

    The successor of a hull vertex v with incoming edge uv is the cyclic
    successor of u in the order around v; rank reads only.
    """
    walk = [a, b]
    seen = {a, b}
    incoming, cur = a, b
    while True:
        nxt = r.order(cur).succ(incoming)
        if nxt == a:
            if r.order(a).succ(cur) != b:
                raise NotRealizable("hull_walk", "walk does not close consistently")
            break
        if nxt in seen or len(walk) > r.n:
            raise NotRealizable("hull_walk", "walk failed to close")
        walk.append(nxt)
        seen.add(nxt)
        incoming, cur = cur, nxt
    return DirectedCycle(tuple(walk))


def _interval_walk(
    r: RadialSystem, ring: _Ring, start: int, v: int
) -> tuple[bool, int, int]:
    """Find the interval of cycle vertices whose edge to v emanates outside.

    Starts at `start`, which is assumed to be in the interval, and expands one
    step per side alternately so the cost is proportional to the interval.
    Returns (covers, left_end, right_end) with the interval running ccw from
    left_end to right_end.
    """
    members = {start}
    m = len(ring)
    left, right = start, start
    left_done = right_done = False
    while not (left_done and right_done):
        if not left_done:
            cand = ring.prv[left]
            if cand in members:
                return True, left, right
            if _emanates(r, ring, cand, v):
                members.add(cand)
                left = cand
            else:
                left_done = True
        if not right_done:
            cand = ring.nxt[right]
            if cand in members:
                return True, left, right
            if _emanates(r, ring, cand, v):
                members.add(cand)
                right = cand
            else:
                right_done = True
        if len(members) == m:
            return True, left, right
    return False, left, right


def _emanates(r: RadialSystem, ring: _Ring, ci: int, v: int) -> bool:
    return r.ccw_between(ci, ring.prv[ci], v, ring.nxt[ci])


def insert_type1(z: _T1State, r: RadialSystem, pending: set[int]) -> StepResult:
    """One Type-1 step: probe for an outside-emanating edge and insert or stop."""
    c = z.probe
    pred, succ = z.ring.prv[c], z.ring.nxt[c]
    v = r.order(c).succ(pred)
    if v == succ:
        # both edges at c lie on the hull of the full set
        return StepResult(kind="hull_edge", edge=(c, succ))
    if v not in pending:
        raise NotRealizable("type1", f"outside arc at {c} holds inserted label {v}")
    covers, left, right = _interval_walk(r, z.ring, c, v)
    if covers:
        top_state = _T2State(z.ring.to_cycle(start=c), v, first_edge=c)
        pending.discard(v)
        return StepResult(kind="continue", structure=top_state, inserted=v)
    # shrink the visible interval to its endpoints and splice v between them
    cur = z.ring.nxt[left]
    removed_probe = False
    while cur != right:
        nxt = z.ring.nxt[cur]
        if cur == z.probe:
            removed_probe = True
        z.ring.remove(cur)
        cur = nxt
    z.ring.insert_after(left, v)
    pending.discard(v)
    if removed_probe:
        z.probe = v
    return StepResult(kind="continue", structure=z, inserted=v)


def _scan_unexamined(
    z: _T2State, r: RadialSystem, pending: set[int], trace: list[dict]
) -> Optional[tuple[int, int]]:
    """Pop unexamined top triangles until one yields an insertable vertex.

    Marks triangles dirty or empty along the way.  Returns (p_k, finder) where
    finder is the cycle vertex whose probe found p_k, or None when everything
    is examined.
    """
    t = z.top
    while z.queue:
        edge = z.queue.popleft()
        ci, cj = edge
        if z.marks.get(edge) is not Mark.UNEXAMINED or z.ring.nxt.get(ci) != cj:
            continue
        v = r.order(ci).succ(t)
        if v != cj:
            if edges_cross(r, ci, v, t, cj):
                z.set_mark(edge, Mark.DIRTY)
                trace.append({"event": "t2_mark_dirty", "edge": [ci, cj]})
                continue
            return v, ci
        w = r.order(cj).succ(ci)
        if w != t:
            if edges_cross(r, cj, w, t, ci):
                z.set_mark(edge, Mark.DIRTY)
                trace.append({"event": "t2_mark_dirty", "edge": [ci, cj]})
                continue
            return w, cj
        z.set_mark(edge, Mark.EMPTY)
        trace.append({"event": "t2_mark_empty", "edge": [ci, cj]})
    return None


def _locate_covering_edge(
    r: RadialSystem, ring: _Ring, around: int, target: int
) -> tuple[int, int]:
    """The cycle edge (ca, cb) with `target` between ca and cb clockwise around `around`."""
    start = next(iter(ring.nxt))
    a = start
    while True:
        b = ring.nxt[a]
        if r.cw_between(around, a, target, b):
            return a, b
        a = b
        if a == start:
            raise NotRealizable("type2_cover", "covering vertex fits no cycle gap")


def insert_type2(z: _T2State, r: RadialSystem, pending: set[int], trace: list[dict]) -> StepResult:
    """One Type-2 step: scan unexamined triangles, then insert the found vertex."""
    t = z.top
    found = _scan_unexamined(z, r, pending, trace)
    if found is None:
        return StepResult(kind="finalize_ready", structure=z)
    v, finder = found
    if v not in pending:
        raise NotRealizable("type2", f"probe found inserted label {v}")
    covers, left, right = _interval_walk(r, z.ring, finder, v)
    if covers:
        return _insert_type2_covering(z, r, pending, trace, v)
    pred_l, succ_r = z.ring.prv[left], z.ring.nxt[right]
    # the new vertex may close the structure into a compact 4-cycle in one of
    # three specific arrangements; the precise cyclic order must be compact
    for tag, quad_order in (
        ("left", (v, t, pred_l, left)),
        ("right", (t, v, right, succ_r)),
    ):
        if quad_is_compact(r, quad_order):
            quad = DirectedCycle(quad_order).canonical()
            pending.discard(v)
            trace.append({"event": "t2_insert_edge", "side": tag, "cycle": list(quad.verts)})
            return StepResult(kind="continue", structure=_T1State(quad), inserted=v)
    if (
        z.ring.nxt[left] == right
        and edges_cross(r, t, v, left, right)
        and quad_is_compact(r, (t, left, v, right))
    ):
        quad = DirectedCycle((t, left, v, right)).canonical()
        pending.discard(v)
        trace.append({"event": "t2_insert_bridge", "cycle": list(quad.verts)})
        return StepResult(kind="continue", structure=_T1State(quad), inserted=v)
    # proper Type-2 update: v joins the cycle between the interval endpoints
    old_succ_left = z.ring.nxt[left]
    old_pred_right = z.ring.prv[right]
    interval = []
    cur = old_succ_left
    while cur != right:
        interval.append(cur)
        cur = z.ring.nxt[cur]
    chain = [left, *interval, right]
    for a, b in zip(chain, chain[1:]):
        z.marks.pop((a, b), None)
    for u in interval:
        z.ring.remove(u)
    z.ring.insert_after(left, v)
    left_dirty = edges_cross(r, left, v, t, old_succ_left)
    right_dirty = edges_cross(r, right, v, t, old_pred_right)
    z.add_edge((left, v), Mark.DIRTY if left_dirty else Mark.UNEXAMINED)
    z.add_edge((v, right), Mark.DIRTY if right_dirty else Mark.UNEXAMINED)
    pending.discard(v)
    trace.append({"event": "t2_insert", "label": v})
    return StepResult(kind="continue", structure=z, inserted=v)


def _insert_type2_covering(
    z: _T2State, r: RadialSystem, pending: set[int], trace: list[dict], v: int
) -> StepResult:
    t = z.top
    g_a, g_b = _locate_covering_edge(r, z.ring, t, v)
    h_a, h_b = _locate_covering_edge(r, z.ring, v, t)
    pending.discard(v)
    g_set, h_set = {g_a, g_b}, {h_a, h_b}
    if g_set == h_set:
        quad = None
        for cand in ((g_a, g_b, t, v), (g_a, g_b, v, t)):
            if quad_is_compact(r, cand):
                quad = DirectedCycle(cand).canonical()
                break
        if quad is None:
            raise NotRealizable("type2_cover", "no compact 4-cycle in same-gap case")
        trace.append({"event": "t2_cover_same", "cycle": list(quad.verts)})
        return StepResult(kind="continue", structure=_T1State(quad), inserted=v)
    common = g_set & h_set
    if not common:
        pairing = _pairing_both_ways([(v, t), (g_a, h_b), (g_b, h_a)])
        state = _T3State((v, g_a, g_b), (t, h_a, h_b), pairing)
        trace.append({"event": "t2_cover_disjoint", "t1": [v, g_a, g_b], "t2": [t, h_a, h_b]})
        return StepResult(kind="continue", structure=state, inserted=v)
    top = common.pop()
    quad = None
    for cand in ((t, v, g_a, h_b), (v, t, h_a, g_b)):
        if len(set(cand)) == 4 and quad_is_compact(r, cand):
            quad = DirectedCycle(cand).canonical()
            break
    if quad is None:
        raise NotRealizable("type2_cover", "no compact 4-cycle in shared-gap case")
    old_pair = tuple((g_set | h_set) - {top})
    state = _T2State(quad, top)
    dirty_edge = None
    for e in list(state.marks):
        if set(e) == set(old_pair):
            dirty_edge = e
            break
    if dirty_edge is None:
        raise NotRealizable("type2_cover", "old cycle vertices not adjacent in new cycle")
    state.set_mark(dirty_edge, Mark.DIRTY)
    state.queue = deque(e for e in state.queue if e != dirty_edge)
    trace.append({"event": "t2_cover_shared", "top": top, "cycle": list(quad.verts)})
    return StepResult(kind="continue", structure=state, inserted=v)


def insert_type3(z: _T3State, r: RadialSystem, pending: set[int], trace: list[dict]) -> StepResult:
    """One Type-3 step: classify the next pending label against both triangles.

    Evidence drives the update: a point inside both triangles changes nothing;
    a point breaking a triangle either forces four extreme points (compact
    4-cycle that still contains the other triangle), replaces a vertex of the
    broken triangle, converts the structure to Type 2, or lands in dead space
    already excluded from every important set.
    """
    p = min(pending)
    pending.discard(p)
    c1 = classify_against_cycle(r, z.cycle1(), p)
    c2 = classify_against_cycle(r, z.cycle2(), p)
    if c1 is Classification.INSIDE and c2 is Classification.INSIDE:
        trace.append({"event": "t3_skip", "label": p})
        return StepResult(kind="continue", structure=z, inserted=p)

    def contains_triangle(quad: DirectedCycle, tri: tuple[int, ...]) -> bool:
        return all(
            classify_against_cycle(r, quad, w) is Classification.INSIDE for w in tri
        )

    candidates = []
    if c1 is not Classification.INSIDE:
        candidates.append((z.t1, z.t2))
    if c2 is not Classification.INSIDE:
        candidates.append((z.t2, z.t1))
    for t_out, t_in in candidates:
        quad = find_compact_4cycle(r, (p, *t_out))
        if quad is not None and contains_triangle(quad, t_in):
            trace.append({"event": "t3_compact", "cycle": list(quad.verts)})
            return StepResult(kind="continue", structure=_T1State(quad), inserted=p)
    for t_out, t_in in candidates:
        interior_slots = []
        for slot, x in enumerate(t_out):
            cand = list(t_out)
            cand[slot] = p
            if classify_against_cycle(r, DirectedCycle(tuple(cand)), x) is Classification.INSIDE:
                interior_slots.append((slot, x))
        # replacement: the displaced vertex must really sit inside a compact
        # 4-cycle through p, a structure vertex, and two partners
        for slot, x in interior_slots:
            y, zz = (t_out[(slot + 1) % 3], t_out[(slot + 2) % 3])
            xp, yp, zp = z.pairing[x], z.pairing[y], z.pairing[zz]
            for quad_set in ((p, zz, zp, xp), (p, y, yp, xp)):
                q = find_compact_4cycle(r, quad_set)
                if q is not None and classify_against_cycle(r, q, x) is Classification.INSIDE:
                    new_t_out = list(t_out)
                    new_t_out[slot] = p
                    pairing = dict(z.pairing)
                    del pairing[x]
                    pairing[p] = xp
                    pairing[xp] = p
                    if t_out == z.t1:
                        state = _T3State(tuple(new_t_out), z.t2, pairing)
                    else:
                        state = _T3State(z.t1, tuple(new_t_out), pairing)
                    trace.append({"event": "t3_replace", "out": x, "in": p})
                    return StepResult(kind="continue", structure=state, inserted=p)
        for slot, x in interior_slots:
            y, zz = (t_out[(slot + 1) % 3], t_out[(slot + 2) % 3])
            xp, yp, zp = z.pairing[x], z.pairing[y], z.pairing[zz]
            for quad_set, top, t_in_vertex in (((p, x, zp, y), zz, zp), ((p, x, yp, zz), y, yp)):
                quad = find_compact_4cycle(r, quad_set)
                if quad is None:
                    continue
                if classify_against_cycle(r, quad, top) is not Classification.COVERS:
                    continue
                state = _T2State(quad, top)
                for e in list(state.marks):
                    if t_in_vertex in e:
                        state.set_mark(e, Mark.DIRTY)
                state.queue = deque(e for e in state.queue if state.marks[e] is Mark.UNEXAMINED)
                trace.append({"event": "t3_to_type2", "top": top, "cycle": list(quad.verts)})
                return StepResult(kind="continue", structure=state, inserted=p)
    # p broke a candidate triangle without creating a structure of its own
    trace.append({"event": "t3_dead_space", "label": p})
    return StepResult(kind="continue", structure=z, inserted=p)


# ---------------------------------------------------------------------------
# Finalization


def _radial_rotation(r: RadialSystem, t: int) -> list[int]:
    return list(r.order(t).seq)


def _find_wedges(rotation: list[int], cycle: DirectedCycle) -> tuple[dict[int, int], list[int]]:
    """Assign every non-cycle rotation element to the cycle edge whose angular
    wedge (seen from the top vertex) contains it.

    The cycle vertices must appear in reverse cycle order within the rotation;
    returns (wedge index per hidden label, rotation rotated to start at a cycle
    vertex).
    """
    m = len(cycle)
    idx = {v: k for k, v in enumerate(cycle.verts)}
    start = None
    for k, lab in enumerate(rotation):
        if lab in idx:
            start = k
            break
    if start is None:
        raise NotRealizable("finalize2", "no cycle vertex in rotation")
    rot = rotation[start:] + rotation[:start]
    wedges: dict[int, int] = {}
    expected = idx[rot[0]]
    seen = 0
    cur_edge = (expected - 1) % m
    for lab in rot[1:]:
        if lab in idx:
            nxt = (expected - 1) % m
            if idx[lab] != nxt:
                raise NotRealizable("finalize2", "cycle order scrambled around top vertex")
            expected = nxt
            seen += 1
            cur_edge = (expected - 1) % m
        else:
            wedges[lab] = cur_edge
    if seen != m - 1:
        raise NotRealizable("finalize2", "cycle vertices missing around top vertex")
    return wedges, rot


class _QuadOps:
    """Geometry callbacks the Type-2 finalizer needs, radial or chirotope backed."""

    def __init__(self, crosses, compact_quad, inside_quad):
        self.crosses = crosses
        self.compact_quad = compact_quad
        self.inside_quad = inside_quad


def _radial_quad_ops(r: RadialSystem) -> _QuadOps:
    def crosses(a, b, c, d):
        return edges_cross(r, a, b, c, d)

    def compact_quad(labels):
        return find_compact_4cycle(r, labels)

    def inside_quad(v, quad):
        return classify_against_cycle(r, quad, v) is Classification.INSIDE

    return _QuadOps(crosses, compact_quad, inside_quad)


def finalize_type2_core(
    rotation: list[int],
    cycle: DirectedCycle,
    top: int,
    ops: _QuadOps,
) -> list[tuple[int, int]]:
    """Surviving cycle edges whose top triangles are important.

    Walks every consecutive pair of the rotation around the top vertex; a pair
    removes the edge of its angular wedge if the wedge triangle properly
    intersects it, then spreading removals rule out every edge whose top
    triangle fits in a compact 4-cycle with the pair and the top vertex.
    """
    t = top
    m = len(cycle)
    verts = cycle.verts
    wedges, rot = _find_wedges(rotation, cycle)
    vert_index = {v: k for k, v in enumerate(verts)}
    alive = [True] * m
    live_count = m
    prv_ptr = [(k - 1) % m for k in range(m)]
    nxt_ptr = [(k + 1) % m for k in range(m)]

    def kill(e: int) -> None:
        nonlocal live_count
        alive[e] = False
        live_count -= 1

    def live_step(e: int, ptr: list[int]) -> Optional[int]:
        cur = ptr[e]
        hops = 0
        while not alive[cur]:
            cur = ptr[cur]
            hops += 1
            if hops > m:
                return None
        return cur if cur != e else None

    def edge_labels(e: int) -> tuple[int, int]:
        return verts[e], verts[(e + 1) % m]

    def rule_out(e: int, x: int, y: int) -> bool:
        # a compact quad on {top, pair, one endpoint} containing the other endpoint
        ca, cb = edge_labels(e)
        for corner, other in ((ca, cb), (cb, ca)):
            four = {t, x, y, corner}
            if len(four) != 4:
                continue
            quad = ops.compact_quad(tuple(sorted(four)))
            if quad is None:
                continue
            if other in (x, y) or ops.inside_quad(other, quad):
                return True
        return False

    def spread(e: int, x: int, y: int) -> None:
        for ptr in (prv_ptr, nxt_ptr):
            cur = live_step(e, ptr)
            while cur is not None and live_count > 0 and rule_out(cur, x, y):
                follow = live_step(cur, ptr)
                kill(cur)
                cur = follow

    def wedge_of(lab: int) -> int:
        if lab in vert_index:
            return (vert_index[lab] - 1) % m
        return wedges[lab]

    def intersects(e: int, x: int, y: int) -> bool:
        ca, cb = edge_labels(e)
        for p, q in ((t, x), (t, y), (x, y)):
            if len({p, q, ca, cb}) == 4 and ops.crosses(p, q, ca, cb):
                return True
        return False

    n_rot = len(rot)
    for k in range(n_rot):
        x, y = rot[k], rot[(k + 1) % n_rot]
        e = wedge_of(x)
        if alive[e]:
            if intersects(e, x, y):
                kill(e)
                spread(e, x, y)
        else:
            spread(e, x, y)
        if live_count == 0:
            raise NotRealizable("finalize2", "every top triangle was ruled out")
    return [edge_labels(e) for e in range(m) if alive[e]]


def finalize_type2(z: _T2State, r: RadialSystem, trace: list[dict]) -> list[DirectedCycle]:
    """Exactly the top triangles not contained in any compact 4-cycle, emitted
    in the all-labels-left orientation."""
    cycle = z.cycle()
    survivors = finalize_type2_core(
        _radial_rotation(r, z.top), cycle, z.top, _radial_quad_ops(r)
    )
    trace.append({"event": "finalize_type2", "survivors": [list(e) for e in survivors]})
    out = []
    for ca, cb in survivors:
        out.append(DirectedCycle((ca, cb, z.top)).canonical())
    return out


def _arc_sequences(
    r: RadialSystem, tri: tuple[int, int, int], pairing: dict[int, int]
) -> tuple[Optional[dict[int, list[int]]], Optional[tuple]]:
    """Wedge occupant sequences of `tri` from the radial arcs its edges bound.

    For each directed edge (u, w) with opposite vertex o and partner o', the
    occupants of o's wedge appear strictly between o and o' clockwise around u
    and counterclockwise around w, in the same order.  Returns (sets, None) on
    consistency and (None, conflict) on an order conflict, where conflict is
    (u, w, v1, v2) naming a mismatched pair.
    """
    a, b, c = tri
    sets: dict[int, list[int]] = {}
    for u, w, o in ((a, b, c), (b, c, a), (c, a, b)):
        op = pairing[o]
        seq_u = list(reversed(r.order(u).slice_between(op, o)))
        seq_w = r.order(w).slice_between(o, op)
        if seq_u != seq_w:
            limit = min(len(seq_u), len(seq_w))
            pos = next((k for k in range(limit) if seq_u[k] != seq_w[k]), None)
            if pos is None:
                # one arc is a strict prefix of the other: no mismatched pair
                return None, (u, w, None, None)
            return None, (u, w, seq_u[pos], seq_w[pos])
        sets[o] = seq_u
    return sets, None


def _triangle_dead(r: RadialSystem, tri: tuple[int, int, int], witness: int) -> bool:
    """Can `witness` rule the triangle out as an important set?"""
    if crossing_pair(r, (*tri, witness)) is not None:
        return True
    cls = classify_against_cycle(r, DirectedCycle(tri), witness)
    return cls is not Classification.INSIDE


def _inner_eval(
    r: RadialSystem, tri: tuple[int, int, int], other: tuple[int, int, int],
    pairing: dict[int, int], n: int,
):
    """Evaluate `tri` as an inner important triangle with `other` on the hull.

    Returns ("ok", None) | ("dead", None) | ("conflict", quad_labels).
    """
    sets, conflict = _arc_sequences(r, tri, pairing)
    if conflict is not None:
        u, w, v1, v2 = conflict
        if v1 is not None and v2 is not None and len({u, w, v1, v2}) == 4:
            quad = find_compact_4cycle(r, (u, w, v1, v2))
            if quad is not None:
                return "conflict", quad
        return "dead", None
    members = set()
    for occupants in sets.values():
        members.update(occupants)
    expected = set(range(1, n + 1)) - set(tri) - set(other)
    if members != expected or sum(len(s) for s in sets.values()) != len(members):
        witness = next(iter(expected - members), None)
        if witness is not None and _triangle_dead(r, tri, witness):
            return "dead", None
        return "dead", None
    return "ok", None


def finalize_type3(z: _T3State, r: RadialSystem, trace: list[dict]) -> list[DirectedCycle]:
    """Which of the two independent triangles are important: one or both."""
    n = r.n
    res1, quad1 = _inner_eval(r, z.t1, z.t2, z.pairing, n)
    if res1 == "conflict":
        third = next(x for x in z.t1 if x not in quad1.verts)
        t1_in_quad = classify_against_cycle(r, quad1, third) is Classification.INSIDE
        chosen = [DirectedCycle(z.t2 if t1_in_quad else z.t1)]
        trace.append({"event": "finalize_type3", "kept": [list(c.verts) for c in chosen]})
        return [c.canonical() for c in chosen]
    if res1 == "dead":
        res2, _ = _inner_eval(r, z.t2, z.t1, z.pairing, n)
        if res2 == "dead":
            raise NotRealizable("finalize3", "neither independent triangle survives")
        chosen = [DirectedCycle(z.t2)]
        trace.append({"event": "finalize_type3", "kept": [list(z.t2)]})
        return [c.canonical() for c in chosen]
    res2, quad2 = _inner_eval(r, z.t2, z.t1, z.pairing, n)
    if res2 == "ok":
        trace.append({"event": "finalize_type3", "kept": [list(z.t1), list(z.t2)]})
        return [DirectedCycle(z.t1).canonical(), DirectedCycle(z.t2).canonical()]
    if res2 == "conflict":
        third = next(x for x in z.t2 if x not in quad2.verts)
        t2_in_quad = classify_against_cycle(r, quad2, third) is Classification.INSIDE
        chosen = [DirectedCycle(z.t1 if t2_in_quad else z.t2)]
        trace.append({"event": "finalize_type3", "kept": [list(c.verts) for c in chosen]})
        return [c.canonical() for c in chosen]
    trace.append({"event": "finalize_type3", "kept": [list(z.t1)]})
    return [DirectedCycle(z.t1).canonical()]


# ---------------------------------------------------------------------------
# Driver


def _structure_of(state) -> HullStructure:
    if isinstance(state, _T1State):
        return Type1(state.cycle())
    if isinstance(state, _T2State):
        return Type2(state.cycle(), state.top, dict(state.marks))
    return Type3(state.cycle1(), state.cycle2(), dict(state.pairing))


def _type_of(state) -> int:
    if isinstance(state, _T1State):
        return 1
    if isinstance(state, _T2State):
        return 2
    return 3


def compute_important_sets(r: RadialSystem) -> ReconstructionResult:
    """Run initialization, the insertion loop, and finalization.

    Emits every important set as a cycle whose directed edges have all other
    labels to their left, rotated to start at the smallest label.  Records the
    triple-test count and a phase-transition trace.  Raises NotRealizable when
    any stage detects the input cannot be a radial system of an order type.
    """
    start_tests = r.triple_tests
    trace: list[dict] = []
    state, pending = init_structure(r)
    trace.append({"event": "init", "cycle": list(state.cycle().verts)})
    guard = 0
    limit = 12 * r.n + 64
    important: Optional[list[DirectedCycle]] = None
    while True:
        guard += 1
        if guard > limit:
            raise NotRealizable("loop", "insertion loop failed to make progress")
        cur_type = _type_of(state)
        if isinstance(state, _T1State):
            if not pending:
                important = [state.cycle().canonical()]
                break
            step = insert_type1(state, r, pending)
            if step.kind == "hull_edge":
                a, b = step.edge
                trace.append({"event": "t1_hull_edge", "edge": [a, b]})
                important = [hull_from_edge(r, a, b).canonical()]
                break
            if step.inserted is not None and isinstance(step.structure, _T1State):
                trace.append({"event": "t1_insert", "label": step.inserted})
        elif isinstance(state, _T2State):
            step = insert_type2(state, r, pending, trace)
            if step.kind == "finalize_ready":
                important = finalize_type2(state, r, trace)
                break
        else:
            if not pending:
                important = finalize_type3(state, r, trace)
                break
            step = insert_type3(state, r, pending, trace)
        new_state = step.structure
        if _type_of(new_state) != cur_type:
            trace.append({"event": "phase", "from": cur_type, "to": _type_of(new_state)})
        state = new_state
    if not important or len(important) > r.n - 1:
        raise NotRealizable("finalize", f"{len(important or [])} important sets violates bounds")
    return ReconstructionResult(
        n=r.n,
        structure_type=_type_of(state),
        important_sets=sorted(important, key=lambda c: c.verts),
        triple_tests=r.triple_tests - start_tests,
        trace=trace,
    )
