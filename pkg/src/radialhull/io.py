"""Text formats: "radial v1", "radial-undirected v1", and "points v1".

All three are line-oriented: a header line, an `n <N>` line, then one line per
label in increasing order.  Parsers reject malformed input with a 1-based line
number in the error.
"""

from __future__ import annotations

from .core import CyclicOrder, ParseError, RadialSystem, UndirectedRadialSystem
from .oracle import PointSet

RADIAL_HEADER = "radial v1"
UNDIRECTED_HEADER = "radial-undirected v1"
POINTS_HEADER = "points v1"


def _read_lines(text: str) -> list[str]:
    return text.splitlines()


def _parse_n(lines: list[str]) -> int:
    if len(lines) < 2:
        raise ParseError(2, "missing 'n <N>' line")
    parts = lines[1].split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise ParseError(2, f"expected 'n <N>', got {lines[1]!r}")
    return int(parts[1])


def _parse_orders(lines: list[str], n: int) -> dict[int, CyclicOrder]:
    if len(lines) < 2 + n:
        raise ParseError(len(lines) + 1, f"expected {n} order lines")
    orders: dict[int, CyclicOrder] = {}
    for k in range(n):
        lineno = 3 + k
        raw = lines[2 + k]
        head, sep, rest = raw.partition(":")
        if not sep:
            raise ParseError(lineno, "missing ':' separator")
        if not head.strip().isdigit() or int(head) != k + 1:
            raise ParseError(lineno, f"expected label {k + 1}, got {head.strip()!r}")
        try:
            labels = [int(tok) for tok in rest.split()]
        except ValueError:
            raise ParseError(lineno, "labels must be decimal integers") from None
        expected = set(range(1, n + 1)) - {k + 1}
        if len(labels) != len(set(labels)):
            dup = next(x for x in labels if labels.count(x) > 1)
            raise ParseError(lineno, f"duplicate label {dup}")
        if set(labels) != expected:
            missing = sorted(expected - set(labels))
            extra = sorted(set(labels) - expected)
            what = f"missing {missing}" if missing else f"unexpected {extra}"
            raise ParseError(lineno, f"order around {k + 1} is not a permutation: {what}")
        orders[k + 1] = CyclicOrder(labels)
    return orders


def parse_radial(text: str) -> RadialSystem:
    lines = _read_lines(text)
    if not lines or lines[0].strip() != RADIAL_HEADER:
        raise ParseError(1, f"expected header {RADIAL_HEADER!r}")
    n = _parse_n(lines)
    return RadialSystem(n, _parse_orders(lines, n))


def parse_undirected(text: str) -> UndirectedRadialSystem:
    lines = _read_lines(text)
    if not lines or lines[0].strip() != UNDIRECTED_HEADER:
        raise ParseError(1, f"expected header {UNDIRECTED_HEADER!r}")
    n = _parse_n(lines)
    return UndirectedRadialSystem(n, _parse_orders(lines, n))


def format_radial(r: RadialSystem) -> str:
    lines = [RADIAL_HEADER, f"n {r.n}"]
    for i in range(1, r.n + 1):
        lines.append(f"{i}: " + " ".join(str(x) for x in r.order(i).seq))
    return "\n".join(lines) + "\n"


def format_undirected(u: UndirectedRadialSystem) -> str:
    lines = [UNDIRECTED_HEADER, f"n {u.n}"]
    for i in range(1, u.n + 1):
        lines.append(f"{i}: " + " ".join(str(x) for x in u.order(i).seq))
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> PointSet:
    lines = _read_lines(text)
    if not lines or lines[0].strip() != POINTS_HEADER:
        raise ParseError(1, f"expected header {POINTS_HEADER!r}")
    n = _parse_n(lines)
    if len(lines) < 2 + n:
        raise ParseError(len(lines) + 1, f"expected {n} point lines")
    pts = []
    for k in range(n):
        lineno = 3 + k
        raw = lines[2 + k]
        head, sep, rest = raw.partition(":")
        if not sep:
            raise ParseError(lineno, "missing ':' separator")
        if not head.strip().isdigit() or int(head) != k + 1:
            raise ParseError(lineno, f"expected label {k + 1}, got {head.strip()!r}")
        toks = rest.split()
        if len(toks) != 2:
            raise ParseError(lineno, "expected '<x> <y>'")
        try:
            pts.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise ParseError(lineno, "coordinates must be decimal integers") from None
    return PointSet(pts)


def format_points(p: PointSet) -> str:
    lines = [POINTS_HEADER, f"n {p.n}"]
    for i in p.labels():
        x, y = p.point(i)
        lines.append(f"{i}: {x} {y}")
    return "\n".join(lines) + "\n"
