"""radialhull: convex hulls of all order types consistent with a radial system.

Given the counterclockwise radial system of a planar point configuration (or
an undirected variant), this package reconstructs the convex hulls of every
abstract order type realizing it in a linear number of triple tests, answers
orientation queries in constant time, verifies candidate radial systems, and
generates realizable and provably non-realizable test families.
"""

from .core import (
    Classification,
    ContractViolation,
    CyclicOrder,
    DirectedCycle,
    NotRealizable,
    ParseError,
    RadialHullError,
    RadialSystem,
    UndirectedRadialSystem,
    classify_against_cycle,
    crossing_pair,
    emanates_outside,
    is_compact_cycle,
    restrict,
    reverse_one,
)
from .oracle import (
    PointSet,
    chirotope_of,
    convex_hull,
    important_sets_bruteforce,
    orient,
    radial_system_of,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ContractViolation",
    "CyclicOrder",
    "DirectedCycle",
    "NotRealizable",
    "ParseError",
    "PointSet",
    "RadialHullError",
    "RadialSystem",
    "UndirectedRadialSystem",
    "chirotope_of",
    "classify_against_cycle",
    "convex_hull",
    "crossing_pair",
    "emanates_outside",
    "important_sets_bruteforce",
    "is_compact_cycle",
    "orient",
    "radial_system_of",
    "restrict",
    "reverse_one",
    "__version__",
]
