"""Lattice polytopes of group-based models on trees.

Thin wrapper over the C++ core: flow/vertex enumeration, exact Ehrhart and
Hilbert counts (direct or through the tripod fiber product), normality and
very-ampleness checks, and the rank-based toric-intersection check for claw
trees. Trees are given as Newick text or "builtin:<name>" (tripod, clawN,
snowflake, caterpillarK); groups as "Zk(xZk)*" specs.
"""

from ._flowlat import (
    GuardError,
    InputError,
    __version__,
    count,
    fiber_f,
    fiber_g,
    flows,
    intersect,
    jc_quadric_cover,
    newick,
    normality,
    very_ample,
    vertices,
)

__all__ = [
    "GuardError",
    "InputError",
    "__version__",
    "count",
    "fiber_f",
    "fiber_g",
    "flows",
    "intersect",
    "jc_quadric_cover",
    "newick",
    "normality",
    "very_ample",
    "vertices",
]
