"""The 2-factor approximation for minmax cover reconfiguration.

Insert everything the goal needs, then discard everything the start no
longer needs.  Every intermediate state is a superset of the start cover
or of the goal cover, hence itself a cover, and the peak size is exactly
|start ∪ goal| <= |start| + |goal|, which is at most twice the optimum
plus lower-order terms.
"""

from __future__ import annotations

from .core import (
    Hypergraph,
    KIND_COVER,
    KIND_VERTEX_COVER,
    ReconfigSequence,
    SetSystem,
    StructuralError,
    is_cover,
    is_vertex_cover,
)


def two_factor_cover(instance, c_start, c_goal) -> ReconfigSequence:
    """Greedy insert-then-discard reconfiguration between two covers.

    Works for set systems (covers) and hypergraphs (vertex covers).  "Any
    order" is resolved to ascending index order so the output is
    deterministic.
    """
    c_start, c_goal = frozenset(c_start), frozenset(c_goal)
    if isinstance(instance, SetSystem):
        kind = KIND_COVER
        feasible = is_cover
    elif isinstance(instance, Hypergraph):
        kind = KIND_VERTEX_COVER
        feasible = is_vertex_cover
    else:
        raise StructuralError(f"expected a set system or hypergraph, got {type(instance).__name__}")
    if not feasible(instance, c_start) or not feasible(instance, c_goal):
        raise StructuralError("infeasible endpoints")
    current = set(c_start)
    states = [frozenset(current)]
    for i in sorted(c_goal - c_start):
        current.add(i)
        states.append(frozenset(current))
    for i in sorted(c_start - c_goal):
        current.discard(i)
        states.append(frozenset(current))
    return ReconfigSequence(kind=kind, states=tuple(states))
