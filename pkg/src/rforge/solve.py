"""Exact optimum values and witness sequences via bottleneck search.

All four optimization problems (partial-assignment maxmin, multi-label
minmax, set-cover minmax, hypergraph-vertex-cover minmax) share one
engine: scan thresholds in the direction of the trivially feasible bound
and run breadth-first reachability over the implicit graph of feasible
states obeying the threshold.  The first feasible threshold is the exact
bottleneck value.  All objective values are exact rationals; no floating
point enters any solver path.

A fully materialized bottleneck-path implementation (`oracle_value`) is
kept deliberately independent of the threshold engine: it enumerates the
feasible state space outright, derives adjacency from the step metric,
and runs a heap-based widest/narrowest path search.  It exists to check
the threshold solvers on tiny instances.
"""

from __future__ import annotations

import heapq
import itertools
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BOTTOM,
    BudgetExhaustedError,
    ConstraintGraph,
    Hypergraph,
    KIND_COVER,
    KIND_MULTI,
    KIND_PARTIAL,
    KIND_VERTEX_COVER,
    ReconfigSequence,
    SetSystem,
    StructuralError,
    hamming,
    is_cover,
    is_vertex_cover,
    multi_size,
    multi_step_size,
    partial_size,
    satisfies_multi,
    satisfies_partial,
    set_step_size,
)

DEFAULT_CAP = 200_000

PROBLEM_MAXPAR = "maxpar"
PROBLEM_MINLAB = "minlab"
PROBLEM_SC_COST = "sc-cost"
PROBLEM_HVC_COST = "hvc-cost"


def resolve_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("RFORGE_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True)
class SolveResult:
    """Exact optimum with a witness sequence achieving it."""

    value: Fraction
    witness: ReconfigSequence
    states_explored: int


class _Budget:
    __slots__ = ("cap", "used")

    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def charge(self) -> None:
        self.used += 1
        if self.used > self.cap:
            raise BudgetExhaustedError(
                f"state budget exhausted: visited more than {self.cap} states "
                "(raise --cap or RFORGE_CAP)"
            )


def _bfs(start_key, start, goal_key, expand, budget: _Budget):
    """Breadth-first reachability with parent pointers over canonical byte keys."""
    if start_key == goal_key:
        return [start]
    seen = {start_key: (start, None)}
    budget.charge()
    queue = deque([start_key])
    while queue:
        cur_key = queue.popleft()
        cur = seen[cur_key][0]
        for key, state in expand(cur):
            if key in seen:
                continue
            seen[key] = (state, cur_key)
            budget.charge()
            if key == goal_key:
                path = []
                k = key
                while k is not None:
                    st, prev = seen[k]
                    path.append(st)
                    k = prev
                path.reverse()
                return path
            queue.append(key)
    return None


# ---------------------------------------------------------------------------
# Partial 2CSP: maximize the minimum assigned count
# ---------------------------------------------------------------------------


def solve_maxpar(
    g: ConstraintGraph, f_start, f_goal, cap: int | None = None
) -> SolveResult:
    """Max over sequences of (min assigned count) / |V|, by descending threshold.

    Neighbors change one vertex to any other symbol or to unassigned.
    Thresholds descend from min(start, goal) sizes; everything is
    reachable at threshold 0 through the all-unassigned state, so the scan
    always terminates (unless the budget runs out first).
    """
    f_start, f_goal = tuple(f_start), tuple(f_goal)
    if not satisfies_partial(g, f_start) or not satisfies_partial(g, f_goal):
        raise StructuralError("infeasible endpoints: start/goal must satisfy the graph")
    n, s = g.n_vertices, g.n_symbols
    allowed = [sorted(g.allowed_symbols(v)) for v in range(n)]
    incident = g.incident
    tables, edges = g.tables, g.edges
    budget = _Budget(resolve_cap(cap))

    def key(f):
        return bytes(x + 1 for x in f)

    def edges_ok_at(f, v) -> bool:
        for e_idx in incident[v]:
            a, b = edges[e_idx]
            fa, fb = f[a], f[b]
            if fa != BOTTOM and fb != BOTTOM and tables[e_idx][fa * s + fb] != 1:
                return False
        return True

    top = min(partial_size(f_start), partial_size(f_goal))
    for theta in range(top, -1, -1):

        def expand(f, _theta=theta):
            size = partial_size(f)
            for v in range(n):
                cur = f[v]
                for val in [BOTTOM] + allowed[v]:
                    if val == cur:
                        continue
                    new_size = size - (cur != BOTTOM) + (val != BOTTOM)
                    if new_size < _theta:
                        continue
                    nf = f[:v] + (val,) + f[v + 1 :]
                    if edges_ok_at(nf, v):
                        yield key(nf), nf

        path = _bfs(key(f_start), f_start, key(f_goal), expand, budget)
        if path is not None:
            return SolveResult(
                value=Fraction(theta, n),
                witness=ReconfigSequence(kind=KIND_PARTIAL, states=tuple(path)),
                states_explored=budget.used,
            )
    raise StructuralError("unreachable: threshold 0 must connect all partial assignments")


# ---------------------------------------------------------------------------
# Label cover: minimize the maximum total label count
# ---------------------------------------------------------------------------


def solve_minlab(
    g: ConstraintGraph, f_start, f_goal, cap: int | None = None
) -> SolveResult:
    """Min over sequences of (max total label count) / (|V| + 1), ascending.

    Neighbors add or remove a single symbol at a single vertex.  States
    are satisfying multi assignments; with admissible sets present the
    per-vertex label sets stay inside them.  Everything is reachable at
    the threshold equal to the total admissible symbol count (grow both
    endpoints to the full assignment), so the scan terminates.
    """
    f_start = tuple(frozenset(a) for a in f_start)
    f_goal = tuple(frozenset(a) for a in f_goal)
    if not satisfies_multi(g, f_start) or not satisfies_multi(g, f_goal):
        raise StructuralError("infeasible endpoints: start/goal must satisfy the graph")
    n, s = g.n_vertices, g.n_symbols
    allowed = [sorted(g.allowed_symbols(v)) for v in range(n)]
    incident = g.incident
    edges = g.edges
    mask_bytes = (s + 7) // 8
    # row_masks[e][a] = bitmask of partner symbols b with table accepting (a, b).
    row_masks = []
    for e_idx in range(len(edges)):
        tab = g.tables[e_idx]
        row_masks.append(
            tuple(
                sum(1 << b for b in range(s) if tab[a * s + b])
                for a in range(s)
            )
        )
    budget = _Budget(resolve_cap(cap))

    def to_masks(f):
        return tuple(sum(1 << a for a in vals) for vals in f)

    def to_sets(masks):
        return tuple(frozenset(a for a in range(s) if m >> a & 1) for m in masks)

    def key(masks):
        return b"".join(m.to_bytes(mask_bytes, "little") for m in masks)

    def edges_ok_at(masks, v) -> bool:
        for e_idx in incident[v]:
            a, b = edges[e_idx]
            ma, mb = masks[a], masks[b]
            rows = row_masks[e_idx]
            if not any(rows[x] & mb for x in range(s) if ma >> x & 1):
                return False
        return True

    start_masks, goal_masks = to_masks(f_start), to_masks(f_goal)
    size_start, size_goal = multi_size(f_start), multi_size(f_goal)
    total = sum(len(a) for a in allowed)
    for theta in range(max(size_start, size_goal), total + 1):

        def expand(masks, _theta=theta):
            size = sum(m.bit_count() for m in masks)
            for v in range(n):
                for a in allowed[v]:
                    nm = masks[v] ^ (1 << a)
                    new_size = size + (1 if nm > masks[v] else -1)
                    if new_size > _theta:
                        continue
                    nxt = masks[:v] + (nm,) + masks[v + 1 :]
                    if edges_ok_at(nxt, v):
                        yield key(nxt), nxt

        path = _bfs(key(start_masks), start_masks, key(goal_masks), expand, budget)
        if path is not None:
            return SolveResult(
                value=Fraction(theta, n + 1),
                witness=ReconfigSequence(
                    kind=KIND_MULTI, states=tuple(to_sets(m) for m in path)
                ),
                states_explored=budget.used,
            )
    raise StructuralError("endpoints are not connected in the full label space")


# ---------------------------------------------------------------------------
# Minimum covers (exact branch and bound)
# ---------------------------------------------------------------------------


def min_cover(system: SetSystem) -> int:
    """Exact minimum cover size by branch and bound.

    Greedy gives the upper bound; the lower bound is the trivial
    ceil(uncovered / largest set size).  Branching picks the uncovered
    element with the fewest candidate sets and tries them in index order,
    so the search is deterministic.
    """
    m, n = system.n_sets, system.n_elements
    full = (1 << n) - 1
    masks = [sum(1 << e for e in s) for s in system.sets]
    union = 0
    for mk in masks:
        union |= mk
    if union != full:
        raise StructuralError("universe is not coverable by the family")
    if n == 0:
        return 0
    containing = [[i for i in range(m) if masks[i] >> e & 1] for e in range(n)]
    max_set = max((mk.bit_count() for mk in masks), default=0)

    covered, best = 0, 0
    while covered != full:  # greedy upper bound
        gain, pick = -1, -1
        for i in range(m):
            g = (masks[i] & ~covered).bit_count()
            if g > gain:
                gain, pick = g, i
        covered |= masks[pick]
        best += 1

    def rec(cov: int, count: int) -> None:
        nonlocal best
        if cov == full:
            best = min(best, count)
            return
        remaining = (full & ~cov).bit_count()
        if count + -(-remaining // max_set) >= best:
            return
        pivot, fewest = -1, m + 1
        probe = full & ~cov
        while probe:
            e = (probe & -probe).bit_length() - 1
            cands = sum(1 for i in containing[e] if masks[i] & ~cov)
            if cands < fewest:
                fewest, pivot = cands, e
            probe &= probe - 1
        for i in containing[pivot]:
            rec(cov | masks[i], count + 1)

    rec(0, 0)
    return best


def min_vertex_cover(h: Hypergraph) -> int:
    """Exact minimum vertex cover size by branch and bound.

    Branches on the vertices of the first uncovered hyperedge (ascending
    vertex index); the lower bound counts greedily chosen pairwise
    disjoint uncovered hyperedges.
    """
    if any(not e for e in h.hyperedges):
        raise StructuralError("hypergraph has an empty hyperedge")
    edges = [tuple(sorted(e)) for e in h.hyperedges]
    if not edges:
        return 0

    chosen: set[int] = set()
    covered_count = 0
    remaining = list(range(len(edges)))
    while remaining:  # greedy upper bound
        gain: dict[int, int] = {}
        for e_idx in remaining:
            for v in edges[e_idx]:
                gain[v] = gain.get(v, 0) + 1
        pick = max(sorted(gain), key=lambda v: gain[v])
        chosen.add(pick)
        covered_count += 1
        remaining = [e_idx for e_idx in remaining if pick not in edges[e_idx]]
    best = len(chosen)

    def lower_bound(cover: set[int]) -> int:
        used: set[int] = set()
        count = 0
        for e in edges:
            if any(v in cover for v in e):
                continue
            if any(v in used for v in e):
                continue
            used.update(e)
            count += 1
        return count

    def first_uncovered(cover: set[int]):
        for e in edges:
            if not any(v in cover for v in e):
                return e
        return None

    def rec(cover: set[int]) -> None:
        nonlocal best
        if len(cover) + lower_bound(cover) >= best:
            return
        edge = first_uncovered(cover)
        if edge is None:
            best = len(cover)
            return
        for v in edge:
            cover.add(v)
            rec(cover)
            cover.discard(v)

    rec(set())
    return best


# ---------------------------------------------------------------------------
# Cover reconfiguration costs
# ---------------------------------------------------------------------------


def _solve_cover_cost(
    n_items: int,
    feasible_mask,
    c_start: frozenset,
    c_goal: frozenset,
    denominator: int,
    kind: str,
    cap: int | None,
) -> SolveResult:
    start_mask = sum(1 << i for i in c_start)
    goal_mask = sum(1 << i for i in c_goal)
    key_bytes = (n_items + 7) // 8
    budget = _Budget(resolve_cap(cap))

    def key(mask):
        return mask.to_bytes(key_bytes, "little")

    def to_set(mask):
        return frozenset(i for i in range(n_items) if mask >> i & 1)

    for theta in range(max(start_mask.bit_count(), goal_mask.bit_count()), n_items + 1):

        def expand(mask, _theta=theta):
            size = mask.bit_count()
            for i in range(n_items):
                nm = mask ^ (1 << i)
                if nm > mask and size + 1 > _theta:
                    continue
                if feasible_mask(nm):
                    yield key(nm), nm

        path = _bfs(key(start_mask), start_mask, key(goal_mask), expand, budget)
        if path is not None:
            return SolveResult(
                value=Fraction(theta, denominator),
                witness=ReconfigSequence(kind=kind, states=tuple(to_set(m) for m in path)),
                states_explored=budget.used,
            )
    raise StructuralError("endpoints are not connected in the full cover space")


def solve_cost_setcover(
    system: SetSystem, c_start, c_goal, cap: int | None = None
) -> SolveResult:
    """Min over cover sequences of (max cover size) / (opt + 1), ascending."""
    c_start, c_goal = frozenset(c_start), frozenset(c_goal)
    if not is_cover(system, c_start) or not is_cover(system, c_goal):
        raise StructuralError("infeasible endpoints: start/goal must cover the universe")
    opt = min_cover(system)
    full = (1 << system.n_elements) - 1
    masks = [sum(1 << e for e in s) for s in system.sets]

    def feasible(mask: int) -> bool:
        acc = 0
        probe = mask
        while probe:
            i = (probe & -probe).bit_length() - 1
            acc |= masks[i]
            probe &= probe - 1
        return acc == full

    return _solve_cover_cost(system.n_sets, feasible, c_start, c_goal, opt + 1, KIND_COVER, cap)


def solve_cost_hvc(h: Hypergraph, c_start, c_goal, cap: int | None = None) -> SolveResult:
    """Min over vertex-cover sequences of (max size) / (beta + 1), ascending."""
    c_start, c_goal = frozenset(c_start), frozenset(c_goal)
    if not is_vertex_cover(h, c_start) or not is_vertex_cover(h, c_goal):
        raise StructuralError("infeasible endpoints: start/goal must be vertex covers")
    beta = min_vertex_cover(h)
    edge_masks = [sum(1 << v for v in e) for e in h.hyperedges]

    def feasible(mask: int) -> bool:
        return all(mask & em for em in edge_masks)

    return _solve_cover_cost(
        h.n_vertices, feasible, c_start, c_goal, beta + 1, KIND_VERTEX_COVER, cap
    )


# ---------------------------------------------------------------------------
# Gap classification
# ---------------------------------------------------------------------------


def decide_gap(value: Fraction, c: Fraction, s: Fraction, direction: str) -> str:
    """Classify a value against a (c, s) promise gap.

    ``max``-type asks value >= c (complete) versus value < s (sound);
    ``min``-type asks value <= c versus value > s.  Values inside the gap
    return "neither".
    """
    value, c, s = Fraction(value), Fraction(c), Fraction(s)
    if direction == "max":
        if not s <= c:
            raise StructuralError(f"max-type gap needs s <= c, got s={s}, c={c}")
        if value >= c:
            return "complete"
        return "sound" if value < s else "neither"
    if direction == "min":
        if not c <= s:
            raise StructuralError(f"min-type gap needs c <= s, got c={c}, s={s}")
        if value <= c:
            return "complete"
        return "sound" if value > s else "neither"
    raise StructuralError(f"direction must be 'max' or 'min', got {direction!r}")


# ---------------------------------------------------------------------------
# Independent materialized oracle
# ---------------------------------------------------------------------------


def enumerate_feasible_states(problem: str, instance, raw_limit: int = 500_000):
    """All feasible states of an instance, by brute-force enumeration."""
    if problem == PROBLEM_MAXPAR:
        g = instance
        options = [[BOTTOM] + sorted(g.allowed_symbols(v)) for v in range(g.n_vertices)]
        raw = 1
        for opts in options:
            raw *= len(opts)
        if raw > raw_limit:
            raise StructuralError(f"raw state space {raw} exceeds limit {raw_limit}")
        return [f for f in itertools.product(*options) if satisfies_partial(g, f)]
    if problem == PROBLEM_MINLAB:
        g = instance
        per_vertex = []
        raw = 1
        for v in range(g.n_vertices):
            subsets = []
            symbols = sorted(g.allowed_symbols(v))
            for k in range(len(symbols) + 1):
                subsets.extend(frozenset(c) for c in itertools.combinations(symbols, k))
            per_vertex.append(subsets)
            raw *= len(subsets)
            if raw > raw_limit:
                raise StructuralError(f"raw state space exceeds limit {raw_limit}")
        return [f for f in itertools.product(*per_vertex) if satisfies_multi(g, f)]
    if problem == PROBLEM_SC_COST:
        system = instance
        if 2**system.n_sets > raw_limit:
            raise StructuralError(f"raw state space exceeds limit {raw_limit}")
        subsets = (
            frozenset(i for i in range(system.n_sets) if mask >> i & 1)
            for mask in range(2**system.n_sets)
        )
        return [c for c in subsets if is_cover(system, c)]
    if problem == PROBLEM_HVC_COST:
        h = instance
        if 2**h.n_vertices > raw_limit:
            raise StructuralError(f"raw state space exceeds limit {raw_limit}")
        subsets = (
            frozenset(v for v in range(h.n_vertices) if mask >> v & 1)
            for mask in range(2**h.n_vertices)
        )
        return [c for c in subsets if is_vertex_cover(h, c)]
    raise StructuralError(f"unknown problem {problem!r}")


def oracle_value(
    problem: str, instance, start, goal, state_limit: int = 4096
) -> Fraction:
    """Bottleneck-path optimum over the fully materialized state graph.

    Independent of the threshold solvers: states come from brute
    enumeration, adjacency from the pairwise step metric, and the optimum
    from a heap-based bottleneck shortest path (maximize the minimum
    state weight for the maxmin problem, minimize the maximum for the
    minmax ones).
    """
    states = enumerate_feasible_states(problem, instance)
    if len(states) > state_limit:
        raise StructuralError(f"{len(states)} feasible states exceed limit {state_limit}")
    if problem == PROBLEM_MAXPAR:
        weight = [partial_size(f) for f in states]
        adjacent = lambda a, b: hamming(a, b) <= 1
        denominator = instance.n_vertices
        maximize = True
        start, goal = tuple(start), tuple(goal)
    elif problem == PROBLEM_MINLAB:
        weight = [multi_size(f) for f in states]
        adjacent = lambda a, b: multi_step_size(a, b) <= 1
        denominator = instance.n_vertices + 1
        maximize = False
        start = tuple(frozenset(a) for a in start)
        goal = tuple(frozenset(a) for a in goal)
    elif problem == PROBLEM_SC_COST:
        weight = [len(c) for c in states]
        adjacent = lambda a, b: set_step_size(a, b) <= 1
        denominator = min_cover(instance) + 1
        maximize = False
        start, goal = frozenset(start), frozenset(goal)
    elif problem == PROBLEM_HVC_COST:
        weight = [len(c) for c in states]
        adjacent = lambda a, b: set_step_size(a, b) <= 1
        denominator = min_vertex_cover(instance) + 1
        maximize = False
        start, goal = frozenset(start), frozenset(goal)
    else:
        raise StructuralError(f"unknown problem {problem!r}")

    index = {state: i for i, state in enumerate(states)}
    if start not in index or goal not in index:
        raise StructuralError("infeasible endpoints")
    neighbors: list[list[int]] = [[] for _ in states]
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            if adjacent(states[i], states[j]):
                neighbors[i].append(j)
                neighbors[j].append(i)

    s_idx, g_idx = index[start], index[goal]
    if maximize:
        dist = [-1] * len(states)  # best achievable minimum weight on a path
        dist[s_idx] = weight[s_idx]
        heap = [(-dist[s_idx], s_idx)]
        while heap:
            d, u = heapq.heappop(heap)
            d = -d
            if d < dist[u]:
                continue
            if u == g_idx:
                return Fraction(d, denominator)
            for w_idx in neighbors[u]:
                cand = min(d, weight[w_idx])
                if cand > dist[w_idx]:
                    dist[w_idx] = cand
                    heapq.heappush(heap, (-cand, w_idx))
        raise StructuralError("endpoints are not connected")
    dist = [None] * len(states)  # least achievable maximum weight on a path
    dist[s_idx] = weight[s_idx]
    heap = [(dist[s_idx], s_idx)]
    while heap:
        d, u = heapq.heappop(heap)
        if dist[u] is not None and d > dist[u]:
            continue
        if u == g_idx:
            return Fraction(d, denominator)
        for w_idx in neighbors[u]:
            cand = max(d, weight[w_idx])
            if dist[w_idx] is None or cand < dist[w_idx]:
                dist[w_idx] = cand
                heapq.heappush(heap, (cand, w_idx))
    raise StructuralError("endpoints are not connected")


def sequence_objective(problem: str, instance, seq: ReconfigSequence) -> Fraction:
    """Recompute the objective of a witness sequence from scratch."""
    if problem == PROBLEM_MAXPAR:
        return Fraction(min(partial_size(f) for f in seq.states), instance.n_vertices)
    if problem == PROBLEM_MINLAB:
        return Fraction(max(multi_size(f) for f in seq.states), instance.n_vertices + 1)
    if problem == PROBLEM_SC_COST:
        return Fraction(max(len(c) for c in seq.states), min_cover(instance) + 1)
    if problem == PROBLEM_HVC_COST:
        return Fraction(max(len(c) for c in seq.states), min_vertex_cover(instance) + 1)
    raise StructuralError(f"unknown problem {problem!r}")
