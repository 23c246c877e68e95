"""Seeded, reproducible instance generators.

Every generator is a pure function of its parameters and seed; all
randomness flows through named streams (`rng.stream`), so regenerating
with the same arguments is byte-identical after serialization.  Start and
goal states are rejection-sampled to be feasible and certified by the
exact checkers before an instance is returned.
"""

from __future__ import annotations

import itertools

from .core import (
    ConstraintGraph,
    Hypergraph,
    HvcInstance,
    LabelCoverInstance,
    P2cspInstance,
    SetCoverInstance,
    SetSystem,
    StructuralError,
    is_cover,
    is_vertex_cover,
    satisfies_partial,
)
from .verifier import TableVerifier, csp_to_verifier, encode_assignment
from . import rng as rng_mod


def _random_tables(rng, n_edges: int, s: int, accept_p: float, planted, edges):
    tables = []
    for e_idx in range(n_edges):
        v, w = edges[e_idx]
        tab = bytearray(s * s)
        for a in range(s):
            for b in range(s):
                tab[a * s + b] = 1 if rng.random() < accept_p else 0
        tab[planted[v] * s + planted[w]] = 1
        tables.append(bytes(tab))
    return tables


def _full_satisfying(g: ConstraintGraph, limit: int = 200_000):
    options = [sorted(g.allowed_symbols(v)) for v in range(g.n_vertices)]
    raw = 1
    for opts in options:
        raw *= len(opts)
    if raw > limit:
        raise StructuralError("instance too large to enumerate satisfying assignments")
    return [f for f in itertools.product(*options) if satisfies_partial(g, f)]


def generate_csp(
    seed: int,
    n_vertices: int = 3,
    alphabet_size: int = 2,
    density: float = 0.7,
    accept_p: float = 0.6,
    ensure_incident: bool = False,
    distinct_endpoints: bool = False,
) -> P2cspInstance:
    """Random planted binary CSP with full satisfying start/goal assignments.

    A random full assignment is planted into every edge table, so the
    instance is always satisfiable.  ``ensure_incident`` forces every
    vertex onto at least one edge; ``distinct_endpoints`` retries the goal
    draw when more than one satisfying assignment exists.
    """
    if n_vertices < 1 or alphabet_size < 1:
        raise StructuralError("need at least one vertex and one symbol")
    if ensure_incident and n_vertices < 2:
        raise StructuralError("cannot give every vertex an edge with a single vertex")
    rng = rng_mod.stream(seed, f"csp:{n_vertices}:{alphabet_size}:{density}")
    vertices = tuple(f"v{i}" for i in range(n_vertices))
    alphabet = tuple(f"a{i}" for i in range(alphabet_size))
    edges = [
        (i, j)
        for i in range(n_vertices)
        for j in range(i + 1, n_vertices)
        if rng.random() < density
    ]
    if ensure_incident:
        covered = {v for e in edges for v in e}
        for v in range(n_vertices):
            if v not in covered:
                other = rng.randrange(n_vertices - 1)
                other = other if other < v else other + 1
                edges.append((min(v, other), max(v, other)))
                covered.update((v, other))
        edges.sort()
    planted = tuple(rng.randrange(alphabet_size) for _ in range(n_vertices))
    tables = _random_tables(rng, len(edges), alphabet_size, accept_p, planted, edges)
    g = ConstraintGraph(
        vertices=vertices,
        arity=2,
        alphabet=alphabet,
        edges=tuple(edges),
        tables=tuple(tables),
    )
    sols = _full_satisfying(g)
    start = rng.choice(sols)
    goal = rng.choice(sols)
    if distinct_endpoints and len(sols) > 1:
        while goal == start:
            goal = rng.choice(sols)
    return P2cspInstance(graph=g, start=start, goal=goal)


def generate_labelcover(
    seed: int,
    n_vertices: int = 3,
    alphabet_size: int = 2,
    density: float = 0.8,
    accept_p: float = 0.6,
    ensure_incident: bool = True,
    distinct_endpoints: bool = False,
) -> LabelCoverInstance:
    """Loop-free label-cover instance with singleton start/goal assignments."""
    csp = generate_csp(
        seed,
        n_vertices=n_vertices,
        alphabet_size=alphabet_size,
        density=density,
        accept_p=accept_p,
        ensure_incident=ensure_incident,
        distinct_endpoints=distinct_endpoints,
    )
    start = tuple(frozenset((a,)) for a in csp.start)
    goal = tuple(frozenset((a,)) for a in csp.goal)
    return LabelCoverInstance(graph=csp.graph, start=start, goal=goal)


def generate_setcover(seed: int, n_elements: int = 5, n_sets: int = 5) -> SetCoverInstance:
    """Random covering family with two (possibly different) greedy covers."""
    if n_elements < 1 or n_sets < 1:
        raise StructuralError("need at least one element and one set")
    rng = rng_mod.stream(seed, f"setcover:{n_elements}:{n_sets}")
    elements = tuple(f"u{i}" for i in range(n_elements))
    sets = []
    for _ in range(n_sets):
        size = rng.randrange(1, n_elements + 1)
        sets.append(set(rng.sample(range(n_elements), size)))
    for e in range(n_elements):  # make the family covering
        if not any(e in s for s in sets):
            sets[rng.randrange(n_sets)].add(e)
    system = SetSystem(
        elements=elements,
        sets=tuple(frozenset(s) for s in sets),
        set_labels=tuple(f"S{i}" for i in range(n_sets)),
    )

    def greedy_cover(order):
        chosen: set[int] = set()
        covered: set[int] = set()
        for i in order:
            if not system.sets[i] <= covered:
                chosen.add(i)
                covered |= system.sets[i]
        for i in list(order):  # prune redundant members, same order
            if i in chosen and is_cover(system, chosen - {i}):
                chosen.discard(i)
        return frozenset(chosen)

    order_a = list(range(n_sets))
    rng.shuffle(order_a)
    order_b = list(range(n_sets))
    rng.shuffle(order_b)
    return SetCoverInstance(system=system, start=greedy_cover(order_a), goal=greedy_cover(order_b))


def generate_hypergraph(
    seed: int, n_vertices: int = 5, n_edges: int = 4, max_edge_size: int = 3
) -> HvcInstance:
    """Random hypergraph with two greedy vertex covers."""
    if n_vertices < 1 or n_edges < 1 or max_edge_size < 1:
        raise StructuralError("need positive sizes")
    rng = rng_mod.stream(seed, f"hypergraph:{n_vertices}:{n_edges}:{max_edge_size}")
    vertices = tuple(f"w{i}" for i in range(n_vertices))
    hyperedges = []
    for _ in range(n_edges):
        size = rng.randrange(1, min(max_edge_size, n_vertices) + 1)
        hyperedges.append(frozenset(rng.sample(range(n_vertices), size)))
    h = Hypergraph(vertices=vertices, hyperedges=tuple(hyperedges))

    def greedy_vc(order):
        chosen: set[int] = set()
        for v in order:
            if any(v in e and not (e & chosen) for e in hyperedges):
                chosen.add(v)
        for v in list(order):
            if v in chosen and is_vertex_cover(h, chosen - {v}):
                chosen.discard(v)
        return frozenset(chosen)

    order_a = list(range(n_vertices))
    rng.shuffle(order_a)
    order_b = list(range(n_vertices))
    rng.shuffle(order_b)
    return HvcInstance(hypergraph=h, start=greedy_vc(order_a), goal=greedy_vc(order_b))


def generate_verifier(
    seed: int,
    n_vertices: int = 3,
    alphabet_size: int = 2,
    density: float = 0.8,
) -> tuple[TableVerifier, str, str]:
    """Table verifier wrapping the canonical encoding of a generated CSP.

    Returns the verifier plus the encoded start/goal proofs; the start
    proof is accepted with probability 1 by construction.
    """
    csp = generate_csp(
        seed,
        n_vertices=n_vertices,
        alphabet_size=alphabet_size,
        density=density,
        ensure_incident=n_vertices >= 2,
    )
    v = csp_to_verifier(csp.graph)
    return v, encode_assignment(csp.graph, csp.start), encode_assignment(csp.graph, csp.goal)


def generate_verifier_with_accepted_pair(
    seed: int, r: int = 2, q: int = 2, ell: int = 4, accept_p: float = 0.4
) -> tuple[TableVerifier, str, str]:
    """Random verifier plus two adjacent proofs it accepts with probability 1.

    Two proofs one bit flip apart are drawn first; every decision table is
    random except that both proofs' local views are forced to accept.
    """
    if q > ell:
        raise StructuralError("cannot query more positions than the proof has")
    rng = rng_mod.stream(seed, f"verifier-pair:{r}:{q}:{ell}")
    start = "".join(rng.choice("01") for _ in range(ell))
    star = rng.randrange(ell)
    goal = start[:star] + ("1" if start[star] == "0" else "0") + start[star + 1 :]
    queries = []
    tables = []
    for _ in range(2**r):
        positions = tuple(sorted(rng.sample(range(ell), q)))
        table = bytearray(2**q)
        for bits in range(2**q):
            table[bits] = 1 if rng.random() < accept_p else 0
        for proof in (start, goal):
            view = 0
            for i in positions:
                view = (view << 1) | (proof[i] == "1")
            table[view] = 1
        queries.append(positions)
        tables.append(bytes(table))
    v = TableVerifier(r=r, q=q, ell=ell, queries=tuple(queries), tables=tuple(tables))
    return v, start, goal
