"""Verifier-to-constraint-graph (FGLSS-style) reduction with squared alphabet.

Vertices are randomness strings, symbols are local views of the proof
bits read there, and edges connect entries whose query tuples intersect
(every vertex also carries a self-loop).  Each coordinate of a local view
is one of {0}, {1}, or {0,1}; the joint value {0,1} is what lets a single
proof-bit flip travel through the graph one vertex at a time.  A
constraint accepts a pair of views iff every bit selection from either
view is accepted by that entry's decision table and the two views are
subset-comparable on every shared position.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .core import (
    BOTTOM,
    BudgetExhaustedError,
    ConstraintGraph,
    KIND_PARTIAL,
    KIND_PROOF,
    ReconfigSequence,
    StructuralError,
    hamming,
    satisfies_partial,
    validate_sequence,
)
from .verifier import TableVerifier, accept_prob

# Coordinate encoding of a local-view entry: {0}, {1}, or the joint {0,1}.
COORD_ZERO, COORD_ONE, COORD_BOTH = 0, 1, 2
COORD_SETS = ((0,), (1,), (0, 1))
COORD_LABELS = ("0", "1", "01")

DEFAULT_QUERY_CEILING = 6


def symbol_coords(idx: int, width: int) -> tuple[int, ...]:
    """Base-3 digits of a symbol index, big-endian over ``width`` coordinates."""
    digits = []
    for _ in range(width):
        digits.append(idx % 3)
        idx //= 3
    return tuple(reversed(digits))


def symbol_index(coords) -> int:
    idx = 0
    for c in coords:
        idx = idx * 3 + c
    return idx


def symbol_label(coords) -> str:
    return ",".join(COORD_LABELS[c] for c in coords)


def _valid_view(v: TableVerifier, rnd: int, coords: tuple[int, ...]) -> bool:
    """Every bit selection from the view is accepted; unused coordinates are {0}."""
    m = len(v.queries[rnd])
    if any(c != COORD_ZERO for c in coords[m:]):
        return False
    for bits in product(*(COORD_SETS[c] for c in coords[:m])):
        view = 0
        for b in bits:
            view = (view << 1) | b
        if v.tables[rnd][view] != 1:
            return False
    return True


def build_fglss(v: TableVerifier, query_ceiling: int = DEFAULT_QUERY_CEILING) -> ConstraintGraph:
    """Build the squared-alphabet constraint graph of a table verifier.

    Alphabet size is 3^q; the build refuses verifiers whose maximum query
    count exceeds ``query_ceiling`` rather than approximating.
    """
    if v.q > query_ceiling:
        raise StructuralError(
            f"verifier reads {v.q} positions per entry, ceiling is {query_ceiling}"
        )
    n = v.n_entries
    width = v.q
    n_symbols = 3**width
    symbols = tuple(symbol_coords(i, width) for i in range(n_symbols))
    alphabet = tuple(symbol_label(c) for c in symbols)
    vertices = tuple(format(rnd, f"0{max(1, v.r)}b") for rnd in range(n))
    valid = [
        tuple(_valid_view(v, rnd, coords) for coords in symbols) for rnd in range(n)
    ]
    edges: list[tuple[int, int]] = []
    tables: list[bytes] = []
    for r1 in range(n):
        q1 = v.queries[r1]
        pos1 = {i: j for j, i in enumerate(q1)}
        for r2 in range(r1, n):
            q2 = v.queries[r2]
            shared = [(pos1[i], j) for j, i in enumerate(q2) if i in pos1]
            if not shared:
                continue
            table = bytearray(n_symbols * n_symbols)
            for i1 in range(n_symbols):
                if not valid[r1][i1]:
                    continue
                c1 = symbols[i1]
                base = i1 * n_symbols
                for i2 in range(n_symbols):
                    if not valid[r2][i2]:
                        continue
                    c2 = symbols[i2]
                    ok = True
                    for j1, j2 in shared:
                        a, b = c1[j1], c2[j2]
                        # {0} and {1} are the only incomparable pair.
                        if (a == COORD_ZERO and b == COORD_ONE) or (
                            a == COORD_ONE and b == COORD_ZERO
                        ):
                            ok = False
                            break
                    if ok:
                        table[base + i2] = 1
            edges.append((r1, r2))
            tables.append(bytes(table))
    return ConstraintGraph(
        vertices=vertices,
        arity=2,
        alphabet=alphabet,
        edges=tuple(edges),
        tables=tuple(tables),
    )


def embed_proof(v: TableVerifier, proof: str) -> tuple[int, ...]:
    """The full assignment reading off each entry's singleton local view."""
    if len(proof) != v.ell:
        raise StructuralError(f"proof length {len(proof)} != {v.ell}")
    out = []
    for rnd in range(v.n_entries):
        coords = [COORD_ONE if proof[i] == "1" else COORD_ZERO for i in v.queries[rnd]]
        coords.extend([COORD_ZERO] * (v.q - len(coords)))
        out.append(symbol_index(coords))
    return tuple(out)


def completeness_sequence(v: TableVerifier, start: str, goal: str) -> ReconfigSequence:
    """Assignment path tracking a single proof-bit flip between two
    everywhere-accepted proofs.

    Phase one moves the flipped position's coordinate to the joint value
    {0,1} at every entry reading it; phase two settles each on the goal
    bit.  Every state stays full and satisfying, and the length is
    1 + 2 * degree(flipped position).
    """
    dist = hamming(start, goal)
    if dist > 1:
        raise StructuralError(f"proofs differ in {dist} positions, expected at most 1")
    for name, proof in (("start", start), ("goal", goal)):
        for rnd in range(v.n_entries):
            if not v.entry_accepts(rnd, proof):
                raise StructuralError(f"{name} proof is rejected by entry {rnd}")
    f = list(embed_proof(v, start))
    states = [tuple(f)]
    if dist == 0:
        return ReconfigSequence(kind=KIND_PARTIAL, states=tuple(states))
    star = next(i for i in range(v.ell) if start[i] != goal[i])
    affected = [rnd for rnd in range(v.n_entries) if star in v.queries[rnd]]
    goal_coord = COORD_ONE if goal[star] == "1" else COORD_ZERO
    for new_coord in (COORD_BOTH, goal_coord):
        for rnd in affected:
            coords = list(symbol_coords(f[rnd], v.q))
            coords[v.queries[rnd].index(star)] = new_coord
            f[rnd] = symbol_index(coords)
            states.append(tuple(f))
    return ReconfigSequence(kind=KIND_PARTIAL, states=tuple(states))


def plurality_decode(
    v: TableVerifier, f, graph: ConstraintGraph | None = None
) -> tuple[str, bool]:
    """Recover a proof from an assignment by plurality vote per position.

    Each assigned entry reading position i votes for every bit in its
    coordinate there; ties and positions read by no assigned entry decode
    to 0.  Returns (proof, satisfying) where the flag reports whether the
    assignment satisfies the constraint graph (decoding proceeds either
    way).
    """
    if len(f) != v.n_entries:
        raise StructuralError("assignment domain must equal the randomness space")
    votes = [[0, 0] for _ in range(v.ell)]
    for rnd in range(v.n_entries):
        if f[rnd] == BOTTOM:
            continue
        coords = symbol_coords(f[rnd], v.q)
        for j, i in enumerate(v.queries[rnd]):
            for b in COORD_SETS[coords[j]]:
                votes[i][b] += 1
    proof = "".join("1" if v1 > v0 else "0" for v0, v1 in votes)
    if graph is None:
        graph = build_fglss(v)
    return proof, satisfies_partial(graph, f)


def interpolate_proofs(v: TableVerifier, start: str, goal: str) -> ReconfigSequence:
    """Flip the differing positions one at a time in ascending order."""
    if len(start) != v.ell or len(goal) != v.ell:
        raise StructuralError("proof length mismatch")
    cur = list(start)
    states = ["".join(cur)]
    for i in range(v.ell):
        if cur[i] != goal[i]:
            cur[i] = goal[i]
            states.append("".join(cur))
    return ReconfigSequence(kind=KIND_PROOF, states=tuple(states))


def decode_sequence(
    v: TableVerifier, seq: ReconfigSequence, graph: ConstraintGraph | None = None
) -> tuple[ReconfigSequence, Fraction]:
    """Plurality-decode an assignment sequence into a proof sequence.

    Consecutive decoded proofs may differ in up to q positions, so they
    are bridged by single-bit interpolation (duplicated junction proofs
    dropped).  Also returns the exact minimum acceptance probability over
    the whole proof sequence.
    """
    if seq.kind != KIND_PARTIAL:
        raise StructuralError(f"expected a partial-assignment sequence, got {seq.kind!r}")
    if graph is None:
        graph = build_fglss(v)
    report = validate_sequence(graph, seq)
    if not report.ok:
        raise StructuralError(
            f"assignment sequence invalid at index {report.index}: {report.reason}"
        )
    decoded = [plurality_decode(v, f, graph)[0] for f in seq.states]
    proofs = [decoded[0]]
    for nxt in decoded[1:]:
        bridge = interpolate_proofs(v, proofs[-1], nxt)
        proofs.extend(bridge.states[1:])
    min_acc = min(accept_prob(v, p) for p in proofs)
    return ReconfigSequence(kind=KIND_PROOF, states=tuple(proofs)), min_acc


def enumerate_satisfying_partials(graph: ConstraintGraph, limit: int = 2_000_000):
    """Yield every satisfying partial assignment by pruned backtracking.

    Vertices are assigned in index order over (BOTTOM, then admissible
    symbols); edges with both endpoints decided are checked as soon as
    possible.  ``limit`` bounds the number of search nodes visited.
    """
    n, s = graph.n_vertices, graph.n_symbols
    allowed = [sorted(graph.allowed_symbols(u)) for u in range(n)]
    edges_by_later = [[] for _ in range(n)]
    for e_idx, (a, b) in enumerate(graph.edges):
        edges_by_later[max(a, b)].append((e_idx, min(a, b)))
    state: list[int] = [BOTTOM] * n
    nodes = 0

    def consistent(u: int) -> bool:
        if state[u] == BOTTOM:
            return True
        for e_idx, other in edges_by_later[u]:
            if state[other] == BOTTOM:
                continue
            a, b = graph.edges[e_idx]
            if graph.tables[e_idx][state[a] * s + state[b]] != 1:
                return False
        return True

    def rec(u: int):
        nonlocal nodes
        if u == n:
            yield tuple(state)
            return
        for val in [BOTTOM] + allowed[u]:
            nodes += 1
            if nodes > limit:
                raise BudgetExhaustedError(
                    f"satisfying-assignment enumeration exceeded {limit} nodes"
                )
            state[u] = val
            if consistent(u):
                yield from rec(u + 1)
        state[u] = BOTTOM

    yield from rec(0)
