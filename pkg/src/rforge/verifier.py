"""Explicit-table proof verifiers.

A `TableVerifier` materializes a randomized proof checker as a table: for
every randomness string R in {0,1}^r it stores the tuple of proof
positions queried and the full decision table over the read bits.  This
makes acceptance probabilities, degrees, and regularity exactly
computable by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import BOTTOM, ConstraintGraph, StructuralError, normalize_self_loops


@dataclass(frozen=True)
class TableVerifier:
    """Explicit randomness -> (query tuple, decision table) map.

    ``queries[R]`` lists distinct 0-based proof positions; ``tables[R]``
    has ``2 ** len(queries[R])`` 0/1 entries indexed by the read bits in
    big-endian order.  ``q`` is the maximum query-tuple length; freshly
    constructed verifiers query exactly ``q`` positions everywhere, while
    walk-amplified ones may query fewer on some randomness strings after
    duplicate positions are merged.
    """

    r: int
    q: int
    ell: int
    queries: tuple[tuple[int, ...], ...]
    tables: tuple[bytes, ...]

    def __post_init__(self):
        if self.r < 0 or self.q < 1 or self.ell < 1:
            raise StructuralError("verifier parameters must be positive")
        if len(self.queries) != 2**self.r or len(self.tables) != 2**self.r:
            raise StructuralError(f"verifier needs exactly 2^{self.r} entries")
        if max(len(i) for i in self.queries) != self.q:
            raise StructuralError("q must equal the maximum query-tuple length")
        for rnd, positions in enumerate(self.queries):
            if not positions:
                raise StructuralError(f"entry {rnd} queries nothing")
            if len(set(positions)) != len(positions):
                raise StructuralError(f"entry {rnd} repeats a query position")
            if any(i < 0 or i >= self.ell for i in positions):
                raise StructuralError(f"entry {rnd} queries outside the proof")
            if len(self.tables[rnd]) != 2 ** len(positions):
                raise StructuralError(f"decision table {rnd} has the wrong size")
            if any(b not in (0, 1) for b in self.tables[rnd]):
                raise StructuralError(f"decision table {rnd} contains a non-boolean entry")

    @property
    def n_entries(self) -> int:
        return 2**self.r

    def local_view(self, proof: str, rnd: int) -> int:
        """Index of the bits this entry reads, big-endian in query order."""
        idx = 0
        for i in self.queries[rnd]:
            idx = (idx << 1) | (proof[i] == "1")
        return idx

    def entry_accepts(self, rnd: int, proof: str) -> bool:
        return self.tables[rnd][self.local_view(proof, rnd)] == 1


def _check_proof(v: TableVerifier, proof: str) -> None:
    if len(proof) != v.ell:
        raise StructuralError(f"proof length {len(proof)} != {v.ell}")
    if any(c not in "01" for c in proof):
        raise StructuralError("proof must be a 0/1 string")


def accept_prob(v: TableVerifier, proof: str) -> Fraction:
    """Exact fraction of randomness strings accepting the proof."""
    _check_proof(v, proof)
    hits = sum(1 for rnd in range(v.n_entries) if v.entry_accepts(rnd, proof))
    return Fraction(hits, v.n_entries)


def accepting_set(v: TableVerifier, proof: str) -> frozenset[int]:
    """Randomness strings that accept the proof."""
    _check_proof(v, proof)
    return frozenset(rnd for rnd in range(v.n_entries) if v.entry_accepts(rnd, proof))


def degree(v: TableVerifier, i: int) -> int:
    """Number of randomness strings querying position i."""
    if i < 0 or i >= v.ell:
        raise StructuralError(f"position {i} out of range [0, {v.ell})")
    return sum(1 for positions in v.queries if i in positions)


def degrees(v: TableVerifier) -> tuple[int, ...]:
    counts = [0] * v.ell
    for positions in v.queries:
        for i in positions:
            counts[i] += 1
    return tuple(counts)


def regularity(v: TableVerifier) -> int | None:
    """The common degree if every position shares one, else None."""
    counts = degrees(v)
    return counts[0] if len(set(counts)) == 1 else None


def symbol_bits(n_symbols: int) -> int:
    """Bits per vertex when encoding symbols as binary codewords."""
    return max(1, (n_symbols - 1).bit_length())


def encode_assignment(g: ConstraintGraph, f: Sequence[int]) -> str:
    """Binary proof encoding a full assignment, b bits per vertex, big-endian."""
    if len(f) != g.n_vertices:
        raise StructuralError("assignment domain must equal the vertex set")
    if any(a == BOTTOM for a in f):
        raise StructuralError("only full assignments can be encoded")
    b = symbol_bits(g.n_symbols)
    return "".join(format(a, f"0{b}b") for a in f)


def csp_to_verifier(g: ConstraintGraph) -> TableVerifier:
    """Turn a binary constraint graph into a table verifier over encoded proofs.

    Each vertex occupies b = ceil(log2 |alphabet|) proof bits.  One
    randomness value is spent per non-loop edge, padded to a power of two
    by cycling through the edge list; the entry for edge (v, w) reads both
    codewords and accepts iff they decode to in-range admissible symbols
    that the edge table accepts.  Self-loops are folded into admissible
    sets first (a loop's positions would coincide, which query tuples
    forbid).
    """
    if g.arity != 2:
        raise StructuralError(f"csp_to_verifier needs arity 2, got {g.arity}")
    norm = normalize_self_loops(g)
    if not norm.edges:
        raise StructuralError("constraint graph has no non-loop edges to check")
    s = norm.n_symbols
    b = symbol_bits(s)
    ell = b * norm.n_vertices
    n_edges = len(norm.edges)
    r = max(1, (n_edges - 1).bit_length())
    queries: list[tuple[int, ...]] = []
    tables: list[bytes] = []
    for rnd in range(2**r):
        e_idx = rnd % n_edges
        v, w = norm.edges[e_idx]
        positions = tuple(range(v * b, (v + 1) * b)) + tuple(range(w * b, (w + 1) * b))
        table = bytearray(2 ** (2 * b))
        for bits in range(len(table)):
            alpha = bits >> b
            beta = bits & ((1 << b) - 1)
            if alpha >= s or beta >= s:
                continue
            if alpha not in norm.admissible[v] or beta not in norm.admissible[w]:
                continue
            table[bits] = norm.tables[e_idx][alpha * s + beta]
        queries.append(positions)
        tables.append(bytes(table))
    return TableVerifier(r=r, q=2 * b, ell=ell, queries=tuple(queries), tables=tuple(tables))
