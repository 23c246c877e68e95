"""Instance types, feasibility checks, and sequence validation.

Five families of reconfiguration instances are supported: binary (and
q-ary) constraint graphs with partial or multi assignments, set systems
with covers, hypergraphs with vertex covers, and bitstring proofs checked
by a table verifier.  All instance types are immutable after construction
and every operation here is a pure function, so concurrent use needs no
synchronization.

State representations are deliberately plain:

* a partial assignment is a ``tuple[int, ...]`` over vertex indices with
  ``BOTTOM`` (= -1) marking an unassigned vertex,
* a multi assignment is a ``tuple[frozenset[int], ...]`` of symbol-index
  sets,
* a cover (or vertex cover) is a ``frozenset[int]`` of set / vertex
  indices,
* a proof is a ``str`` of ``'0'``/``'1'`` characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

BOTTOM = -1  # sentinel symbol id for "unassigned"; outside the alphabet index range

KIND_PROOF = "proof"
KIND_PARTIAL = "partial-assignment"
KIND_MULTI = "multi-assignment"
KIND_COVER = "cover"
KIND_VERTEX_COVER = "vertex-cover"

SEQUENCE_KINDS = (KIND_PROOF, KIND_PARTIAL, KIND_MULTI, KIND_COVER, KIND_VERTEX_COVER)


class RforgeError(Exception):
    """Base class for package errors.  ``exit_code`` drives the CLI."""

    exit_code = 2


class StructuralError(RforgeError):
    """Malformed input, precondition violation, or size-ceiling refusal."""

    exit_code = 2


class BudgetExhaustedError(RforgeError):
    """A solver hit its state budget before producing an answer."""

    exit_code = 3


@dataclass(frozen=True)
class ConstraintGraph:
    """A q-ary constraint system over an indexed vertex set.

    ``edges`` holds ordered ``arity``-tuples of vertex indices (self-loops
    ``(v, v)`` are legal for arity 2).  ``tables[i]`` is the truth table of
    edge ``i`` as a flat 0/1 byte string in row-major symbol order, so a
    binary edge ``(v, w)`` accepts ``(a, b)`` iff ``tables[i][a * s + b]``
    is 1.  ``admissible`` optionally restricts each vertex to a nonempty
    symbol subset (produced by self-loop normalization).
    """

    vertices: tuple[str, ...]
    arity: int
    alphabet: tuple[str, ...]
    edges: tuple[tuple[int, ...], ...]
    tables: tuple[bytes, ...]
    admissible: tuple[frozenset[int], ...] | None = None

    def __post_init__(self):
        n, s, q = len(self.vertices), len(self.alphabet), self.arity
        if n == 0:
            raise StructuralError("constraint graph needs at least one vertex")
        if s == 0:
            raise StructuralError("alphabet must be nonempty")
        if q < 1:
            raise StructuralError(f"arity must be >= 1, got {q}")
        if len(set(self.vertices)) != n:
            raise StructuralError("vertex labels must be unique")
        if len(set(self.alphabet)) != s:
            raise StructuralError("alphabet labels must be unique")
        if len(self.tables) != len(self.edges):
            raise StructuralError("one truth table per hyperedge required")
        expected = s**q
        for e_idx, edge in enumerate(self.edges):
            if len(edge) != q:
                raise StructuralError(f"hyperedge {e_idx} has {len(edge)} entries, expected {q}")
            if any(v < 0 or v >= n for v in edge):
                raise StructuralError(f"hyperedge {e_idx} references a missing vertex")
            if len(self.tables[e_idx]) != expected:
                raise StructuralError(
                    f"table {e_idx} has {len(self.tables[e_idx])} entries, expected {expected}"
                )
            if any(b not in (0, 1) for b in self.tables[e_idx]):
                raise StructuralError(f"table {e_idx} contains a non-boolean entry")
        if self.admissible is not None:
            if len(self.admissible) != n:
                raise StructuralError("admissible sets must cover every vertex")
            for v, allowed in enumerate(self.admissible):
                if not allowed:
                    raise StructuralError(f"admissible set of vertex {v} is empty")
                if any(a < 0 or a >= s for a in allowed):
                    raise StructuralError(f"admissible set of vertex {v} leaves the alphabet")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_symbols(self) -> int:
        return len(self.alphabet)

    def allowed_symbols(self, v: int) -> frozenset[int]:
        if self.admissible is None:
            return frozenset(range(self.n_symbols))
        return self.admissible[v]

    def accepts(self, e_idx: int, symbols: Sequence[int]) -> bool:
        """Truth-table lookup for one hyperedge on a full symbol tuple."""
        idx = 0
        s = self.n_symbols
        for a in symbols:
            idx = idx * s + a
        return self.tables[e_idx][idx] == 1

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices touching each vertex (each edge listed once per vertex)."""
        inc: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for e_idx, edge in enumerate(self.edges):
            for v in set(edge):
                inc[v].append(e_idx)
        return tuple(tuple(lst) for lst in inc)

    def has_self_loops(self) -> bool:
        return any(len(set(edge)) == 1 and len(edge) == 2 for edge in self.edges)


@dataclass(frozen=True)
class SetSystem:
    """A universe plus an indexed family of subsets, all carrying labels."""

    elements: tuple[str, ...]
    sets: tuple[frozenset[int], ...]
    set_labels: tuple[str, ...]

    def __post_init__(self):
        m = len(self.sets)
        if len(self.set_labels) != m:
            raise StructuralError("one label per set required")
        if len(set(self.elements)) != len(self.elements):
            raise StructuralError("element labels must be unique")
        if len(set(self.set_labels)) != m:
            raise StructuralError("set labels must be unique")
        n = len(self.elements)
        for i, members in enumerate(self.sets):
            if any(e < 0 or e >= n for e in members):
                raise StructuralError(f"set {i} references a missing element")

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    @property
    def n_sets(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph, optionally certified u-uniform."""

    vertices: tuple[str, ...]
    hyperedges: tuple[frozenset[int], ...]
    uniformity: int | None = None

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise StructuralError("vertex labels must be unique")
        n = len(self.vertices)
        for i, edge in enumerate(self.hyperedges):
            if any(v < 0 or v >= n for v in edge):
                raise StructuralError(f"hyperedge {i} references a missing vertex")
            if self.uniformity is not None and len(edge) != self.uniformity:
                raise StructuralError(
                    f"hyperedge {i} has size {len(edge)}, uniformity demands {self.uniformity}"
                )

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ReconfigSequence:
    """An ordered list of states of one kind; see module docstring for encodings."""

    kind: str
    states: tuple

    def __post_init__(self):
        if self.kind not in SEQUENCE_KINDS:
            raise StructuralError(f"unknown sequence kind {self.kind!r}")
        if len(self.states) == 0:
            raise StructuralError("a reconfiguration sequence must be nonempty")

    def __len__(self) -> int:
        return len(self.states)


# Instance bundles: an instance plus its start/goal states, as stored on disk.


@dataclass(frozen=True)
class P2cspInstance:
    graph: ConstraintGraph
    start: tuple[int, ...]
    goal: tuple[int, ...]


@dataclass(frozen=True)
class LabelCoverInstance:
    graph: ConstraintGraph
    start: tuple[frozenset[int], ...]
    goal: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class SetCoverInstance:
    system: SetSystem
    start: frozenset[int]
    goal: frozenset[int]


@dataclass(frozen=True)
class HvcInstance:
    hypergraph: Hypergraph
    start: frozenset[int]
    goal: frozenset[int]


# ---------------------------------------------------------------------------
# Size measures and step metrics
# ---------------------------------------------------------------------------


def partial_size(f: Sequence[int]) -> int:
    """Number of assigned (non-BOTTOM) vertices."""
    return sum(1 for a in f if a != BOTTOM)


def multi_size(f: Sequence[frozenset[int]]) -> int:
    """Total number of symbols over all vertices."""
    return sum(len(a) for a in f)


def is_full(f: Sequence[int]) -> bool:
    return all(a != BOTTOM for a in f)


def hamming(a: Sequence, b: Sequence) -> int:
    if len(a) != len(b):
        raise StructuralError("hamming distance needs equal-length states")
    return sum(1 for x, y in zip(a, b) if x != y)


def multi_step_size(f: Sequence[frozenset[int]], g: Sequence[frozenset[int]]) -> int:
    """Total symmetric-difference size between two multi assignments."""
    if len(f) != len(g):
        raise StructuralError("multi assignments must share the vertex set")
    return sum(len(x ^ y) for x, y in zip(f, g))


def set_step_size(c: frozenset, d: frozenset) -> int:
    return len(c ^ d)


# ---------------------------------------------------------------------------
# Satisfaction checks
# ---------------------------------------------------------------------------


def _check_symbols(g: ConstraintGraph, f: Sequence[int], allow_bottom: bool) -> None:
    if len(f) != g.n_vertices:
        raise StructuralError("assignment domain must equal the vertex set")
    lo = BOTTOM if allow_bottom else 0
    for v, a in enumerate(f):
        if a < lo or a >= g.n_symbols:
            raise StructuralError(f"symbol {a} at vertex {v} is out of alphabet range")


def satisfies_assignment(g: ConstraintGraph, f: Sequence[int]) -> bool:
    """Full-assignment check by direct q-ary table evaluation (any arity)."""
    _check_symbols(g, f, allow_bottom=False)
    if g.admissible is not None and any(f[v] not in g.admissible[v] for v in range(g.n_vertices)):
        return False
    return all(g.accepts(e_idx, tuple(f[v] for v in edge)) for e_idx, edge in enumerate(g.edges))


def satisfies_partial(g: ConstraintGraph, f: Sequence[int]) -> bool:
    """Binary-graph partial assignment check.

    An edge whose endpoints are both assigned must have its table accept;
    an edge with an unassigned endpoint passes vacuously.  With admissible
    sets present, each assigned vertex must use an admissible symbol.
    """
    if g.arity != 2:
        raise StructuralError(f"partial-assignment semantics needs arity 2, got {g.arity}")
    _check_symbols(g, f, allow_bottom=True)
    if g.admissible is not None:
        for v, a in enumerate(f):
            if a != BOTTOM and a not in g.admissible[v]:
                return False
    s = g.n_symbols
    for e_idx, (v, w) in enumerate(g.edges):
        a, b = f[v], f[w]
        if a != BOTTOM and b != BOTTOM and g.tables[e_idx][a * s + b] != 1:
            return False
    return True


def satisfies_multi(g: ConstraintGraph, f: Sequence[frozenset[int]]) -> bool:
    """Binary-graph multi assignment check.

    An edge ``(v, w)`` is satisfied when some pair in ``f(v) x f(w)`` is
    accepted; an empty set at either endpoint of an edge therefore fails
    that edge, while a vertex with no incident edges may be empty.  Multi
    semantics for self-loops is undefined; normalize them away first.
    """
    if g.arity != 2:
        raise StructuralError(f"multi-assignment semantics needs arity 2, got {g.arity}")
    if g.has_self_loops():
        raise StructuralError(
            "multi-assignment semantics is undefined on self-loops; "
            "apply normalize_self_loops first"
        )
    if len(f) != g.n_vertices:
        raise StructuralError("assignment domain must equal the vertex set")
    s = g.n_symbols
    for v, vals in enumerate(f):
        if any(a < 0 or a >= s for a in vals):
            raise StructuralError(f"symbol out of alphabet range at vertex {v}")
        if g.admissible is not None and not vals <= g.admissible[v]:
            return False
    for e_idx, (v, w) in enumerate(g.edges):
        tab = g.tables[e_idx]
        if not any(tab[a * s + b] for a in f[v] for b in f[w]):
            return False
    return True


def normalize_self_loops(g: ConstraintGraph) -> ConstraintGraph:
    """Fold self-loop constraints into per-vertex admissible sets.

    A loop ``(v, v)`` only ever tests the diagonal of its table against
    single assignments, so it is equivalent to restricting vertex ``v`` to
    the diagonal-accepting symbols.  Returns the loop-free graph with
    admissible sets attached (intersected with any existing ones); raises
    ``StructuralError`` if some vertex ends up with no legal symbol.
    """
    if g.arity != 2:
        raise StructuralError(f"normalize_self_loops needs arity 2, got {g.arity}")
    s = g.n_symbols
    adm = [set(g.allowed_symbols(v)) for v in range(g.n_vertices)]
    edges: list[tuple[int, ...]] = []
    tables: list[bytes] = []
    for e_idx, (v, w) in enumerate(g.edges):
        if v == w:
            diag = {a for a in range(s) if g.tables[e_idx][a * s + a] == 1}
            adm[v] &= diag
        else:
            edges.append((v, w))
            tables.append(g.tables[e_idx])
    for v, allowed in enumerate(adm):
        if not allowed:
            raise StructuralError(f"unsatisfiable vertex {g.vertices[v]!r}: no admissible symbol")
    return ConstraintGraph(
        vertices=g.vertices,
        arity=2,
        alphabet=g.alphabet,
        edges=tuple(edges),
        tables=tuple(tables),
        admissible=tuple(frozenset(a) for a in adm),
    )


# ---------------------------------------------------------------------------
# Covers
# ---------------------------------------------------------------------------


def is_cover(system: SetSystem, cover: Iterable[int]) -> bool:
    chosen = frozenset(cover)
    if any(i < 0 or i >= system.n_sets for i in chosen):
        raise StructuralError("cover references a missing set")
    covered: set[int] = set()
    for i in chosen:
        covered |= system.sets[i]
    return len(covered) == system.n_elements


def is_vertex_cover(h: Hypergraph, cover: Iterable[int]) -> bool:
    chosen = frozenset(cover)
    if any(v < 0 or v >= h.n_vertices for v in chosen):
        raise StructuralError("vertex cover references a missing vertex")
    return all(edge & chosen for edge in h.hyperedges)


# ---------------------------------------------------------------------------
# Sequence validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_sequence; ``index`` points at the first bad state.

    For a step-metric violation the index of the latter state of the
    offending transition is reported.
    """

    ok: bool
    index: int | None = None
    reason: str | None = None


def _state_feasible(kind: str, instance, state) -> bool:
    if kind == KIND_PROOF:
        return (
            isinstance(state, str)
            and len(state) == instance.ell
            and all(c in "01" for c in state)
        )
    if kind == KIND_PARTIAL:
        return satisfies_partial(instance, state)
    if kind == KIND_MULTI:
        return satisfies_multi(instance, state)
    if kind == KIND_COVER:
        return is_cover(instance, state)
    if kind == KIND_VERTEX_COVER:
        return is_vertex_cover(instance, state)
    raise StructuralError(f"unknown sequence kind {kind!r}")


def _step_ok(kind: str, a, b) -> bool:
    if kind == KIND_PROOF:
        return hamming(a, b) <= 1
    if kind == KIND_PARTIAL:
        return hamming(a, b) <= 1
    if kind == KIND_MULTI:
        return multi_step_size(a, b) <= 1
    return set_step_size(a, b) <= 1


_KIND_INSTANCE_TYPES = {
    KIND_PARTIAL: ConstraintGraph,
    KIND_MULTI: ConstraintGraph,
    KIND_COVER: SetSystem,
    KIND_VERTEX_COVER: Hypergraph,
}


def validate_sequence(instance, seq: ReconfigSequence, start=None, goal=None) -> ValidationReport:
    """Check endpoints, per-state feasibility, and the single-change step metric.

    ``start``/``goal`` are optional expected endpoint states.  Returns the
    first violation found (scanning states in order, checking feasibility
    of a state before the step into it).
    """
    expected = _KIND_INSTANCE_TYPES.get(seq.kind)
    if expected is not None and not isinstance(instance, expected):
        raise StructuralError(
            f"sequence kind {seq.kind!r} does not match instance type {type(instance).__name__}"
        )
    if seq.kind == KIND_PROOF and not hasattr(instance, "ell"):
        raise StructuralError("proof sequences need a table verifier instance")
    if start is not None and seq.states[0] != start:
        return ValidationReport(False, 0, "sequence does not begin at the start state")
    if goal is not None and seq.states[-1] != goal:
        return ValidationReport(False, len(seq.states) - 1, "sequence does not end at the goal state")
    prev = None
    for t, state in enumerate(seq.states):
        if not _state_feasible(seq.kind, instance, state):
            return ValidationReport(False, t, "infeasible state")
        if prev is not None and not _step_ok(seq.kind, prev, state):
            return ValidationReport(False, t, "step changes more than one unit")
        prev = state
    return ValidationReport(True)
