"""Gap-preserving reductions between the reconfiguration problems.

Three constructions:

* singleton lifting of partial assignments to label-cover multi
  assignments, with the half-step witness transformation,
* label cover -> minmax set cover over the universe E x B, where
  B = {0,1}^Sigma and the hypercube gadgets Q̄ and Q turn edge
  satisfaction into coverage of the edge's block,
* label cover -> minmax hypergraph vertex cover via the inverted index
  of the set-cover instance, padded to a uniform hyperedge size.

Reduced instances carry provenance labels ("(v,a)" for sets and real
vertices, "(e,bits)" for universe elements and hyperedges) so solution
mappings are label-driven and auditable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    BOTTOM,
    ConstraintGraph,
    Hypergraph,
    KIND_MULTI,
    KIND_PARTIAL,
    LabelCoverInstance,
    ReconfigSequence,
    SetSystem,
    StructuralError,
    is_full,
    multi_size,
    satisfies_multi,
    satisfies_partial,
)

ORIENT_CORRECTED = "corrected"
ORIENT_VERBATIM = "verbatim"


# ---------------------------------------------------------------------------
# Partial assignments -> label cover
# ---------------------------------------------------------------------------


def p2csp_to_labelcover(g: ConstraintGraph, f_start, f_goal) -> LabelCoverInstance:
    """Same graph, endpoints lifted to singleton multi assignments.

    Requires full satisfying endpoints (the perfect-completeness regime).
    """
    f_start, f_goal = tuple(f_start), tuple(f_goal)
    for name, f in (("start", f_start), ("goal", f_goal)):
        if not is_full(f):
            raise StructuralError(f"{name} assignment must be full")
        if not satisfies_partial(g, f):
            raise StructuralError(f"{name} assignment does not satisfy the graph")
    lifted_s = tuple(frozenset((a,)) for a in f_start)
    lifted_g = tuple(frozenset((a,)) for a in f_goal)
    return LabelCoverInstance(graph=g, start=lifted_s, goal=lifted_g)


def lift_partial_sequence(g: ConstraintGraph, seq: ReconfigSequence) -> ReconfigSequence:
    """Half-step lift of a full-assignment sequence to multi assignments.

    Between consecutive states differing at one vertex the lift inserts
    the state holding both symbols there, so each original step becomes
    two single-symbol toggles.  Every lifted state has size |V| or
    |V| + 1.
    """
    if seq.kind != KIND_PARTIAL:
        raise StructuralError(f"expected a partial-assignment sequence, got {seq.kind!r}")
    for f in seq.states:
        if not is_full(f):
            raise StructuralError("half-step lifting needs full assignments throughout")
    states: list[tuple[frozenset[int], ...]] = []
    prev = None
    for f in seq.states:
        cur = tuple(frozenset((a,)) for a in f)
        if prev is not None and prev != cur:
            diff = [v for v in range(len(f)) if prev[v] != cur[v]]
            if len(diff) != 1:
                raise StructuralError("consecutive states differ in more than one vertex")
            v_star = diff[0]
            half = prev[:v_star] + (prev[v_star] | cur[v_star],) + prev[v_star + 1 :]
            states.append(half)
        if prev != cur:
            states.append(cur)
        prev = cur
    if not states:
        states.append(tuple(frozenset((a,)) for a in seq.states[0]))
    return ReconfigSequence(kind=KIND_MULTI, states=tuple(states))


def project_multi_sequence(g: ConstraintGraph, seq: ReconfigSequence) -> ReconfigSequence:
    """Singleton projection of a multi-assignment sequence.

    Vertices holding exactly one label keep it; all others project to
    unassigned.  The result is a valid partial-assignment sequence with
    duplicate consecutive states collapsed.
    """
    if seq.kind != KIND_MULTI:
        raise StructuralError(f"expected a multi-assignment sequence, got {seq.kind!r}")
    states: list[tuple[int, ...]] = []
    for f in seq.states:
        proj = tuple(next(iter(vals)) if len(vals) == 1 else BOTTOM for vals in f)
        if not states or states[-1] != proj:
            states.append(proj)
    return ReconfigSequence(kind=KIND_PARTIAL, states=tuple(states))


# ---------------------------------------------------------------------------
# Hypercube gadgets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GadgetSpace:
    """The hypercube B = {0,1}^Sigma, indexed so bit j of x is x's value at symbol j."""

    sigma_size: int

    def __post_init__(self):
        if self.sigma_size < 1:
            raise StructuralError("gadget space needs at least one symbol")

    @property
    def size(self) -> int:
        return 2**self.sigma_size

    def members(self, predicate) -> frozenset[int]:
        return frozenset(x for x in range(self.size) if predicate(x))


def q_alpha(space: GadgetSpace, alpha: int) -> frozenset[int]:
    """Q_a = vectors with bit a set."""
    _check_symbol(space, alpha)
    return space.members(lambda x: x >> alpha & 1)


def qbar_alpha(space: GadgetSpace, alpha: int) -> frozenset[int]:
    """Q̄_a = vectors with bit a clear."""
    _check_symbol(space, alpha)
    return space.members(lambda x: not x >> alpha & 1)


def q_subset(space: GadgetSpace, symbols) -> frozenset[int]:
    """Q_S = union of Q_a over a in S; empty S gives the empty set."""
    mask = 0
    for a in symbols:
        _check_symbol(space, a)
        mask |= 1 << a
    return space.members(lambda x: x & mask)


def _check_symbol(space: GadgetSpace, alpha: int) -> None:
    if not 0 <= alpha < space.sigma_size:
        raise StructuralError(f"symbol {alpha} outside the alphabet of size {space.sigma_size}")


def gadget_membership(space: GadgetSpace, kind: str, arg) -> frozenset[int]:
    """Dispatching front door: kind in {"Q", "Qbar", "QS"}.

    The defining law, Q̄_a ∪ Q_S = B iff a in S, is what the coverage
    equivalence below rests on; it is property-tested exhaustively.
    """
    if kind == "Q":
        return q_alpha(space, arg)
    if kind == "Qbar":
        return qbar_alpha(space, arg)
    if kind == "QS":
        return q_subset(space, arg)
    raise StructuralError(f"unknown gadget kind {kind!r}")


# ---------------------------------------------------------------------------
# Label cover -> set cover
# ---------------------------------------------------------------------------


def _check_labelcover_endpoints(g: ConstraintGraph, f_start, f_goal):
    f_start = tuple(frozenset(a) for a in f_start)
    f_goal = tuple(frozenset(a) for a in f_goal)
    if g.arity != 2:
        raise StructuralError(f"reduction needs arity 2, got {g.arity}")
    if g.has_self_loops():
        raise StructuralError("normalize self-loops before reducing")
    for name, f in (("start", f_start), ("goal", f_goal)):
        if multi_size(f) != g.n_vertices or any(len(vals) != 1 for vals in f):
            raise StructuralError(f"{name} must assign exactly one label per vertex")
        if not satisfies_multi(g, f):
            raise StructuralError(f"{name} does not satisfy the graph")
    return f_start, f_goal


def _edge_lo_hi(g: ConstraintGraph, e_idx: int):
    """Orient an edge by vertex index; sat(a_lo, b_hi) reads the stored table."""
    v, w = g.edges[e_idx]
    if v <= w:
        lo, hi = v, w
        sat = lambda a, b: g.tables[e_idx][a * g.n_symbols + b] == 1
    else:
        lo, hi = w, v
        sat = lambda a, b: g.tables[e_idx][b * g.n_symbols + a] == 1
    return lo, hi, sat


def _partner_sets(g: ConstraintGraph, e_idx: int, orientation: str):
    """For each symbol b at the larger endpoint, the smaller endpoint's partners.

    "corrected" takes the satisfaction-compatible partners {a : sat(a, b)},
    which makes coverage of the edge block coincide with edge
    satisfaction.  "verbatim" instead applies the partner-map definition
    with the larger endpoint's symbol in the first table slot, which
    transposes the check and fails on asymmetric tables; it is kept
    behind this flag for documentation by tests.
    """
    lo, hi, sat = _edge_lo_hi(g, e_idx)
    s = g.n_symbols
    lo_adm = g.allowed_symbols(lo)
    partners = {}
    for b in range(s):
        if orientation == ORIENT_CORRECTED:
            partners[b] = frozenset(a for a in lo_adm if sat(a, b))
        elif orientation == ORIENT_VERBATIM:
            partners[b] = frozenset(a for a in lo_adm if sat(b, a))
        else:
            raise StructuralError(f"unknown orientation {orientation!r}")
    return lo, hi, partners


def _build_set_contents(g: ConstraintGraph, orientation: str):
    """Members of S_{v,a} as (edge index, hypercube vector) pairs."""
    space = GadgetSpace(g.n_symbols)
    pairs = [(v, a) for v in range(g.n_vertices) for a in sorted(g.allowed_symbols(v))]
    contents = {pair: set() for pair in pairs}
    for e_idx in range(len(g.edges)):
        lo, hi, partners = _partner_sets(g, e_idx, orientation)
        for a in sorted(g.allowed_symbols(lo)):
            for x in qbar_alpha(space, a):
                contents[(lo, a)].add((e_idx, x))
        for b in sorted(g.allowed_symbols(hi)):
            for x in q_subset(space, partners[b]):
                contents[(hi, b)].add((e_idx, x))
    return space, pairs, contents


@dataclass(frozen=True)
class SetCoverReduction:
    """Reduced set-cover instance plus the label-driven solution mapping."""

    system: SetSystem
    start: frozenset[int]
    goal: frozenset[int]
    pairs: tuple[tuple[int, int], ...]  # set index -> (vertex, symbol)
    source: ConstraintGraph

    def index_of(self, v: int, alpha: int) -> int:
        return self.pairs.index((v, alpha))


def labelcover_to_setcover(
    g: ConstraintGraph, f_start, f_goal, orientation: str = ORIENT_CORRECTED
) -> SetCoverReduction:
    """Build the E x B set-cover instance of a loop-free label-cover instance.

    One set S_{v,a} per vertex and admissible symbol: for each incident
    edge, the smaller endpoint contributes the edge's block restricted to
    Q̄_a and the larger endpoint the block restricted to Q over its
    partner symbols.  Covers map to multi assignments by membership.
    """
    f_start, f_goal = _check_labelcover_endpoints(g, f_start, f_goal)
    space, pairs, contents = _build_set_contents(g, orientation)
    element_index = {}
    element_labels = []
    for e_idx in range(len(g.edges)):
        for x in range(space.size):
            element_index[(e_idx, x)] = len(element_labels)
            element_labels.append(f"(e{e_idx},{format(x, f'0{g.n_symbols}b')})")
    sets = tuple(
        frozenset(element_index[el] for el in contents[pair]) for pair in pairs
    )
    set_labels = tuple(
        f"({g.vertices[v]},{g.alphabet[a]})" for v, a in pairs
    )
    system = SetSystem(elements=tuple(element_labels), sets=sets, set_labels=set_labels)
    lookup = {pair: i for i, pair in enumerate(pairs)}
    start = frozenset(lookup[(v, next(iter(vals)))] for v, vals in enumerate(f_start))
    goal = frozenset(lookup[(v, next(iter(vals)))] for v, vals in enumerate(f_goal))
    return SetCoverReduction(
        system=system, start=start, goal=goal, pairs=tuple(pairs), source=g
    )


def setcover_solution_to_multiassignment(red: SetCoverReduction, cover) -> tuple[frozenset[int], ...]:
    """f(v) = {a : S_{v,a} chosen}; inverse of multiassignment_to_cover."""
    chosen = frozenset(cover)
    values = [set() for _ in range(red.source.n_vertices)]
    for i in chosen:
        v, a = red.pairs[i]
        values[v].add(a)
    return tuple(frozenset(vals) for vals in values)


def multiassignment_to_cover(red: SetCoverReduction, f) -> frozenset[int]:
    """C_f = {S_{v,a} : a in f(v)}; requires admissible labels only."""
    lookup = {pair: i for i, pair in enumerate(red.pairs)}
    chosen = set()
    for v, vals in enumerate(f):
        for a in vals:
            if (v, a) not in lookup:
                raise StructuralError(f"label {a} at vertex {v} has no set in the family")
            chosen.add(lookup[(v, a)])
    return frozenset(chosen)


# ---------------------------------------------------------------------------
# Label cover -> hypergraph vertex cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HvcReduction:
    """Reduced vertex-cover instance; real vertices precede padding vertices."""

    hypergraph: Hypergraph
    start: frozenset[int]
    goal: frozenset[int]
    pairs: tuple[tuple[int, int], ...]  # real vertex index -> (vertex, symbol)
    n_real: int
    source: ConstraintGraph


def labelcover_to_hvc(
    g: ConstraintGraph, f_start, f_goal, orientation: str = ORIENT_CORRECTED
) -> HvcReduction:
    """Inverted index of the set-cover reduction, padded to 2|Sigma|-uniform.

    Hyperedge T_{e,x} collects the (vertex, symbol) pairs whose set
    contains the universe element (e, x); fresh per-hyperedge padding
    vertices bring every hyperedge to size exactly 2|Sigma|.
    """
    f_start, f_goal = _check_labelcover_endpoints(g, f_start, f_goal)
    space, pairs, contents = _build_set_contents(g, orientation)
    uniformity = 2 * g.n_symbols
    real_index = {pair: i for i, pair in enumerate(pairs)}
    members_by_element: dict[tuple[int, int], set[int]] = {
        (e_idx, x): set() for e_idx in range(len(g.edges)) for x in range(space.size)
    }
    for pair, elements in contents.items():
        for el in elements:
            members_by_element[el].add(real_index[pair])
    vertex_labels = [f"({g.vertices[v]},{g.alphabet[a]})" for v, a in pairs]
    hyperedges = []
    for e_idx in range(len(g.edges)):
        for x in range(space.size):
            members = set(members_by_element[(e_idx, x)])
            if len(members) > uniformity:
                raise StructuralError("hyperedge exceeds the uniformity bound")
            pad_needed = uniformity - len(members)
            for k in range(pad_needed):
                members.add(len(vertex_labels))
                vertex_labels.append(f"pad(e{e_idx},{format(x, f'0{g.n_symbols}b')},{k})")
            hyperedges.append(frozenset(members))
    h = Hypergraph(
        vertices=tuple(vertex_labels),
        hyperedges=tuple(hyperedges),
        uniformity=uniformity,
    )
    start = frozenset(real_index[(v, next(iter(vals)))] for v, vals in enumerate(f_start))
    goal = frozenset(real_index[(v, next(iter(vals)))] for v, vals in enumerate(f_goal))
    return HvcReduction(
        hypergraph=h, start=start, goal=goal, pairs=tuple(pairs), n_real=len(pairs), source=g
    )


def vertexcover_solution_to_multiassignment(red: HvcReduction, cover) -> tuple[frozenset[int], ...]:
    """Project a vertex cover onto labels; padding vertices are dropped."""
    values = [set() for _ in range(red.source.n_vertices)]
    for i in frozenset(cover):
        if i < red.n_real:
            v, a = red.pairs[i]
            values[v].add(a)
    return tuple(frozenset(vals) for vals in values)


def multiassignment_to_vertexcover(red: HvcReduction, f) -> frozenset[int]:
    lookup = {pair: i for i, pair in enumerate(red.pairs)}
    chosen = set()
    for v, vals in enumerate(f):
        for a in vals:
            if (v, a) not in lookup:
                raise StructuralError(f"label {a} at vertex {v} has no vertex in the hypergraph")
            chosen.add(lookup[(v, a)])
    return frozenset(chosen)
