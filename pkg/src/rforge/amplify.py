"""Expander graphs, exact random-walk probabilities, and acceptance amplification.

The amplifier re-runs a base verifier along the vertices of a random walk
on a d-regular expander whose vertex set is the verifier's randomness
space, ANDing the decisions.  With a certified spectral ratio below a
quarter of the base soundness gap, the rejection probability of a bad
proof decays geometrically in the walk length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import iv
from mpmath.libmp import to_rational

from .core import StructuralError
from .verifier import TableVerifier
from . import rng as rng_mod

# Power iteration settings for spectral certification (desk scale: n <= 4096).
_POWER_TOL = 1e-9
_POWER_MIN_ITERS = 64
_POWER_MAX_ITERS = 20000
_CERT_REL_SLACK = 1e-6
_CERT_ABS_SLACK = 1e-9


@dataclass(frozen=True)
class ExpanderGraph:
    """d-regular multigraph given by a rotation map, with a certified lambda.

    ``rotation[v * d + p]`` is the (vertex, port) pair reached by leaving
    vertex v on port p; the map is an involution.  ``lam`` is a certified
    upper bound on the second-largest adjacency eigenvalue magnitude.
    """

    n: int
    d: int
    rotation: tuple[tuple[int, int], ...]
    lam: float

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise StructuralError("expander needs n >= 1 and d >= 1")
        if len(self.rotation) != self.n * self.d:
            raise StructuralError("rotation map must have n*d entries")
        for v in range(self.n):
            for p in range(self.d):
                w, pp = self.rotation[v * self.d + p]
                if not (0 <= w < self.n and 0 <= pp < self.d):
                    raise StructuralError("rotation map leaves the graph")
                if self.rotation[w * self.d + pp] != (v, p):
                    raise StructuralError("rotation map is not an involution")

    @property
    def ratio(self) -> float:
        return self.lam / self.d

    def step(self, v: int, port: int) -> int:
        return self.rotation[v * self.d + port][0]

    def adjacency_counts(self) -> list[list[int]]:
        """Multiplicity matrix; row sums equal d (a self-loop counts both ports)."""
        counts = [[0] * self.n for _ in range(self.n)]
        for v in range(self.n):
            for p in range(self.d):
                counts[v][self.rotation[v * self.d + p][0]] += 1
        return counts


def _complete_rotation(n: int) -> tuple[tuple[int, int], ...]:
    # K_n: vertex v's port p leads to the p-th other vertex in index order.
    rot: list[tuple[int, int]] = [(0, 0)] * (n * (n - 1))
    for v in range(n):
        for p in range(n - 1):
            w = p if p < v else p + 1
            back = v if v < w else v - 1
            rot[v * (n - 1) + p] = (w, back)
    return tuple(rot)


def _complete_plus_matching_rotation(n: int) -> tuple[tuple[int, int], ...]:
    # K_n plus the perfect matching v <-> v + n/2, giving degree n with lambda = 2.
    d = n
    half = n // 2
    rot: list[tuple[int, int]] = [(0, 0)] * (n * d)
    for v in range(n):
        for p in range(n - 1):
            w = p if p < v else p + 1
            back = v if v < w else v - 1
            rot[v * d + p] = (w, back)
        partner = (v + half) % n
        rot[v * d + (d - 1)] = (partner, d - 1)
    return tuple(rot)


def _config_model_rotation(n: int, d: int, seeded) -> tuple[tuple[int, int], ...]:
    # Configuration model: pair all n*d stubs uniformly; multi-edges and
    # self-loops are kept (the walk semantics only needs the rotation map).
    stubs = [(v, p) for v in range(n) for p in range(d)]
    seeded.shuffle(stubs)
    rot: list[tuple[int, int]] = [(0, 0)] * (n * d)
    it = iter(stubs)
    for (v1, p1), (v2, p2) in zip(it, it):
        rot[v1 * d + p1] = (v2, p2)
        rot[v2 * d + p2] = (v1, p1)
    return tuple(rot)


def _estimate_lambda(rotation: tuple[tuple[int, int], ...], n: int, d: int, seed: int) -> float:
    """Certified upper bound on the second adjacency eigenvalue magnitude.

    Deflated power iteration: iterate the adjacency operator on vectors
    kept orthogonal to the all-ones eigenvector, tracking the norm-growth
    estimate until it is stable to 1e-9, then pad with a small outward
    slack.  The norm-ratio estimate approaches lambda from below, so the
    slack keeps the certificate on the safe side.
    """
    if n == 1:
        return 0.0
    a = np.zeros((n, n), dtype=float)
    for v in range(n):
        for p in range(d):
            a[v, rotation[v * d + p][0]] += 1.0
    best = 0.0
    for restart in range(3):
        r = np.random.default_rng(seed * 7919 + restart)
        x = r.standard_normal(n)
        x -= x.mean()
        norm = np.linalg.norm(x)
        if norm < 1e-12:
            continue
        x /= norm
        est = 0.0
        for it in range(_POWER_MAX_ITERS):
            y = a @ x
            y -= y.mean()
            norm = np.linalg.norm(y)
            if norm < 1e-14:
                est = 0.0
                break
            new_est = norm
            x = y / norm
            if it >= _POWER_MIN_ITERS and abs(new_est - est) <= _POWER_TOL * max(1.0, new_est):
                est = new_est
                break
            est = new_est
        best = max(best, est)
    return best * (1.0 + _CERT_REL_SLACK) + _CERT_ABS_SLACK


def build_expander(n: int, d: int, target_ratio: float, seed: int, attempts: int = 64) -> ExpanderGraph:
    """Build a d-regular multigraph on n vertices with certified ratio < target.

    Deterministic complete-graph constructions are used when they apply
    (n <= d + 1): K_n for d = n - 1 has lambda exactly 1, and K_n plus a
    perfect matching for d = n (n even) has lambda exactly 2.  Otherwise
    seeded configuration-model graphs are drawn and spectrally certified
    until one beats the target or the attempt budget runs out.
    """
    if d < 3:
        raise StructuralError(f"degree must be >= 3, got {d}")
    if (n * d) % 2 != 0:
        raise StructuralError("n * d must be even")
    if n <= d + 1:
        if d == n - 1:
            lam = 1.0 if n > 2 else 0.0
            if lam / d < target_ratio:
                return ExpanderGraph(n=n, d=d, rotation=_complete_rotation(n), lam=lam)
            raise StructuralError(
                f"complete graph on {n} vertices has ratio {lam / d}, target {target_ratio} infeasible"
            )
        if d == n and n % 2 == 0:
            lam = 2.0
            if lam / d < target_ratio:
                return ExpanderGraph(
                    n=n, d=d, rotation=_complete_plus_matching_rotation(n), lam=lam
                )
            raise StructuralError(
                f"complete-plus-matching graph on {n} vertices has ratio {lam / d}, "
                f"target {target_ratio} infeasible"
            )
    for attempt in range(attempts):
        seeded = rng_mod.stream(seed, f"expander:{n}:{d}:{attempt}")
        rotation = _config_model_rotation(n, d, seeded)
        lam = _estimate_lambda(rotation, n, d, rng_mod.substream_seed(seed, f"spectral:{attempt}"))
        if lam / d < target_ratio:
            return ExpanderGraph(n=n, d=d, rotation=rotation, lam=lam)
    raise StructuralError(
        f"no (n={n}, d={d}) graph with ratio < {target_ratio} found in {attempts} attempts"
    )


def walk_hit_prob(x: ExpanderGraph, subset, rho: int) -> Fraction:
    """Exact probability that all rho vertices of a uniform walk land in subset.

    The walk has rho vertices and rho - 1 steps: a uniform start vertex
    followed by uniform port choices.  Computed by transfer matrix over
    integer walk counts, so the result is an exact rational.
    """
    if rho < 1:
        raise StructuralError(f"walk needs at least one vertex, got rho={rho}")
    chosen = frozenset(subset)
    if any(v < 0 or v >= x.n for v in chosen):
        raise StructuralError("subset leaves the vertex set")
    counts = x.adjacency_counts()
    # inside[v]: number of port sequences for the walk so far that stayed in
    # the subset and currently sit at v.
    inside = [1 if v in chosen else 0 for v in range(x.n)]
    for _ in range(rho - 1):
        nxt = [0] * x.n
        for v in range(x.n):
            cv = inside[v]
            if cv:
                row = counts[v]
                for w in range(x.n):
                    if row[w] and w in chosen:
                        nxt[w] += cv * row[w]
        inside = nxt
    return Fraction(sum(inside), x.n * x.d ** (rho - 1))


def choose_rho(eps: Fraction, delta: Fraction) -> int:
    """ceil((2 / eps) * ln(1 / delta)) with outward-rounded interval arithmetic.

    The log is evaluated as a certified interval at increasing precision
    until both interval ends share a ceiling, so the result can never be
    an underestimate of the true ceiling.
    """
    eps = Fraction(eps)
    delta = Fraction(delta)
    if not 0 < eps <= 1:
        raise StructuralError(f"eps must lie in (0, 1], got {eps}")
    if not 0 < delta < 1:
        raise StructuralError(f"delta must lie in (0, 1), got {delta}")
    saved_prec = iv.prec
    try:
        for prec in (80, 160, 320, 640, 1280):
            iv.prec = prec
            log_iv = iv.log(iv.mpf(delta.denominator) / iv.mpf(delta.numerator))
            val = (2 * iv.mpf(eps.denominator) / iv.mpf(eps.numerator)) * log_iv
            lo_end, hi_end = val._mpi_
            lo = math.ceil(Fraction(int(to_rational(lo_end)[0]), int(to_rational(lo_end)[1])))
            hi = math.ceil(Fraction(int(to_rational(hi_end)[0]), int(to_rational(hi_end)[1])))
            if lo == hi:
                return int(lo)
    finally:
        iv.prec = saved_prec
    raise StructuralError(
        f"could not settle ceil((2/{eps}) ln(1/{delta})) at 1280 bits of precision"
    )


def amplify(v: TableVerifier, x: ExpanderGraph, rho: int, max_positions: int = 20) -> TableVerifier:
    """Walk-amplified verifier: run v on every vertex of a rho-vertex walk.

    Randomness encodes (start vertex, rho - 1 port choices); the degree
    must be a power of two so port choices are whole bits.  The query
    tuple concatenates the walk entries' tuples with duplicate positions
    merged (each position read once, fanned out to every decision table);
    the decision is the AND of the walk entries' decisions.
    """
    if rho < 1:
        raise StructuralError(f"rho must be >= 1, got {rho}")
    if x.n != v.n_entries:
        raise StructuralError(
            f"expander has {x.n} vertices, verifier randomness space has {v.n_entries}"
        )
    if x.d & (x.d - 1) != 0:
        raise StructuralError(f"expander degree must be a power of two, got {x.d}")
    port_bits = x.d.bit_length() - 1
    new_r = v.r + (rho - 1) * port_bits
    queries: list[tuple[int, ...]] = []
    tables: list[bytes] = []
    for rnd in range(2**new_r):
        ports_word = rnd & ((1 << ((rho - 1) * port_bits)) - 1)
        vertex = rnd >> ((rho - 1) * port_bits)
        walk = [vertex]
        for k in range(rho - 1):
            shift = ((rho - 2 - k) * port_bits)
            port = (ports_word >> shift) & (x.d - 1)
            vertex = x.step(vertex, port)
            walk.append(vertex)
        merged: list[int] = []
        index_of: dict[int, int] = {}
        for rk in walk:
            for i in v.queries[rk]:
                if i not in index_of:
                    index_of[i] = len(merged)
                    merged.append(i)
        if len(merged) > max_positions:
            raise StructuralError(
                f"amplified entry reads {len(merged)} positions, ceiling is {max_positions}"
            )
        m = len(merged)
        table = bytearray(2**m)
        for bits in range(2**m):
            ok = True
            for rk in walk:
                view = 0
                for i in v.queries[rk]:
                    view = (view << 1) | ((bits >> (m - 1 - index_of[i])) & 1)
                if v.tables[rk][view] != 1:
                    ok = False
                    break
            table[bits] = 1 if ok else 0
        queries.append(tuple(merged))
        tables.append(bytes(table))
    q_max = max(len(i) for i in queries)
    return TableVerifier(r=new_r, q=q_max, ell=v.ell, queries=tuple(queries), tables=tuple(tables))


@dataclass(frozen=True)
class DegreeReport:
    """Per-position query degrees plus an optional probability-bound check.

    ``bound_ok`` reports whether max_i Pr[i queried] <= delta^(-kappa) / 2^r,
    i.e. whether the maximum degree is at most delta^(-kappa).
    """

    degrees: tuple[int, ...]
    max_degree: int
    regular: int | None
    bound_value: Fraction | None = None
    bound_ok: bool | None = None


def degree_report(v: TableVerifier, delta: Fraction | None = None, kappa: int | None = None) -> DegreeReport:
    counts = [0] * v.ell
    for positions in v.queries:
        for i in positions:
            counts[i] += 1
    max_degree = max(counts)
    regular = counts[0] if len(set(counts)) == 1 else None
    bound_value = bound_ok = None
    if delta is not None:
        if kappa is None:
            raise StructuralError("kappa is required when delta is supplied")
        bound_value = Fraction(delta) ** (-kappa)
        bound_ok = Fraction(max_degree) <= bound_value
    return DegreeReport(
        degrees=tuple(counts),
        max_degree=max_degree,
        regular=regular,
        bound_value=bound_value,
        bound_ok=bound_ok,
    )
