"""Seeded property-check suites.

Each suite drives one lemma-level identity over a stream of generated
instances and reports the first counterexample verbatim.  The acceptance
test module runs the same suites, so CLI checks and the test suite cannot
drift apart.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import generate, rng as rng_mod, serialize
from .amplify import (
    ExpanderGraph,
    amplify,
    build_expander,
    choose_rho,
    walk_hit_prob,
)
from .approx import two_factor_cover
from .core import (
    BOTTOM,
    BudgetExhaustedError,
    SetSystem,
    StructuralError,
    is_full,
    multi_size,
    partial_size,
    satisfies_partial,
    validate_sequence,
)
from .fglss import (
    build_fglss,
    completeness_sequence,
    enumerate_satisfying_partials,
    interpolate_proofs,
    plurality_decode,
    symbol_coords,
)
from .reductions import (
    labelcover_to_hvc,
    labelcover_to_setcover,
    lift_partial_sequence,
    p2csp_to_labelcover,
    setcover_solution_to_multiassignment,
)
from .solve import (
    PROBLEM_HVC_COST,
    PROBLEM_MAXPAR,
    PROBLEM_MINLAB,
    PROBLEM_SC_COST,
    enumerate_feasible_states,
    min_cover,
    min_vertex_cover,
    oracle_value,
    sequence_objective,
    solve_cost_hvc,
    solve_cost_setcover,
    solve_maxpar,
    solve_minlab,
)
from .verifier import accept_prob, accepting_set, degree


@dataclass
class CheckReport:
    suite: str
    passed: bool
    trials: int
    violations: int
    counterexample: str | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.suite}: {self.trials} trials, {self.violations} violations"
        if self.notes:
            line += " [" + "; ".join(self.notes) + "]"
        return line


def _ce(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _edge_satisfied(g, e_idx, f) -> bool:
    v, w = g.edges[e_idx]
    s = g.n_symbols
    return any(g.tables[e_idx][a * s + b] for a in f[v] for b in f[w])


# ---------------------------------------------------------------------------
# Coverage equivalence of the set-cover gadget
# ---------------------------------------------------------------------------


def lemma_setcover(trials: int = 200, seed: int = 0, corrupt: bool = False) -> CheckReport:
    """Every subfamily covers an edge block iff the mapped labels satisfy the edge.

    Exhaustive over all subfamilies of each generated instance (asymmetric
    tables included).  ``corrupt`` drops one universe element from one set
    after the reduction, as a negative control.
    """
    violations = 0
    counterexample = None
    for t in range(trials):
        params = rng_mod.stream(seed, f"lemma-params:{t}")
        inst = generate.generate_labelcover(
            rng_mod.substream_seed(seed, f"lemma:{t}"),
            n_vertices=params.randrange(2, 4),
            alphabet_size=params.randrange(1, 4),
            density=0.9,
            accept_p=params.choice((0.4, 0.6, 0.8)),
        )
        g = inst.graph
        red = labelcover_to_setcover(g, inst.start, inst.goal)
        system = red.system
        if corrupt:
            victim = next(i for i, s in enumerate(system.sets) if s)
            broken = list(system.sets)
            broken[victim] = frozenset(sorted(broken[victim])[1:])
            system = SetSystem(system.elements, tuple(broken), system.set_labels)
        b_size = 2**g.n_symbols
        n_edges = len(g.edges)
        set_blocks = []
        for members in system.sets:
            blocks = [0] * n_edges
            for el in members:
                blocks[el // b_size] |= 1 << (el % b_size)
            set_blocks.append(blocks)
        full_block = (1 << b_size) - 1
        m = system.n_sets
        for mask in range(2**m):
            chosen = frozenset(i for i in range(m) if mask >> i & 1)
            f = setcover_solution_to_multiassignment(red, chosen)
            if multi_size(f) != len(chosen):
                violations += 1
            for e_idx in range(n_edges):
                acc = 0
                for i in chosen:
                    acc |= set_blocks[i][e_idx]
                covered = acc == full_block
                satisfied = _edge_satisfied(g, e_idx, f)
                if covered != satisfied:
                    violations += 1
                    if counterexample is None:
                        counterexample = _ce(
                            {
                                "instance": serialize.labelcover_instance_payload(inst),
                                "subfamily": sorted(chosen),
                                "edge": e_idx,
                                "covered": covered,
                                "satisfied": satisfied,
                            }
                        )
            if counterexample is not None and violations:
                break
        if counterexample is not None and violations:
            break
    return CheckReport("lemma-setcover", violations == 0, trials, violations, counterexample)


# ---------------------------------------------------------------------------
# Cost equality through the reductions
# ---------------------------------------------------------------------------


def _cost_equality(trials: int, seed: int, target: str) -> CheckReport:
    violations = 0
    counterexample = None
    notes = []
    for t in range(trials):
        params = rng_mod.stream(seed, f"cost-params:{t}")
        inst = generate.generate_labelcover(
            rng_mod.substream_seed(seed, f"cost:{t}"),
            n_vertices=params.randrange(2, 4),
            alphabet_size=params.randrange(1, 3),
            density=0.9,
            accept_p=params.choice((0.5, 0.7, 0.9)),
            ensure_incident=True,
            distinct_endpoints=True,
        )
        g = inst.graph
        minlab = solve_minlab(g, inst.start, inst.goal, cap=100_000)
        if target == "setcover":
            red = labelcover_to_setcover(g, inst.start, inst.goal)
            opt = min_cover(red.system)
            cost = solve_cost_setcover(red.system, red.start, red.goal, cap=100_000)
        else:
            red = labelcover_to_hvc(g, inst.start, inst.goal)
            opt = min_vertex_cover(red.hypergraph)
            cost = solve_cost_hvc(red.hypergraph, red.start, red.goal, cap=100_000)
        if opt != g.n_vertices:
            violations += 1
            if counterexample is None:
                counterexample = _ce(
                    {
                        "instance": serialize.labelcover_instance_payload(inst),
                        "reason": f"minimum cover {opt} != |V| = {g.n_vertices}",
                    }
                )
            continue
        if minlab.value != cost.value:
            violations += 1
            if counterexample is None:
                counterexample = _ce(
                    {
                        "instance": serialize.labelcover_instance_payload(inst),
                        "minlab": str(minlab.value),
                        "cost": str(cost.value),
                    }
                )
    suite = "cost-equality-sc" if target == "setcover" else "cost-equality-hvc"
    return CheckReport(suite, violations == 0, trials, violations, counterexample, tuple(notes))


def cost_equality_sc(trials: int = 50, seed: int = 0) -> CheckReport:
    """Exact rational equality of the label minmax and the reduced cover minmax."""
    return _cost_equality(trials, seed, "setcover")


def cost_equality_hvc(trials: int = 50, seed: int = 0) -> CheckReport:
    """Exact rational equality against the padded vertex-cover reduction."""
    return _cost_equality(trials, seed, "hypergraph")


# ---------------------------------------------------------------------------
# Completeness of the singleton lift
# ---------------------------------------------------------------------------


def lift_completeness(trials: int = 30, seed: int = 0) -> CheckReport:
    """Full-assignment optima lift to label-cover optima of exactly 1.

    Instances are rejection-sampled until the partial-assignment optimum
    is 1 with distinct endpoints; the constructive half-step witness must
    validate with peak size |V| + 1, and the lifted instance must solve
    to exactly 1.
    """
    found = 0
    attempts = 0
    violations = 0
    counterexample = None
    while found < trials and attempts < trials * 100:
        params = rng_mod.stream(seed, f"lift-params:{attempts}")
        inst = generate.generate_csp(
            rng_mod.substream_seed(seed, f"lift:{attempts}"),
            n_vertices=params.randrange(2, 4),
            alphabet_size=params.randrange(2, 4),
            density=0.8,
            accept_p=0.75,
            ensure_incident=True,
            distinct_endpoints=True,
        )
        attempts += 1
        if inst.start == inst.goal:
            continue
        res = solve_maxpar(inst.graph, inst.start, inst.goal, cap=100_000)
        if res.value != 1:
            continue
        found += 1
        lifted = p2csp_to_labelcover(inst.graph, inst.start, inst.goal)
        half = lift_partial_sequence(inst.graph, res.witness)
        report = validate_sequence(inst.graph, half, start=lifted.start, goal=lifted.goal)
        peak = max(multi_size(f) for f in half.states)
        minlab = solve_minlab(inst.graph, lifted.start, lifted.goal, cap=100_000)
        if not report.ok or peak != inst.graph.n_vertices + 1 or minlab.value != 1:
            violations += 1
            if counterexample is None:
                counterexample = _ce(
                    {
                        "instance": serialize.p2csp_instance_payload(inst),
                        "witness_ok": report.ok,
                        "peak": peak,
                        "minlab": str(minlab.value),
                    }
                )
    notes = [f"{attempts} instances sampled for {found} with optimum 1"]
    passed = violations == 0 and found >= trials
    if found < trials:
        notes.append("not enough optimum-1 instances found")
    return CheckReport("lift-completeness", passed, found, violations, counterexample, tuple(notes))


# ---------------------------------------------------------------------------
# Constraint-graph completeness and soundness machinery
# ---------------------------------------------------------------------------


def fglss_completeness(trials: int = 10, seed: int = 0) -> CheckReport:
    """A 1-bit step between everywhere-accepted proofs walks through full
    satisfying assignments only, with length 1 + 2 * degree."""
    violations = 0
    counterexample = None
    for t in range(trials):
        params = rng_mod.stream(seed, f"fcomp-params:{t}")
        q = params.randrange(1, 3)
        r = params.randrange(1, 3)
        ell = params.randrange(q, 5)
        v, start, goal = generate.generate_verifier_with_accepted_pair(
            rng_mod.substream_seed(seed, f"fcomp:{t}"), r=r, q=q, ell=ell
        )
        g = build_fglss(v)
        seq = completeness_sequence(v, start, goal)
        star = next((i for i in range(v.ell) if start[i] != goal[i]), None)
        expect_len = 1 if star is None else 1 + 2 * degree(v, star)
        all_full = all(is_full(f) for f in seq.states)
        report = validate_sequence(g, seq)
        if not all_full or not report.ok or len(seq.states) != expect_len:
            violations += 1
            if counterexample is None:
                counterexample = _ce(
                    {
                        "verifier": serialize.verifier_payload(v, start, goal),
                        "sequence_ok": report.ok,
                        "length": len(seq.states),
                        "expected_length": expect_len,
                    }
                )
    return CheckReport("fglss-completeness", violations == 0, trials, violations, counterexample)


def _toy_verifiers(trials: int, seed: int):
    """Small verifiers whose satisfying-assignment spaces are enumerable.

    Always includes one deterministic 8-entry equality checker (an
    8-vertex graph) whose tight tables keep the enumeration small; the
    seeded rest stay at 2 or 4 vertices.
    """
    from .verifier import TableVerifier

    eq = bytes([1, 0, 0, 1])
    queries = ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (0, 3), (1, 2))
    out = [
        TableVerifier(r=3, q=2, ell=4, queries=queries, tables=(eq,) * 8)
    ]
    for t in range(trials):
        params = rng_mod.stream(seed, f"toy-params:{t}")
        q = params.randrange(1, 3)
        r = params.randrange(1, 3)
        ell = params.randrange(q, 4)
        out.append(
            generate.generate_verifier_with_accepted_pair(
                rng_mod.substream_seed(seed, f"toy:{t}"), r=r, q=q, ell=ell, accept_p=0.5
            )[0]
        )
    return out


def fglss_popularity(trials: int = 6, seed: int = 0) -> CheckReport:
    """Plurality decoding laws over all satisfying partial assignments.

    For every satisfying assignment of every toy graph: each assigned
    entry accepts the decoded proof; the label sets voting on a position
    form a subset chain; the decoded acceptance probability is at least
    the assigned fraction.  Single-vertex mutations then exercise the
    interpolation dip bound with exact per-position probabilities.
    """
    violations = 0
    counterexample = None
    states_seen = 0
    for v in _toy_verifiers(trials, seed):
        g = build_fglss(v)
        two_r = v.n_entries
        sampler = rng_mod.stream(seed, f"popularity-pairs:{v.r}:{v.ell}")
        for f in enumerate_satisfying_partials(g):
            states_seen += 1
            proof, sat_flag = plurality_decode(v, f, g)
            problems = []
            if not sat_flag:
                problems.append("decode flagged a satisfying assignment")
            for rnd in range(two_r):
                if f[rnd] != BOTTOM and not v.entry_accepts(rnd, proof):
                    problems.append(f"assigned entry {rnd} rejects the decoded proof")
            for i in range(v.ell):
                seen = set()
                for rnd in range(two_r):
                    if f[rnd] != BOTTOM and i in v.queries[rnd]:
                        seen.add(symbol_coords(f[rnd], v.q)[v.queries[rnd].index(i)])
                if 0 in seen and 1 in seen:
                    problems.append(f"incomparable label sets vote on position {i}")
            if accept_prob(v, proof) < Fraction(partial_size(f), two_r):
                problems.append("acceptance below the assigned fraction")
            if problems:
                violations += 1
                if counterexample is None:
                    counterexample = _ce(
                        {
                            "verifier": serialize.verifier_payload(v),
                            "assignment": [None if a == BOTTOM else a for a in f],
                            "problems": problems,
                        }
                    )
                break
            # Dip bound on a sampled single-vertex mutation of f.
            if sampler.random() < 0.25:
                rnd = sampler.randrange(two_r)
                alt = sampler.randrange(g.n_symbols)
                mutated = f[:rnd] + (alt,) + f[rnd + 1 :]
                if mutated != f and satisfies_partial(g, mutated):
                    proof2, _ = plurality_decode(v, mutated, g)
                    base = accept_prob(v, proof)
                    for inter in interpolate_proofs(v, proof, proof2).states:
                        diff = [i for i in range(v.ell) if inter[i] != proof[i]]
                        floor = base - sum(
                            Fraction(degree(v, i), two_r) for i in diff
                        )
                        if accept_prob(v, inter) < floor:
                            violations += 1
                            if counterexample is None:
                                counterexample = _ce(
                                    {
                                        "verifier": serialize.verifier_payload(v),
                                        "from": proof,
                                        "to": proof2,
                                        "interpolant": inter,
                                    }
                                )
                            break
    notes = (f"{states_seen} satisfying assignments enumerated",)
    return CheckReport(
        "fglss-popularity", violations == 0, trials, violations, counterexample, notes
    )


# ---------------------------------------------------------------------------
# Expander walks and amplification
# ---------------------------------------------------------------------------


def _bounds_hold(x: ExpanderGraph, subset, rho: int) -> bool:
    p = walk_hit_prob(x, subset, rho)
    lam = Fraction(x.lam)
    mu = Fraction(len(frozenset(subset)), x.n)
    lower_base = mu - 2 * lam / x.d
    lower = max(Fraction(0), lower_base) ** rho
    upper = (mu + 2 * lam / x.d) ** rho
    return lower <= p <= upper


def expander_bounds(trials: int = 12, seed: int = 0) -> CheckReport:
    """Exact walk probabilities sit inside the spectral sandwich bounds."""
    graphs = [build_expander(n, n - 1, 0.9, seed) for n in range(4, 9)]
    graphs.append(build_expander(16, 16, 0.2, seed))
    for n, d in ((16, 4), (32, 4), (64, 4)):
        graphs.append(build_expander(n, d, 0.95, seed))
    violations = 0
    counterexample = None
    checked = 0
    rng = rng_mod.stream(seed, "expander-subsets")
    for x in graphs:
        subsets = [frozenset(), frozenset(range(x.n)), frozenset({0})]
        for _ in range(trials):
            k = rng.randrange(x.n + 1)
            subsets.append(frozenset(rng.sample(range(x.n), k)))
        for subset in subsets:
            for rho in range(1, 5):
                checked += 1
                if not _bounds_hold(x, subset, rho):
                    violations += 1
                    if counterexample is None:
                        counterexample = _ce(
                            {
                                "n": x.n,
                                "d": x.d,
                                "lambda": x.lam,
                                "subset": sorted(subset),
                                "rho": rho,
                            }
                        )
    return CheckReport(
        "expander-bounds",
        violations == 0,
        checked,
        violations,
        counterexample,
        (f"{len(graphs)} graphs",),
    )


def _claim_verifier(seed: int, t: int):
    """r=4 verifier over an 8-bit proof with one planted always-accepted proof."""
    from .verifier import TableVerifier

    rng = rng_mod.stream(seed, f"claim-verifier:{t}")
    ell = 8
    planted = "".join(rng.choice("01") for _ in range(ell))
    queries = []
    tables = []
    for rnd in range(16):
        positions = (rnd % ell, (rnd + 1 + rnd // ell) % ell)
        if positions[0] == positions[1]:
            positions = (positions[0], (positions[1] + 1) % ell)
        positions = tuple(positions)
        table = bytearray(4)
        for bits in range(4):
            table[bits] = 1 if rng.random() < 0.25 else 0
        view = 0
        for i in positions:
            view = (view << 1) | (planted[i] == "1")
        table[view] = 1
        queries.append(positions)
        tables.append(bytes(table))
    v = TableVerifier(r=4, q=2, ell=ell, queries=tuple(queries), tables=tuple(tables))
    return v, planted


def claim_accept(trials: int = 3, seed: int = 0) -> CheckReport:
    """Both amplification directions, by exact enumeration of all proofs.

    Uses the deterministic degree-16 graph on 16 vertices (certified
    lambda 2, ratio 1/8 < eps/4 for eps = 3/5) and rho chosen for
    delta = 11/20.  Probability-1 proofs must amplify to exactly 1;
    every proof with acceptance below 1 - eps must amplify below delta.
    Also checks the amplified acceptance equals the walk-restriction
    probability of the base acceptance set, and sweeps all largest
    relevant vertex subsets directly.
    """
    eps = Fraction(3, 5)
    delta = Fraction(11, 20)
    x = build_expander(16, 16, 0.15, seed)
    rho = choose_rho(eps, delta)
    violations = 0
    counterexample = None
    notes = [f"rho={rho}", f"ratio={x.ratio}"]
    if not Fraction(x.lam) / x.d < eps / 4:
        return CheckReport("claim-accept", False, 0, 1, _ce({"reason": "ratio too large"}), tuple(notes))
    low_seen = 0
    for t in range(trials):
        v, planted = _claim_verifier(seed, t)
        amped = amplify(v, x, rho)
        for word in range(2**v.ell):
            proof = format(word, f"0{v.ell}b")
            base = accept_prob(v, proof)
            amp = accept_prob(amped, proof)
            via_walk = walk_hit_prob(x, accepting_set(v, proof), rho)
            problems = []
            if amp != via_walk:
                problems.append("amplified acceptance != walk probability")
            if base == 1 and amp != 1:
                problems.append("probability-1 proof lost acceptance")
            if base < 1 - eps:
                low_seen += 1
                if not amp < delta:
                    problems.append("low-acceptance proof not driven below delta")
            if problems:
                violations += 1
                if counterexample is None:
                    counterexample = _ce(
                        {"trial": t, "proof": proof, "base": str(base), "amplified": str(amp), "problems": problems}
                    )
        if accept_prob(v, planted) != 1:
            violations += 1
    # All subsets of the largest size with |S|/n < 1 - eps; smaller subsets
    # are dominated by monotonicity of the walk event.
    k_max = 0
    while Fraction(k_max + 1, x.n) < 1 - eps:
        k_max += 1
    swept = 0
    for subset in combinations(range(x.n), k_max):
        swept += 1
        if not walk_hit_prob(x, frozenset(subset), rho) < delta:
            violations += 1
            if counterexample is None:
                counterexample = _ce({"subset": list(subset), "rho": rho})
            break
    notes.append(f"{low_seen} low-acceptance proofs exercised")
    notes.append(f"{swept} subsets of size {k_max} swept")
    return CheckReport(
        "claim-accept", violations == 0, trials, violations, counterexample, tuple(notes)
    )


# ---------------------------------------------------------------------------
# Approximation and oracle agreement
# ---------------------------------------------------------------------------


def approx_ratio(trials: int = 60, seed: int = 0) -> CheckReport:
    """Peak identity and the factor-2 bound against the exact solver."""
    violations = 0
    counterexample = None
    compared = 0
    for t in range(trials):
        params = rng_mod.stream(seed, f"approx-params:{t}")
        sub = rng_mod.substream_seed(seed, f"approx:{t}")
        if t % 2 == 0:
            inst = generate.generate_setcover(
                sub, n_elements=params.randrange(3, 7), n_sets=params.randrange(3, 7)
            )
            instance, start, goal = inst.system, inst.start, inst.goal
            opt = min_cover(instance)
            solver = solve_cost_setcover
        else:
            inst = generate.generate_hypergraph(
                sub,
                n_vertices=params.randrange(3, 7),
                n_edges=params.randrange(2, 6),
                max_edge_size=3,
            )
            instance, start, goal = inst.hypergraph, inst.start, inst.goal
            opt = min_vertex_cover(instance)
            solver = solve_cost_hvc
        seq = two_factor_cover(instance, start, goal)
        report = validate_sequence(instance, seq, start=start, goal=goal)
        peak = max(len(c) for c in seq.states)
        problems = []
        if not report.ok:
            problems.append(f"approx sequence invalid at {report.index}")
        if peak != len(start | goal):
            problems.append("peak differs from |start ∪ goal|")
        try:
            exact = solver(instance, start, goal, cap=100_000)
            compared += 1
            if Fraction(peak, opt + 1) > 2 * exact.value:
                problems.append("approximation ratio above 2")
        except BudgetExhaustedError:
            pass
        if problems:
            violations += 1
            if counterexample is None:
                payload = (
                    serialize.setcover_instance_payload(inst)
                    if t % 2 == 0
                    else serialize.hvc_instance_payload(inst)
                )
                counterexample = _ce({"instance": payload, "problems": problems})
    return CheckReport(
        "approx-ratio",
        violations == 0,
        trials,
        violations,
        counterexample,
        (f"{compared} exact comparisons",),
    )


def oracle_agreement(trials: int = 40, seed: int = 0) -> CheckReport:
    """Threshold solvers equal the materialized bottleneck oracle exactly.

    Instances are drawn small enough that the full feasible state space
    has at most 20 states; larger draws are skipped and redrawn.
    """
    violations = 0
    counterexample = None
    done = 0
    attempt = 0
    while done < trials and attempt < trials * 20:
        params = rng_mod.stream(seed, f"oracle-params:{attempt}")
        sub = rng_mod.substream_seed(seed, f"oracle:{attempt}")
        kind = attempt % 4
        attempt += 1
        try:
            if kind == 0:
                inst = generate.generate_csp(
                    sub, n_vertices=2, alphabet_size=params.randrange(1, 3), density=0.9
                )
                problem, instance = PROBLEM_MAXPAR, inst.graph
                start, goal = inst.start, inst.goal
                res = solve_maxpar(instance, start, goal, cap=100_000)
                payload = serialize.p2csp_instance_payload(inst)
            elif kind == 1:
                inst = generate.generate_labelcover(
                    sub, n_vertices=2, alphabet_size=params.randrange(1, 3), density=1.0
                )
                problem, instance = PROBLEM_MINLAB, inst.graph
                start, goal = inst.start, inst.goal
                res = solve_minlab(instance, start, goal, cap=100_000)
                payload = serialize.labelcover_instance_payload(inst)
            elif kind == 2:
                inst = generate.generate_setcover(
                    sub, n_elements=params.randrange(2, 5), n_sets=params.randrange(2, 5)
                )
                problem, instance = PROBLEM_SC_COST, inst.system
                start, goal = inst.start, inst.goal
                res = solve_cost_setcover(instance, start, goal, cap=100_000)
                payload = serialize.setcover_instance_payload(inst)
            else:
                inst = generate.generate_hypergraph(
                    sub, n_vertices=params.randrange(2, 5), n_edges=params.randrange(1, 4)
                )
                problem, instance = PROBLEM_HVC_COST, inst.hypergraph
                start, goal = inst.start, inst.goal
                res = solve_cost_hvc(instance, start, goal, cap=100_000)
                payload = serialize.hvc_instance_payload(inst)
            states = enumerate_feasible_states(problem, instance)
            if len(states) > 20:
                continue
            expected = oracle_value(problem, instance, start, goal)
        except StructuralError:
            continue
        done += 1
        witness_obj = sequence_objective(problem, instance, res.witness)
        if res.value != expected or witness_obj != res.value:
            violations += 1
            if counterexample is None:
                counterexample = _ce(
                    {
                        "instance": payload,
                        "problem": problem,
                        "solver": str(res.value),
                        "oracle": str(expected),
                        "witness_objective": str(witness_obj),
                    }
                )
    notes = (f"{done} instances with <= 20 states",)
    passed = violations == 0 and done >= trials
    return CheckReport("oracle-agreement", passed, done, violations, counterexample, notes)


SUITES = {
    "lemma-setcover": lemma_setcover,
    "cost-equality-sc": cost_equality_sc,
    "cost-equality-hvc": cost_equality_hvc,
    "lift-completeness": lift_completeness,
    "fglss-completeness": fglss_completeness,
    "fglss-popularity": fglss_popularity,
    "expander-bounds": expander_bounds,
    "claim-accept": claim_accept,
    "approx-ratio": approx_ratio,
    "oracle-agreement": oracle_agreement,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0, **kwargs) -> CheckReport:
    if name not in SUITES:
        raise StructuralError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    fn = SUITES[name]
    if trials is None:
        return fn(seed=seed, **kwargs)
    return fn(trials=trials, seed=seed, **kwargs)
