"""Squared-alphabet constraint graphs: construction, embedding, decoding."""

from fractions import Fraction

import pytest

from rforge.core import (
    BOTTOM,
    KIND_PARTIAL,
    ReconfigSequence,
    StructuralError,
    is_full,
    normalize_self_loops,
    partial_size,
    satisfies_partial,
    validate_sequence,
)
from rforge.fglss import (
    COORD_BOTH,
    COORD_ONE,
    COORD_ZERO,
    build_fglss,
    completeness_sequence,
    decode_sequence,
    embed_proof,
    enumerate_satisfying_partials,
    interpolate_proofs,
    plurality_decode,
    symbol_coords,
    symbol_index,
)
from rforge.generate import generate_verifier_with_accepted_pair
from rforge.verifier import TableVerifier, accept_prob, degree


def overlap_verifier(tables=None):
    # two entries reading (0,1) and (1,2); position 1 is shared
    if tables is None:
        tables = (bytes([1] * 4), bytes([1] * 4))
    return TableVerifier(r=1, q=2, ell=3, queries=((0, 1), (1, 2)), tables=tables)


def always_accepting(r=1, q=1, ell=1):
    n = 2**r
    return TableVerifier(
        r=r,
        q=q,
        ell=ell,
        queries=tuple(tuple((k + j) % ell for j in range(q)) for k in range(n)),
        tables=tuple(bytes([1] * 2**q) for _ in range(n)),
    )


class TestBuild:
    def test_overlap_toy(self):
        g = build_fglss(overlap_verifier())
        assert g.n_vertices == 2
        assert set(g.edges) == {(0, 0), (1, 1), (0, 1)}
        assert g.n_symbols == 9

    def test_disjoint_queries_give_only_loops(self):
        v = TableVerifier(
            r=1, q=2, ell=4, queries=((0, 1), (2, 3)), tables=(bytes([1] * 4),) * 2
        )
        g = build_fglss(v)
        assert set(g.edges) == {(0, 0), (1, 1)}

    def test_always_accepting_reduces_to_chain_condition(self):
        g = build_fglss(overlap_verifier())
        e_idx = g.edges.index((0, 1))
        tab = g.tables[e_idx]
        for i1 in range(9):
            c1 = symbol_coords(i1, 2)
            for i2 in range(9):
                c2 = symbol_coords(i2, 2)
                a, b = c1[1], c2[0]  # shared proof position 1
                comparable = not (
                    (a == COORD_ZERO and b == COORD_ONE)
                    or (a == COORD_ONE and b == COORD_ZERO)
                )
                assert tab[i1 * 9 + i2] == int(comparable)

    def test_query_ceiling_refusal(self):
        v = always_accepting(r=1, q=7, ell=8)
        with pytest.raises(StructuralError, match="ceiling"):
            build_fglss(v)


class TestNormalizeInteraction:
    def test_normalization_preserves_satisfying_full_assignments(self):
        # the loop diagonals encode exactly the per-vertex view validity, so
        # folding them into admissible sets keeps the satisfying set intact
        import itertools

        eq = bytes([1, 0, 0, 1])
        for tables in [None, (bytes([1, 1, 0, 1]), eq)]:
            v = overlap_verifier(tables=tables)
            g = build_fglss(v)
            norm = normalize_self_loops(g)
            for f in itertools.product(range(g.n_symbols), repeat=g.n_vertices):
                assert satisfies_partial(g, f) == satisfies_partial(norm, f)

    def test_admissible_sets_are_the_accepted_views(self):
        v = overlap_verifier(tables=(bytes([1, 1, 0, 1]), bytes([1, 0, 0, 1])))
        g = build_fglss(v)
        norm = normalize_self_loops(g)
        for rnd in range(2):
            loop = g.edges.index((rnd, rnd))
            diag = {a for a in range(9) if g.tables[loop][a * 9 + a] == 1}
            assert norm.admissible[rnd] == frozenset(diag)


class TestEmbed:
    def test_toy_readoff(self):
        v = overlap_verifier()
        f = embed_proof(v, "010")
        assert f[0] == symbol_index((COORD_ZERO, COORD_ONE))
        assert f[1] == symbol_index((COORD_ONE, COORD_ZERO))

    def test_accepted_proof_satisfies(self):
        v = overlap_verifier()
        g = build_fglss(v)
        for word in range(8):
            proof = format(word, "03b")
            assert satisfies_partial(g, embed_proof(v, proof))

    def test_rejected_proof_breaks_its_self_loop(self):
        eq = bytes([1, 0, 0, 1])
        v = overlap_verifier(tables=(eq, eq))
        g = build_fglss(v)
        f = embed_proof(v, "010")  # entry 0 reads 01 and rejects
        assert not satisfies_partial(g, f)
        loop = g.edges.index((0, 0))
        assert g.tables[loop][f[0] * 9 + f[0]] == 0


class TestCompleteness:
    def test_unqueried_flip_gives_singleton(self):
        v = TableVerifier(
            r=1, q=1, ell=2, queries=((0,), (0,)), tables=(bytes([1, 1]),) * 2
        )
        seq = completeness_sequence(v, "00", "01")
        assert len(seq.states) == 1

    def test_lengths_follow_degree(self):
        v = overlap_verifier()
        g = build_fglss(v)
        # position 0 has degree 1, position 1 has degree 2
        seq0 = completeness_sequence(v, "000", "100")
        assert len(seq0.states) == 3 == 1 + 2 * degree(v, 0)
        assert validate_sequence(g, seq0).ok
        assert all(is_full(f) for f in seq0.states)
        seq1 = completeness_sequence(v, "000", "010")
        assert len(seq1.states) == 5 == 1 + 2 * degree(v, 1)
        assert validate_sequence(g, seq1).ok

    def test_endpoints_are_the_embeddings(self):
        v = overlap_verifier()
        seq = completeness_sequence(v, "000", "010")
        assert seq.states[0] == embed_proof(v, "000")
        assert seq.states[-1] == embed_proof(v, "010")

    def test_rejected_endpoint_is_error(self):
        eq = bytes([1, 0, 0, 1])
        v = overlap_verifier(tables=(eq, eq))
        with pytest.raises(StructuralError, match="rejected"):
            completeness_sequence(v, "000", "010")

    def test_multi_bit_distance_is_error(self):
        v = overlap_verifier()
        with pytest.raises(StructuralError):
            completeness_sequence(v, "000", "011")

    def test_generated_pairs(self):
        for seed in range(8):
            v, start, goal = generate_verifier_with_accepted_pair(seed, r=2, q=2, ell=4)
            g = build_fglss(v)
            seq = completeness_sequence(v, start, goal)
            assert validate_sequence(g, seq).ok
            assert all(is_full(f) for f in seq.states)


class TestPluralityDecode:
    def test_vote_table(self):
        # three entries all reading position 0; K sets realized by choosing
        # their coordinate values directly
        v = TableVerifier(
            r=2,
            q=1,
            ell=1,
            queries=((0,),) * 4,
            tables=(bytes([1, 1]),) * 4,
        )
        g = build_fglss(v)
        one, both = COORD_ONE, COORD_BOTH
        # K = {{1},{0,1}}: plurality picks 1
        f = (symbol_index((one,)), symbol_index((both,)), BOTTOM, BOTTOM)
        assert plurality_decode(v, f, g)[0] == "1"
        # K = {{0,1}}: tie, picks 0
        f = (symbol_index((both,)), BOTTOM, BOTTOM, BOTTOM)
        assert plurality_decode(v, f, g)[0] == "0"
        # K = {}: unqueried positions decode to 0
        f = (BOTTOM, BOTTOM, BOTTOM, BOTTOM)
        assert plurality_decode(v, f, g)[0] == "0"

    def test_embedding_round_trips(self):
        v = overlap_verifier()
        g = build_fglss(v)
        for word in range(8):
            proof = format(word, "03b")
            decoded, sat = plurality_decode(v, embed_proof(v, proof), g)
            assert sat and decoded == proof

    def test_unsatisfying_assignment_flagged(self):
        eq = bytes([1, 0, 0, 1])
        v = overlap_verifier(tables=(eq, eq))
        g = build_fglss(v)
        f = embed_proof(v, "010")
        proof, sat = plurality_decode(v, f, g)
        assert not sat and len(proof) == 3

    def test_popularity_law_exhaustive(self):
        eq = bytes([1, 0, 0, 1])
        v = overlap_verifier(tables=(bytes([1, 1, 0, 1]), eq))
        g = build_fglss(v)
        count = 0
        for f in enumerate_satisfying_partials(g):
            count += 1
            proof, sat = plurality_decode(v, f, g)
            assert sat
            for rnd in range(2):
                if f[rnd] != BOTTOM:
                    assert v.entry_accepts(rnd, proof)
            assert accept_prob(v, proof) >= Fraction(partial_size(f), 2)
        assert count > 1


class TestInterpolate:
    def test_identical(self):
        v = overlap_verifier()
        seq = interpolate_proofs(v, "010", "010")
        assert seq.states == ("010",)

    def test_two_flips(self):
        v = overlap_verifier()
        seq = interpolate_proofs(v, "000", "011")
        assert seq.states == ("000", "010", "011")

    def test_dip_bound_exact(self):
        eq = bytes([1, 0, 0, 1])
        v = overlap_verifier(tables=(bytes([1, 1, 0, 1]), eq))
        for a_word in range(8):
            a = format(a_word, "03b")
            base = accept_prob(v, a)
            for b_word in range(8):
                b = format(b_word, "03b")
                for inter in interpolate_proofs(v, a, b).states:
                    diff = [i for i in range(3) if inter[i] != a[i]]
                    floor = base - sum(Fraction(degree(v, i), 2) for i in diff)
                    assert accept_prob(v, inter) >= floor


class TestDecodeSequence:
    def test_completeness_path_never_dips(self):
        v = overlap_verifier()
        seq = completeness_sequence(v, "000", "010")
        proofs, min_acc = decode_sequence(v, seq)
        assert min_acc == 1
        assert proofs.states[0] == "000" and proofs.states[-1] == "010"
        assert validate_sequence(v, proofs).ok

    def test_constant_sequence_single_proof(self):
        v = overlap_verifier()
        seq = ReconfigSequence(KIND_PARTIAL, (embed_proof(v, "101"),))
        proofs, min_acc = decode_sequence(v, seq)
        assert proofs.states == ("101",)
        assert min_acc == 1

    def test_invalid_sequence_rejected(self):
        eq = bytes([1, 0, 0, 1])
        v = overlap_verifier(tables=(eq, eq))
        bad = ReconfigSequence(KIND_PARTIAL, (embed_proof(v, "010"),))
        with pytest.raises(StructuralError, match="invalid"):
            decode_sequence(v, bad)

    def test_acceptance_floor_along_decoded_sequence(self):
        v, start, goal = generate_verifier_with_accepted_pair(3, r=2, q=2, ell=4)
        g = build_fglss(v)
        seq = completeness_sequence(v, start, goal)
        proofs, min_acc = decode_sequence(v, seq, g)
        floor = min(Fraction(partial_size(f), 2**v.r) for f in seq.states)
        # dips below the assigned fraction can only come from interpolation,
        # which flips at most q positions
        max_pos = max(Fraction(degree(v, i), 2**v.r) for i in range(v.ell))
        assert min_acc >= floor - v.q * max_pos

    def test_random_valid_sequences_respect_the_floor(self):
        import random

        from rforge.core import satisfies_partial as sat

        exercised = 0
        for seed in range(6):
            v, planted, _ = generate_verifier_with_accepted_pair(seed, r=2, q=2, ell=4)
            g = build_fglss(v)
            rng = random.Random(seed)
            state = embed_proof(v, planted)
            assert sat(g, state)
            exercised += 1
            states = [state]
            for _ in range(12):  # seeded walk over satisfying states
                cand = list(state)
                cand[rng.randrange(g.n_vertices)] = rng.randrange(-1, g.n_symbols)
                cand = tuple(cand)
                if cand != state and sat(g, cand):
                    state = cand
                    states.append(state)
            seq = ReconfigSequence(KIND_PARTIAL, tuple(states))
            proofs, min_acc = decode_sequence(v, seq, g)
            floor = min(Fraction(partial_size(f), 2**v.r) for f in states)
            max_pos = max(Fraction(degree(v, i), 2**v.r) for i in range(v.ell))
            assert min_acc >= floor - v.q * max_pos
            assert validate_sequence(v, proofs).ok
        assert exercised == 6
