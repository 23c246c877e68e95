"""Table verifiers: acceptance, degrees, regularity, CSP wrapping."""

import itertools
from fractions import Fraction

import pytest

from rforge.core import ConstraintGraph, StructuralError, satisfies_partial
from rforge.generate import generate_csp
from rforge.verifier import (
    TableVerifier,
    accept_prob,
    csp_to_verifier,
    degree,
    degrees,
    encode_assignment,
    regularity,
    symbol_bits,
)

EQ = bytes([1, 0, 0, 1])


def always_accepting(r=1, q=1, ell=1):
    n = 2**r
    return TableVerifier(
        r=r,
        q=q,
        ell=ell,
        queries=tuple(tuple((k + j) % ell for j in range(q)) for k in range(n)),
        tables=tuple(bytes([1] * 2**q) for _ in range(n)),
    )


def naive_accept_prob(v, proof):
    # second enumeration path: walk the randomness space, re-deriving each
    # local view index from scratch
    hits = 0
    for rnd in range(2**v.r):
        bits = [int(proof[i]) for i in v.queries[rnd]]
        idx = sum(b << (len(bits) - 1 - j) for j, b in enumerate(bits))
        hits += v.tables[rnd][idx]
    return Fraction(hits, 2**v.r)


class TestConstruction:
    def test_entry_count_enforced(self):
        with pytest.raises(StructuralError):
            TableVerifier(r=1, q=1, ell=1, queries=((0,),), tables=(bytes([1, 1]),))

    def test_distinct_positions_enforced(self):
        with pytest.raises(StructuralError):
            TableVerifier(r=0, q=2, ell=2, queries=((0, 0),), tables=(bytes(4),))

    def test_table_size_matches_query_length(self):
        with pytest.raises(StructuralError):
            TableVerifier(r=0, q=2, ell=2, queries=((0, 1),), tables=(bytes(2),))


class TestAcceptProb:
    def test_always_accepting(self):
        v = always_accepting(r=2, q=1, ell=2)
        assert accept_prob(v, "01") == 1

    def test_identity_bit(self):
        v = TableVerifier(
            r=1, q=1, ell=1, queries=((0,), (0,)), tables=(bytes([0, 1]), bytes([0, 1]))
        )
        assert accept_prob(v, "1") == 1
        assert accept_prob(v, "0") == 0

    def test_against_independent_enumeration(self):
        import random

        rng = random.Random(5)
        for _ in range(10):
            r, q, ell = 2, 2, 3
            queries = tuple(tuple(sorted(rng.sample(range(ell), q))) for _ in range(4))
            tables = tuple(
                bytes(rng.randrange(2) for _ in range(4)) for _ in range(4)
            )
            v = TableVerifier(r=r, q=q, ell=ell, queries=queries, tables=tables)
            for word in range(2**ell):
                proof = format(word, f"0{ell}b")
                assert accept_prob(v, proof) == naive_accept_prob(v, proof)

    def test_denominator_divides_randomness(self):
        v = always_accepting(r=3, q=2, ell=4)
        p = accept_prob(v, "0110")
        assert 2**v.r % p.denominator == 0

    def test_length_mismatch(self):
        v = always_accepting()
        with pytest.raises(StructuralError):
            accept_prob(v, "00")


class TestDegrees:
    def test_every_entry_same_position(self):
        v = TableVerifier(
            r=2,
            q=1,
            ell=2,
            queries=((0,),) * 4,
            tables=(bytes([1, 1]),) * 4,
        )
        assert degree(v, 0) == 4 == 2**v.r

    def test_overlapping_pair(self):
        v = TableVerifier(
            r=1,
            q=2,
            ell=3,
            queries=((0, 1), (1, 2)),
            tables=(bytes([1] * 4),) * 2,
        )
        assert degrees(v) == (1, 2, 1)
        assert regularity(v) is None

    def test_partitioned_queries_regular(self):
        v = TableVerifier(
            r=1,
            q=2,
            ell=4,
            queries=((0, 1), (2, 3)),
            tables=(bytes([1] * 4),) * 2,
        )
        assert regularity(v) == 1 == v.q * 2**v.r // v.ell

    def test_out_of_range(self):
        v = always_accepting()
        with pytest.raises(StructuralError):
            degree(v, 5)


class TestCspToVerifier:
    def test_single_equality_edge(self):
        g = ConstraintGraph(("v", "w"), 2, ("0", "1"), ((0, 1),), (EQ,))
        v = csp_to_verifier(g)
        assert (v.r, v.q, v.ell) == (1, 2, 2)
        accepted = {p for p in ("00", "01", "10", "11") if accept_prob(v, p) == 1}
        assert accepted == {"00", "11"}

    def test_satisfying_assignments_encode_to_prob_one(self):
        for seed in range(6):
            inst = generate_csp(seed, n_vertices=3, alphabet_size=3, density=0.9)
            g = inst.graph
            if not g.edges:
                continue
            v = csp_to_verifier(g)
            for f in itertools.product(range(3), repeat=3):
                expected = satisfies_partial(g, f)
                assert (accept_prob(v, encode_assignment(g, f)) == 1) == expected

    def test_out_of_range_codeword_rejects(self):
        g = ConstraintGraph(
            ("v", "w"), 2, ("0", "1", "2"), ((0, 1),), (bytes([1] * 9),)
        )
        v = csp_to_verifier(g)
        assert symbol_bits(3) == 2
        # codeword 11 decodes to 3, outside a 3-symbol alphabet
        assert accept_prob(v, "1100") == 0

    def test_self_loops_fold_into_tables(self):
        loop = bytes([1, 0, 0, 0])  # only symbol 0 admissible at v
        g = ConstraintGraph(
            ("v", "w"), 2, ("0", "1"), ((0, 0), (0, 1)), (loop, bytes([1] * 4))
        )
        v = csp_to_verifier(g)
        assert accept_prob(v, "00") == 1
        assert accept_prob(v, "10") < 1

    def test_no_edges_is_error(self):
        g = ConstraintGraph(("v",), 2, ("0",), (), ())
        with pytest.raises(StructuralError, match="no non-loop edges"):
            csp_to_verifier(g)

    def test_padding_cycles_edges(self):
        # three edges pad to four randomness strings, repeating edge 0
        tabs = (EQ, EQ, EQ)
        g = ConstraintGraph(
            ("a", "b", "c"), 2, ("0", "1"), ((0, 1), (1, 2), (0, 2)), tabs
        )
        v = csp_to_verifier(g)
        assert v.r == 2
        assert v.queries[3] == v.queries[0]
        assert v.tables[3] == v.tables[0]
