import random

import pytest
from hypothesis import given, settings, strategies as st

from quasicover.core import expand
from quasicover.metrics import Hamming, PositionalMetric, PseudometricTable, TableMetric, validate_pseudometric
from quasicover.pseudo import (
    InvalidTable,
    acp_pseudometric,
    compute_quotient,
    factorize_word,
    lift_solution,
)
from quasicover.solvers import brute_force_oracle, fpt_acp

from oracles import random_pseudometric

# q, y, n, k: y and n are indiscernible, every other distinct pair is at distance 1
PROTOCOL = PseudometricTable.from_matrix(
    [[0, 1, 1, 1],
     [1, 0, 0, 1],
     [1, 0, 0, 1],
     [1, 1, 1, 0]], "qynk")


def names(w, table=PROTOCOL):
    return "".join(table.alphabet[x] for x in w)


def ids(text, table=PROTOCOL):
    return tuple(table.index(ch) for ch in text)


tables = st.integers(1, 5).flatmap(
    lambda k: st.integers(0, 2 ** 32).map(lambda seed: PseudometricTable.from_matrix(
        random_pseudometric(random.Random(seed), k))))


class TestQuotient:
    def test_protocol_classes(self):
        q = compute_quotient(PROTOCOL)
        assert q.classes == ((0,), (1, 2), (3,))
        assert q.representative == (0, 1, 3)
        assert q.quotient_table.alphabet == ("q", "y|n", "k")
        assert validate_pseudometric(q.quotient_table) == []

    def test_strict_metric_singletons(self):
        q = compute_quotient(PseudometricTable.hamming(4))
        assert q.classes == ((0,), (1,), (2,), (3,))

    def test_all_zero_single_class(self):
        q = compute_quotient(PseudometricTable.from_matrix([[0] * 3] * 3))
        assert q.classes == ((0, 1, 2),)

    def test_invalid_table(self):
        bad = PseudometricTable.from_matrix([[0, 5, 10], [5, 0, 1], [10, 1, 0]])
        with pytest.raises(InvalidTable) as err:
            compute_quotient(bad)
        assert {v.axiom for v in err.value.violations} == {"triangle"}

    @settings(max_examples=200)
    @given(tables)
    def test_classes_are_zero_distance(self, table):
        q = compute_quotient(table)
        k = table.sigma
        for x in range(k):
            assert q.representative[q.class_of[x]] <= x
            assert table(x, q.representative[q.class_of[x]]) == 0
            for y in range(k):
                assert (q.class_of[x] == q.class_of[y]) == (table(x, y) == 0)
        # identity of indiscernibles holds on the quotient
        r = len(q.representative)
        assert all(q.quotient_table(a, b) > 0 for a in range(r) for b in range(r) if a != b)


class TestFactorize:
    def test_protocol_word(self):
        q = compute_quotient(PROTOCOL)
        assert factorize_word(ids("qyqn"), q) == (0, 1, 0, 1)
        assert factorize_word(ids("qy"), q) == factorize_word(ids("qn"), q)
        assert factorize_word(ids("kkk"), q) == (2, 2, 2)

    def test_unknown_symbol(self):
        with pytest.raises(ValueError):
            factorize_word((0, 7), compute_quotient(PROTOCOL))

    @settings(max_examples=150)
    @given(tables, st.data())
    def test_preserves_distance(self, table, data):
        k = table.sigma
        n = data.draw(st.integers(1, 8))
        u = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
        v = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
        q = compute_quotient(table)
        direct = TableMetric(table).distance(u, v)
        assert direct == TableMetric(q.quotient_table).distance(factorize_word(u, q), factorize_word(v, q))


class TestPipeline:
    def test_protocol_lift(self):
        w = ids("qyqnqyqk")
        q = compute_quotient(PROTOCOL)
        qsol = fpt_acp(factorize_word(w, q), 2, TableMetric(q.quotient_table))
        sol = lift_solution(qsol, q, w)
        assert sol.distance == qsol.distance == 1
        assert names(sol.tile) == "qy" and sol.tiling == qsol.tiling
        assert sol.distance == TableMetric(PROTOCOL).distance(w, expand(sol.tile, sol.tiling))
        assert acp_pseudometric(w, 2, PROTOCOL) == sol

    def test_hamming_table_matches_fpt(self):
        rng = random.Random(4)
        for _ in range(30):
            n = rng.randint(3, 9)
            w = tuple(rng.randrange(3) for _ in range(n))
            m = rng.randint(1, min(3, n - 1))
            assert acp_pseudometric(w, m, PseudometricTable.hamming(3)) == fpt_acp(w, m, Hamming(3))

    def test_all_zero_table(self):
        table = PseudometricTable.from_matrix([[0] * 3] * 3)
        sol = acp_pseudometric((2, 1, 0, 2, 1), 2, table)
        assert sol.distance == 0 and sol.tile == (0, 0)

    def test_accepts_metric_wrappers(self):
        w = ids("qnqnqy")
        direct = acp_pseudometric(w, 2, PROTOCOL)
        assert acp_pseudometric(w, 2, TableMetric(PROTOCOL)) == direct
        assert acp_pseudometric(w, 2, PositionalMetric([PROTOCOL] * 6)) == direct

    def test_rejects_mixed_positional_tables(self):
        other = PseudometricTable.from_matrix([[0, 2, 2, 2], [2, 0, 0, 2], [2, 0, 0, 2], [2, 2, 2, 0]])
        with pytest.raises(ValueError):
            acp_pseudometric(ids("qnqn"), 2, PositionalMetric([PROTOCOL, other, PROTOCOL, other]))

    @settings(max_examples=60)
    @given(tables, st.data())
    def test_matches_direct_oracle(self, table, data):
        k = table.sigma
        n = data.draw(st.integers(2, 7))
        w = tuple(data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n)))
        m = data.draw(st.integers(1, min(3, n - 1)))
        sol = acp_pseudometric(w, m, table)
        metric = TableMetric(table)
        assert sol.distance == brute_force_oracle(w, m, metric).distance
        assert sol.distance == metric.distance(w, expand(sol.tile, sol.tiling))
