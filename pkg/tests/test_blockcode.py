import random
from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from quasicover.blockcode import (
    BlockCodeParams,
    block_acp_check,
    decode_word,
    encode_word,
    non_image_blocks,
    psi_decode,
    psi_encode,
    read_code,
    split_codes,
    tau_decode,
    tau_encode,
)
from quasicover.metrics import INF, Hamming, ShiftMetric, TableMetric

P5, P7, P10 = BlockCodeParams(5), BlockCodeParams(7), BlockCodeParams(10)


def ceil_log(base, v):
    k, power = 0, 1
    while power < v:
        power *= base
        k += 1
    return k


class TestTau:
    @pytest.mark.parametrize("x, base, digits", [(5, 3, [1, 2]), (0, 3, [0]), (8, 2, [1, 0, 0, 0]), (26, 3, [2, 2, 2])])
    def test_examples(self, x, base, digits):
        assert tau_encode(x, base) == digits
        assert tau_decode(digits, base) == x

    def test_rejects_non_canonical(self):
        assert tau_decode([0, 1], 3) is None
        assert tau_decode([], 3) is None
        with pytest.raises(ValueError):
            tau_decode([3], 3)
        with pytest.raises(ValueError):
            tau_encode(-1, 3)

    @given(st.integers(0, 10 ** 30), st.integers(2, 40))
    def test_round_trip_and_length(self, x, base):
        digits = tau_encode(x, base)
        assert tau_decode(digits, base) == x
        assert len(digits) == max(1, ceil_log(base, x + 1))


class TestPsi:
    def test_examples(self):
        assert psi_encode(5, P5) == [2, 4, 1, 2]
        assert psi_encode(0, P5) == [1, 4, 0]
        assert psi_encode(3, P7) == [1, 6, 3]
        # three base-3 digits need a coded length: psi(3) then the digits of 9
        assert psi_encode(9, P5) == [2, 4, 1, 0, 4, 1, 0, 0]

    def test_decode_examples(self):
        assert psi_decode([2, 4, 1, 2], P5) == 5
        assert psi_decode([4, 1], P5) is None
        assert psi_decode([2, 1, 2], P5) is None  # separator deleted
        assert psi_decode([2, 4, 1, 2, 4], P5) is None
        assert psi_decode([], P5) is None
        assert psi_decode([1, 4, 3], P5) is None  # p-2 is never written
        # a chain link of value <= p-3 would have been written directly
        assert psi_decode([1, 4, 2, 4, 1, 2], P5) is None

    def test_out_of_range_symbol_is_invalid(self):
        assert psi_decode([1, 5, 0], P5) is None
        assert psi_decode([1, -1, 0], P5) is None
        assert psi_decode([1, 300, 0], P5) is None
        assert psi_decode((1, 40, 0), BlockCodeParams(40)) is None

    def test_small_p_rejected(self):
        for p in (2, 3, 4):
            with pytest.raises(ValueError):
                BlockCodeParams(p)

    def test_never_writes_p_minus_2(self):
        for params in (P5, P7, P10):
            for x in range(3000):
                assert params.base not in psi_encode(x, params)

    @pytest.mark.parametrize("params", [P5, P7, P10])
    def test_injective_and_bounded(self, params):
        seen = set()
        for x in range(10 ** 4 + 1):
            code = tuple(psi_encode(x, params))
            assert psi_decode(code, params) == x
            assert len(code) <= 2 * max(1, ceil_log(params.base, x + 1)) + 2
            seen.add(code)
        assert len(seen) == 10 ** 4 + 1

    @pytest.mark.parametrize("params, length", [(P5, 9), (P7, 6), (P10, 5)])
    def test_decoder_is_canonical(self, params, length):
        # every word that decodes is exactly the code of its value
        for k in range(length + 1):
            for w in product(range(params.p), repeat=k):
                x = psi_decode(w, params)
                if x is not None:
                    assert tuple(psi_encode(x, params)) == w

    @pytest.mark.parametrize("params", [P5, P7, P10])
    def test_mutations_never_decode_to_the_original(self, params):
        for x in range(2000):
            code = psi_encode(x, params)
            for i in range(len(code)):
                for v in range(params.p):
                    if v != code[i]:
                        assert psi_decode(code[:i] + [v] + code[i + 1:], params) != x

    def test_large_bases_fall_back(self):
        for p in (39, 40, 300):
            params = BlockCodeParams(p)
            for x in (0, 1, p, p ** 3 + 5, 10 ** 12):
                assert psi_decode(psi_encode(x, params), params) == x

    @given(st.integers(0, 10 ** 60), st.sampled_from([P5, P7, P10]))
    def test_linear_operation_count(self, x, params):
        ops = Counter()
        code = psi_encode(x, params, ops)
        assert ops["steps"] <= 2 * len(code) + 1
        ops = Counter()
        assert psi_decode(code, params, ops) == x
        assert ops["steps"] <= 2 * len(code) + 1


class TestWords:
    def test_encode_word_example(self):
        assert encode_word([0, 5], P5) == (1, 4, 0, 2, 4, 1, 2)
        assert encode_word([7], P5) == tuple(psi_encode(7, P5))

    def test_read_code(self):
        w = encode_word([9, 0], P5)
        assert read_code(w, 0, P5) == (9, 8)
        assert read_code(w, 8, P5) == (0, 11)
        assert read_code(w, 1, P5) is None

    @settings(max_examples=200)
    @given(st.lists(st.integers(0, 1000), min_size=1, max_size=100), st.sampled_from([P5, P7, P10]))
    def test_self_delimiting(self, w, params):
        flat = encode_word(w, params)
        assert decode_word(flat, params) == tuple(w)
        assert [tuple(psi_encode(x, params)) for x in w] == split_codes(flat, params)

    def test_rejects_garbage(self):
        assert decode_word((4, 1), P5) is None
        assert decode_word((), P5) is None
        assert split_codes(encode_word([3], P5)[:-1] + (4,), P5) is None


class TestBlockHarness:
    def test_non_image_blocks(self):
        codes = [tuple(psi_encode(x, P5)) for x in range(4)]
        extras = non_image_blocks(codes, P5)
        assert extras and not set(extras) & set(codes)
        assert (1, 4, 1) not in extras  # the bump of psi(0) is psi(1), already in the image

    def test_exactly_coverable(self):
        report = block_acp_check((0, 3, 0, 3, 0, 3), 2, Hamming(4), P5)
        assert report.ok
        assert report.original.distance == report.block.distance == 0
        assert report.decoded_tile == (0, 3)

    def test_example_pair(self):
        report = block_acp_check((0, 3, 1, 2), 2, Hamming(4), P5)
        assert report.ok and report.original.distance == report.block.distance
        assert len(report.alphabet) == 9
        assert all(s is INF for s in report.non_image_scores)

    def test_weighted_metric(self):
        metric = TableMetric([[0, 1, 2, 3], [1, 0, 1, 2], [2, 1, 0, 1], [3, 2, 1, 0]])
        rng = random.Random(3)
        for _ in range(10):
            w = tuple(rng.randrange(4) for _ in range(rng.randint(3, 5)))
            assert block_acp_check(w, 2, metric, P5).ok

    def test_needs_homogeneous_metric(self):
        with pytest.raises(ValueError):
            block_acp_check((0, 1, 0), 1, ShiftMetric(2), P5)
