import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codesparse import _kernels as K
from codesparse.errors import DimensionTooLarge, LengthMismatch
from codesparse.gf2 import (
    BitVector,
    Gf2Matrix,
    LinearCode,
    add,
    enumerate_codewords,
    even_weight_code,
    full_code,
    popcount,
    popcount_portable,
    project_weight,
    random_code,
    repetition_code,
    row_reduce,
    weight,
    zero_code,
)

from conftest import span_bruteforce

bv = BitVector.from_string


def test_weight_examples():
    assert weight(bv("000")) == 0
    assert weight(bv("1011")) == 3


def test_weight_matches_bit_loop():
    rng = np.random.default_rng(5)
    for _ in range(20):
        bits = rng.integers(0, 2, size=512)
        v = BitVector.from_indices(512, np.flatnonzero(bits).tolist())
        assert weight(v) == int(bits.sum())


@given(st.integers(min_value=0, max_value=(1 << 300) - 1))
def test_popcount_fallback_agrees(x):
    assert popcount(x) == popcount_portable(x) == bin(x).count("1")


@given(st.integers(min_value=0, max_value=(1 << 64) - 1))
def test_kernel_popcount_agrees(x):
    assert K.weights_u64(np.array([x], dtype=np.uint64))[0] == popcount(x)


def test_add():
    c = bv("1101")
    assert add(c, c) == BitVector.zeros(4)
    assert add(bv("110"), bv("011")) == bv("101")
    with pytest.raises(LengthMismatch):
        add(bv("11"), bv("110"))


def test_sum_of_codewords_stays_in_code():
    rng = np.random.default_rng(11)
    code = random_code(12, 5, rng)
    words = list(enumerate_codewords(code))
    for _ in range(200):
        a, b = (words[i] for i in rng.integers(0, len(words), size=2))
        assert code.contains(add(a, b))


def test_project_weight():
    assert project_weight(bv("111"), bv("011")) == 2
    c = bv("10110")
    assert project_weight(c, BitVector.zeros(5)) == 0
    assert project_weight(c, BitVector.ones(5)) == weight(c)
    with pytest.raises(LengthMismatch):
        project_weight(c, bv("1"))


@given(st.integers(1, 200).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))))
def test_weight_of_sum_identity(args):
    n, a, b = args
    u, v = BitVector(n, a), BitVector(n, b)
    assert weight(u ^ v) == weight(u) + weight(v) - 2 * project_weight(u, v)


def test_bits_beyond_length_rejected():
    with pytest.raises(ValueError):
        BitVector(3, 0b1000)


def test_row_reduce_examples():
    ident = Gf2Matrix.from_ints([1 << i for i in range(5)], 5)
    assert row_reduce(ident)[2] == 5
    basis, pivots, rank = row_reduce(Gf2Matrix.from_strings(["110", "011", "101"]))
    assert rank == 2
    assert pivots == (0, 1)
    # 101 = 110 + 011
    assert bv("101") == bv("110") ^ bv("011")
    assert row_reduce(Gf2Matrix.from_strings(["000"]))[2] == 0


def _rank_oracle(rows, n):
    return len(span_bruteforce(LinearCode.from_ints(rows, n))).bit_length() - 1


@settings(max_examples=60)
@given(st.integers(1, 10).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=7))))
def test_row_reduce_properties(args):
    n, rows = args
    m = Gf2Matrix.from_ints(rows, n)
    basis, pivots, rank = row_reduce(m)
    assert rank == _rank_oracle(rows, n)
    assert list(pivots) == sorted(pivots)
    for b, p in zip(basis, pivots):
        assert b.indices()[0] == p
        for other in basis:
            if other is not b:
                assert not (other.bits >> p) & 1
    again = row_reduce(Gf2Matrix(basis, n))
    assert again[0] == basis and again[1] == pivots
    code = LinearCode(m)
    assert all(code.contains(r) for r in m.rows)
    assert span_bruteforce(code) == {w.bits for w in enumerate_codewords(code)}


def test_contains():
    rep = repetition_code(3)
    assert rep.contains(BitVector.zeros(3))
    assert zero_code(3).contains(BitVector.zeros(3))
    assert rep.contains(bv("111"))
    assert not rep.contains(bv("110"))
    with pytest.raises(LengthMismatch):
        rep.contains(bv("11"))


def test_enumerate_small_cases():
    assert [str(w) for w in enumerate_codewords(zero_code(4))] == ["0000"]
    assert sorted(str(w) for w in enumerate_codewords(repetition_code(3))) == ["000", "111"]


def test_enumerate_random_code_matches_exhaustive_scan():
    rng = np.random.default_rng(3)
    for n in range(1, 13):
        code = random_code(n, int(rng.integers(1, n + 1)), rng)
        words = [w.bits for w in enumerate_codewords(code)]
        assert len(words) == len(set(words)) == 2**code.k
        scan = {x for x in range(1 << n) if code.contains(BitVector(n, x))}
        assert set(words) == scan


def test_enumeration_is_gray_over_basis():
    code = random_code(16, 6, np.random.default_rng(8))
    basis = {b.bits for b in code.basis}
    words = list(enumerate_codewords(code))
    for a, b in zip(words, words[1:]):
        assert (a ^ b).bits in basis
    cw, wts = code.codeword_array()
    assert [int(x) for x in cw] == [w.bits for w in words]
    assert list(wts) == [w.weight() for w in words]


def test_enumeration_cap():
    code = full_code(10)
    with pytest.raises(DimensionTooLarge):
        list(enumerate_codewords(code, max_k=9))
    with pytest.raises(DimensionTooLarge):
        code.codeword_bits(max_k=9)


def test_coset_labels():
    rng = np.random.default_rng(4)
    code = random_code(8, 3, rng)
    zero = code.coset_label(BitVector.zeros(8))
    for c in enumerate_codewords(code):
        assert code.coset_label(c) == zero
    for _ in range(50):
        v = BitVector(8, int(rng.integers(0, 256)))
        for c in enumerate_codewords(code):
            assert code.coset_label(v ^ c) == code.coset_label(v)


@pytest.mark.parametrize("seed", range(12))
def test_coset_label_count_and_criterion(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(1, 13))
    code = random_code(n, int(rng.integers(0, n + 1)), rng)
    labels = {}
    for x in range(1 << n):
        labels.setdefault(code.coset_label(BitVector(n, x)).canonical.bits, []).append(x)
    assert len(labels) == 2 ** (n - code.k)
    words = span_bruteforce(code)
    for members in labels.values():
        assert all((members[0] ^ m) in words for m in members)
    for lab in labels:
        assert all(not (lab >> p) & 1 for p in code.pivots)


def test_nondegenerate():
    assert repetition_code(3).is_nondegenerate()
    assert not LinearCode.from_strings(["110"]).is_nondegenerate()
    rng = np.random.default_rng(6)
    for _ in range(40):
        n = int(rng.integers(1, 12))
        code = random_code(n, int(rng.integers(0, 4)), rng)
        words = span_bruteforce(code)
        brute = all(any((c >> i) & 1 for c in words) for i in range(n))
        assert code.is_nondegenerate() == brute


def test_project_code():
    code = LinearCode.from_strings(["1100", "0011"])
    sub = code.project([1, 2])
    assert sub.n == 2 and sub.k == 2
    dup = LinearCode.from_strings(["1110"]).project([0, 1, 3])
    assert {str(w) for w in enumerate_codewords(dup)} == {"000", "110"}
    assert even_weight_code(4).project([3]).k == 1
