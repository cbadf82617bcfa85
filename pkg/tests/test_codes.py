import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdmask import codes
from pdmask.codes import (CapacityExceeded, DecodeFailure, LengthMismatch, bch_build,
                          bch_offset_search, bm_decode, code_from_generator, cyclotomic_cosets,
                          decode_bounded, encode, minimum_distance, repetition_code)
from pdmask.gf import Field
from pdmask.matfq import MatrixFq, RankDeficient

F2, F3, F5, F7 = Field(2), Field(3), Field(5), Field(7)


def codewords(code):
    f = code.field
    return [code.G.vecmul(m) for m in itertools.product(range(f.q), repeat=code.k)]


def hamming(a, b):
    return sum(1 for x, y in zip(a, b) if x != y)


def nearest_brute(code, y, t):
    """All codewords within distance t of y."""
    return [c for c in codewords(code) if hamming(c, y) <= t]


def test_repetition():
    C = code_from_generator(MatrixFq(F3, [[1] * 5]), compute_d=True)
    assert (C.n, C.k, C.distance) == (5, 1, 5)
    assert encode(C, (2,)) == (2,) * 5


def test_identity_code():
    C = code_from_generator(MatrixFq.identity(F5, 4), compute_d=True)
    assert (C.k, C.distance) == (4, 1)


def test_small_binary_distance():
    C = code_from_generator(MatrixFq(F2, [[1, 0, 1], [0, 1, 1]]), compute_d=True)
    assert C.d_known == 2
    assert min(sum(map(bool, c)) for c in codewords(C) if any(c)) == 2


def test_encode_examples():
    C = code_from_generator(MatrixFq(F5, [[1, 0, 1], [0, 1, 1]]))
    assert encode(C, (2, 3)) == (2, 3, 0)
    assert encode(C, (0, 0)) == (0, 0, 0)
    with pytest.raises(LengthMismatch):
        encode(C, (1,))


def test_rank_deficient_generator():
    with pytest.raises(RankDeficient):
        code_from_generator(MatrixFq(F5, [[1, 2], [2, 4]]))


def test_parity_check_orthogonal():
    C = code_from_generator(MatrixFq(F7, [[1, 0, 2, 3], [0, 1, 4, 4]]))
    for c in codewords(C):
        assert C.is_codeword(c)
    assert C.H.rows == C.n - C.k


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 10 ** 6))
def test_minimum_distance_matches_enumeration(k, r, seed):
    rng = np.random.default_rng(seed)
    n = k + r
    G = MatrixFq(F3, rng.integers(0, 3, size=(k, n)).tolist())
    try:
        C = code_from_generator(G)
    except RankDeficient:
        return
    brute = min(sum(map(bool, c)) for c in codewords(C) if any(c))
    assert minimum_distance(C) == brute
    assert codes.distance_at_least(C, brute) and not codes.distance_at_least(C, brute + 1)


def test_decode_examples():
    C = repetition_code(F3, 5)
    c, e = decode_bounded(C, (1, 0, 1, 0, 0), 2)
    assert c == (0,) * 5 and e == (1, 0, 1, 0, 0)
    c, e = decode_bounded(C, (2,) * 5, 2)
    assert e == (0,) * 5
    with pytest.raises(DecodeFailure):
        decode_bounded(repetition_code(F3, 3), (0, 1, 2), 1)
    with pytest.raises(CapacityExceeded):
        decode_bounded(C, (0,) * 5, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_decode_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    spec, C = bch_build(2, 4, 15, 1, 5)
    t = 2
    y = tuple(int(v) for v in rng.integers(0, 2, size=15))
    near = nearest_brute(C, y, t)
    assert len(near) <= 1
    if near:
        c, e = decode_bounded(C, y, t)
        assert c == near[0] and F2.vec_add(c, e) == y
    else:
        with pytest.raises(DecodeFailure):
            decode_bounded(C, y, t)


def test_cyclotomic_cosets():
    cosets = cyclotomic_cosets(114, 7)
    assert (1, 7, 49) in cosets
    assert sorted(x for c in cosets for x in c) == list(range(114))
    c15 = {frozenset(c) for c in cyclotomic_cosets(15, 2)}
    assert {frozenset({1, 2, 4, 8}), frozenset({3, 6, 12, 9}), frozenset({5, 10})} <= c15


def test_bch_15_5():
    spec, C = bch_build(2, 4, 15, 1, 7)
    assert (C.n, C.k) == (15, 5)
    assert spec.achieved_distance() >= 7
    assert minimum_distance(C) == 7
    # g divides x^15 - 1: every cyclic shift of a codeword is a codeword
    for c in codewords(C):
        assert C.is_codeword(c[-1:] + c[:-1])


def test_bch_generator_has_designed_roots():
    spec, C = bch_build(7, 2, 16, 1, 5)
    ext = spec.ext
    for i in range(spec.b, spec.b + spec.delta - 1):
        root = ext.pow(spec.alpha, i)
        acc = 0
        for coef in reversed(spec.g):
            acc = ext.add(ext.mul(acc, root), coef)
        assert acc == 0
    assert len(spec.g) - 1 == C.n - C.k


def test_bch_true_distance_small_gf7():
    spec, C = bch_build(7, 2, 16, 1, 5)
    assert minimum_distance(C) >= 5


@pytest.mark.parametrize("p,m,n,delta", [(2, 4, 15, 7), (7, 2, 16, 5), (3, 2, 8, 4)])
def test_offset_search_prefers_smallest_b(p, m, n, delta):
    b, k = bch_offset_search(p, m, n, delta)
    dims = [bch_build(p, m, n, bb, delta)[1].k for bb in range(n)]
    assert k == max(dims)
    assert b == dims.index(k)


def test_bm_decode_examples():
    spec, C = bch_build(2, 4, 15, 1, 7)
    rng = np.random.default_rng(3)
    m = tuple(int(v) for v in rng.integers(0, 2, size=5))
    c = encode(C, m)
    assert bm_decode(spec, C, c) == (c, (0,) * 15)
    y = list(c)
    for j in (1, 6, 11):
        y[j] ^= 1
    got, e = bm_decode(spec, C, y)
    assert got == c and decode_bounded(C, y, 3) == (got, e)


@pytest.mark.slow
def test_bm_decode_114_at_radius_39():
    spec, C = bch_build(7, 3, 114, 1, 79)
    assert C.k == 8
    rng = np.random.default_rng(5)
    m = tuple(int(v) for v in rng.integers(0, 7, size=8))
    c = encode(C, m)
    y = list(c)
    for j in rng.choice(114, size=39, replace=False):
        y[int(j)] = (y[int(j)] + 1) % 7
    got, e = bm_decode(spec, C, y)
    assert got == c and sum(map(bool, e)) == 39


def test_read_code_formats():
    C = codes.read_code("bch 2 4 15 1 7\n")
    assert (C.n, C.k) == (15, 5)
    text = MatrixFq(F5, [[1, 0, 1], [0, 1, 1]]).to_text()
    C = codes.read_code(text)
    assert (C.n, C.k, C.d_known) == (3, 2, 2)
