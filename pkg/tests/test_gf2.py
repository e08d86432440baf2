import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pencode.gf2 import (format_binary_matrix, gf2_in_span, gf2_nullspace,
                         gf2_rank, gf2_row_basis, gf2_solve,
                         min_weight_in_span, parse_binary_matrix)
from conftest import brute_min_weight_span

K1_MATRIX = np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1]], dtype=np.uint8)


def test_rank_examples():
    assert gf2_rank(np.eye(4, dtype=np.uint8)) == 4
    assert gf2_rank(np.ones((3, 3), dtype=np.uint8)) == 1
    # third row is the sum of the first two
    assert gf2_rank(K1_MATRIX) == 2


def test_rank_zero():
    assert gf2_rank(np.zeros((3, 5), dtype=np.uint8)) == 0


def test_nullspace_annihilates():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.integers(0, 2, (rng.integers(1, 6), rng.integers(1, 8))).astype(np.uint8)
        ns = gf2_nullspace(a)
        assert ns.shape[0] == a.shape[1] - gf2_rank(a)
        for v in ns:
            assert not ((a @ v) % 2).any()


def test_solve_and_membership():
    basis = K1_MATRIX[:2]
    v = basis[0] ^ basis[1]
    coeffs = gf2_in_span(v, basis)
    assert coeffs.tolist() == [1, 1]
    assert gf2_in_span(np.zeros(3, dtype=np.uint8), basis).tolist() == [0, 0]
    assert gf2_in_span(np.array([1, 0, 0]), np.array([[1, 1, 0], [0, 1, 1]])) is None


def test_solve_inconsistent():
    a = np.array([[1, 0], [1, 0]], dtype=np.uint8)
    assert gf2_solve(a, np.array([1, 0])) is None
    x = gf2_solve(a, np.array([1, 1]))
    assert ((a @ x) % 2).tolist() == [1, 1]


def test_min_weight_examples():
    assert min_weight_in_span(np.ones((3, 3), dtype=np.uint8)) == 3
    assert min_weight_in_span(K1_MATRIX) == 2
    assert min_weight_in_span(np.array([[1, 0, 1, 1]], dtype=np.uint8)) == 3


def test_min_weight_empty_span():
    with pytest.raises(ValueError, match="zero"):
        min_weight_in_span(np.zeros((2, 4), dtype=np.uint8))
    assert min_weight_in_span(np.zeros((2, 4), dtype=np.uint8), exclude_zero=False) == 0


def test_min_weight_cap():
    big = np.eye(10, dtype=np.uint8)
    with pytest.raises(ValueError, match="cap"):
        min_weight_in_span(big, combo_cap=16)


def test_min_weight_matches_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(30):
        a = rng.integers(0, 2, (rng.integers(1, 7), rng.integers(1, 9))).astype(np.uint8)
        if not a.any():
            continue
        assert min_weight_in_span(a) == brute_min_weight_span(a)


def test_parse_format_roundtrip():
    text = format_binary_matrix(K1_MATRIX)
    assert text == "110\n101\n011\n"
    assert np.array_equal(parse_binary_matrix(text), K1_MATRIX)


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError, match="ragged"):
        parse_binary_matrix("110\n10\n")
    with pytest.raises(ValueError, match="outside"):
        parse_binary_matrix("110\n1x0\n")
    with pytest.raises(ValueError, match="empty"):
        parse_binary_matrix("\n")


@settings(max_examples=50, deadline=None)
@given(arrays(np.uint8, (4, 6), elements=st.integers(0, 1)),
       st.permutations(range(4)))
def test_rank_invariant_under_row_ops(a, perm):
    r = gf2_rank(a)
    assert gf2_rank(a[list(perm)]) == r
    b = a.copy()
    b[0] ^= b[1]
    assert gf2_rank(b) == r


def test_row_basis_spans_input():
    rng = np.random.default_rng(5)
    a = rng.integers(0, 2, (6, 8)).astype(np.uint8)
    basis = gf2_row_basis(a)
    assert gf2_rank(basis) == basis.shape[0] == gf2_rank(a)
    for row in a:
        assert gf2_in_span(row, basis) is not None
