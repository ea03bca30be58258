import random

import pytest
from hypothesis import given, strategies as st

from hodisc.gf2 import (
    BitMatrix,
    BitVector,
    kernel_basis,
    matvec,
    rank,
    stack_transposed,
)


def test_matvec_identity():
    m = BitMatrix.identity(3)
    v = BitVector.from_bits([1, 0, 1])
    assert matvec(m, v) == v


def test_matvec_zero_matrix():
    m = BitMatrix.zeros(4, 3)
    v = BitVector.from_bits([1, 1, 1])
    assert matvec(m, v).bits == 0


def test_matvec_hand_example():
    # [[1,1],[0,1]] * (1,1) = (0,1) over GF(2)
    m = BitMatrix.from_lists([[1, 1], [0, 1]])
    v = BitVector.from_bits([1, 1])
    assert matvec(m, v).to_list() == [0, 1]


def test_matvec_dimension_mismatch():
    m = BitMatrix.identity(3)
    with pytest.raises(ValueError):
        matvec(m, BitVector.from_bits([1, 0]))


def test_rank_identity_and_zero():
    assert rank(BitMatrix.identity(5)) == 5
    assert rank(BitMatrix.zeros(4, 6)) == 0


def test_rank_duplicate_rows():
    m = BitMatrix.from_lists([[1, 1], [1, 1]])
    assert rank(m) == 1


def test_kernel_identity_empty():
    assert kernel_basis(BitMatrix.identity(4)) == []


def test_kernel_zero_matrix_full():
    basis = kernel_basis(BitMatrix.zeros(2, 3))
    assert len(basis) == 3


def test_kernel_single_relation():
    basis = kernel_basis(BitMatrix.from_lists([[1, 1]]))
    assert [v.to_list() for v in basis] == [[1, 1]]


def test_stack_transposed_single_identity():
    out = stack_transposed([BitMatrix.identity(3)])
    assert out == BitMatrix.identity(3)


def test_stack_transposed_two_identities():
    out = stack_transposed([BitMatrix.identity(2), BitMatrix.identity(2)])
    assert out.rows == 2 and out.cols == 4
    assert out.data == (0b0101, 0b1010)


def test_stack_transposed_hand_columns():
    # columns checked by applying the stack to unit vectors
    c1 = BitMatrix.identity(2)
    c2 = BitMatrix.from_lists([[1, 1], [0, 1]])
    out = stack_transposed([c1, c2])
    for j, mat in enumerate([c1, c2]):
        for k in range(2):
            unit = BitVector(1 << (j * 2 + k), 4)
            expect = [mat.entry(k, col) for col in range(2)]
            assert matvec(out, unit).to_list() == expect


def test_stack_transposed_shape_mismatch():
    with pytest.raises(ValueError):
        stack_transposed([BitMatrix.identity(2), BitMatrix.identity(3)])


def test_stack_transposed_equals_sum_of_products():
    # exhaustive on tiny sizes: stack applied to concatenated digit vectors
    rng = random.Random(7)
    for _ in range(20):
        p, m, s = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        mats = [
            BitMatrix.from_rows([rng.randrange(1 << m) for _ in range(p)], m)
            for _ in range(s)
        ]
        out = stack_transposed(mats)
        for packed in range(1 << (s * p)):
            acc = 0
            for j in range(s):
                kj = (packed >> (j * p)) & ((1 << p) - 1)
                for row in range(p):
                    if (kj >> row) & 1:
                        acc ^= mats[j].data[row]
            assert matvec(out, BitVector(packed, s * p)).bits == acc


@given(st.integers(1, 24), st.integers(1, 24), st.data())
def test_rank_nullity_and_kernel_annihilation(rows, cols, data):
    masks = [data.draw(st.integers(0, (1 << cols) - 1)) for _ in range(rows)]
    m = BitMatrix.from_rows(masks, cols)
    basis = kernel_basis(m)
    assert rank(m) + len(basis) == cols
    for v in basis:
        assert matvec(m, v).bits == 0


@given(st.integers(1, 16), st.integers(1, 16), st.data())
def test_matvec_linearity(rows, cols, data):
    m = BitMatrix.from_rows(
        [data.draw(st.integers(0, (1 << cols) - 1)) for _ in range(rows)], cols
    )
    a = BitVector(data.draw(st.integers(0, (1 << cols) - 1)), cols)
    b = BitVector(data.draw(st.integers(0, (1 << cols) - 1)), cols)
    assert matvec(m, a ^ b) == matvec(m, a) ^ matvec(m, b)


def test_text_round_trip():
    m = BitMatrix.from_lists([[1, 0, 1], [0, 1, 1]])
    text = m.to_text()
    assert text.splitlines()[0] == "2 3"
    assert text.splitlines()[1] == "101"  # leftmost char = column 1
    assert BitMatrix.from_text(text) == m


def test_bitvector_rejects_overflow():
    with pytest.raises(ValueError):
        BitVector(0b100, 2)
