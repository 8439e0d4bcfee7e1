"""GF(2) linear algebra: frozen examples plus randomized invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xyzcodes import gf2
from xyzcodes.gf2 import BitMatrix, BitVector


def dense(rows):
    return BitMatrix.from_dense(np.array(rows, dtype=np.uint8))


def span_size_rank(m: BitMatrix) -> int:
    """Independent rank oracle: log2 of the row-span size, by enumeration."""
    rows = [tuple(r) for r in m.to_dense()]
    span = {tuple([0] * m.cols)}
    for r in rows:
        span |= {tuple((a ^ b) for a, b in zip(r, v)) for v in span}
    size = len(span)
    rank = 0
    while size > 1:
        size >>= 1
        rank += 1
    return rank


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


class TestRank:
    def test_identity(self):
        assert gf2.rank(BitMatrix.identity(3)) == 3

    def test_zero(self):
        assert gf2.rank(BitMatrix.zeros(2, 5)) == 0

    def test_circulant_repetition(self):
        m = dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert span_size_rank(m) == 2  # oracle
        assert gf2.rank(m) == 2

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_matches_span_oracle(self, rows):
        m = dense(rows)
        assert gf2.rank(m) == span_size_rank(m)

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_rank_of_transpose(self, rows):
        m = dense(rows)
        assert gf2.rank(m) == gf2.rank(gf2.transpose(m))


class TestKernel:
    def test_open_repetition(self):
        basis = gf2.kernel_basis(dense([[1, 1, 0], [0, 1, 1]]))
        assert len(basis) == 1
        assert basis[0].to_dense().tolist() == [1, 1, 1]

    def test_identity_trivial(self):
        assert gf2.kernel_basis(BitMatrix.identity(4)) == []

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_rank_nullity(self, rows):
        m = dense(rows)
        basis = gf2.kernel_basis(m)
        assert m.cols == gf2.rank(m) + len(basis)
        for v in basis:
            assert gf2.matvec(m, v).is_zero()


class TestKron:
    def test_identity_product(self):
        assert gf2.kron(BitMatrix.identity(2), BitMatrix.identity(3)) == BitMatrix.identity(6)

    def test_scalar_identity(self):
        b = dense([[1, 0, 1], [0, 1, 1]])
        assert gf2.kron(dense([[1]]), b) == b

    def test_row_major_convention(self):
        # open rep-2 check [[1,1]] (x) I2: rows 1010 / 0101 by hand expansion
        m = gf2.kron(dense([[1, 1]]), BitMatrix.identity(2))
        assert m.to_dense().tolist() == [[1, 0, 1, 0], [0, 1, 0, 1]]

    @settings(max_examples=30, deadline=None)
    @given(matrices, st.integers(0, 2**31 - 1))
    def test_mixed_product_rule(self, rows_a, seed):
        # (A (x) B)(C (x) D) = AC (x) BD on conformable inputs
        a = dense(rows_a)
        rng = np.random.default_rng(seed)
        b = BitMatrix.from_dense(rng.integers(0, 2, size=(3, 2)))
        c = BitMatrix.from_dense(rng.integers(0, 2, size=(a.cols, 4)))
        d = BitMatrix.from_dense(rng.integers(0, 2, size=(2, 3)))
        left = gf2.matmul(gf2.kron(a, b), gf2.kron(c, d))
        right = gf2.kron(gf2.matmul(a, c), gf2.matmul(b, d))
        assert left == right

    def test_associative(self):
        rng = np.random.default_rng(5)
        a, b, c = (BitMatrix.from_dense(rng.integers(0, 2, size=(2, 3))) for _ in range(3))
        assert gf2.kron(gf2.kron(a, b), c) == gf2.kron(a, gf2.kron(b, c))


class TestMatmulStacks:
    def test_identity_left(self):
        m = dense([[1, 0, 1], [1, 1, 0]])
        assert gf2.matmul(BitMatrix.identity(2), m) == m

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            gf2.matmul(dense([[1, 0]]), dense([[1, 0]]))

    def test_vstack_shape(self):
        out = gf2.vstack([BitMatrix.zeros(2, 3), BitMatrix.zeros(1, 3)])
        assert (out.rows, out.cols) == (3, 3)

    def test_hstack_roundtrip(self):
        a = dense([[1, 0], [0, 1]])
        b = dense([[1], [1]])
        assert gf2.hstack([a, b]).to_dense().tolist() == [[1, 0, 1], [0, 1, 1]]


class TestRowReduce:
    def test_identity_pivots(self):
        _, pivots = gf2.row_reduce(BitMatrix.identity(4))
        assert pivots == [0, 1, 2, 3]

    def test_zero_pivots(self):
        _, pivots = gf2.row_reduce(BitMatrix.zeros(3, 3))
        assert pivots == []

    def test_duplicate_rows(self):
        red, pivots = gf2.row_reduce(dense([[1, 1], [1, 1]]))
        assert pivots == [0]
        assert red.to_dense().tolist() == [[1, 1], [0, 0]]

    @settings(max_examples=50, deadline=None)
    @given(matrices)
    def test_idempotent(self, rows):
        m = dense(rows)
        red, piv = gf2.row_reduce(m)
        red2, piv2 = gf2.row_reduce(red)
        assert red2 == red and piv2 == piv
        assert piv == sorted(piv)


class TestMembershipSolve:
    def test_zero_always_in_row_space(self):
        m = dense([[1, 1, 0]])
        assert gf2.in_row_space(m, BitVector.zeros(3))

    def test_solve_identity(self):
        s = BitVector.from_dense([1, 0, 1])
        assert gf2.solve(BitMatrix.identity(3), s) == s

    def test_solve_by_direct_substitution(self):
        # any M x0 is solvable and the returned solution reproduces it
        m = dense([[1, 1, 0], [0, 1, 1]])
        x0 = BitVector.from_dense([1, 0, 1])
        s = gf2.matvec(m, x0)
        x = gf2.solve(m, s)
        assert x is not None
        assert gf2.matvec(m, x) == s

    def test_no_solution_is_none(self):
        m = dense([[1, 1, 0], [1, 1, 0]])
        assert gf2.solve(m, BitVector.from_dense([1, 0])) is None


class TestComplement:
    def test_trivial_subspace(self):
        assert gf2.complement_min_weight(BitMatrix.zeros(0, 3), 3) == 1

    def test_repetition_rows(self):
        assert gf2.complement_min_weight(dense([[1, 1, 0], [0, 1, 1]]), 3) == 1

    def test_full_space_errors(self):
        with pytest.raises(ValueError):
            gf2.complement_min_weight(BitMatrix.identity(3), 3)

    def test_random_proper_subspaces(self):
        rng = np.random.default_rng(0)
        checked = 0
        while checked < 100:
            n = int(rng.integers(2, 9))
            m = BitMatrix.from_dense(rng.integers(0, 2, size=(int(rng.integers(1, n)), n)))
            if gf2.rank(m) == n:
                continue
            assert gf2.complement_min_weight(m, n) == 1
            for idx in gf2.complement_unit_indices(m, n):
                assert not gf2.in_row_space(m, BitVector.unit(n, idx))
            checked += 1


class TestTextFormats:
    def test_dense_roundtrip(self):
        m = dense([[1, 0, 1], [0, 1, 1]])
        assert gf2.matrix_from_text(gf2.matrix_to_text(m)) == m

    def test_coords_roundtrip(self):
        m = dense([[0, 1], [1, 0], [1, 1]])
        assert gf2.matrix_from_coords(gf2.matrix_to_coords(m)) == m

    def test_bad_header(self):
        with pytest.raises(ValueError):
            gf2.matrix_from_text("nonsense")

    def test_empty_matrix_roundtrip(self):
        m = BitMatrix.zeros(0, 4)
        assert gf2.matrix_from_text(gf2.matrix_to_text(m)) == m
