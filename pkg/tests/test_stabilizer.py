"""Symplectic stabilizer-code core: commutation, dimension, logical bases."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xyzcodes import gf2, products
from xyzcodes.css import CssCode, concatenated_rep, toric_2d
from xyzcodes.gf2 import BitMatrix, BitVector
from xyzcodes.stabilizer import (
    LogicalBasis,
    PauliError,
    StabilizerCode,
    StabilizerMembership,
    code_dimension,
    extract_logical_basis,
    first_violating_pair,
    is_logical,
    is_stabilizer,
    stabilizer_from_text,
    stabilizer_to_text,
    syndrome,
    validate_logical_basis,
    verify_commutation,
)


@pytest.fixture(scope="module")
def nine(request):
    return StabilizerCode.from_css(concatenated_rep(3, 3), "concat")


class TestPauliError:
    def test_weight_counts_any_nonidentity(self):
        e = PauliError.single(4, 0, "X").compose(PauliError.single(4, 2, "Y"))
        assert e.weight() == 2
        assert e.pauli_string() == "XIYI"

    def test_symplectic_roundtrip(self):
        e = PauliError.single(3, 1, "Y")
        assert PauliError.from_symplectic(e.to_symplectic()).pauli_string() == e.pauli_string()

    def test_compose_cancels(self):
        e = PauliError.single(3, 1, "Z")
        assert e.compose(e).weight() == 0


class TestCommutation:
    def test_css_lift_commutes(self, nine):
        assert verify_commutation(nine)

    def test_xyz4_commutes(self):
        spec = products.Product4Spec(toric_2d(2, 2), toric_2d(2, 2))
        assert verify_commutation(products.xyz4(spec))

    def test_flipped_bit_breaks_commutation(self, nine):
        # put a Z on qubit 3 inside X-check 0: odd overlap with X-check 1
        hz = nine.hz.copy()
        hz.set(0, 3, 1 - hz.get(0, 3))
        bad = StabilizerCode(n=nine.n, hx=nine.hx, hz=hz)
        assert not verify_commutation(bad)
        assert first_violating_pair(bad) is not None
        with pytest.raises(ValueError):
            code_dimension(bad)


class TestDimension:
    def test_table_examples(self):
        assert code_dimension(products.toric4(2, 2, 2, 2)) == 6
        assert code_dimension(products.chamon4(2, 2, 2, 2)) == 32
        assert code_dimension(products.xyz4_concat(3, 3, 3, 3)) == 1


class TestSyndrome:
    def test_identity_error(self, nine):
        assert syndrome(nine, PauliError.identity(9)).is_zero()

    def test_stabilizer_rows_have_zero_syndrome(self, nine):
        for i in range(nine.num_checks):
            e = PauliError(9, nine.hx.row(i), nine.hz.row(i))
            assert syndrome(nine, e).is_zero()

    def test_single_x_fires_touching_z_checks(self, nine):
        e = PauliError.single(9, 0, "X")
        s = syndrome(nine, e).to_dense()
        hz_col = np.concatenate(
            [np.zeros(2, dtype=np.uint8), concatenated_rep(3, 3).hz.to_dense()[:, 0]]
        )
        assert s.tolist() == hz_col.tolist()

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**31 - 1))
    def test_linearity(self, seed):
        code = StabilizerCode.from_css(concatenated_rep(3, 3))
        rng = np.random.default_rng(seed)
        e1 = PauliError(
            9,
            BitVector.from_dense(rng.integers(0, 2, 9)),
            BitVector.from_dense(rng.integers(0, 2, 9)),
        )
        e2 = PauliError(
            9,
            BitVector.from_dense(rng.integers(0, 2, 9)),
            BitVector.from_dense(rng.integers(0, 2, 9)),
        )
        assert syndrome(code, e1.compose(e2)) == syndrome(code, e1) ^ syndrome(code, e2)


class TestMembership:
    def test_rows_are_stabilizers(self, nine):
        for i in range(nine.num_checks):
            e = PauliError(9, nine.hx.row(i), nine.hz.row(i))
            assert is_stabilizer(nine, e)
            assert not is_logical(nine, e)

    def test_all_y_is_logical_on_concat(self, nine):
        ones = BitVector.from_dense(np.ones(9, dtype=np.uint8))
        all_y = PauliError(9, ones, ones)
        assert is_logical(nine, all_y)

    def test_identity_neither(self, nine):
        e = PauliError.identity(9)
        assert is_stabilizer(nine, e)  # trivial element of the group
        assert not is_logical(nine, e)

    def test_membership_helper_matches(self, nine):
        member = StabilizerMembership(nine)
        rng = np.random.default_rng(4)
        for _ in range(20):
            e = PauliError(
                9,
                BitVector.from_dense(rng.integers(0, 2, 9)),
                BitVector.from_dense(rng.integers(0, 2, 9)),
            )
            assert member.contains(e) == is_stabilizer(nine, e)


class TestLogicalBasis:
    def test_toric_two_pairs(self):
        code = StabilizerCode.from_css(toric_2d(3, 3))
        basis = extract_logical_basis(code)
        assert len(basis) == 2
        validate_logical_basis(code, basis)

    def test_concat4d_single_pair(self):
        code = products.xyz4_concat(3, 3, 3, 3)
        basis = extract_logical_basis(code)
        assert len(basis) == 1
        validate_logical_basis(code, basis)

    def test_zero_k_code_empty_basis(self):
        code = StabilizerCode.from_css(
            CssCode(hx=BitMatrix.identity(2), hz=BitMatrix.zeros(0, 2))
        )
        assert len(extract_logical_basis(code)) == 0

    def test_adding_stabilizer_row_keeps_logical(self, nine):
        basis = extract_logical_basis(nine)
        xbar, _ = basis.pairs[0]
        row = PauliError(9, nine.hx.row(0), nine.hz.row(0))
        assert is_logical(nine, xbar.compose(row))


class TestSerialization:
    def test_roundtrip_with_metadata(self):
        code = products.chamon3(2, 2, 2)
        back = stabilizer_from_text(stabilizer_to_text(code))
        assert back.n == code.n
        assert back.hx == code.hx and back.hz == code.hz
        assert back.qubit_blocks == code.qubit_blocks
        assert back.check_blocks == code.check_blocks
        assert back.family_tag == code.family_tag
