"""XYZ and homological products: dimensions, logical bases, distance bounds."""

import math

import numpy as np
import pytest

from xyzcodes import gf2, products
from xyzcodes.css import concatenated_rep, toric_2d
from xyzcodes.gf2 import BitVector
from xyzcodes.stabilizer import (
    PauliError,
    code_dimension,
    is_logical,
    is_stabilizer,
    syndrome,
    validate_logical_basis,
    verify_commutation,
)
from test_css import random_css


def spec_of(family, *lengths):
    spec = products.spec_for_family(family, lengths)
    assert spec is not None
    return spec


class TestXyz3:
    def test_chamon_2(self):
        code = products.chamon3(2, 2, 2)
        assert code.n == 32
        assert code_dimension(code) == 8

    def test_chamon_3(self):
        code = products.chamon3(3, 3, 3)
        assert code.n == 108
        assert code_dimension(code) == 12

    def test_gcd_formula(self):
        for lens, k in [((2, 3, 4), 4), ((2, 4, 2), 8), ((3, 3, 3), 12)]:
            assert code_dimension(products.chamon3(*lens)) == 4 * math.gcd(*lens)

    def test_arbitrary_inputs_commute(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            hs = [
                gf2.BitMatrix.from_dense(rng.integers(0, 2, size=(rng.integers(1, 4), rng.integers(2, 5))))
                for _ in range(3)
            ]
            code = products.xyz3(*hs)  # commutation asserted at construction
            m1, n1 = hs[0].rows, hs[0].cols
            m2, n2 = hs[1].rows, hs[1].cols
            m3, n3 = hs[2].rows, hs[2].cols
            assert code.n == n1 * n2 * n3 + m1 * m2 * n3 + m1 * n2 * m3 + n1 * m2 * m3


class TestXyz4:
    def test_chamon4_2222(self):
        code = products.chamon4(2, 2, 2, 2)
        assert code.n == 128
        assert code_dimension(code) == 32

    def test_concat_3333(self):
        assert code_dimension(products.xyz4_concat(3, 3, 3, 3)) == 1

    def test_chamon4_coprime(self):
        assert code_dimension(products.chamon4(2, 3, 2, 3)) == 8

    def test_block_sizes(self):
        code = products.chamon4(2, 3, 2, 3)
        assert code.qubit_blocks == {"A": 36, "B": 36, "C": 144, "D": 36, "E": 36}
        assert code.check_blocks == {"S": 72, "T": 72, "U": 72, "V": 72}


class TestHomological4:
    def test_toric4_dimension_all_sizes(self):
        for jk in [(2, 2, 2, 2), (2, 3, 2, 3), (3, 3, 3, 3)]:
            assert code_dimension(products.toric4(*jk)) == 6

    def test_concat_dimension(self):
        assert code_dimension(products.homprod4_concat(3, 3, 3, 3)) == 1
        assert code_dimension(products.homprod4_concat(3, 5, 3, 5)) == 1

    def test_output_is_css(self):
        code = products.homprod4_concat(3, 3, 3, 3)
        # every generator is pure X or pure Z
        hx = code.hx.to_dense()
        hz = code.hz.to_dense()
        assert not ((hx.sum(axis=1) > 0) & (hz.sum(axis=1) > 0)).any()

    def test_check_blocks_match_xyz4(self):
        spec = spec_of("chamon4", 2, 3, 2, 3)
        xyz = products.xyz4(spec)
        hom = products.homological4(spec)
        assert xyz.check_blocks == hom.check_blocks
        # middle-grade restriction: A, C, E qubits only
        assert hom.qubit_blocks == {
            name: xyz.qubit_blocks[name] for name in ("A", "C", "E")
        }


class TestTheorem1:
    def test_toric_gcd_formula(self):
        for lens in [(2, 2, 2, 2), (2, 3, 2, 3), (3, 3, 2, 4)]:
            spec = products.Product4Spec(
                toric_2d(lens[0], lens[1]), toric_2d(lens[2], lens[3])
            )
            want = 8 * math.gcd(lens[0], lens[1]) * math.gcd(lens[2], lens[3])
            assert products.dimension_theorem1(spec) == want

    def test_concat_always_one(self):
        for lens in [(3, 3, 3, 3), (3, 5, 3, 5), (5, 3, 3, 3)]:
            spec = products.Product4Spec(
                concatenated_rep(lens[0], lens[1]), concatenated_rep(lens[2], lens[3])
            )
            assert products.dimension_theorem1(spec) == 1

    def test_matches_rank_oracle_on_random_specs(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            spec = products.Product4Spec(random_css(rng), random_css(rng))
            assert products.dimension_theorem1(spec) == code_dimension(products.xyz4(spec))


class TestTheorem2:
    def test_concat_single_pair_weights(self):
        spec = spec_of("xyz4-concat", 3, 3, 3, 3)
        basis = products.logical_basis_theorem2(spec)
        assert len(basis) == 1
        x_op, z_op = basis.pairs[0]
        assert z_op.weight() == 9  # Z support lives on block C with weight n3*n4
        code = products.xyz4(spec)
        validate_logical_basis(code, basis)

    def test_chamon4_pair_count_and_validity(self):
        spec = spec_of("chamon4", 2, 2, 2, 2)
        basis = products.logical_basis_theorem2(spec)
        assert len(basis) == 32
        code = products.xyz4(spec)
        validate_logical_basis(code, basis)
        for x_op, z_op in basis.pairs:
            assert syndrome(code, x_op).is_zero()
            assert syndrome(code, z_op).is_zero()

    def test_pair_count_equals_theorem1_on_random_specs(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            spec = products.Product4Spec(random_css(rng, max_n=5, max_m=3), random_css(rng, max_n=5, max_m=3))
            basis = products.logical_basis_theorem2(spec)
            assert len(basis) == products.dimension_theorem1(spec)
            if len(basis) and products.xyz4(spec).n < 200:
                validate_logical_basis(products.xyz4(spec), basis)

    def test_logicals_independent_mod_stabilizers(self):
        spec = spec_of("chamon4", 2, 2, 2, 2)
        code = products.xyz4(spec)
        basis = products.logical_basis_theorem2(spec)
        stab = code.symplectic_matrix()
        ops = gf2.BitMatrix.from_dense(
            np.array([op.to_symplectic().to_dense() for op in basis.all_operators()])
        )
        stacked = gf2.vstack([stab, ops])
        assert gf2.rank(stacked) == gf2.rank(stab) + 2 * len(basis)


class TestAppendixChecks:
    def test_sv_products_reproduce_mixed_form(self):
        """Products of S and V rows with kernel-tensor coefficients collapse to
        the four-block mixed form with identity on C, and are stabilizers."""
        spec = spec_of("chamon4", 2, 2, 2, 2)
        code = products.xyz4(spec)
        m1, m2, m3, m4, na, nb = spec.dims
        m1c = products._cokernel_matrix(spec.css1.hx, spec.css1.hz)
        kc1 = gf2.kernel_basis(m1c)
        assert kc1, "toric cokernel must be nontrivial"
        xy = kc1[0].to_dense()
        i_vec = np.zeros(nb, dtype=np.uint8)
        i_vec[1] = 1
        s_coeff = np.outer(xy[:m1], i_vec).reshape(-1)
        v_coeff = np.outer(xy[m1:], i_vec).reshape(-1)
        acc_x = BitVector.zeros(code.n)
        acc_z = BitVector.zeros(code.n)
        for i in np.nonzero(s_coeff)[0]:
            acc_x = acc_x ^ code.hx.row(int(i))
            acc_z = acc_z ^ code.hz.row(int(i))
        v_off = m1 * nb + na * m4 + na * m3
        for i in np.nonzero(v_coeff)[0]:
            acc_x = acc_x ^ code.hx.row(v_off + int(i))
            acc_z = acc_z ^ code.hz.row(v_off + int(i))
        prod = PauliError(code.n, acc_x, acc_z)
        assert is_stabilizer(code, prod)
        # identity on block C
        c_lo = m1 * m4 + m1 * m3
        dense_x = prod.xbits.to_dense()
        dense_z = prod.zbits.to_dense()
        assert not dense_x[c_lo : c_lo + na * nb].any()
        assert not dense_z[c_lo : c_lo + na * nb].any()


class TestCorollary3:
    @pytest.mark.parametrize(
        "family,lengths,bound",
        [
            ("xyz4-concat", (3, 5, 3, 5), 15),
            ("xyz4-concat", (3, 3, 3, 3), 9),
            ("chamon4", (2, 3, 2, 3), 6),
            ("chamon4", (3, 4, 3, 4), 12),
        ],
    )
    def test_table_bounds(self, family, lengths, bound):
        assert products.distance_upper_bound(spec_of(family, *lengths)) == bound

    def test_all_trivial_kernels_error(self):
        # identity checks: every kernel involved is trivial
        css = products.CssCode(
            hx=gf2.BitMatrix.identity(2), hz=gf2.BitMatrix.zeros(0, 2)
        )
        spec = products.Product4Spec(css, css)
        with pytest.raises(ValueError):
            products.distance_upper_bound(spec)

    def test_witnesses_are_logicals_at_bound_weights(self):
        spec = spec_of("chamon4", 2, 2, 2, 2)
        code = products.xyz4(spec)
        wits = products.bound_witnesses(spec)
        assert wits
        assert min(w.weight() for w in wits) == products.distance_upper_bound(spec)
        for w in wits:
            assert is_logical(code, w)


class TestFamilies:
    def test_chamon4_large_parameters(self):
        code = products.chamon4(5, 5, 5, 5)
        assert code.n == 5000
        assert code_dimension(code) == 200

    def test_xyz4_concat_7777(self):
        code = products.xyz4_concat(7, 7, 7, 7)
        assert code_dimension(code) == 1

    def test_toric3_parameters(self):
        code = products.toric3(2, 2, 2)
        assert code.n == 24
        assert code_dimension(code) == 3

    def test_family_errors(self):
        with pytest.raises(ValueError):
            products.construct_family("chamon4", (1, 1, 1, 1))
        with pytest.raises(ValueError):
            products.construct_family("nosuch", (2, 2))
        with pytest.raises(ValueError):
            products.construct_family("chamon3", (2, 2, 2, 2))

    def test_xyz3_square_dimension_scaling(self):
        for n in (2, 3):
            assert code_dimension(products.chamon3(n, n, n)) == 4 * n
