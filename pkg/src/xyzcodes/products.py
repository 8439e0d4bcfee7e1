"""3D/4D XYZ products, the 4D homological product, and named code families.

Layout conventions
------------------
All tensor blocks use the row-major Kronecker index idx(i, j) = i * cols_b + j
from :mod:`xyzcodes.gf2`.

3D XYZ product of classical checks H1 (m1 x n1), H2 (m2 x n2), H3 (m3 x n3):
qubit blocks A (n1 n2 n3), B (m1 m2 n3), C (m1 n2 m3), D (n1 m2 m3); check
blocks S (m1 n2 n3), T (n1 m2 n3), U (n1 n2 m3), V (m1 m2 m3) with

    S:  X^(H1 x I x I)    Y^(I x H2^T x I)   Z^(I x I x H3^T)   .
    T:  Y^(I x H2 x I)    X^(H1^T x I x I)   .                  Z^(I x I x H3^T)
    U:  Z^(I x I x H3)    .                  X^(H1^T x I x I)   Y^(I x H2^T x I)
    V:  .                 Z^(I x I x H3)     Y^(I x H2 x I)     X^(H1 x I x I)

4D XYZ product of CSS codes (Hx1: m1 x nA, Hz1: m2 x nA) and (Hx2: m3 x nB,
Hz2: m4 x nB): qubit blocks A (m1 m4), B (m1 m3), C (nA nB), D (m2 m4),
E (m2 m3); check blocks S (m1 nB), T (nA m4), U (nA m3), V (m2 nB).  The
published block equation carries transpose/label ambiguities; the matrix
below is the unique assignment in which every row has length N and the full
generator set commutes (asserted at construction):

    S:  X^(I_m1 x Hz2^T)   Y^(I_m1 x Hx2^T)   Z^(Hx1 x I_nB)    .                 .
    T:  Y^(Hx1^T x I_m4)   .                  X^(I_nA x Hz2)    Z^(Hz1^T x I_m4)  .
    U:  .                  Z^(Hx1^T x I_m3)   X^(I_nA x Hx2)    .                 Y^(Hz1^T x I_m3)
    V:  .                  .                  Z^(Hz1 x I_nB)    Y^(I_m2 x Hz2^T)  X^(I_m2 x Hx2^T)

The 4D homological product keeps the same support layout with the pure-CSS
labeling: S, V rows all-X and T, U rows all-Z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .classical import PERIODIC, repetition_check
from .css import CssCode, concatenated_rep, toric_2d
from .gf2 import BitMatrix, BitVector
from .stabilizer import LogicalBasis, PauliError, StabilizerCode, verify_commutation

QUBIT_BLOCKS_4D = ("A", "B", "C", "D", "E")
CHECK_BLOCKS_4D = ("S", "T", "U", "V")


@dataclass(frozen=True)
class Product4Spec:
    """Inputs of a 4D product: two CSS codes (validity enforced by CssCode)."""

    css1: CssCode
    css2: CssCode

    @property
    def dims(self) -> tuple[int, int, int, int, int, int]:
        """(m1, m2, m3, m4, nA, nB)."""
        return (
            self.css1.hx.rows,
            self.css1.hz.rows,
            self.css2.hx.rows,
            self.css2.hz.rows,
            self.css1.n,
            self.css2.n,
        )


def _assemble(
    qubit_sizes: dict[str, int],
    check_sizes: dict[str, int],
    grid: dict[str, dict[str, tuple[str, BitMatrix]]],
    family_tag: str,
) -> StabilizerCode:
    """Build a StabilizerCode from a {check_block: {qubit_block: (pauli, M)}} grid."""
    qnames = list(qubit_sizes)
    n = sum(qubit_sizes.values())
    hx_rows, hz_rows = [], []
    for cname, csize in check_sizes.items():
        row = grid.get(cname, {})
        x_parts, z_parts = [], []
        for qname in qnames:
            qsize = qubit_sizes[qname]
            entry = row.get(qname)
            if entry is None:
                x_parts.append(BitMatrix.zeros(csize, qsize))
                z_parts.append(BitMatrix.zeros(csize, qsize))
                continue
            pauli, mat = entry
            if mat.rows != csize or mat.cols != qsize:
                raise ValueError(
                    f"block {cname}/{qname}: got {mat.rows}x{mat.cols}, "
                    f"expected {csize}x{qsize}"
                )
            x_parts.append(mat if pauli in ("X", "Y") else BitMatrix.zeros(csize, qsize))
            z_parts.append(mat if pauli in ("Z", "Y") else BitMatrix.zeros(csize, qsize))
        hx_rows.append(gf2.hstack(x_parts))
        hz_rows.append(gf2.hstack(z_parts))
    code = StabilizerCode(
        n=n,
        hx=gf2.vstack(hx_rows),
        hz=gf2.vstack(hz_rows),
        qubit_blocks=dict(qubit_sizes),
        check_blocks=dict(check_sizes),
        family_tag=family_tag,
    )
    if not verify_commutation(code):
        raise AssertionError("constructed generators do not commute")
    return code


def xyz3(h1: BitMatrix, h2: BitMatrix, h3: BitMatrix, family_tag: str = "xyz3") -> StabilizerCode:
    """3D XYZ product of three classical parity checks."""
    m1, n1 = h1.rows, h1.cols
    m2, n2 = h2.rows, h2.cols
    m3, n3 = h3.rows, h3.cols
    eye = BitMatrix.identity

    def k3(a, b, c):
        return gf2.kron(gf2.kron(a, b), c)

    qubits = {"A": n1 * n2 * n3, "B": m1 * m2 * n3, "C": m1 * n2 * m3, "D": n1 * m2 * m3}
    checks = {"S": m1 * n2 * n3, "T": n1 * m2 * n3, "U": n1 * n2 * m3, "V": m1 * m2 * m3}
    h1t, h2t, h3t = gf2.transpose(h1), gf2.transpose(h2), gf2.transpose(h3)
    grid = {
        "S": {
            "A": ("X", k3(h1, eye(n2), eye(n3))),
            "B": ("Y", k3(eye(m1), h2t, eye(n3))),
            "C": ("Z", k3(eye(m1), eye(n2), h3t)),
        },
        "T": {
            "A": ("Y", k3(eye(n1), h2, eye(n3))),
            "B": ("X", k3(h1t, eye(m2), eye(n3))),
            "D": ("Z", k3(eye(n1), eye(m2), h3t)),
        },
        "U": {
            "A": ("Z", k3(eye(n1), eye(n2), h3)),
            "C": ("X", k3(h1t, eye(n2), eye(m3))),
            "D": ("Y", k3(eye(n1), h2t, eye(m3))),
        },
        "V": {
            "B": ("Z", k3(eye(m1), eye(m2), h3)),
            "C": ("Y", k3(eye(m1), h2, eye(m3))),
            "D": ("X", k3(h1, eye(m2), eye(m3))),
        },
    }
    return _assemble(qubits, checks, grid, family_tag)


def _grid4(spec: Product4Spec) -> tuple[dict, dict, dict]:
    """Shared tensor layout of the 4D XYZ and homological products."""
    m1, m2, m3, m4, na, nb = spec.dims
    hx1, hz1 = spec.css1.hx, spec.css1.hz
    hx2, hz2 = spec.css2.hx, spec.css2.hz
    eye = BitMatrix.identity
    qubits = {"A": m1 * m4, "B": m1 * m3, "C": na * nb, "D": m2 * m4, "E": m2 * m3}
    checks = {"S": m1 * nb, "T": na * m4, "U": na * m3, "V": m2 * nb}
    support = {
        "S": {
            "A": gf2.kron(eye(m1), gf2.transpose(hz2)),
            "B": gf2.kron(eye(m1), gf2.transpose(hx2)),
            "C": gf2.kron(hx1, eye(nb)),
        },
        "T": {
            "A": gf2.kron(gf2.transpose(hx1), eye(m4)),
            "C": gf2.kron(eye(na), hz2),
            "D": gf2.kron(gf2.transpose(hz1), eye(m4)),
        },
        "U": {
            "B": gf2.kron(gf2.transpose(hx1), eye(m3)),
            "C": gf2.kron(eye(na), hx2),
            "E": gf2.kron(gf2.transpose(hz1), eye(m3)),
        },
        "V": {
            "C": gf2.kron(hz1, eye(nb)),
            "D": gf2.kron(eye(m2), gf2.transpose(hz2)),
            "E": gf2.kron(eye(m2), gf2.transpose(hx2)),
        },
    }
    return qubits, checks, support


_XYZ4_PAULIS = {
    "S": {"A": "X", "B": "Y", "C": "Z"},
    "T": {"A": "Y", "C": "X", "D": "Z"},
    "U": {"B": "Z", "C": "X", "E": "Y"},
    "V": {"C": "Z", "D": "Y", "E": "X"},
}

def xyz4(spec: Product4Spec, family_tag: str = "xyz4") -> StabilizerCode:
    """4D XYZ product of two CSS codes (non-CSS output)."""
    qubits, checks, support = _grid4(spec)
    grid = {
        c: {q: (_XYZ4_PAULIS[c][q], mat) for q, mat in row.items()}
        for c, row in support.items()
    }
    return _assemble(qubits, checks, grid, family_tag)


def homological4(spec: Product4Spec, family_tag: str = "homprod4") -> StabilizerCode:
    """Standard 4D homological product of two CSS codes (CSS output).

    Same tensor grid as the XYZ product, but only the three middle-grade
    blocks A, C, E carry qubits (the corner blocks B and D sit at grades +-2
    and are not part of the code), so N = m1 m4 + nA nB + m2 m3.  T and V
    rows are X checks, S and U rows are Z checks; the check-block sizes match
    the XYZ product's.  This is the unique restriction of the layout that
    reproduces the 4D toric code (k = 6) from two 2D toric codes.
    """
    qubits, checks, support = _grid4(spec)
    mid_qubits = {name: qubits[name] for name in ("A", "C", "E")}
    paulis = {"S": "Z", "T": "X", "U": "Z", "V": "X"}
    grid = {
        c: {
            q: (paulis[c], mat)
            for q, mat in row.items()
            if q in mid_qubits
        }
        for c, row in support.items()
    }
    return _assemble(mid_qubits, checks, grid, family_tag)


# -- Theorem 1: code dimension ---------------------------------------------------


def _stack_kernel_dim(hx: BitMatrix, hz: BitMatrix) -> int:
    """dim ker [Hx; Hz]."""
    return len(gf2.kernel_basis(gf2.vstack([hx, hz])))


def _cokernel_matrix(hx: BitMatrix, hz: BitMatrix) -> BitMatrix:
    """[Hx^T, Hz^T] side by side; its kernel is the check-combination space."""
    return gf2.hstack([gf2.transpose(hx), gf2.transpose(hz)])


def _cokernel_dim(hx: BitMatrix, hz: BitMatrix) -> int:
    return len(gf2.kernel_basis(_cokernel_matrix(hx, hz)))


def dimension_theorem1(spec: Product4Spec) -> int:
    """Closed-form code dimension of the 4D XYZ product.

    k = (nA - m1 - m2)(nB - m3 - m4) + k_SV + k_TU, with k_SV counting the
    dependencies among S and V generators (kernel of the transposed code-1
    checks tensored with the Y-undetectable space of code 2) and k_TU the
    mirror count for T and U.
    """
    m1, m2, m3, m4, na, nb = spec.dims
    k_sv = _cokernel_dim(spec.css1.hx, spec.css1.hz) * _stack_kernel_dim(
        spec.css2.hx, spec.css2.hz
    )
    k_tu = _stack_kernel_dim(spec.css1.hx, spec.css1.hz) * _cokernel_dim(
        spec.css2.hx, spec.css2.hz
    )
    return (na - m1 - m2) * (nb - m3 - m4) + k_sv + k_tu


# -- Theorem 2: explicit logical bases --------------------------------------------


def _tensor_vec(u: BitVector, w: BitVector) -> BitVector:
    out = np.outer(u.to_dense(), w.to_dense()).reshape(-1) & 1
    return BitVector.from_dense(out)


def _pairing_normalized(
    basis: list[BitVector], unit_indices: list[int]
) -> list[BitVector]:
    """Change basis so that basis[s][unit_indices[t]] = delta(s, t).

    The dot pairing between a kernel and the unit-vector complement of the
    matching image space is nondegenerate, so the Gram matrix is invertible.
    """
    a = len(basis)
    if a != len(unit_indices):
        raise ValueError("basis/complement size mismatch")
    if a == 0:
        return []
    gram = BitMatrix(a, a)
    for s in range(a):
        for t in range(a):
            gram.set(s, t, basis[s].get(unit_indices[t]))
    red, pivots = gf2.row_reduce(gf2.hstack([gram, BitMatrix.identity(a)]))
    if pivots[: a] != list(range(a)):
        raise AssertionError("degenerate kernel/complement pairing")
    inv = red.to_dense()[:, a:]
    out = []
    for u in range(a):
        v = BitVector.zeros(basis[0].len)
        for s in range(a):
            if inv[u, s]:
                v = v ^ basis[s]
        out.append(v)
    return out


def _block_offsets(sizes: dict[str, int]) -> dict[str, int]:
    off, acc = {}, 0
    for name, size in sizes.items():
        off[name] = acc
        acc += size
    return off


class _OpBuilder:
    """Accumulate per-block Pauli factors into one PauliError."""

    def __init__(self, qubit_sizes: dict[str, int]):
        self.n = sum(qubit_sizes.values())
        self.off = _block_offsets(qubit_sizes)
        self.sizes = qubit_sizes
        self.x = np.zeros(self.n, dtype=np.uint8)
        self.z = np.zeros(self.n, dtype=np.uint8)

    def put(self, block: str, pauli: str, vec: BitVector) -> "_OpBuilder":
        if vec.len != self.sizes[block]:
            raise ValueError(f"vector does not fit block {block}")
        lo = self.off[block]
        dense = vec.to_dense()
        if pauli in ("X", "Y"):
            self.x[lo : lo + vec.len] ^= dense
        if pauli in ("Z", "Y"):
            self.z[lo : lo + vec.len] ^= dense
        return self

    def done(self) -> PauliError:
        return PauliError(
            self.n, BitVector.from_dense(self.x), BitVector.from_dense(self.z)
        )


def logical_basis_theorem2(spec: Product4Spec) -> LogicalBasis:
    """Logical pairs of xyz4(spec) in the two closed forms.

    Type 1 lives on block C alone: X(r) with r in ker[Hx1; Hz1] tensor a
    weight-1 complement representative of the code-2 image space, and Z(w)
    mirrored.  Type 2 mixes X/Y/Z across blocks A, B, D, E, indexed by the
    transposed-check kernels and weight-1 complement representatives of the
    stacked-check image spaces.  Pair count always equals Theorem 1's k.
    """
    m1, m2, m3, m4, na, nb = spec.dims
    hx1, hz1 = spec.css1.hx, spec.css1.hz
    hx2, hz2 = spec.css2.hx, spec.css2.hz
    qubit_sizes = {"A": m1 * m4, "B": m1 * m3, "C": na * nb, "D": m2 * m4, "E": m2 * m3}

    # Type 1: kernels of the stacked checks and complements of Im[H^T, H^T].
    k1 = gf2.kernel_basis(gf2.vstack([hx1, hz1]))
    k2 = gf2.kernel_basis(gf2.vstack([hx2, hz2]))
    units1 = gf2.complement_unit_indices(gf2.vstack([hx1, hz1]), na)
    units2 = gf2.complement_unit_indices(gf2.vstack([hx2, hz2]), nb)
    k1n = _pairing_normalized(k1, units1)
    k2n = _pairing_normalized(k2, units2)

    pairs: list[tuple[PauliError, PauliError]] = []
    for s in range(len(k1n)):
        for t in range(len(k2n)):
            r = _tensor_vec(k1n[s], BitVector.unit(nb, units2[t]))
            w = _tensor_vec(BitVector.unit(na, units1[s]), k2n[t])
            x_op = _OpBuilder(qubit_sizes).put("C", "X", r).done()
            z_op = _OpBuilder(qubit_sizes).put("C", "Z", w).done()
            pairs.append((x_op, z_op))

    # Type 2: kernels of the transposed checks, complements in check space.
    m1c = _cokernel_matrix(hx1, hz1)  # nA x (m1 + m2), kernel vectors [x; y]
    m2c = gf2.hstack([gf2.transpose(hz2), gf2.transpose(hx2)])  # nB x (m4 + m3)
    kc1 = gf2.kernel_basis(m1c)
    kc2 = gf2.kernel_basis(m2c)
    units_f = gf2.complement_unit_indices(m1c, m1 + m2)
    units_g = gf2.complement_unit_indices(m2c, m4 + m3)
    kc1n = _pairing_normalized(kc1, units_f)
    kc2n = _pairing_normalized(kc2, units_g)

    def split(v: BitVector, first: int) -> tuple[BitVector, BitVector]:
        dense = v.to_dense()
        return BitVector.from_dense(dense[:first]), BitVector.from_dense(dense[first:])

    for s in range(len(kc1n)):
        x_vec, y_vec = split(kc1n[s], m1)
        f_idx = units_f[s]
        f_vec, h_vec = split(BitVector.unit(m1 + m2, f_idx), m1)
        for t in range(len(kc2n)):
            g1, g2 = split(BitVector.unit(m4 + m3, units_g[t]), m4)
            w1, w2 = split(kc2n[t], m4)
            x_op = (
                _OpBuilder(qubit_sizes)
                .put("A", "X", _tensor_vec(x_vec, g1))
                .put("B", "Y", _tensor_vec(x_vec, g2))
                .put("D", "Y", _tensor_vec(y_vec, g1))
                .put("E", "X", _tensor_vec(y_vec, g2))
                .done()
            )
            z_op = (
                _OpBuilder(qubit_sizes)
                .put("A", "Y", _tensor_vec(f_vec, w1))
                .put("B", "Z", _tensor_vec(f_vec, w2))
                .put("D", "Z", _tensor_vec(h_vec, w1))
                .put("E", "Y", _tensor_vec(h_vec, w2))
                .done()
            )
            pairs.append((x_op, z_op))
    return LogicalBasis(pairs=pairs)


# -- Corollary 3: distance bound ---------------------------------------------------


def min_weight_vector(
    basis: list[BitVector], seed: int = 0, budget: int = 200_000
) -> tuple[int, BitVector] | None:
    """Lightest nonzero vector in the span of `basis`, with its weight.

    Exhaustive (Gray-code sweep) for spans of dimension <= 24; beyond that a
    seeded random-combination search with `budget` draws, which yields an
    upper bound rather than a certificate.
    """
    dim = len(basis)
    if dim == 0:
        return None
    best: int | None = None
    best_vec: BitVector | None = None
    if dim <= 24:
        acc = BitVector.zeros(basis[0].len)
        prev_gray = 0
        for i in range(1, 1 << dim):
            gray = i ^ (i >> 1)
            flipped = (gray ^ prev_gray).bit_length() - 1
            prev_gray = gray
            acc = acc ^ basis[flipped]
            w = acc.weight()
            if best is None or w < best:
                best, best_vec = w, acc.copy()
        return best, best_vec
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        coeffs = rng.integers(0, 2, size=dim)
        if not coeffs.any():
            continue
        acc = BitVector.zeros(basis[0].len)
        for j in np.nonzero(coeffs)[0]:
            acc = acc ^ basis[int(j)]
        w = acc.weight()
        if best is None or w < best:
            best, best_vec = w, acc
    return best, best_vec


def min_weight_in_span(
    basis: list[BitVector], seed: int = 0, budget: int = 200_000
) -> int | None:
    found = min_weight_vector(basis, seed=seed, budget=budget)
    return None if found is None else found[0]


def distance_upper_bound(spec: Product4Spec) -> int:
    """Corollary-3 bound: min over the nonzero kernels of d1..d4."""
    hx1, hz1 = spec.css1.hx, spec.css1.hz
    hx2, hz2 = spec.css2.hx, spec.css2.hz
    kernels = [
        gf2.kernel_basis(gf2.vstack([hx1, hz1])),
        gf2.kernel_basis(gf2.vstack([hx2, hz2])),
        gf2.kernel_basis(_cokernel_matrix(hx1, hz1)),
        gf2.kernel_basis(gf2.hstack([gf2.transpose(hz2), gf2.transpose(hx2)])),
    ]
    weights = [w for w in (min_weight_in_span(k) for k in kernels) if w is not None]
    if not weights:
        raise ValueError("bound undefined: all four kernels are trivial")
    return min(weights)


def bound_witnesses(spec: Product4Spec) -> list[PauliError]:
    """Theorem-2 logicals of xyz4(spec) realizing the d1..d4 bound weights.

    Each witness tensors a lightest kernel element with a weight-1 complement
    representative, so its weight equals the corresponding kernel minimum.
    Kernels whose complement partner is empty contribute nothing (no logical
    of that type exists).
    """
    m1, m2, m3, m4, na, nb = spec.dims
    hx1, hz1 = spec.css1.hx, spec.css1.hz
    hx2, hz2 = spec.css2.hx, spec.css2.hz
    qubit_sizes = {"A": m1 * m4, "B": m1 * m3, "C": na * nb, "D": m2 * m4, "E": m2 * m3}
    out: list[PauliError] = []

    def halves(v: BitVector, first: int) -> tuple[BitVector, BitVector]:
        dense = v.to_dense()
        return BitVector.from_dense(dense[:first]), BitVector.from_dense(dense[first:])

    k1_min = min_weight_vector(gf2.kernel_basis(gf2.vstack([hx1, hz1])))
    k2_min = min_weight_vector(gf2.kernel_basis(gf2.vstack([hx2, hz2])))
    units1 = gf2.complement_unit_indices(gf2.vstack([hx1, hz1]), na)
    units2 = gf2.complement_unit_indices(gf2.vstack([hx2, hz2]), nb)
    if k1_min is not None and units2:
        r = _tensor_vec(k1_min[1], BitVector.unit(nb, units2[0]))
        out.append(_OpBuilder(qubit_sizes).put("C", "X", r).done())
    if k2_min is not None and units1:
        w = _tensor_vec(BitVector.unit(na, units1[0]), k2_min[1])
        out.append(_OpBuilder(qubit_sizes).put("C", "Z", w).done())

    m1c = _cokernel_matrix(hx1, hz1)
    m2c = gf2.hstack([gf2.transpose(hz2), gf2.transpose(hx2)])
    kc1_min = min_weight_vector(gf2.kernel_basis(m1c))
    kc2_min = min_weight_vector(gf2.kernel_basis(m2c))
    units_f = gf2.complement_unit_indices(m1c, m1 + m2)
    units_g = gf2.complement_unit_indices(m2c, m4 + m3)
    if kc1_min is not None and units_g:
        x_vec, y_vec = halves(kc1_min[1], m1)
        g1, g2 = halves(BitVector.unit(m4 + m3, units_g[0]), m4)
        out.append(
            _OpBuilder(qubit_sizes)
            .put("A", "X", _tensor_vec(x_vec, g1))
            .put("B", "Y", _tensor_vec(x_vec, g2))
            .put("D", "Y", _tensor_vec(y_vec, g1))
            .put("E", "X", _tensor_vec(y_vec, g2))
            .done()
        )
    if kc2_min is not None and units_f:
        f_vec, h_vec = halves(BitVector.unit(m1 + m2, units_f[0]), m1)
        w1, w2 = halves(kc2_min[1], m4)
        out.append(
            _OpBuilder(qubit_sizes)
            .put("A", "Y", _tensor_vec(f_vec, w1))
            .put("B", "Z", _tensor_vec(f_vec, w2))
            .put("D", "Z", _tensor_vec(h_vec, w1))
            .put("E", "Y", _tensor_vec(h_vec, w2))
            .done()
        )
    return out


# -- named families ----------------------------------------------------------------


def chamon3(n1: int, n2: int, n3: int) -> StabilizerCode:
    """3D Chamon code: XYZ product of three periodic repetition checks."""
    return xyz3(
        repetition_check(n1, PERIODIC).matrix,
        repetition_check(n2, PERIODIC).matrix,
        repetition_check(n3, PERIODIC).matrix,
        family_tag=f"chamon3:{n1},{n2},{n3}",
    )


def toric3(n1: int, n2: int, n3: int) -> StabilizerCode:
    """3D toric code on the same tensor layout, qubits on the S/T/U grades.

    CSS baseline for the XYZ comparison: weight-6 checks from the A grade
    (one per lattice site) and weight-4 checks from the B/C/D grades.
    """
    h1 = repetition_check(n1, PERIODIC).matrix
    h2 = repetition_check(n2, PERIODIC).matrix
    h3 = repetition_check(n3, PERIODIC).matrix
    m1, m2, m3 = h1.rows, h2.rows, h3.rows
    eye = BitMatrix.identity

    def k3(a, b, c):
        return gf2.kron(gf2.kron(a, b), c)

    # Boundary map grade0 -> grade1 stacked over (S, T, U) ...
    d0 = gf2.vstack(
        [
            k3(h1, eye(n2), eye(n3)),
            k3(eye(n1), h2, eye(n3)),
            k3(eye(n1), eye(n2), h3),
        ]
    )
    # ... and grade1 -> grade2 with rows stacked over (B, C, D).
    zeros = BitMatrix.zeros
    s_cols, t_cols, u_cols = m1 * n2 * n3, n1 * m2 * n3, n1 * n2 * m3
    b_rows = gf2.hstack(
        [k3(eye(m1), h2, eye(n3)), k3(h1, eye(m2), eye(n3)), zeros(m1 * m2 * n3, u_cols)]
    )
    c_rows = gf2.hstack(
        [k3(eye(m1), eye(n2), h3), zeros(m1 * n2 * m3, t_cols), k3(h1, eye(n2), eye(m3))]
    )
    d_rows = gf2.hstack(
        [zeros(n1 * m2 * m3, s_cols), k3(eye(n1), eye(m2), h3), k3(eye(n1), h2, eye(m3))]
    )
    d1 = gf2.vstack([b_rows, c_rows, d_rows])
    css = CssCode(hx=gf2.transpose(d0), hz=d1)
    code = StabilizerCode.from_css(css, family_tag=f"toric3:{n1},{n2},{n3}")
    return StabilizerCode(
        n=code.n,
        hx=code.hx,
        hz=code.hz,
        qubit_blocks={"S": s_cols, "T": t_cols, "U": u_cols},
        check_blocks={"A": n1 * n2 * n3, "B": m1 * m2 * n3, "C": m1 * n2 * m3, "D": n1 * m2 * m3},
        family_tag=code.family_tag,
    )


def chamon4(n1: int, n2: int, n3: int, n4: int) -> StabilizerCode:
    """4D Chamon code: XYZ product of two 2D toric codes."""
    spec = Product4Spec(css1=toric_2d(n1, n2), css2=toric_2d(n3, n4))
    return xyz4(spec, family_tag=f"chamon4:{n1},{n2},{n3},{n4}")


def toric4(n1: int, n2: int, n3: int, n4: int) -> StabilizerCode:
    """4D toric code: homological product of two 2D toric codes."""
    spec = Product4Spec(css1=toric_2d(n1, n2), css2=toric_2d(n3, n4))
    return homological4(spec, family_tag=f"toric4:{n1},{n2},{n3},{n4}")


def xyz4_concat(n1: int, n2: int, n3: int, n4: int) -> StabilizerCode:
    """4D XYZ product of two repetition-code concatenations (odd lengths)."""
    spec = Product4Spec(css1=concatenated_rep(n1, n2), css2=concatenated_rep(n3, n4))
    return xyz4(spec, family_tag=f"xyz4-concat:{n1},{n2},{n3},{n4}")


def homprod4_concat(n1: int, n2: int, n3: int, n4: int) -> StabilizerCode:
    """4D homological product of the same two concatenated codes."""
    spec = Product4Spec(css1=concatenated_rep(n1, n2), css2=concatenated_rep(n3, n4))
    return homological4(spec, family_tag=f"homprod4-concat:{n1},{n2},{n3},{n4}")


def spec_for_family(family: str, lengths: tuple[int, ...]) -> Product4Spec | None:
    """Recover the Product4Spec behind a 4D family tag, None for 3D families."""
    if family in ("chamon4", "toric4"):
        return Product4Spec(
            css1=toric_2d(lengths[0], lengths[1]), css2=toric_2d(lengths[2], lengths[3])
        )
    if family in ("xyz4-concat", "homprod4-concat"):
        return Product4Spec(
            css1=concatenated_rep(lengths[0], lengths[1]),
            css2=concatenated_rep(lengths[2], lengths[3]),
        )
    return None


FAMILIES = {
    "chamon3": (3, chamon3),
    "toric3": (3, toric3),
    "chamon4": (4, chamon4),
    "toric4": (4, toric4),
    "xyz4-concat": (4, xyz4_concat),
    "homprod4-concat": (4, homprod4_concat),
}


def construct_family(family: str, lengths: tuple[int, ...]) -> StabilizerCode:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    arity, ctor = FAMILIES[family]
    if len(lengths) != arity:
        raise ValueError(f"family {family} takes {arity} lengths, got {len(lengths)}")
    return ctor(*lengths)
