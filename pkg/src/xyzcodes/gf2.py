"""Dense bit-packed linear algebra over GF(2).

Rows are packed into 64-bit words, little-endian within each word: bit j of a
row lives at word j >> 6, bit position j & 63.  All bits beyond the declared
column count are kept at zero.  Kronecker products use the row-major index
convention idx(i, j) = i * cols_b + j; every product construction in this
package relies on that one convention.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U1 = np.uint64(1)


@njit(cache=True)
def _rref_inplace(data, rows, words, cols, pivots):
    """Reduce to RREF in place; fill `pivots` and return the rank."""
    r = 0
    for c in range(cols):
        w = c >> 6
        b = np.uint64(c & 63)
        piv = -1
        for i in range(r, rows):
            if (data[i, w] >> b) & _U1:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(words):
                t = data[r, k]
                data[r, k] = data[piv, k]
                data[piv, k] = t
        for i in range(rows):
            if i != r and ((data[i, w] >> b) & _U1):
                for k in range(w, words):
                    data[i, k] ^= data[r, k]
        pivots[r] = c
        r += 1
        if r == rows:
            break
    return r


@njit(cache=True)
def _matmul_packed(a_data, a_rows, a_cols, b_data, b_words):
    out = np.zeros((a_rows, b_words), dtype=np.uint64)
    for i in range(a_rows):
        for j in range(a_cols):
            if (a_data[i, j >> 6] >> np.uint64(j & 63)) & _U1:
                for k in range(b_words):
                    out[i, k] ^= b_data[j, k]
    return out


@njit(cache=True)
def _reduce_against(rref, pivots, nrref, vec, words):
    """XOR RREF rows into vec until its pivot positions are cleared."""
    for r in range(nrref):
        c = pivots[r]
        if (vec[c >> 6] >> np.uint64(c & 63)) & _U1:
            for k in range(words):
                vec[k] ^= rref[r, k]


class BitMatrix:
    """A rows x cols matrix over GF(2), rows packed into uint64 words."""

    __slots__ = ("rows", "cols", "words", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        self.words = (cols + 63) >> 6
        if data is None:
            self.data = np.zeros((rows, self.words), dtype=np.uint64)
        else:
            if data.shape != (rows, self.words):
                raise ValueError("packed data has wrong shape")
            self.data = data

    # -- construction -----------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> BitMatrix:
        return BitMatrix(rows, cols)

    @staticmethod
    def identity(n: int) -> BitMatrix:
        m = BitMatrix(n, n)
        for i in range(n):
            m.data[i, i >> 6] |= _U1 << np.uint64(i & 63)
        return m

    @staticmethod
    def from_dense(arr) -> BitMatrix:
        arr = np.asarray(arr, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        rows, cols = arr.shape
        m = BitMatrix(rows, cols)
        if rows and cols:
            padded = np.zeros((rows, m.words * 64), dtype=np.uint8)
            padded[:, :cols] = arr
            packed = np.packbits(padded, axis=1, bitorder="little")
            m.data = packed.view(np.uint64).reshape(rows, m.words).copy()
        return m

    def to_dense(self) -> np.ndarray:
        if self.rows == 0 or self.cols == 0:
            return np.zeros((self.rows, self.cols), dtype=np.uint8)
        as_bytes = self.data.reshape(self.rows, self.words).view(np.uint8)
        bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    def copy(self) -> BitMatrix:
        return BitMatrix(self.rows, self.cols, self.data.copy())

    # -- element access ----------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return int((self.data[i, j >> 6] >> np.uint64(j & 63)) & _U1)

    def set(self, i: int, j: int, value: int) -> None:
        mask = _U1 << np.uint64(j & 63)
        if value & 1:
            self.data[i, j >> 6] |= mask
        else:
            self.data[i, j >> 6] &= ~mask

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i].copy())

    def is_zero(self) -> bool:
        return not self.data.any()

    def nnz(self) -> int:
        return int(np.bitwise_count(self.data).sum())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        raise TypeError("BitMatrix is unhashable")

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


class BitVector:
    """A length-len vector over GF(2), packed into uint64 words."""

    __slots__ = ("len", "data")

    def __init__(self, length: int, data: np.ndarray | None = None):
        if length < 0:
            raise ValueError("negative length")
        self.len = length
        words = (length + 63) >> 6
        if data is None:
            self.data = np.zeros(words, dtype=np.uint64)
        else:
            if data.shape != (words,):
                raise ValueError("packed data has wrong shape")
            self.data = data

    @staticmethod
    def zeros(length: int) -> BitVector:
        return BitVector(length)

    @staticmethod
    def unit(length: int, index: int) -> BitVector:
        v = BitVector(length)
        v.set(index, 1)
        return v

    @staticmethod
    def from_dense(arr) -> BitVector:
        arr = np.asarray(arr, dtype=np.uint8).ravel() & 1
        v = BitVector(arr.size)
        if arr.size:
            padded = np.zeros(v.data.size * 64, dtype=np.uint8)
            padded[: arr.size] = arr
            v.data = np.packbits(padded, bitorder="little").view(np.uint64).copy()
        return v

    def to_dense(self) -> np.ndarray:
        if self.len == 0:
            return np.zeros(0, dtype=np.uint8)
        bits = np.unpackbits(self.data.view(np.uint8), bitorder="little")
        return bits[: self.len].copy()

    def copy(self) -> BitVector:
        return BitVector(self.len, self.data.copy())

    def get(self, j: int) -> int:
        return int((self.data[j >> 6] >> np.uint64(j & 63)) & _U1)

    def set(self, j: int, value: int) -> None:
        mask = _U1 << np.uint64(j & 63)
        if value & 1:
            self.data[j >> 6] |= mask
        else:
            self.data[j >> 6] &= ~mask

    def weight(self) -> int:
        return int(np.bitwise_count(self.data).sum())

    def support(self) -> list[int]:
        return np.nonzero(self.to_dense())[0].tolist()

    def dot(self, other: BitVector) -> int:
        if self.len != other.len:
            raise ValueError("length mismatch")
        return int(np.bitwise_count(self.data & other.data).sum()) & 1

    def is_zero(self) -> bool:
        return not self.data.any()

    def __xor__(self, other: BitVector) -> BitVector:
        if self.len != other.len:
            raise ValueError("length mismatch")
        return BitVector(self.len, self.data ^ other.data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.len == other.len
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        raise TypeError("BitVector is unhashable")

    def __repr__(self) -> str:
        return f"BitVector(len={self.len}, weight={self.weight()})"


# -- elimination ------------------------------------------------------------


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form and the (strictly increasing) pivot columns.

    Zero rows are kept at the bottom so the output shape equals the input's.
    """
    out = m.copy()
    if m.rows == 0 or m.cols == 0:
        return out, []
    pivots = np.empty(min(m.rows, m.cols), dtype=np.int64)
    r = _rref_inplace(out.data, m.rows, m.words, m.cols, pivots)
    return out, pivots[:r].tolist()


def rank(m: BitMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    work = m.data.copy()
    pivots = np.empty(min(m.rows, m.cols), dtype=np.int64)
    return _rref_inplace(work, m.rows, m.words, m.cols, pivots)


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the right null space {v : M v = 0}."""
    red, pivots = row_reduce(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = BitVector(m.cols)
        v.set(f, 1)
        for r, p in enumerate(pivots):
            if red.get(r, f):
                v.set(p, 1)
        basis.append(v)
    return basis


def in_row_space(m: BitMatrix, v: BitVector) -> bool:
    if v.len != m.cols:
        raise ValueError("length mismatch")
    red, pivots = row_reduce(m)
    if not pivots:
        return v.is_zero()
    work = v.copy()
    _reduce_against(red.data, np.asarray(pivots, dtype=np.int64), len(pivots), work.data, m.words)
    return work.is_zero()


def solve(m: BitMatrix, s: BitVector) -> BitVector | None:
    """Any particular solution of M x = s, or None when none exists."""
    if s.len != m.rows:
        raise ValueError("length mismatch")
    aug = hstack([m, _column(s)])
    red, pivots = row_reduce(aug)
    x = BitVector(m.cols)
    for r, p in enumerate(pivots):
        if p == m.cols:
            return None  # pivot in the augmented column: inconsistent
        if red.get(r, m.cols):
            x.set(p, 1)
    return x


def _column(v: BitVector) -> BitMatrix:
    m = BitMatrix(v.len, 1)
    for i in range(v.len):
        if v.get(i):
            m.set(i, 0, 1)
    return m


# -- products and reshaping ---------------------------------------------------


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    out = BitMatrix(a.rows, b.cols)
    if a.rows and a.cols and b.cols:
        out.data = _matmul_packed(a.data, a.rows, a.cols, b.data, b.words)
    return out


def matvec(m: BitMatrix, v: BitVector) -> BitVector:
    if m.cols != v.len:
        raise ValueError("shape mismatch")
    if m.rows == 0:
        return BitVector(0)
    parities = np.bitwise_count(m.data & v.data[None, :]).sum(axis=1) & 1
    return BitVector.from_dense(parities.astype(np.uint8))


def transpose(m: BitMatrix) -> BitMatrix:
    return BitMatrix.from_dense(m.to_dense().T)


def kron(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    dense = np.kron(a.to_dense(), b.to_dense())
    dense = dense.reshape(a.rows * b.rows, a.cols * b.cols)
    return BitMatrix.from_dense(dense)


def hstack(mats: list[BitMatrix]) -> BitMatrix:
    if not mats:
        raise ValueError("empty stack")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row count mismatch")
    dense = np.concatenate([m.to_dense() for m in mats], axis=1)
    return BitMatrix.from_dense(dense)


def vstack(mats: list[BitMatrix]) -> BitMatrix:
    if not mats:
        raise ValueError("empty stack")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column count mismatch")
    out = BitMatrix(sum(m.rows for m in mats), cols)
    r = 0
    for m in mats:
        out.data[r : r + m.rows] = m.data
        r += m.rows
    return out


# -- complements ---------------------------------------------------------------


def complement_unit_indices(subspace_gen: BitMatrix, ambient_dim: int) -> list[int]:
    """Indices i such that the unit vectors e_i complete the row space to the
    ambient space; each e_i lies outside the span of the rows and the earlier
    chosen units.  Pivot procedure on [generators; identity]."""
    if subspace_gen.cols != ambient_dim:
        raise ValueError("generator width != ambient dimension")
    red, pivots = row_reduce(subspace_gen)
    base_rank = len(pivots)
    if base_rank == ambient_dim:
        return []
    rref = np.zeros((ambient_dim, red.words), dtype=np.uint64) if red.words else np.zeros((ambient_dim, 0), dtype=np.uint64)
    rref[:base_rank] = red.data[:base_rank]
    piv = np.zeros(ambient_dim, dtype=np.int64)
    piv[:base_rank] = pivots
    nref = base_rank
    chosen: list[int] = []
    for i in range(ambient_dim):
        v = BitVector.unit(ambient_dim, i)
        _reduce_against(rref, piv, nref, v.data, red.words)
        if v.is_zero():
            continue
        chosen.append(i)
        lead = int(v.support()[0])
        rref[nref] = v.data
        piv[nref] = lead
        nref += 1
        if nref == ambient_dim:
            break
    return chosen


def complement_min_weight(subspace_gen: BitMatrix, ambient_dim: int) -> int:
    """Minimum weight over the ambient space minus the row space of the
    generators; equals 1 for every proper subspace (weight-1 witnesses exist
    at the complement pivot indices)."""
    idxs = complement_unit_indices(subspace_gen, ambient_dim)
    if not idxs:
        raise ValueError("no complement: subspace equals the ambient space")
    return 1


# -- text formats ---------------------------------------------------------------


def matrix_to_text(m: BitMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    dense = m.to_dense()
    for i in range(m.rows):
        lines.append("".join("1" if b else "0" for b in dense[i]))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> BitMatrix:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("matrix header must be 'rows cols'")
    rows, cols = int(header[0]), int(header[1])
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for i, ln in enumerate(lines[1:]):
        ln = ln.strip()
        if len(ln) != cols or set(ln) - {"0", "1"}:
            raise ValueError(f"bad row {i}: expected {cols} characters of 0/1")
        dense[i] = [c == "1" for c in ln]
    return BitMatrix.from_dense(dense)


def matrix_to_coords(m: BitMatrix) -> str:
    dense = m.to_dense()
    rr, cc = np.nonzero(dense)
    lines = [f"{m.rows} {m.cols} {len(rr)}"]
    for r, c in zip(rr.tolist(), cc.tolist()):
        lines.append(f"{r} {c}")
    return "\n".join(lines) + "\n"


def matrix_from_coords(text: str) -> BitMatrix:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty coordinate text")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError("coordinate header must be 'rows cols nnz'")
    rows, cols, nnz = (int(x) for x in header)
    if len(lines) - 1 != nnz:
        raise ValueError(f"expected {nnz} entries, found {len(lines) - 1}")
    m = BitMatrix(rows, cols)
    for ln in lines[1:]:
        r, c = (int(x) for x in ln.split())
        m.set(r, c, 1)
    return m
