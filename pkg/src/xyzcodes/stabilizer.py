"""General stabilizer codes in symplectic (x|z) representation.

Paulis are sign-free: an n-qubit operator is a pair of bit vectors
(xbits, zbits), with Y = both bits set.  A code is a pair of m x n binary
matrices (Hx, Hz) whose rows are the stabilizer generators; generators i, j
commute iff row i of Hx . row j of Hz + row i of Hz . row j of Hx = 0.
Dependent generator rows are legal (they shape the Tanner graph) and are
excluded from the code dimension via the binary rank of [Hx | Hz].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .css import CssCode
from .gf2 import BitMatrix, BitVector


@dataclass(frozen=True)
class PauliError:
    """An n-qubit Pauli: qubit q carries X/Z/Y per (xbits[q], zbits[q])."""

    n: int
    xbits: BitVector
    zbits: BitVector

    def __post_init__(self):
        if self.xbits.len != self.n or self.zbits.len != self.n:
            raise ValueError("bit vectors must have length n")

    @staticmethod
    def identity(n: int) -> PauliError:
        return PauliError(n, BitVector.zeros(n), BitVector.zeros(n))

    @staticmethod
    def single(n: int, qubit: int, pauli: str) -> PauliError:
        e = PauliError(n, BitVector.zeros(n), BitVector.zeros(n))
        if pauli in ("X", "Y"):
            e.xbits.set(qubit, 1)
        if pauli in ("Z", "Y"):
            e.zbits.set(qubit, 1)
        if pauli not in ("X", "Y", "Z", "I"):
            raise ValueError(f"unknown Pauli {pauli!r}")
        return e

    @staticmethod
    def from_symplectic(v: BitVector) -> PauliError:
        """Unpack a length-2n (x-part | z-part) vector."""
        if v.len % 2:
            raise ValueError("symplectic vector must have even length")
        n = v.len // 2
        dense = v.to_dense()
        return PauliError(
            n, BitVector.from_dense(dense[:n]), BitVector.from_dense(dense[n:])
        )

    def to_symplectic(self) -> BitVector:
        return BitVector.from_dense(
            np.concatenate([self.xbits.to_dense(), self.zbits.to_dense()])
        )

    def weight(self) -> int:
        return int(
            np.bitwise_count(self.xbits.data | self.zbits.data).sum()
        )

    def compose(self, other: PauliError) -> PauliError:
        """Product (sign-free): XOR of both bit layers."""
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        return PauliError(self.n, self.xbits ^ other.xbits, self.zbits ^ other.zbits)

    def commutes_with(self, other: PauliError) -> bool:
        return (self.xbits.dot(other.zbits) ^ self.zbits.dot(other.xbits)) == 0

    def pauli_string(self) -> str:
        x = self.xbits.to_dense()
        z = self.zbits.to_dense()
        return "".join("IXZY"[int(a) + 2 * int(b)] for a, b in zip(x, z))


@dataclass(frozen=True)
class StabilizerCode:
    """Symplectic check matrix (Hx | Hz) plus block metadata."""

    n: int
    hx: BitMatrix
    hz: BitMatrix
    qubit_blocks: dict[str, int] = field(default_factory=dict)
    check_blocks: dict[str, int] = field(default_factory=dict)
    family_tag: str = ""

    def __post_init__(self):
        if self.hx.cols != self.n or self.hz.cols != self.n:
            raise ValueError("check matrices must have n columns")
        if self.hx.rows != self.hz.rows:
            raise ValueError("Hx and Hz must have the same row count")
        if self.qubit_blocks and sum(self.qubit_blocks.values()) != self.n:
            raise ValueError("qubit block sizes must sum to n")

    @property
    def num_checks(self) -> int:
        return self.hx.rows

    @staticmethod
    def from_css(code: CssCode, family_tag: str = "css") -> StabilizerCode:
        """Lift a CSS code: X rows then Z rows as mixed symplectic checks."""
        mx, mz = code.hx.rows, code.hz.rows
        hx = gf2.vstack([code.hx, BitMatrix.zeros(mz, code.n)])
        hz = gf2.vstack([BitMatrix.zeros(mx, code.n), code.hz])
        return StabilizerCode(
            n=code.n,
            hx=hx,
            hz=hz,
            check_blocks={"X": mx, "Z": mz},
            family_tag=family_tag,
        )

    def symplectic_matrix(self) -> BitMatrix:
        """[Hx | Hz] with rows the generators as (x|z) vectors."""
        return gf2.hstack([self.hx, self.hz])


def verify_commutation(code: StabilizerCode) -> bool:
    """True iff Hx Hz^T + Hz Hx^T = 0, i.e. all generator pairs commute."""
    a = gf2.matmul(code.hx, gf2.transpose(code.hz))
    b = gf2.matmul(code.hz, gf2.transpose(code.hx))
    return (a.data ^ b.data == 0).all()


def first_violating_pair(code: StabilizerCode) -> tuple[int, int] | None:
    """Lowest (i, j) with anticommuting generators, or None when Abelian."""
    a = gf2.matmul(code.hx, gf2.transpose(code.hz))
    b = gf2.matmul(code.hz, gf2.transpose(code.hx))
    bad = a.data ^ b.data
    if not bad.any():
        return None
    gram = BitMatrix(code.num_checks, code.num_checks, bad).to_dense()
    i, j = np.argwhere(gram)[0]
    return int(i), int(j)


def code_dimension(code: StabilizerCode) -> int:
    """k = n - rank [Hx | Hz].  Requires a commuting generator set."""
    if not verify_commutation(code):
        raise ValueError("stabilizer generators do not commute")
    return code.n - gf2.rank(code.symplectic_matrix())


def syndrome(code: StabilizerCode, e: PauliError) -> BitVector:
    """s = Hx . zbits + Hz . xbits (symplectic products against each row)."""
    if e.n != code.n:
        raise ValueError("error length mismatch")
    sx = gf2.matvec(code.hx, e.zbits)
    sz = gf2.matvec(code.hz, e.xbits)
    return sx ^ sz


def is_stabilizer(code: StabilizerCode, e: PauliError) -> bool:
    """True iff e (as an (x|z) vector) lies in the row space of [Hx | Hz]."""
    return gf2.in_row_space(code.symplectic_matrix(), e.to_symplectic())


class StabilizerMembership:
    """Row-space membership tests against one code, elimination done once."""

    def __init__(self, code: StabilizerCode):
        self.code = code
        sym = code.symplectic_matrix()
        red, pivots = gf2.row_reduce(sym)
        self.words = sym.words
        self.rref = (
            red.data[: len(pivots)].copy()
            if pivots
            else np.zeros((0, self.words), dtype=np.uint64)
        )
        self.pivots = np.asarray(pivots, dtype=np.int64)

    def contains(self, e: PauliError) -> bool:
        vec = e.to_symplectic()
        if len(self.pivots):
            gf2._reduce_against(self.rref, self.pivots, len(self.pivots), vec.data, self.words)
        return vec.is_zero()


def is_logical(code: StabilizerCode, e: PauliError) -> bool:
    return syndrome(code, e).is_zero() and not is_stabilizer(code, e)


@dataclass
class LogicalBasis:
    """k anticommuting pairs; pair i is (Xbar_i, Zbar_i)."""

    pairs: list[tuple[PauliError, PauliError]]

    def __len__(self) -> int:
        return len(self.pairs)

    def all_operators(self) -> list[PauliError]:
        out = []
        for x, z in self.pairs:
            out.append(x)
            out.append(z)
        return out


def validate_logical_basis(code: StabilizerCode, basis: LogicalBasis) -> None:
    """Raise unless the basis satisfies all LogicalBasis invariants."""
    ops = basis.all_operators()
    for idx, op in enumerate(ops):
        if not syndrome(code, op).is_zero():
            raise ValueError(f"basis operator {idx} anticommutes with a stabilizer")
        if is_stabilizer(code, op):
            raise ValueError(f"basis operator {idx} lies in the stabilizer group")
    for i, (xi, zi) in enumerate(basis.pairs):
        for j, (xj, zj) in enumerate(basis.pairs):
            want = 1 if i == j else 0
            if (xi.xbits.dot(zj.zbits) ^ xi.zbits.dot(zj.xbits)) != want:
                raise ValueError(f"bad X{i}/Z{j} pairing")
            if i < j and not xi.commutes_with(xj):
                raise ValueError(f"X{i} and X{j} anticommute")
            if i < j and not zi.commutes_with(zj):
                raise ValueError(f"Z{i} and Z{j} anticommute")


def _symplectic_product_cols(v: BitVector, n: int) -> BitVector:
    """Swap the x and z halves so that plain dot = symplectic product."""
    dense = v.to_dense()
    return BitVector.from_dense(np.concatenate([dense[n:], dense[:n]]))


def extract_logical_basis(code: StabilizerCode) -> LogicalBasis:
    """Symplectic Gram-Schmidt completion of the stabilizer row space.

    Centralizer vectors are the kernel of [Hz | Hx] acting on (x|z); the
    basis pairs are representatives of centralizer / stabilizer, paired and
    orthogonalized so the pairing matrix is the identity.
    """
    if not verify_commutation(code):
        raise ValueError("stabilizer generators do not commute")
    n = code.n
    swapped = gf2.hstack([code.hz, code.hx])
    central = gf2.kernel_basis(swapped)

    stab = code.symplectic_matrix()
    red, pivots = gf2.row_reduce(stab)
    accum_rows = [red.data[i] for i in range(len(pivots))]
    accum_piv = list(pivots)
    reps: list[BitVector] = []
    for v in central:
        w = v.copy()
        if accum_piv:
            gf2._reduce_against(
                np.asarray(accum_rows, dtype=np.uint64),
                np.asarray(accum_piv, dtype=np.int64),
                len(accum_piv),
                w.data,
                w.data.size,
            )
        if w.is_zero():
            continue
        reps.append(v.copy())
        lead = w.support()[0]
        accum_rows.append(w.data)
        accum_piv.append(lead)

    def sprod(a: BitVector, b: BitVector) -> int:
        return a.dot(_symplectic_product_cols(b, n))

    pairs: list[tuple[PauliError, PauliError]] = []
    pool = reps
    while pool:
        a = pool.pop(0)
        partner = None
        for idx, b in enumerate(pool):
            if sprod(a, b):
                partner = idx
                break
        if partner is None:
            raise RuntimeError("nondegenerate pairing not found; inconsistent input")
        b = pool.pop(partner)
        cleaned = []
        for c in pool:
            if sprod(c, b):
                c = c ^ a
            if sprod(c, a):
                c = c ^ b
            cleaned.append(c)
        pool = cleaned
        pairs.append((PauliError.from_symplectic(a), PauliError.from_symplectic(b)))
    return LogicalBasis(pairs=pairs)


# -- serialization -------------------------------------------------------------


def stabilizer_to_text(code: StabilizerCode) -> str:
    header = json.dumps(
        {
            "n": code.n,
            "qubit_blocks": code.qubit_blocks,
            "check_blocks": code.check_blocks,
            "family_tag": code.family_tag,
        }
    )
    return (
        header
        + "\nHx\n"
        + gf2.matrix_to_text(code.hx)
        + "Hz\n"
        + gf2.matrix_to_text(code.hz)
    )


def stabilizer_from_text(text: str) -> StabilizerCode:
    lines = text.strip().splitlines()
    if not lines:
        raise ValueError("empty stabilizer text")
    meta = json.loads(lines[0])
    body = lines[1:]
    try:
        ix = body.index("Hx")
        iz = body.index("Hz")
    except ValueError as exc:
        raise ValueError("expected 'Hx' and 'Hz' block labels") from exc
    hx = gf2.matrix_from_text("\n".join(body[ix + 1 : iz]))
    hz = gf2.matrix_from_text("\n".join(body[iz + 1 :]))
    return StabilizerCode(
        n=int(meta["n"]),
        hx=hx,
        hz=hz,
        qubit_blocks={str(k): int(v) for k, v in meta.get("qubit_blocks", {}).items()},
        check_blocks={str(k): int(v) for k, v in meta.get("check_blocks", {}).items()},
        family_tag=str(meta.get("family_tag", "")),
    )
