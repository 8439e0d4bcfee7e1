"""CSS codes: hypergraph products, repetition concatenations, 2D toric codes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .classical import OPEN, PERIODIC, repetition_check
from .gf2 import BitMatrix


@dataclass(frozen=True)
class CssCode:
    """A CSS code given by X- and Z-type parity checks with Hx Hz^T = 0."""

    hx: BitMatrix
    hz: BitMatrix

    def __post_init__(self):
        if self.hx.cols != self.hz.cols:
            raise ValueError(
                f"Hx has {self.hx.cols} columns but Hz has {self.hz.cols}"
            )
        if not gf2.matmul(self.hx, gf2.transpose(self.hz)).is_zero():
            raise ValueError("Hx Hz^T != 0: not a CSS code")

    @property
    def n(self) -> int:
        return self.hx.cols

    def dimension(self) -> int:
        """Number of logical qubits, n - rank(Hx) - rank(Hz)."""
        return self.n - gf2.rank(self.hx) - gf2.rank(self.hz)


def hypergraph_product(h1: BitMatrix, h2: BitMatrix) -> CssCode:
    """Hypergraph product of two classical checks.

    Qubits are ordered left block first (n1*n2 "A" qubits, row-major over
    (i1, i2)), then the m1*m2 "B" block.  With that ordering:

        Hx = [I_n1 (x) H2   | H1^T (x) I_m2]
        Hz = [H1 (x) I_n2   | I_m1 (x) H2^T]
    """
    n1, n2 = h1.cols, h2.cols
    m1, m2 = h1.rows, h2.rows
    hx = gf2.hstack(
        [gf2.kron(BitMatrix.identity(n1), h2), gf2.kron(gf2.transpose(h1), BitMatrix.identity(m2))]
    )
    hz = gf2.hstack(
        [gf2.kron(h1, BitMatrix.identity(n2)), gf2.kron(BitMatrix.identity(m1), gf2.transpose(h2))]
    )
    return CssCode(hx=hx, hz=hz)


def toric_2d(j: int, k: int) -> CssCode:
    """2D toric code on a j x k lattice: hypergraph product of periodic checks."""
    if j < 2 or k < 2:
        raise ValueError("toric lattice needs j, k >= 2")
    return hypergraph_product(
        repetition_check(j, PERIODIC).matrix, repetition_check(k, PERIODIC).matrix
    )


def concatenated_rep(n1: int, n2: int) -> CssCode:
    """Concatenation of repetition codes: outer length n1, inner length n2.

    X checks compare adjacent inner blocks (n1-1 rows of weight 2n2); Z checks
    are n1 block-diagonal copies of the inner open repetition check.  At
    (3, 3) this is the 9-qubit code.
    """
    if n1 < 3 or n2 < 3 or n1 % 2 == 0 or n2 % 2 == 0:
        raise ValueError(f"concatenated lengths must be odd and >= 3, got ({n1}, {n2})")
    h_outer = repetition_check(n1, OPEN).matrix
    h_inner = repetition_check(n2, OPEN).matrix
    ones_row = BitMatrix.from_dense(np.ones((1, n2), dtype=np.uint8))
    hx = gf2.kron(h_outer, ones_row)
    hz = gf2.kron(BitMatrix.identity(n1), h_inner)
    return CssCode(hx=hx, hz=hz)


def y_undetectable_dim(code: CssCode) -> int:
    """dim ker [Hx; Hz]: count of independent Y-type stabilizers + logicals."""
    return len(gf2.kernel_basis(gf2.vstack([code.hx, code.hz])))


# -- serialization -------------------------------------------------------------


def css_to_text(code: CssCode) -> str:
    return "Hx\n" + gf2.matrix_to_text(code.hx) + "Hz\n" + gf2.matrix_to_text(code.hz)


def css_from_text(text: str) -> CssCode:
    lines = text.strip().splitlines()
    try:
        ix = lines.index("Hx")
        iz = lines.index("Hz")
    except ValueError as exc:
        raise ValueError("expected 'Hx' and 'Hz' block labels") from exc
    hx = gf2.matrix_from_text("\n".join(lines[ix + 1 : iz]))
    hz = gf2.matrix_from_text("\n".join(lines[iz + 1 :]))
    return CssCode(hx=hx, hz=hz)
