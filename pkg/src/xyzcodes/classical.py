"""Classical repetition-code parity checks, the seeds of every product."""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix

OPEN = "open"
PERIODIC = "periodic"


@dataclass(frozen=True)
class RepetitionCheck:
    """Parity-check matrix of a length-n repetition code.

    Open boundary: (n-1) x n, row i checks bits i, i+1.
    Periodic boundary: n x n circulant, row i checks bits i, (i+1) mod n.
    Both have rank n-1 and kernel spanned by the all-ones word.
    """

    n: int
    boundary: str
    matrix: BitMatrix


def repetition_check(n: int, boundary: str) -> RepetitionCheck:
    if n < 2:
        raise ValueError(f"repetition code needs length >= 2, got {n}")
    if boundary == OPEN:
        m = BitMatrix(n - 1, n)
        for i in range(n - 1):
            m.set(i, i, 1)
            m.set(i, i + 1, 1)
    elif boundary == PERIODIC:
        m = BitMatrix(n, n)
        for i in range(n):
            m.set(i, i, 1)
            m.set(i, (i + 1) % n, 1)
    else:
        raise ValueError(f"boundary must be '{OPEN}' or '{PERIODIC}', got {boundary!r}")
    return RepetitionCheck(n=n, boundary=boundary, matrix=m)
