"""Independent single-qubit Pauli noise with tunable Z bias.

Each qubit independently suffers I, X, Y, Z with probabilities
(1 - p, px, py, pz).  The Z bias is eta = pz / (px + py); eta = 0.5 is
depolarizing and eta = inf is pure Z.  The X/Y split is fixed symmetric
(px = py), the convention consistent with the depolarizing endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf2 import BitVector
from .stabilizer import PauliError


@dataclass(frozen=True)
class NoiseModel:
    px: float
    py: float
    pz: float

    def __post_init__(self):
        if min(self.px, self.py, self.pz) < 0:
            raise ValueError("negative Pauli probability")
        if self.p > 1 + 1e-12:
            raise ValueError("px + py + pz > 1")

    @property
    def p(self) -> float:
        return self.px + self.py + self.pz

    @property
    def eta(self) -> float:
        denom = self.px + self.py
        if denom == 0:
            return math.inf
        return self.pz / denom


def from_bias(p: float, eta: float) -> NoiseModel:
    """Total error rate p with Z-bias eta: pz = p eta/(1+eta), px = py."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if math.isinf(eta):
        return NoiseModel(0.0, 0.0, p)
    if eta <= 0:
        raise ValueError(f"eta must be positive or inf, got {eta}")
    pz = p * eta / (1 + eta)
    pxy = p / (2 * (1 + eta))
    return NoiseModel(pxy, pxy, pz)


def depolarizing(p: float) -> NoiseModel:
    return from_bias(p, 0.5)


def pure(pauli: str, p: float) -> NoiseModel:
    """All error mass on one Pauli type."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if pauli == "X":
        return NoiseModel(p, 0.0, 0.0)
    if pauli == "Y":
        return NoiseModel(0.0, p, 0.0)
    if pauli == "Z":
        return NoiseModel(0.0, 0.0, p)
    raise ValueError(f"pauli must be X, Y or Z, got {pauli!r}")


def sample(model: NoiseModel, n: int, rng: np.random.Generator) -> PauliError:
    """Draw one i.i.d. Pauli error on n qubits."""
    u = rng.random(n)
    x = u < model.px
    y = (u >= model.px) & (u < model.px + model.py)
    z = (u >= model.px + model.py) & (u < model.p)
    return PauliError(
        n,
        BitVector.from_dense((x | y).astype(np.uint8)),
        BitVector.from_dense((z | y).astype(np.uint8)),
    )
