"""FDBP-OSD-0: fully decoupled binary BP with order-0 OSD post-processing.

The decoder works on the fully decoupled Tanner graph: 3n binary variables
(one indicator per Pauli type per qubit, X block then Y block then Z block)
and one check per stabilizer generator.  A check is adjacent to exactly the
indicators that anticommute with its Pauli on that qubit, which column-wise
is [Hz | Hx^Hz | Hx]; flipping variable v flips precisely the checks
adjacent to v.  Each indicator carries its own prior (px, py, pz) and the
one-Pauli-per-qubit constraint is dropped (that is what "fully decoupled"
buys: Y errors keep their full prior mass instead of being split into
independent x/z marginals, which restores the X/Y/Z symmetry of codes like
the Chamon family).  A hard assignment (x, y, z) maps back to a Pauli as
(xbits, zbits) = (x^y, y^z); the map is linear and syndrome-preserving.
Message passing is normalized min-sum on a flooding schedule.  When BP fails
to converge, OSD-0 sorts variables by descending error likelihood from the
BP posteriors, eliminates the check matrix onto that column order, and
solves exactly, so the returned estimate always satisfies the syndrome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .gf2 import BitVector
from .noise import NoiseModel
from .stabilizer import PauliError, StabilizerCode

PRIOR_FLOOR = 1e-12


@dataclass(frozen=True)
class DecoderConfig:
    max_iterations: int = 32
    ms_scale: float = 0.5
    osd_enabled: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0 < self.ms_scale <= 1:
            raise ValueError("ms_scale must be in (0, 1]")


class TannerGraph:
    """Check-major adjacency of [Hz | Hx^Hz | Hx] plus packed columns for OSD."""

    def __init__(self, code: StabilizerCode):
        self.n = code.n
        hz = code.hz.to_dense()
        hx = code.hx.to_dense()
        h = np.concatenate([hz, hx ^ hz, hx], axis=1).astype(np.uint8)
        self.check_count, self.var_count = h.shape
        indptr = [0]
        indices: list[int] = []
        for row in h:
            cols = np.nonzero(row)[0]
            indices.extend(cols.tolist())
            indptr.append(len(indices))
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        # Columns packed over the check bits, for OSD elimination.
        self.m_words = (self.check_count + 63) >> 6
        cols = np.zeros((self.var_count, max(self.m_words, 1)), dtype=np.uint64)
        for c in range(self.check_count):
            w, b = c >> 6, np.uint64(c & 63)
            for v in self.indices[self.indptr[c] : self.indptr[c + 1]]:
                cols[v, w] |= np.uint64(1) << b
        self.col_words = cols
        self.rank = int(_packed_rank(cols.copy(), self.var_count, self.m_words))


@njit(cache=True)
def _packed_rank(cols, ncols, words):
    """Rank of the column set (each entry a packed bit-column)."""
    rank = 0
    pivot_rows = np.empty(ncols, dtype=np.int64)
    for j in range(ncols):
        vec = cols[j]
        for p in range(rank):
            r = pivot_rows[p]
            if (vec[r >> 6] >> np.uint64(r & 63)) & np.uint64(1):
                for k in range(words):
                    vec[k] ^= cols[p, k]
        lead = -1
        for k in range(words):
            if vec[k] != 0:
                for b in range(64):
                    if (vec[k] >> np.uint64(b)) & np.uint64(1):
                        lead = (k << 6) + b
                        break
                break
        if lead >= 0:
            for k in range(words):
                cols[rank, k] = vec[k]
            pivot_rows[rank] = lead
            rank += 1
    return rank


@njit(cache=True)
def _bp_min_sum(indptr, indices, var_count, syndrome, lam, scale, max_iter):
    """Flooding normalized min-sum; returns (hard, converged, posterior)."""
    n_edges = indices.shape[0]
    n_checks = indptr.shape[0] - 1
    m_c2v = np.zeros(n_edges, dtype=np.float64)
    mu = np.empty(n_edges, dtype=np.float64)
    post = np.empty(var_count, dtype=np.float64)
    hard = np.zeros(var_count, dtype=np.uint8)
    converged = False
    for _ in range(max_iter):
        # variable side: totals, then extrinsic messages per edge
        for v in range(var_count):
            post[v] = lam[v]
        for e in range(n_edges):
            post[indices[e]] += m_c2v[e]
        for e in range(n_edges):
            mu[e] = post[indices[e]] - m_c2v[e]
        # check side: signs and two smallest magnitudes per check
        for c in range(n_checks):
            lo, hi = indptr[c], indptr[c + 1]
            sign = 1.0 if syndrome[c] == 0 else -1.0
            min1 = 1e300
            min2 = 1e300
            argmin = -1
            for e in range(lo, hi):
                m = mu[e]
                if m < 0:
                    sign = -sign
                    m = -m
                if m < min1:
                    min2 = min1
                    min1 = m
                    argmin = e
                elif m < min2:
                    min2 = m
            for e in range(lo, hi):
                m = mu[e]
                s = sign if m >= 0 else -sign
                mag = min2 if e == argmin else min1
                m_c2v[e] = s * scale * mag
        # posteriors and hard decision
        for v in range(var_count):
            post[v] = lam[v]
        for e in range(n_edges):
            post[indices[e]] += m_c2v[e]
        for v in range(var_count):
            hard[v] = 1 if post[v] < 0 else 0
        ok = True
        for c in range(n_checks):
            parity = 0
            for e in range(indptr[c], indptr[c + 1]):
                parity ^= hard[indices[e]]
            if parity != syndrome[c]:
                ok = False
                break
        if ok:
            converged = True
            break
    return hard, converged, post


@njit(cache=True)
def _osd0(col_words, words, order, synd_words, rank):
    """Greedy column elimination in the given order; exact solve.

    Each retained pivot stores both its reduced column and the combination
    of original columns it stands for, so the solution is expressed in the
    original columns.  Returns (estimate, ok); ok is False when the syndrome
    is outside the column space (impossible for sampled-error syndromes).
    """
    ncols = order.shape[0]
    comb_words = ((rank + 63) >> 6) if rank > 0 else 1
    piv_vecs = np.zeros((rank, words), dtype=np.uint64)
    piv_combs = np.zeros((rank, comb_words), dtype=np.uint64)
    piv_rows = np.empty(rank, dtype=np.int64)
    piv_cols = np.empty(rank, dtype=np.int64)
    npiv = 0
    vec = np.empty(words, dtype=np.uint64)
    comb = np.empty(comb_words, dtype=np.uint64)
    for oi in range(ncols):
        if npiv == rank:
            break
        j = order[oi]
        for k in range(words):
            vec[k] = col_words[j, k]
        for k in range(comb_words):
            comb[k] = 0
        for p in range(npiv):
            r = piv_rows[p]
            if (vec[r >> 6] >> np.uint64(r & 63)) & np.uint64(1):
                for k in range(words):
                    vec[k] ^= piv_vecs[p, k]
                for k in range(comb_words):
                    comb[k] ^= piv_combs[p, k]
        lead = -1
        for k in range(words):
            if vec[k] != 0:
                for b in range(64):
                    if (vec[k] >> np.uint64(b)) & np.uint64(1):
                        lead = (k << 6) + b
                        break
                break
        if lead >= 0:
            for k in range(words):
                piv_vecs[npiv, k] = vec[k]
            for k in range(comb_words):
                piv_combs[npiv, k] = comb[k]
            piv_combs[npiv, npiv >> 6] ^= np.uint64(1) << np.uint64(npiv & 63)
            piv_rows[npiv] = lead
            piv_cols[npiv] = j
            npiv += 1
    est = np.zeros(ncols, dtype=np.uint8)
    s_red = synd_words.copy()
    sol = np.zeros(comb_words, dtype=np.uint64)
    for p in range(npiv):
        r = piv_rows[p]
        if (s_red[r >> 6] >> np.uint64(r & 63)) & np.uint64(1):
            for k in range(words):
                s_red[k] ^= piv_vecs[p, k]
            for k in range(comb_words):
                sol[k] ^= piv_combs[p, k]
    ok = True
    for k in range(words):
        if s_red[k] != 0:
            ok = False
            break
    if ok:
        for p in range(npiv):
            if (sol[p >> 6] >> np.uint64(p & 63)) & np.uint64(1):
                est[piv_cols[p]] = 1
    return est, ok


def priors(model: NoiseModel, n: int) -> np.ndarray:
    """Per-indicator priors (px, py, pz blocks), floored away from 0 and 1."""
    out = np.empty(3 * n, dtype=np.float64)
    out[:n] = model.px
    out[n : 2 * n] = model.py
    out[2 * n :] = model.pz
    return np.clip(out, PRIOR_FLOOR, 1 - PRIOR_FLOOR)


class Decoder:
    """Reusable decoder instance for one (code, model, config) triple."""

    def __init__(
        self,
        code: StabilizerCode,
        model: NoiseModel,
        config: DecoderConfig = DecoderConfig(),
        graph: TannerGraph | None = None,
    ):
        self.code = code
        self.config = config
        self.graph = graph if graph is not None else TannerGraph(code)
        self.prior_probs = priors(model, code.n)
        self.lam = np.log((1 - self.prior_probs) / self.prior_probs)

    def decode_bits(self, syndrome_bits: np.ndarray) -> tuple[np.ndarray, bool, bool]:
        """Decode a syndrome (uint8 array); returns (estimate, converged, used_osd)."""
        g = self.graph
        hard, converged, post = _bp_min_sum(
            g.indptr,
            g.indices,
            g.var_count,
            syndrome_bits.astype(np.uint8),
            self.lam,
            self.config.ms_scale,
            self.config.max_iterations,
        )
        if converged or not self.config.osd_enabled:
            return hard, converged, False
        # Descending error likelihood = ascending posterior LLR; stable on ties.
        order = np.argsort(post, kind="stable")
        synd_words = _pack_bits(syndrome_bits, g.m_words)
        est, ok = _osd0(g.col_words, g.m_words, order, synd_words, g.rank)
        if not ok:
            raise ValueError("syndrome outside the image of the check matrix")
        return est, converged, True

    def decode(self, syndrome: BitVector) -> PauliError:
        est, _, _ = self.decode_bits(syndrome.to_dense())
        return vars_to_pauli(est, self.code.n)


def _pack_bits(bits: np.ndarray, words: int) -> np.ndarray:
    padded = np.zeros(words * 64, dtype=np.uint8)
    padded[: bits.shape[0]] = bits
    return np.packbits(padded, bitorder="little").view(np.uint64).copy()


def vars_to_pauli(est: np.ndarray, n: int) -> PauliError:
    """Map a 3n indicator assignment (x, y, z blocks) to a Pauli error."""
    x = est[:n] ^ est[n : 2 * n]
    z = est[n : 2 * n] ^ est[2 * n :]
    return PauliError(n, BitVector.from_dense(x), BitVector.from_dense(z))


def bp_decode(
    graph: TannerGraph,
    syndrome: BitVector,
    prior_probs: np.ndarray,
    config: DecoderConfig = DecoderConfig(),
) -> tuple[BitVector, bool, np.ndarray]:
    """One BP run; returns (hard estimate, converged, posterior LLRs)."""
    lam = np.log((1 - prior_probs) / prior_probs)
    hard, converged, post = _bp_min_sum(
        graph.indptr,
        graph.indices,
        graph.var_count,
        syndrome.to_dense().astype(np.uint8),
        lam,
        config.ms_scale,
        config.max_iterations,
    )
    return BitVector.from_dense(hard), converged, post


def osd0(graph: TannerGraph, syndrome: BitVector, reliabilities: np.ndarray) -> BitVector:
    """Order-0 OSD on BP posteriors; output always satisfies the syndrome."""
    order = np.argsort(reliabilities, kind="stable")
    synd_words = _pack_bits(syndrome.to_dense(), graph.m_words)
    est, ok = _osd0(graph.col_words, graph.m_words, order, synd_words, graph.rank)
    if not ok:
        raise ValueError("syndrome outside the image of the check matrix")
    return BitVector.from_dense(est)


def decode(
    code: StabilizerCode,
    syndrome: BitVector,
    model: NoiseModel,
    config: DecoderConfig = DecoderConfig(),
) -> PauliError:
    """BP first; on non-convergence, OSD-0 over the BP reliabilities."""
    return Decoder(code, model, config).decode(syndrome)
