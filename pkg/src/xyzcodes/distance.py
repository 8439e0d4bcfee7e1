"""Exact small-weight distance search and randomized distance estimation.

exact_distance runs a depth-limited search over error supports: the root
qubit is the smallest index in the support, and every extension covers the
lowest-index currently-firing check (any zero-syndrome proper subset of a
minimum-weight logical would split it into two lighter zero-syndrome pieces,
one of them logical, so minimum-weight logicals are always reachable under
this rule).  Candidates with zero syndrome are kept only when they fall
outside the stabilizer row space.

mc_distance descends from random GF(2) combinations of logical-basis
elements and stabilizer rows, greedily XOR-ing in any stabilizer row that
lowers the qubit weight; extra seed operators (e.g. the closed-form distance
witnesses) can be supplied so the estimate never exceeds a known bound.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import gf2
from .gf2 import BitVector
from .stabilizer import LogicalBasis, PauliError, StabilizerCode

_U1 = np.uint64(1)


@njit(cache=True, inline="always")
def _popcount_words(words):
    total = 0
    for w in words:
        x = w
        while x:
            x &= x - _U1
            total += 1
    return total


@njit(cache=True)
def _reduce_to_zero(vec, rref, pivots, nref, words):
    """True iff vec lies in the row space described by (rref, pivots)."""
    for r in range(nref):
        c = pivots[r]
        if (vec[c >> 6] >> np.uint64(c & 63)) & _U1:
            for k in range(words):
                vec[k] ^= rref[r, k]
    for k in range(words):
        if vec[k] != 0:
            return False
    return True


@njit(cache=True)
def _exact_search(
    w_target,
    n,
    m_words,
    scols,  # (n, 3, m_words) syndrome column per (qubit, pauli X/Y/Z)
    cptr,
    cqubits,  # check -> qubit support (pauli-support mode)
    v_words,
    rref,
    pivots,
    nref,
    max_col_checks,
    witness_out,
):
    """Find a logical of weight <= w_target; returns its weight or -1."""
    synd = np.zeros((w_target + 1, m_words), dtype=np.uint64)
    chosen_q = np.empty(w_target, dtype=np.int64)
    chosen_p = np.empty(w_target, dtype=np.int64)
    branch_check = np.empty(w_target, dtype=np.int64)
    branch_pos = np.empty(w_target, dtype=np.int64)
    cand = np.empty(v_words, dtype=np.uint64)

    for root_q in range(n):
        for root_p in range(3):
            depth = 1
            chosen_q[0] = root_q
            chosen_p[0] = root_p
            for k in range(m_words):
                synd[1, k] = scols[root_q, root_p, k]
            branch_pos[0] = -2  # sentinel: root level
            # set up branch iterator for depth 1
            while depth > 0:
                # examine current state
                s_is_zero = True
                for k in range(m_words):
                    if synd[depth, k] != 0:
                        s_is_zero = False
                        break
                advance = False
                if s_is_zero:
                    # candidate: build symplectic vector, test non-stabilizer
                    for k in range(v_words):
                        cand[k] = 0
                    for i in range(depth):
                        q = chosen_q[i]
                        p = chosen_p[i]
                        if p != 2:  # X or Y
                            cand[q >> 6] |= _U1 << np.uint64(q & 63)
                        if p != 0:  # Z or Y
                            j = n + q
                            cand[j >> 6] |= _U1 << np.uint64(j & 63)
                    if not _reduce_to_zero(cand, rref, pivots, nref, v_words):
                        for i in range(w_target):
                            witness_out[2 * i] = chosen_q[i] if i < depth else -1
                            witness_out[2 * i + 1] = chosen_p[i] if i < depth else -1
                        return depth
                    advance = True  # stabilizer dead end
                elif depth == w_target:
                    advance = True
                else:
                    fire = _popcount_words(synd[depth])
                    need = (fire + max_col_checks - 1) // max_col_checks
                    if depth + need > w_target:
                        advance = True
                if not advance:
                    # descend: branch over the lowest firing check's support
                    c = -1
                    for k in range(m_words):
                        if synd[depth, k] != 0:
                            w = synd[depth, k]
                            b = 0
                            while not ((w >> np.uint64(b)) & _U1):
                                b += 1
                            c = (k << 6) + b
                            break
                    branch_check[depth] = c
                    branch_pos[depth] = 0
                    found_child = False
                    lo, hi = cptr[c], cptr[c + 1]
                    pos = 0
                    total = (hi - lo) * 3
                    while pos < total:
                        q = cqubits[lo + pos // 3]
                        p = pos % 3
                        if q > chosen_q[0]:
                            dup = False
                            for i in range(depth):
                                if chosen_q[i] == q:
                                    dup = True
                                    break
                            if not dup:
                                # child must actually flip check c
                                if (scols[q, p, c >> 6] >> np.uint64(c & 63)) & _U1:
                                    chosen_q[depth] = q
                                    chosen_p[depth] = p
                                    for k in range(m_words):
                                        synd[depth + 1, k] = synd[depth, k] ^ scols[q, p, k]
                                    branch_pos[depth] = pos + 1
                                    depth += 1
                                    found_child = True
                                    break
                        pos += 1
                    if not found_child:
                        advance = True
                if advance:
                    # backtrack to a level with remaining branches
                    depth -= 1
                    while depth >= 1:
                        c = branch_check[depth]
                        lo, hi = cptr[c], cptr[c + 1]
                        total = (hi - lo) * 3
                        pos = branch_pos[depth]
                        stepped = False
                        while pos < total:
                            q = cqubits[lo + pos // 3]
                            p = pos % 3
                            if q > chosen_q[0]:
                                dup = False
                                for i in range(depth):
                                    if chosen_q[i] == q:
                                        dup = True
                                        break
                                if not dup:
                                    if (scols[q, p, c >> 6] >> np.uint64(c & 63)) & _U1:
                                        chosen_q[depth] = q
                                        chosen_p[depth] = p
                                        for k in range(m_words):
                                            synd[depth + 1, k] = synd[depth, k] ^ scols[q, p, k]
                                        branch_pos[depth] = pos + 1
                                        depth += 1
                                        stepped = True
                                        break
                            pos += 1
                        if stepped:
                            break
                        depth -= 1
    return -1


class _SearchContext:
    """Packed views of a code shared by the distance routines."""

    def __init__(self, code: StabilizerCode):
        self.code = code
        self.n = code.n
        hx = code.hx.to_dense()
        hz = code.hz.to_dense()
        m = hx.shape[0]
        self.m = m
        self.m_words = max((m + 63) >> 6, 1)
        # syndrome columns: X flips checks with hz bit, Z with hx, Y with either
        scols = np.zeros((self.n, 3, self.m_words), dtype=np.uint64)
        for q in range(self.n):
            colx = _pack(hz[:, q])
            colz = _pack(hx[:, q])
            scols[q, 0, : colx.size] = colx
            scols[q, 2, : colz.size] = colz
            scols[q, 1, : colx.size] = colx ^ colz
        self.scols = scols
        support = hx | hz
        cptr = [0]
        cqubits: list[int] = []
        for row in support:
            qs = np.nonzero(row)[0]
            cqubits.extend(qs.tolist())
            cptr.append(len(cqubits))
        self.cptr = np.asarray(cptr, dtype=np.int64)
        self.cqubits = np.asarray(cqubits, dtype=np.int64)
        self.max_col_checks = max(
            1, int(np.bitwise_count(scols).reshape(self.n, 3, -1).sum(axis=2).max())
        )
        sym = code.symplectic_matrix()
        red, pivots = gf2.row_reduce(sym)
        self.v_words = max(sym.words, 1)
        self.rref = red.data[: len(pivots)].copy() if pivots else np.zeros((0, self.v_words), dtype=np.uint64)
        self.pivots = np.asarray(pivots, dtype=np.int64)


def _pack(bits: np.ndarray) -> np.ndarray:
    padded = np.zeros(((bits.size + 63) >> 6) << 6, dtype=np.uint8)
    padded[: bits.size] = bits
    return np.packbits(padded, bitorder="little").view(np.uint64)


def exact_distance(
    code: StabilizerCode, w_max: int, return_witness: bool = False
) -> int | None | tuple[int | None, PauliError | None]:
    """Least weight in 1..w_max of a logical operator, or None if none exists.

    Exhaustive over all Pauli errors up to w_max (via the covering search);
    None therefore certifies that the distance exceeds w_max.
    """
    ctx = _SearchContext(code)
    witness = np.full(2 * max(w_max, 1), -1, dtype=np.int64)
    for w_target in range(1, w_max + 1):
        found = _exact_search(
            w_target,
            ctx.n,
            ctx.m_words,
            ctx.scols,
            ctx.cptr,
            ctx.cqubits,
            ctx.v_words,
            ctx.rref,
            ctx.pivots,
            len(ctx.pivots),
            ctx.max_col_checks,
            witness,
        )
        if found > 0:
            if not return_witness:
                return found
            op = PauliError.identity(code.n)
            for i in range(found):
                q, p = int(witness[2 * i]), int(witness[2 * i + 1])
                if p in (0, 1):
                    op.xbits.set(q, 1)
                if p in (1, 2):
                    op.zbits.set(q, 1)
            return found, op
    return (None, None) if return_witness else None


# -- randomized estimation ------------------------------------------------------


@njit(cache=True)
def _greedy_sweep(xw, zw, weight, row_word_ptr, row_word_idx, row_xvals, row_zvals, max_passes):
    m = row_word_ptr.shape[0] - 1
    for _ in range(max_passes):
        improved = False
        for r in range(m):
            lo, hi = row_word_ptr[r], row_word_ptr[r + 1]
            delta = 0
            for t in range(lo, hi):
                k = row_word_idx[t]
                old = xw[k] | zw[k]
                new = (xw[k] ^ row_xvals[t]) | (zw[k] ^ row_zvals[t])
                x = new
                while x:
                    x &= x - _U1
                    delta += 1
                x = old
                while x:
                    x &= x - _U1
                    delta -= 1
            if delta < 0:
                for t in range(lo, hi):
                    k = row_word_idx[t]
                    xw[k] ^= row_xvals[t]
                    zw[k] ^= row_zvals[t]
                weight += delta
                improved = True
        if not improved:
            break
    return weight


@njit(cache=True)
def _mc_kernel(
    restarts,
    seed,
    log_x,
    log_z,  # (2k, nw) packed logical ops
    row_word_ptr,
    row_word_idx,
    row_xvals,
    row_zvals,
    nw,
    best_x,
    best_z,
):
    np.random.seed(seed)
    n_logs = log_x.shape[0]
    best = np.int64(1 << 60)
    xw = np.empty(nw, dtype=np.uint64)
    zw = np.empty(nw, dtype=np.uint64)
    m = row_word_ptr.shape[0] - 1
    for _ in range(restarts):
        for k in range(nw):
            xw[k] = 0
            zw[k] = 0
        nonzero = False
        while not nonzero:
            for j in range(n_logs):
                if np.random.random() < 0.5:
                    nonzero = True
                    for k in range(nw):
                        xw[k] ^= log_x[j, k]
                        zw[k] ^= log_z[j, k]
        for r in range(m):
            if np.random.random() < 0.5:
                lo, hi = row_word_ptr[r], row_word_ptr[r + 1]
                for t in range(lo, hi):
                    k = row_word_idx[t]
                    xw[k] ^= row_xvals[t]
                    zw[k] ^= row_zvals[t]
        weight = 0
        for k in range(nw):
            x = xw[k] | zw[k]
            while x:
                x &= x - _U1
                weight += 1
        weight = _greedy_sweep(
            xw, zw, weight, row_word_ptr, row_word_idx, row_xvals, row_zvals, 32
        )
        if weight < best:
            best = weight
            for k in range(nw):
                best_x[k] = xw[k]
                best_z[k] = zw[k]
    return best


class _McContext:
    def __init__(self, code: StabilizerCode):
        self.code = code
        self.nw = max((code.n + 63) >> 6, 1)
        hx = code.hx.to_dense()
        hz = code.hz.to_dense()
        ptr = [0]
        idx: list[int] = []
        xvals: list[int] = []
        zvals: list[int] = []
        for r in range(hx.shape[0]):
            rx = _pack_to(hx[r], self.nw)
            rz = _pack_to(hz[r], self.nw)
            words = np.nonzero(rx | rz)[0]
            idx.extend(words.tolist())
            xvals.extend(rx[words].tolist())
            zvals.extend(rz[words].tolist())
            ptr.append(len(idx))
        self.row_word_ptr = np.asarray(ptr, dtype=np.int64)
        self.row_word_idx = np.asarray(idx, dtype=np.int64)
        self.row_xvals = np.asarray(xvals, dtype=np.uint64)
        self.row_zvals = np.asarray(zvals, dtype=np.uint64)


def _pack_to(bits: np.ndarray, words: int) -> np.ndarray:
    padded = np.zeros(words * 64, dtype=np.uint8)
    padded[: bits.size] = bits
    return np.packbits(padded, bitorder="little").view(np.uint64).copy()


def _sweep_single(ctx: _McContext, op: PauliError) -> tuple[int, np.ndarray, np.ndarray]:
    xw = _pack_to(op.xbits.to_dense(), ctx.nw)
    zw = _pack_to(op.zbits.to_dense(), ctx.nw)
    weight = int(np.bitwise_count(xw | zw).sum())
    weight = int(
        _greedy_sweep(
            xw,
            zw,
            weight,
            ctx.row_word_ptr,
            ctx.row_word_idx,
            ctx.row_xvals,
            ctx.row_zvals,
            32,
        )
    )
    return weight, xw, zw


def mc_distance(
    code: StabilizerCode,
    basis: LogicalBasis,
    budget: int = 100_000,
    seed: int = 0,
    extra_candidates: list[PauliError] | None = None,
    return_witness: bool = False,
):
    """Randomized upper-bound estimate of the code distance.

    Every candidate is an actual logical operator (a nonzero combination of
    basis elements times stabilizers), so the estimate is never below the
    true distance; with the bound witnesses passed as extra candidates it
    never exceeds the closed-form upper bound either.
    """
    if len(basis) == 0:
        raise ValueError("cannot estimate distance of a k = 0 code")
    ctx = _McContext(code)
    ops = basis.all_operators()
    log_x = np.stack([_pack_to(o.xbits.to_dense(), ctx.nw) for o in ops])
    log_z = np.stack([_pack_to(o.zbits.to_dense(), ctx.nw) for o in ops])

    best = None
    best_xw = best_zw = None
    for op in list(ops) + list(extra_candidates or []):
        w, xw, zw = _sweep_single(ctx, op)
        if best is None or w < best:
            best, best_xw, best_zw = w, xw, zw

    shard = 2000
    offset = 0
    while offset < budget:
        chunk = min(shard, budget - offset)
        out_x = np.zeros(ctx.nw, dtype=np.uint64)
        out_z = np.zeros(ctx.nw, dtype=np.uint64)
        w = int(
            _mc_kernel(
                chunk,
                (seed * 0x9E3779B1 + offset) & 0x7FFFFFFF,
                log_x,
                log_z,
                ctx.row_word_ptr,
                ctx.row_word_idx,
                ctx.row_xvals,
                ctx.row_zvals,
                ctx.nw,
                out_x,
                out_z,
            )
        )
        if w < best:
            best, best_xw, best_zw = w, out_x, out_z
        offset += chunk
    if not return_witness:
        return best
    dense_x = np.unpackbits(best_xw.view(np.uint8), bitorder="little")[: code.n]
    dense_z = np.unpackbits(best_zw.view(np.uint8), bitorder="little")[: code.n]
    witness = PauliError(
        code.n, BitVector.from_dense(dense_x), BitVector.from_dense(dense_z)
    )
    return best, witness
