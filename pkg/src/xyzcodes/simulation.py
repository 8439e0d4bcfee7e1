"""Monte Carlo logical-error-rate estimation, threshold scans, 4-cycle counts.

A trial samples an error, decodes its syndrome, and classifies the residual
(error times correction): success iff the residual is a stabilizer.  With
OSD enabled the residual always has zero syndrome, so failure means exactly
"residual is a nontrivial logical"; without OSD a syndrome-mismatched
residual also counts as failure.  Convergence flags never enter the
classification.

Per-trial RNG streams are spawned from the master seed, so results are
byte-identical for any worker count and aggregation order.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .decoder import Decoder, DecoderConfig, TannerGraph, vars_to_pauli
from .noise import NoiseModel, sample
from .stabilizer import StabilizerCode, StabilizerMembership, syndrome

_Z95 = 1.959963984540054

CSV_FIELDS = [
    "family",
    "n1",
    "n2",
    "n3",
    "n4",
    "p",
    "eta",
    "trials",
    "failures",
    "block_rate",
    "per_logical_rate",
    "ci_low",
    "ci_high",
    "seed",
    "max_iters",
]


@dataclass(frozen=True)
class TrialRecord:
    code_id: str
    p: float
    eta: float
    seed: int
    failure: bool
    residual_weight: int


@dataclass(frozen=True)
class TrialAggregate:
    trials: int
    failures: int
    block_rate: float
    ci_low: float
    ci_high: float

    def per_logical(self, k: int) -> float:
        return per_logical_rate(self.block_rate, k)


def wilson_interval(failures: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score 95% interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    phat = failures / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def per_logical_rate(block_rate: float, k: int) -> float:
    """1 - (1 - P)^(1/k): per-logical-qubit normalization of a block rate."""
    if not 0 <= block_rate <= 1:
        raise ValueError("block rate outside [0, 1]")
    if k < 1:
        raise ValueError("k must be >= 1")
    return 1.0 - (1.0 - block_rate) ** (1.0 / k)


def _run_trial_range(
    code: StabilizerCode,
    model: NoiseModel,
    trials: int,
    master_seed: int,
    config: DecoderConfig,
    lo: int,
    hi: int,
    graph: TannerGraph | None = None,
    membership: StabilizerMembership | None = None,
) -> int:
    """Failures over trial indices [lo, hi); trial i always uses stream i."""
    decoder = Decoder(code, model, config, graph=graph)
    member = membership if membership is not None else StabilizerMembership(code)
    seeds = np.random.SeedSequence(master_seed).spawn(trials)
    failures = 0
    for i in range(lo, hi):
        rng = np.random.default_rng(seeds[i])
        err = sample(model, code.n, rng)
        s = syndrome(code, err)
        est_bits, converged, _ = decoder.decode_bits(s.to_dense())
        est = vars_to_pauli(est_bits, code.n)
        residual = err.compose(est)
        if not member.contains(residual):
            failures += 1
    return failures


def run_trials_records(
    code: StabilizerCode,
    model: NoiseModel,
    trials: int,
    master_seed: int,
    config: DecoderConfig = DecoderConfig(),
) -> list[TrialRecord]:
    """Per-trial outcome rows; failure iff the residual is a logical."""
    decoder = Decoder(code, model, config)
    member = StabilizerMembership(code)
    seeds = np.random.SeedSequence(master_seed).spawn(trials)
    records = []
    for i in range(trials):
        rng = np.random.default_rng(seeds[i])
        err = sample(model, code.n, rng)
        s = syndrome(code, err)
        est_bits, _, _ = decoder.decode_bits(s.to_dense())
        residual = err.compose(vars_to_pauli(est_bits, code.n))
        records.append(
            TrialRecord(
                code_id=code.family_tag or f"n{code.n}",
                p=model.p,
                eta=model.eta,
                seed=i,
                failure=not member.contains(residual),
                residual_weight=residual.weight(),
            )
        )
    return records


def run_trials(
    code: StabilizerCode,
    model: NoiseModel,
    trials: int,
    master_seed: int,
    config: DecoderConfig = DecoderConfig(),
    graph: TannerGraph | None = None,
    membership: StabilizerMembership | None = None,
    jobs: int = 1,
) -> TrialAggregate:
    """Decode `trials` sampled errors; aggregate failures with a Wilson CI.

    With jobs > 1 the trial range is sharded across worker processes; trial i
    draws from per-trial stream i regardless of sharding, so the aggregate is
    identical for every worker count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if jobs <= 1 or trials < 4 * jobs:
        failures = _run_trial_range(
            code, model, trials, master_seed, config, 0, trials, graph, membership
        )
    else:
        from concurrent.futures import ProcessPoolExecutor

        bounds = np.linspace(0, trials, jobs + 1, dtype=int)
        futures = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for w in range(jobs):
                futures.append(
                    pool.submit(
                        _run_trial_range,
                        code,
                        model,
                        trials,
                        master_seed,
                        config,
                        int(bounds[w]),
                        int(bounds[w + 1]),
                    )
                )
            failures = sum(f.result() for f in futures)
    lo, hi = wilson_interval(failures, trials)
    return TrialAggregate(
        trials=trials,
        failures=failures,
        block_rate=failures / trials,
        ci_low=lo,
        ci_high=hi,
    )


@dataclass
class ScanPoint:
    family: str
    lengths: tuple[int, ...]
    p: float
    eta: float
    aggregate: TrialAggregate
    per_logical: float
    seed: int
    max_iters: int


@dataclass
class ScanResult:
    family: str
    sizes: list[tuple[int, ...]]
    p_grid: list[float]
    eta: float
    points: list[ScanPoint] = field(default_factory=list)
    crossing: float | None = None

    def curve(self, lengths: tuple[int, ...]) -> list[ScanPoint]:
        return [pt for pt in self.points if pt.lengths == lengths]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for pt in self.points:
            lens = list(pt.lengths) + [""] * (4 - len(pt.lengths))
            writer.writerow(
                {
                    "family": pt.family,
                    "n1": lens[0],
                    "n2": lens[1],
                    "n3": lens[2],
                    "n4": lens[3],
                    "p": f"{pt.p:.6g}",
                    "eta": "inf" if math.isinf(pt.eta) else f"{pt.eta:.6g}",
                    "trials": pt.aggregate.trials,
                    "failures": pt.aggregate.failures,
                    "block_rate": f"{pt.aggregate.block_rate:.8g}",
                    "per_logical_rate": f"{pt.per_logical:.8g}",
                    "ci_low": f"{pt.aggregate.ci_low:.8g}",
                    "ci_high": f"{pt.aggregate.ci_high:.8g}",
                    "seed": pt.seed,
                    "max_iters": pt.max_iters,
                }
            )
        return buf.getvalue()


def _pairwise_crossing(
    p_grid: list[float], rate_a: list[float], rate_b: list[float], floor: float
) -> float | None:
    """Crossing of two curves under log-linear interpolation in p.

    Only strict sign changes count (floor-clamped equal curves are no
    evidence).  Statistically merged curves can produce several sign
    changes; the median of all of them is returned, which reduces to the
    unique crossing in the well-separated case.
    """
    la = [math.log(max(r, floor)) for r in rate_a]
    lb = [math.log(max(r, floor)) for r in rate_b]
    diff = [x - y for x, y in zip(la, lb)]
    found = []
    for i in range(len(p_grid) - 1):
        d0, d1 = diff[i], diff[i + 1]
        if d0 * d1 < 0:
            t = d0 / (d0 - d1)
            found.append(p_grid[i] + t * (p_grid[i + 1] - p_grid[i]))
    if not found:
        return None
    return float(np.median(found))


def threshold_scan(
    family: str,
    sizes: list[tuple[int, ...]],
    p_grid: list[float],
    eta: float,
    trials: int,
    seed: int,
    config: DecoderConfig = DecoderConfig(),
    constructor=None,
    jobs: int = 1,
) -> ScanResult:
    """Per-size logical-rate curves and the median pairwise crossing.

    The threshold estimate is the median over adjacent-size curve pairs of
    the log-linear interpolated crossing; sizes should be ordered smallest
    first.  Requires >= 2 sizes and >= 3 grid points.
    """
    from . import products
    from .noise import from_bias
    from .stabilizer import code_dimension

    if len(sizes) < 2:
        raise ValueError("need at least two sizes")
    if len(p_grid) < 3:
        raise ValueError("need at least three grid points")
    build = constructor if constructor is not None else (
        lambda lengths: products.construct_family(family, lengths)
    )
    result = ScanResult(family=family, sizes=list(sizes), p_grid=list(p_grid), eta=eta)
    curves: list[list[float]] = []
    for si, lengths in enumerate(sizes):
        code = build(tuple(lengths))
        k = code_dimension(code)
        graph = TannerGraph(code)
        member = StabilizerMembership(code)
        rates = []
        for pi, p in enumerate(p_grid):
            model = from_bias(p, eta)
            point_seed = int(
                np.random.SeedSequence([seed, si, pi]).generate_state(1)[0] & 0x7FFFFFFF
            )
            if jobs > 1:
                agg = run_trials(code, model, trials, point_seed, config, jobs=jobs)
            else:
                agg = run_trials(code, model, trials, point_seed, config, graph, member)
            plr = agg.per_logical(k)
            rates.append(plr)
            result.points.append(
                ScanPoint(
                    family=family,
                    lengths=tuple(lengths),
                    p=p,
                    eta=eta,
                    aggregate=agg,
                    per_logical=plr,
                    seed=point_seed,
                    max_iters=config.max_iterations,
                )
            )
        curves.append(rates)
    floor = 1.0 / (2.0 * trials)
    crossings = []
    for i in range(len(sizes) - 1):
        c = _pairwise_crossing(list(p_grid), curves[i], curves[i + 1], floor)
        if c is not None:
            crossings.append(c)
    result.crossing = float(np.median(crossings)) if crossings else None
    return result


# -- Tanner-graph 4-cycle counting ------------------------------------------------


def count_4cycles(code: StabilizerCode, mode: str = "pauli-support") -> int:
    """Number of 4-cycles: sum over check pairs of C(shared variables, 2).

    pauli-support mode: one variable per qubit, check adjacent iff it acts
    nontrivially there.  symplectic mode: 2n variables (x then z columns of
    [Hx | Hz] row support).
    """
    hx = code.hx.to_dense().astype(np.int64)
    hz = code.hz.to_dense().astype(np.int64)
    if mode == "pauli-support":
        adj = hx | hz
    elif mode == "symplectic":
        adj = np.concatenate([hx, hz], axis=1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    total = 0
    block = 512
    m = adj.shape[0]
    for lo in range(0, m, block):
        hi = min(lo + block, m)
        gram = adj[lo:hi] @ adj.T
        for i in range(lo, hi):
            row = gram[i - lo]
            shared = row[i + 1 :]
            total += int((shared * (shared - 1) // 2).sum())
    return total
