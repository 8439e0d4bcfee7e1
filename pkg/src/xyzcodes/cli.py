"""Command-line interface: construct, verify, distance, cycles, simulate, threshold.

Exit codes: 0 success, 2 usage error, 3 validation failure, 4 I/O error.
Flags win over values from --config JSON files.  XYZCODES_JOBS sets the
default worker count (currently used to shard threshold scans).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import products, simulation
from .decoder import DecoderConfig
from .noise import from_bias, pure
from .stabilizer import (
    StabilizerCode,
    code_dimension,
    first_violating_pair,
    stabilizer_from_text,
    stabilizer_to_text,
    verify_commutation,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("XYZCODES_JOBS", "1")))
    except ValueError:
        return 1


def _parse_eta(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    value = float(text)
    if value <= 0:
        raise CliError(f"eta must be positive or 'inf', got {text}", EXIT_USAGE)
    return value


def _noise_from_args(args) -> tuple[float, float]:
    """Returns (p, eta) from --noise/--p/--eta flags."""
    preset = getattr(args, "noise", None) or "biased"
    p = args.p
    if p is None:
        raise CliError("missing --p", EXIT_USAGE)
    if preset == "depolarizing":
        return p, 0.5
    if preset in ("pure-x", "pure-y", "pure-z"):
        return p, {"pure-x": -1.0, "pure-y": -2.0, "pure-z": math.inf}[preset]
    if preset == "biased":
        if args.eta is None:
            raise CliError("--noise biased requires --eta", EXIT_USAGE)
        return p, _parse_eta(args.eta)
    raise CliError(f"unknown noise preset {preset}", EXIT_USAGE)


def _model_from(p: float, eta: float):
    if eta == -1.0:
        return pure("X", p)
    if eta == -2.0:
        return pure("Y", p)
    return from_bias(p, eta)


def _load_code(path: str) -> StabilizerCode:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    try:
        return stabilizer_from_text(text)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot parse {path}: {exc}", EXIT_VALIDATION) from exc


def _family_lengths(code: StabilizerCode) -> tuple[str, tuple[int, ...]] | None:
    tag = code.family_tag
    if ":" not in tag:
        return None
    family, _, rest = tag.partition(":")
    try:
        lengths = tuple(int(x) for x in rest.split(","))
    except ValueError:
        return None
    return family, lengths


def cmd_construct(args) -> int:
    lengths = tuple(args.lengths)
    try:
        code = products.construct_family(args.family, lengths)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    k = code_dimension(code)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(stabilizer_to_text(code))
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    blocks = ", ".join(f"{name}={size}" for name, size in code.qubit_blocks.items())
    print(f"family={args.family} N={code.n} k={k} checks={code.num_checks}")
    print(f"qubit blocks: {blocks}")
    return EXIT_OK


def cmd_verify(args) -> int:
    code = _load_code(args.code)
    ok = verify_commutation(code)
    if not ok:
        pair = first_violating_pair(code)
        print(f"FAIL: generators {pair[0]} and {pair[1]} anticommute")
        return EXIT_VALIDATION
    k = code_dimension(code)
    print(f"PASS: commutation holds; N={code.n} k={k} (rank oracle)")
    fam = _family_lengths(code)
    if fam is not None:
        family, lengths = fam
        spec = products.spec_for_family(family, lengths)
        if spec is not None and family in ("chamon4", "xyz4-concat"):
            print(f"k by closed form: {products.dimension_theorem1(spec)}")
            print(f"distance upper bound: {products.distance_upper_bound(spec)}")
    return EXIT_OK


def cmd_dimension(args) -> int:
    code = _load_code(args.code)
    k = code_dimension(code)
    print(f"N={code.n} k={k} (rank oracle)")
    fam = _family_lengths(code)
    if fam is not None:
        spec = products.spec_for_family(*fam)
        if spec is not None and fam[0] in ("chamon4", "xyz4-concat"):
            print(f"k by closed form: {products.dimension_theorem1(spec)}")
    return EXIT_OK


def cmd_distance(args) -> int:
    code = _load_code(args.code)
    from .distance import exact_distance, mc_distance
    from .stabilizer import extract_logical_basis

    if args.w_max is not None:
        d, witness = exact_distance(code, args.w_max, return_witness=True)
        if d is None:
            print(f"distance > {args.w_max} (exhaustive)")
        else:
            print(f"distance = {d} (exhaustive)")
            print(f"witness: {witness.pauli_string()}")
        return EXIT_OK
    fam = _family_lengths(code)
    extra = None
    if fam is not None:
        spec = products.spec_for_family(*fam)
        if spec is not None and fam[0] in ("chamon4", "xyz4-concat"):
            basis = products.logical_basis_theorem2(spec)
            extra = products.bound_witnesses(spec)
        else:
            basis = extract_logical_basis(code)
    else:
        basis = extract_logical_basis(code)
    est, witness = mc_distance(
        code, basis, budget=args.budget, seed=args.seed, extra_candidates=extra, return_witness=True
    )
    print(f"distance <= {est} (randomized, budget {args.budget})")
    print(f"witness: {witness.pauli_string()}")
    return EXIT_OK


def cmd_cycles(args) -> int:
    code = _load_code(args.code)
    count = simulation.count_4cycles(code, args.mode)
    print(f"4-cycles ({args.mode}): {count}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    code = _load_code(args.code)
    p, eta = _noise_from_args(args)
    model = _model_from(p, eta)
    config = DecoderConfig(
        max_iterations=args.max_iters,
        osd_enabled=not args.no_osd,
        ms_scale=args.ms_scale,
    )
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    agg = simulation.run_trials(code, model, args.trials, args.seed, config, jobs=jobs)
    k = code_dimension(code)
    fam = _family_lengths(code)
    family = fam[0] if fam else code.family_tag or "custom"
    lengths = fam[1] if fam else ()
    point = simulation.ScanPoint(
        family=family,
        lengths=lengths,
        p=p,
        eta=eta if eta > 0 else math.inf,
        aggregate=agg,
        per_logical=agg.per_logical(k),
        seed=args.seed,
        max_iters=args.max_iters,
    )
    result = simulation.ScanResult(family=family, sizes=[lengths], p_grid=[p], eta=point.eta, points=[point])
    _emit_csv(result, args.out)
    return EXIT_OK


def cmd_threshold(args) -> int:
    sizes = []
    for text in args.sizes:
        try:
            sizes.append(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise CliError(f"bad size {text!r}; expected comma-separated ints", EXIT_USAGE) from exc
    p_grid = args.grid
    p, eta = None, None
    if args.noise == "depolarizing":
        eta = 0.5
    elif args.noise == "pure-z":
        eta = math.inf
    elif args.noise in ("pure-x", "pure-y"):
        raise CliError("threshold scans support depolarizing, pure-z, or biased", EXIT_USAGE)
    else:
        if args.eta is None:
            raise CliError("--noise biased requires --eta", EXIT_USAGE)
        eta = _parse_eta(args.eta)
    config = DecoderConfig(
        max_iterations=args.max_iters, ms_scale=args.ms_scale, osd_enabled=not args.no_osd
    )
    try:
        jobs = args.jobs if args.jobs is not None else _default_jobs()
        result = simulation.threshold_scan(
            args.family, sizes, p_grid, eta, args.trials, args.seed, config, jobs=jobs
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    _emit_csv(result, args.out)
    if result.crossing is None:
        print("no crossing in range")
    else:
        print(f"threshold estimate (median pairwise crossing): {result.crossing:.4f}")
    return EXIT_OK


def _emit_csv(result, out_path: str | None) -> None:
    text = result.to_csv()
    if out_path:
        try:
            exists = os.path.exists(out_path)
            with open(out_path, "a") as fh:
                fh.write(text if not exists else "".join(text.splitlines(keepends=True)[1:]))
        except OSError as exc:
            raise CliError(f"cannot write {out_path}: {exc}", EXIT_IO) from exc
        print(f"wrote {out_path}")
    else:
        sys.stdout.write(text)


def _apply_config_defaults(args) -> None:
    """Fill unset args from a JSON config file; explicit flags win."""
    if not getattr(args, "config", None):
        return
    parser = getattr(args, "_subparser", None)
    if parser is None:
        return
    try:
        with open(args.config) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config {args.config}: {exc}", EXIT_IO) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"bad JSON in {args.config}: {exc}", EXIT_VALIDATION) from exc
    for key, value in data.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and parser.get_default(attr) == getattr(args, attr):
            setattr(args, attr, value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xyzcodes",
        description="Construct, verify, and simulate XYZ/homological product stabilizer codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_con = sub.add_parser("construct", help="build a named family and print N, k")
    p_con.add_argument("family", choices=sorted(products.FAMILIES))
    p_con.add_argument("lengths", nargs="+", type=int)
    p_con.add_argument("--out", help="write the code serialization here")
    p_con.set_defaults(func=cmd_construct)

    p_ver = sub.add_parser("verify", help="check commutation and report k")
    p_ver.add_argument("code", help="path to a serialized code")
    p_ver.set_defaults(func=cmd_verify)

    p_dim = sub.add_parser("dimension", help="logical qubit count")
    p_dim.add_argument("code")
    p_dim.set_defaults(func=cmd_dimension)

    p_dist = sub.add_parser("distance", help="exact or randomized distance")
    p_dist.add_argument("code")
    p_dist.add_argument("--w-max", type=int, default=None, help="exhaustive search cap")
    p_dist.add_argument("--budget", type=int, default=10000, help="randomized restarts")
    p_dist.add_argument("--seed", type=int, default=0)
    p_dist.set_defaults(func=cmd_distance)

    p_cyc = sub.add_parser("cycles", help="count Tanner-graph 4-cycles")
    p_cyc.add_argument("code")
    p_cyc.add_argument("--mode", choices=["pauli-support", "symplectic"], default="pauli-support")
    p_cyc.set_defaults(func=cmd_cycles)

    p_sim = sub.add_parser("simulate", help="Monte Carlo logical error rate at one point")
    p_sim.add_argument("code")
    p_sim.add_argument("--p", type=float, default=None)
    p_sim.add_argument("--eta", default=None)
    p_sim.add_argument(
        "--noise",
        choices=["depolarizing", "pure-x", "pure-y", "pure-z", "biased"],
        default="biased",
    )
    p_sim.add_argument("--trials", type=int, default=1000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--max-iters", type=int, default=32)
    p_sim.add_argument("--ms-scale", type=float, default=0.5)
    p_sim.add_argument("--no-osd", action="store_true")
    p_sim.add_argument("--jobs", type=int, default=None, help="worker processes (env XYZCODES_JOBS)")
    p_sim.add_argument("--out", help="append CSV here")
    p_sim.add_argument("--config", help="JSON config file (flags win)")
    p_sim.set_defaults(func=cmd_simulate, _subparser=p_sim)

    p_thr = sub.add_parser("threshold", help="scan sizes x p grid, estimate crossing")
    p_thr.add_argument("family", choices=sorted(products.FAMILIES))
    p_thr.add_argument("--sizes", nargs="+", required=True, help="e.g. 2,2,2,2 3,3,3,3")
    p_thr.add_argument("--grid", nargs="+", type=float, required=True)
    p_thr.add_argument(
        "--noise", choices=["depolarizing", "pure-z", "biased"], default="depolarizing"
    )
    p_thr.add_argument("--eta", default=None)
    p_thr.add_argument("--trials", type=int, default=1000)
    p_thr.add_argument("--seed", type=int, default=0)
    p_thr.add_argument("--max-iters", type=int, default=32)
    p_thr.add_argument("--ms-scale", type=float, default=0.5)
    p_thr.add_argument("--no-osd", action="store_true")
    p_thr.add_argument("--jobs", type=int, default=None, help="worker processes (env XYZCODES_JOBS)")
    p_thr.add_argument("--out", help="write CSV here")
    p_thr.add_argument("--config", help="JSON config file (flags win)")
    p_thr.set_defaults(func=cmd_threshold, _subparser=p_thr)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        _apply_config_defaults(args)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
