"""Turn threshold-scan CSV files into one figure per (family, eta).

Input rows must carry the scan schema:

    family,n1,n2,n3,n4,p,eta,trials,failures,block_rate,per_logical_rate,
    ci_low,ci_high,seed,max_iters

Each figure plots the per-logical error rate against p, one curve per size
with its Wilson band, and a vertical line at the estimated crossing of
adjacent-size curves (median, log-linear interpolation) when one exists.
Output is deterministic PNG + SVG with fixed styling.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from collections import defaultdict
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

REQUIRED_FIELDS = [
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


class SchemaError(Exception):
    pass


@dataclass
class Row:
    family: str
    size: tuple[int, ...]
    p: float
    eta: str
    trials: int
    block_rate: float
    per_logical: float
    ci_low: float
    ci_high: float


def read_rows(paths: list[str]) -> list[Row]:
    rows: list[Row] = []
    for path in paths:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise SchemaError(f"{path}: empty file")
            missing = [f for f in REQUIRED_FIELDS if f not in reader.fieldnames]
            if missing:
                raise SchemaError(f"{path}: missing columns {missing}")
            for rec in reader:
                size = tuple(
                    int(rec[f]) for f in ("n1", "n2", "n3", "n4") if rec[f] not in ("", None)
                )
                rows.append(
                    Row(
                        family=rec["family"],
                        size=size,
                        p=float(rec["p"]),
                        eta=rec["eta"],
                        trials=int(rec["trials"]),
                        block_rate=float(rec["block_rate"]),
                        per_logical=float(rec["per_logical_rate"]),
                        ci_low=float(rec["ci_low"]),
                        ci_high=float(rec["ci_high"]),
                    )
                )
    if not rows:
        raise SchemaError("no data rows in input")
    return rows


def _infer_k(row: Row) -> float:
    """Recover the logical-qubit count from block vs per-logical rates."""
    if 0 < row.per_logical < 1 and 0 < row.block_rate < 1:
        return max(1.0, math.log1p(-row.block_rate) / math.log1p(-row.per_logical))
    return 1.0


def _crossing(p: list[float], a: list[float], b: list[float], floor: float) -> float | None:
    """Median of all log-linear sign-change points (matches the scan tool)."""
    la = [math.log(max(x, floor)) for x in a]
    lb = [math.log(max(x, floor)) for x in b]
    diff = [x - y for x, y in zip(la, lb)]
    found = []
    for i in range(len(p) - 1):
        if diff[i] * diff[i + 1] < 0:
            t = diff[i] / (diff[i] - diff[i + 1])
            found.append(p[i] + t * (p[i + 1] - p[i]))
    if not found:
        return None
    found.sort()
    mid = len(found) // 2
    if len(found) % 2:
        return found[mid]
    return 0.5 * (found[mid - 1] + found[mid])


def render_figure(rows: list[Row], log_y: bool = False):
    """Build the figure for one (family, eta) group; returns (fig, meta)."""
    family = rows[0].family
    eta = rows[0].eta
    by_size: dict[tuple[int, ...], list[Row]] = defaultdict(list)
    for r in rows:
        by_size[r.size].append(r)
    sizes = sorted(by_size)
    fig, ax = plt.subplots(figsize=(5.0, 3.6), dpi=160)
    curves = []
    for size in sizes:
        pts = sorted(by_size[size], key=lambda r: r.p)
        ps = [r.p for r in pts]
        ys = [r.per_logical for r in pts]
        k = _infer_k(pts[0])
        lo = [1 - (1 - r.ci_low) ** (1 / k) for r in pts]
        hi = [1 - (1 - r.ci_high) ** (1 / k) for r in pts]
        label = "L=" + ",".join(str(x) for x in size) if size else "single"
        (line,) = ax.plot(ps, ys, marker="o", markersize=3.5, linewidth=1.2, label=label)
        ax.fill_between(ps, lo, hi, alpha=0.18, color=line.get_color())
        curves.append((ps, ys))
    crossing = None
    if len(curves) >= 2:
        floor = 1.0 / (2.0 * max(r.trials for r in rows))
        found = []
        for i in range(len(curves) - 1):
            grid = curves[i][0]
            if curves[i + 1][0] != grid:
                continue
            c = _crossing(grid, curves[i][1], curves[i + 1][1], floor)
            if c is not None:
                found.append(c)
        if found:
            found.sort()
            crossing = found[len(found) // 2]
            ax.axvline(crossing, color="0.3", linestyle="--", linewidth=1.0)
            ax.annotate(
                f"crossing ~ {crossing:.3f}",
                xy=(crossing, 0.5),
                xycoords=("data", "axes fraction"),
                xytext=(4, 0),
                textcoords="offset points",
                fontsize=8,
                rotation=90,
                va="center",
            )
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel("physical error rate p")
    ax.set_ylabel("per-logical-qubit error rate")
    eta_label = "inf" if eta in ("inf", "Infinity") else eta
    ax.set_title(f"{family} (eta = {eta_label})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    meta = {
        "family": family,
        "eta": eta,
        "curves": len(sizes),
        "crossing": crossing,
    }
    return fig, meta


def render(csv_paths: list[str], out_dir: str, log_y: bool = False) -> list[dict]:
    """Render every (family, eta) group found in the inputs; returns metadata."""
    rows = read_rows(csv_paths)
    groups: dict[tuple[str, str], list[Row]] = defaultdict(list)
    for r in rows:
        groups[(r.family, r.eta)].append(r)
    os.makedirs(out_dir, exist_ok=True)
    rendered = []
    for (family, eta), group in sorted(groups.items()):
        fig, meta = render_figure(group, log_y=log_y)
        eta_slug = eta.replace(".", "p")
        stem = os.path.join(out_dir, f"{family}_eta{eta_slug}")
        fig.savefig(stem + ".png")
        fig.savefig(stem + ".svg")
        plt.close(fig)
        meta["png"] = stem + ".png"
        meta["svg"] = stem + ".svg"
        rendered.append(meta)
    return rendered


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render threshold CSV files into figures."
    )
    parser.add_argument("csv", nargs="+", help="threshold-scan CSV files")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--log-y", action="store_true", help="log-scale the rate axis")
    args = parser.parse_args(argv)
    try:
        rendered = render(args.csv, args.out, log_y=args.log_y)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for meta in rendered:
        line = f"{meta['family']} eta={meta['eta']}: {meta['curves']} curve(s)"
        if meta["crossing"] is not None:
            line += f", crossing ~ {meta['crossing']:.4f}"
        print(f"{line} -> {meta['png']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
