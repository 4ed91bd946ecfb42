#!/usr/bin/env python3
"""Regenerate the three figure-data CSV files and render quick-look PNGs.

The CSV files are the deliverable (written via the CLI so they match the
golden regression data byte for byte); plotting is best-effort and skipped
when matplotlib is unavailable.

Usage:
    python3 scripts/reproduce_figures.py [--out figures] [--no-plots]
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import defaultdict
from pathlib import Path

from unruh_probe import cli


def write_csvs(out_dir: Path) -> None:
    for which in (1, 2, 3):
        code = cli.main(["figure", "--which", str(which), "--out", str(out_dir)])
        if code != 0:
            raise SystemExit(code)
        print(f"wrote {out_dir / cli.FIGURE_FILES[which]}")


def _read(path: Path):
    with path.open() as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, data = rows[0], rows[1:]
    return header, [[float(v) for v in row] for row in data]


def plot(out_dir: Path) -> None:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available; skipping plots", file=sys.stderr)
        return

    # figure 1: normalized single-probe distance surface over (theta, tau)
    _, data = _read(out_dir / "fig1.csv")
    thetas = sorted({row[0] for row in data})
    taus = sorted({row[1] for row in data})
    grid = {(row[0], row[1]): row[3] for row in data}
    z = [[grid[(th, t)] for t in taus] for th in thetas]
    fig, ax = plt.subplots(figsize=(6, 4))
    im = ax.pcolormesh(taus, thetas, z, shading="nearest")
    fig.colorbar(im, ax=ax, label="normalized distance")
    ax.set_xlabel(r"$\gamma_0 \tau$")
    ax.set_ylabel(r"$\theta$")
    fig.tight_layout()
    fig.savefig(out_dir / "fig1.png", dpi=150)

    # figure 2: normalized Werner-state curves
    _, data = _read(out_dir / "fig2.csv")
    curves = defaultdict(list)
    for c, tau, _, normalized in data:
        curves[c].append((tau, normalized))
    fig, ax = plt.subplots(figsize=(6, 4))
    for c in sorted(curves):
        xs, ys = zip(*curves[c])
        ax.plot(xs, ys, label=f"c = {c:.3g}")
    ax.axhline(1.0, color="gray", lw=0.8, ls=":")
    ax.set_xlabel(r"$\gamma_0 \tau$")
    ax.set_ylabel("normalized trace distance")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_dir / "fig2.png", dpi=150)

    # figure 3: entangled pair vs ground-state single probe vs equilibrium
    _, data = _read(out_dir / "fig3.csv")
    taus = [row[0] for row in data]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(taus, [row[1] for row in data], "g-", label="entangled pair (c = 1)")
    ax.plot(taus, [row[2] for row in data], "r-", label="single probe (ground state)")
    ax.plot(taus, [row[3] for row in data], "b--", label="equilibrium")
    ax.set_xlabel(r"$\gamma_0 \tau$")
    ax.set_ylabel("normalized trace distance")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_dir / "fig3.png", dpi=150)
    print(f"wrote PNGs to {out_dir}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="figures", help="output directory")
    parser.add_argument("--no-plots", action="store_true", help="CSV files only")
    args = parser.parse_args()
    out_dir = Path(args.out)
    write_csvs(out_dir)
    if not args.no_plots:
        plot(out_dir)


if __name__ == "__main__":
    main()
