#!/usr/bin/env python3
"""Render figures from the CSV files written by `tomo`.

Usage:
    plot.py sweep <out-dir>      indicator vs D, one line per R
    plot.py slice <out-dir>      w_alpha, w_beta and |w_alpha - w_beta| heat maps

Needs numpy and matplotlib. Figures are written next to the CSVs as PNG.
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def read_csv(path):
    rows = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    header = rows[0].split(",")
    data = [r.split(",") for r in rows[1:]]
    return header, data


def plot_sweep(out):
    names = ["tei_position", "svne", "tei_discrete", "i_d"]
    fig, axes = plt.subplots(1, 4, figsize=(16, 3.5))
    for ax, name in zip(axes, names):
        _, data = read_csv(out / f"{name}.csv")
        by_r = {}
        for d, r, v in data:
            by_r.setdefault(float(r), []).append((int(d), float(v)))
        for r, pts in sorted(by_r.items()):
            pts.sort()
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", label=f"R = {r:g}")
        if name == "i_d":
            ax.axhline(2.0, color="grey", lw=0.8, ls="--")
        ax.set_xlabel("D")
        ax.set_title(name)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "sweep.png", dpi=150)


def load_grid(path):
    _, data = read_csv(path)
    arr = np.array(data, dtype=float)
    n = int(round(np.sqrt(len(arr))))
    ts = arr[::n, 0]
    return ts, arr[:, 2].reshape(n, n)


def plot_slice(out):
    fig, axes = plt.subplots(1, 3, figsize=(15, 4.5))
    for ax, name in zip(axes, ["w_alpha", "w_beta", "w_diff"]):
        ts, w = load_grid(out / f"{name}.csv")
        ext = [ts[0] * 1e9, ts[-1] * 1e9, ts[0] * 1e9, ts[-1] * 1e9]
        im = ax.imshow(w, origin="lower", extent=ext, cmap="magma")
        ax.set_xlabel("t_I (ns)")
        ax.set_ylabel("t_S (ns)")
        ax.set_title(name)
        fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(out / "slice.png", dpi=150)


def main(argv):
    if len(argv) != 3 or argv[1] not in ("sweep", "slice"):
        print(__doc__, file=sys.stderr)
        return 1
    out = Path(argv[2])
    (plot_sweep if argv[1] == "sweep" else plot_slice)(out)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
