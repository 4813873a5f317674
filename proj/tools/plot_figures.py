#!/usr/bin/env python3
"""Plots for one fracctl run directory.

    python3 tools/plot_figures.py runs/example1 [--out figs/]

Writes boundary.png (target vs reached trace on Gamma), control.png,
state_omega_c.png (target and reached state on omega_c) and
iterations.png (residual, boundary error, cost per iteration).
"""

import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def load(path):
    rows = [l.split() for l in path.read_text().splitlines() if l.strip() and not l.startswith("#")]
    return np.array(rows, dtype=float) if rows else np.empty((0, 0))


def grid(data, col):
    xs, ys = np.unique(data[:, 0]), np.unique(data[:, 1])
    return xs, ys, data[:, col].reshape(len(xs), len(ys))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("run_dir", type=pathlib.Path)
    ap.add_argument("--out", type=pathlib.Path, default=None)
    a = ap.parse_args()
    out = a.out or a.run_dir
    out.mkdir(parents=True, exist_ok=True)

    b = load(a.run_dir / "boundary.dat")
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(b[:, 0], b[:, 1], "k-", label="z_d")
    ax.plot(b[:, 0], b[:, 2], "r--", label="reached")
    ax.set_xlabel("s on Gamma")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "boundary.png", dpi=150)

    c = load(a.run_dir / "control.dat")
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.step(c[:, 1], c[:, 3], where="post")
    ax.set_xlabel("t")
    ax.set_ylabel("u(t)")
    fig.tight_layout()
    fig.savefig(out / "control.png", dpi=150)

    s = load(a.run_dir / "state_omega_c.dat")
    xs, ys, target = grid(s, 2)
    _, _, reached = grid(s, 3)
    fig, axs = plt.subplots(1, 2, figsize=(9, 3.5), subplot_kw={"projection": "3d"})
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    for ax, z, title in zip(axs, (target, reached), ("d_s", "y(T)")):
        ax.plot_surface(X, Y, z, cmap="viridis")
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out / "state_omega_c.png", dpi=150)

    it = load(a.run_dir / "iterations.txt")
    if it.size:
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.semilogy(it[:, 0], it[:, 1], "o-", label="residual on omega_c")
        ax.semilogy(it[:, 0], it[:, 3], "s-", label="boundary error")
        ax.semilogy(it[:, 0], it[:, 4], "^-", label="cost")
        ax.set_xlabel("iteration")
        ax.legend()
        fig.tight_layout()
        fig.savefig(out / "iterations.png", dpi=150)


if __name__ == "__main__":
    main()
