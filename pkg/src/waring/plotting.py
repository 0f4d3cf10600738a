"""Figures for the CLI report commands (matplotlib, file output only)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .apolarpoints import projective_key  # noqa: E402
from .bounds import BoundsRow  # noqa: E402


def bounds_figure(rows: Sequence[BoundsRow], path: str) -> None:
    """Grouped bars of the three bounds per exponent sequence, log scale."""
    if not rows:
        raise ValueError("no rows to plot")
    labels = [f"({r.label()})" for r in rows]
    x = np.arange(len(rows))
    width = 0.27
    fig, ax = plt.subplots(figsize=(max(6, 1.1 * len(rows)), 4))
    series = [("UB_BT", [r.ub_bt for r in rows]), ("UB_CKOV", [r.ub_ckov for r in rows]), ("UB_HM", [r.ub_hm for r in rows])]
    for k, (name, vals) in enumerate(series):
        ax.bar(x + (k - 1) * width, vals, width, label=name)
    ax.set_yscale("log")
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("upper bound")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def points_figure(points: Sequence[Sequence], a: Sequence[int], path: str) -> None:
    """Scatter of the first two coordinates after scaling the last nonzero one to 1.

    Points whose last coordinate vanishes are drawn with a different marker.
    """
    if not points:
        raise ValueError("no points to plot")
    if len(points[0]) < 2:
        raise ValueError("need at least two coordinates")
    keys = [projective_key(p) for p in points]
    finite = [k for k, p in zip(keys, points) if p[-1] != 0]
    other = [k for k, p in zip(keys, points) if p[-1] == 0]
    fig, ax = plt.subplots(figsize=(5, 5))
    if finite:
        ax.scatter([float(k[0]) for k in finite], [float(k[1]) for k in finite], s=18, label="last coordinate 1")
    if other:
        ax.scatter([float(k[0]) for k in other], [float(k[1]) for k in other], s=30, marker="x", label="last coordinate 0")
    ax.set_xlabel("x0")
    ax.set_ylabel("x1")
    ax.set_title(f"a = ({','.join(map(str, a))}), {len(points)} points")
    ax.axhline(0, color="0.8", lw=0.5)
    ax.axvline(0, color="0.8", lw=0.5)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
