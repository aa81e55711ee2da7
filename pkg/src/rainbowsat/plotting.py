"""Figures written next to the JSON reports.

Everything renders through the Agg backend straight to a file; nothing here
opens a window.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .codes import RateReport  # noqa: E402
from .graph import ColoredGraph  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_rate(report: RateReport, path: str | Path) -> Path:
    """Bar chart of a code's rate against the clique-family bound."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    labels = ["rate", "clique bound", "(t-1)/t ln(t-1)"]
    values = [report.rate, report.clique_bound, report.family_target]
    bars = ax.bar(labels, values, color=["tab:blue", "tab:orange", "tab:gray"])
    for bar, val in zip(bars, values):
        ax.annotate(f"{val:.4f}", (bar.get_x() + bar.get_width() / 2, val), ha="center", va="bottom", fontsize=8)
    ax.set_ylabel("nats per symbol")
    ax.set_title(f"t={report.t}, s={report.s}, k={report.k}, m={report.size}")
    return _save(fig, path)


def plot_bounds(s: int, t: int, n_max: int, path: str | Path, exact: dict[int, int] | None = None) -> Path:
    """Asymptotic lower-bound curve and the trivial upper bound, with any
    exact values overlaid."""
    q = t - s + 2
    coef = t / (q * math.log(q))
    ns = list(range(2, max(n_max, 3) + 1))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ns, [coef * n * math.log(n) for n in ns], label=f"{coef:.3f} n ln n")
    ax.plot(ns, [n * (n - 1) / 2 for n in ns], "--", label="n(n-1)/2")
    if exact:
        xs = sorted(exact)
        ax.plot(xs, [exact[x] for x in xs], "ko", label="exact rsat")
    ax.set_xlabel("n")
    ax.set_ylabel("edges")
    ax.set_title(f"rainbow K_{s} saturation, t={t}")
    ax.legend(fontsize=8)
    return _save(fig, path)


def draw_colored_graph(G: ColoredGraph, path: str | Path, parts: tuple[list[int], list[int]] | None = None) -> Path:
    """Draw ``G`` on a circle, or in two columns when ``parts`` is given."""
    pos: dict[int, tuple[float, float]] = {}
    if parts:
        for col, side in enumerate(parts):
            for i, v in enumerate(side):
                pos[v] = (float(col), -i / max(len(side) - 1, 1))
    for v in G.vertices():
        if v not in pos:
            ang = 2 * math.pi * (v - 1) / max(G.n, 1)
            pos[v] = (math.cos(ang), math.sin(ang))
    cmap = plt.get_cmap("tab10" if G.t <= 10 else "tab20")
    fig, ax = plt.subplots(figsize=(5, 5))
    for (u, v), c in G.edges.items():
        (x0, y0), (x1, y1) = pos[u], pos[v]
        ax.plot([x0, x1], [y0, y1], color=cmap((c - 1) % cmap.N), lw=1.5)
    for v, (x, y) in pos.items():
        ax.scatter([x], [y], s=220, color="white", edgecolor="black", zorder=3)
        ax.annotate(str(v), (x, y), ha="center", va="center", fontsize=8, zorder=4)
    handles = [plt.Line2D([], [], color=cmap((c - 1) % cmap.N), label=f"color {c}") for c in range(1, G.t + 1)]
    ax.legend(handles=handles, fontsize=7, loc="upper right")
    ax.set_axis_off()
    ax.set_title(f"n={G.n}, t={G.t}, {G.edge_count} edges")
    return _save(fig, path)
