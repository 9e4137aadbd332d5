"""Matplotlib renderings for the report directory."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..bits import iter_bits  # noqa: E402
from ..uvspace import FiniteSpace  # noqa: E402

# no timestamps or version strings, so reruns write identical files
_PNG_META = {"Software": None}


def hasse_layout(P) -> dict[int, tuple[float, float]]:
    """Elements on rows by height, spread evenly and ordered by id."""
    rows: dict[int, list[int]] = {}
    for i in range(P.n):
        rows.setdefault(P.height[i], []).append(i)
    pos = {}
    for h, ids in rows.items():
        for t, i in enumerate(ids):
            pos[i] = (t - (len(ids) - 1) / 2, float(h))
    return pos


def hasse_png(P, path, title: str | None = None):
    if isinstance(P, FiniteSpace):
        title = title or P.name
        P = P.order
    pos = hasse_layout(P)
    width = max((sum(1 for q in pos.values() if q[1] == h) for h in set(y for _, y in pos.values())),
                default=1)
    fig, ax = plt.subplots(figsize=(max(3.0, 1.4 * width), max(2.5, 1.2 * (max(P.height, default=0) + 1))))
    for a, b in P.covers:
        (x0, y0), (x1, y1) = pos[a], pos[b]
        ax.plot([x0, x1], [y0, y1], color="0.4", linewidth=1, zorder=1)
    maximal = set(iter_bits(P.maximal))
    for i, (x, y) in pos.items():
        ax.scatter([x], [y], s=40, color="black" if i in maximal else "white",
                   edgecolors="black", zorder=2)
        ax.annotate(P.labels[i], (x, y), textcoords="offset points", xytext=(6, 4), fontsize=9)
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    ax.margins(0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)


def timing_chart(run, path):
    """Horizontal bars: seconds per theorem, failures in red."""
    stats = run.per_theorem()
    names = list(stats)
    secs = [stats[n]["seconds"] for n in names]
    colors = ["tab:red" if stats[n]["failed"] else "tab:blue" for n in names]
    fig, ax = plt.subplots(figsize=(7, 0.35 * len(names) + 1.2))
    ax.barh(names, secs, color=colors)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    for y, n in enumerate(names):
        ax.annotate(f"{stats[n]['instances']}", (secs[y], y), xytext=(3, -3),
                    textcoords="offset points", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
