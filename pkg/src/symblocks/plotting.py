"""Figures written next to the delimited reports (Agg backend, files only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_matrix(values, path, title: str = "", row_labels=None, col_labels=None) -> Path:
    """Heatmap of a numeric matrix (exact entries are converted to floats for display)."""
    arr = np.array([[float(x) for x in row] for row in values], dtype=float)
    fig, ax = plt.subplots(figsize=(max(4, 0.3 * arr.shape[1] + 2), max(3, 0.3 * arr.shape[0] + 1)))
    lim = float(np.abs(arr).max()) if arr.size else 1.0
    im = ax.imshow(arr, cmap="RdBu_r", vmin=-lim, vmax=lim, interpolation="nearest")
    fig.colorbar(im, ax=ax, shrink=0.8)
    if row_labels is not None and len(row_labels) <= 40:
        ax.set_yticks(range(len(row_labels)), row_labels, fontsize=6)
    if col_labels is not None and len(col_labels) <= 40:
        ax.set_xticks(range(len(col_labels)), col_labels, fontsize=6, rotation=90)
    ax.set_title(title)
    return _save(fig, path)


def plot_report(report, path) -> Path:
    """Class sizes of one count, with the bounds in the title."""
    sizes = [sum(len(pair) for pair in cls) for cls in report.classes]
    fig, ax = plt.subplots(figsize=(max(4, 0.15 * len(sizes) + 2), 3))
    ax.bar(range(1, len(sizes) + 1), sizes, color="tab:blue")
    ax.set_xlabel("class")
    ax.set_ylabel("Scopes classes merged")
    ax.set_title(f"p={report.p}, w={report.w}, {report.method}: "
                 f"{report.lower_bound} <= M <= {report.upper_bound}")
    return _save(fig, path)


def plot_suite(rows, path) -> Path:
    """Lower and upper bounds against the expected value, one panel per prime."""
    primes = sorted({r.p for r in rows})
    fig, axes = plt.subplots(1, len(primes), figsize=(4.5 * len(primes), 3.5), squeeze=False)
    for ax, p in zip(axes[0], primes):
        sub = [r for r in rows if r.p == p]
        ws = [r.w for r in sub]
        ax.plot(ws, [r.upper for r in sub], "v-", label="upper bound")
        ax.plot(ws, [r.lower for r in sub], "^-", label="lower bound")
        exp = [(r.w, r.expected) for r in sub if isinstance(r.expected, int)]
        if exp:
            ax.plot(*zip(*exp), "kx", markersize=9, label="expected")
        for r in sub:
            if r.status != "PASS":
                ax.annotate("FAIL", (r.w, r.lower), color="red")
        ax.set_title(f"p = {p}")
        ax.xaxis.set_major_locator(MaxNLocator(integer=True))
        ax.set_xlabel("w")
        ax.set_ylabel("M(p, w)")
        ax.legend(fontsize=7)
    return _save(fig, path)


def plot_eigenvalues(report, path, title: str = "") -> Path:
    roots = sorted(report.roots, reverse=True)
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(range(1, len(roots) + 1), roots, color="tab:green")
    ax.set_yscale("log", base=2)
    ax.set_xlabel("index")
    ax.set_ylabel(f"eigenvalue of {report.scale} M0")
    ax.set_title(title)
    return _save(fig, path)
