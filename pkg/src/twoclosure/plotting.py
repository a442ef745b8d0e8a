"""Figures for the CLI report path; always rendered to files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from twoclosure.orbitals import OrbitalPartition  # noqa: E402


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_color_matrix(P: OrbitalPartition, path, title: str | None = None) -> Path:
    """Heatmap of the orbital coloring of Omega x Omega."""
    n = P.degree
    size = max(3.0, min(10.0, 0.3 * n + 2))
    fig, ax = plt.subplots(figsize=(size + 1, size))
    cmap = plt.get_cmap("tab20" if P.rank <= 20 else "viridis", P.rank)
    im = ax.imshow(P.colors, cmap=cmap, vmin=-0.5, vmax=P.rank - 0.5, interpolation="nearest")
    ax.set_xlabel("beta")
    ax.set_ylabel("alpha")
    if n <= 24:
        ax.set_xticks(range(n))
        ax.set_yticks(range(n))
    ax.set_title(title or f"orbitals, degree {n}, rank {P.rank}")
    cb = fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    cb.set_label("orbital")
    if P.rank <= 20:
        cb.set_ticks(range(P.rank))
    return _save(fig, path)


def plot_suite(report: dict, path) -> Path:
    """Pass/fail counts, plus witness degrees when the suite reports them."""
    checks = report["checks"]
    witnesses = [
        (c["subject"], c["detail"].get("witness_degree"), c["detail"].get("order"))
        for c in checks
        if c["detail"].get("witness_degree") is not None
    ]
    ncols = 2 if witnesses else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5 + 6 * (ncols - 1), 4), squeeze=False)
    ax = axes[0][0]
    counts = report["counts"]
    labels = ["passed", "failed", "skipped"]
    ax.bar(labels, [counts.get(k, 0) for k in labels], color=["tab:green", "tab:red", "tab:gray"])
    ax.set_title(f"{report['suite']}: {counts.get('total', 0)} checks")
    ax.set_ylabel("checks")
    if witnesses:
        ax = axes[0][1]
        x = np.arange(len(witnesses))
        ax.bar(x, [w[1] for w in witnesses], color="tab:blue", label="witness degree")
        bound = [2 * w[2] if w[2] else np.nan for w in witnesses]
        ax.plot(x, bound, "k_", markersize=10, label="2|G|")
        ax.set_xticks(x)
        ax.set_xticklabels([w[0] for w in witnesses], rotation=90, fontsize=7)
        ax.set_ylabel("degree")
        ax.set_title("smallest non-2-closed action found")
        ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, path)
