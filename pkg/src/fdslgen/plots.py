"""Figure rendering for the stats report (Agg backend, files only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_foreground_histogram(stats, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    edges = stats.histogram_edges
    widths = [b - a for a, b in zip(edges[:-1], edges[1:])]
    ax.bar(edges[:-1], stats.histogram_counts, width=widths, align="edge",
           color="#444444", edgecolor="white", linewidth=0.3)
    ax.set_xlabel("foreground pixel ratio")
    ax.set_ylabel("images")
    ax.set_title(f"{stats.family}: foreground ratio over {stats.image_count} images")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_per_class_means(stats, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [row["class_id"] for row in stats.per_class]
    ys = [row["mean_foreground_ratio"] for row in stats.per_class]
    ax.plot(xs, ys, ".", markersize=3, color="#1f6fb2")
    ax.set_xlabel("class id")
    ax.set_ylabel("mean foreground ratio")
    ax.set_title(f"{stats.family}: per-class foreground means")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_stats_figures(stats, out_dir: Path) -> list[Path]:
    out_dir = Path(out_dir)
    paths = [out_dir / "foreground_histogram.png", out_dir / "per_class_means.png"]
    save_foreground_histogram(stats, paths[0])
    save_per_class_means(stats, paths[1])
    return paths
