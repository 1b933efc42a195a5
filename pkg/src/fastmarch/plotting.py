"""Render the study CSV contents as figures.

The CSV is the canonical output; these renderings are a convenience for
eyeballing the same rows.  Figures are written next to the CSV by the CLI.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_error_study(rows, path) -> None:
    """Log-log error vs speed ratio, one curve per bucket count.

    Dashed lines show the bound sqrt(2) * r / buckets for each curve.
    """
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for n_buckets in sorted({row.n_buckets for row in rows}):
        pts = sorted(
            (row.r, row.max_rel_err) for row in rows if row.n_buckets == n_buckets
        )
        xs = [p[0] for p in pts]
        ys = [p[1] if p[1] > 0.0 else float("nan") for p in pts]
        (line,) = ax.plot(xs, ys, marker="o", label=f"{n_buckets} buckets")
        ax.plot(
            xs,
            [math.sqrt(2.0) * x / n_buckets for x in xs],
            linestyle="--",
            linewidth=0.8,
            alpha=0.5,
            color=line.get_color(),
        )
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("speed ratio f_max / f_min")
    ax.set_ylabel("max relative error")
    ax.set_title("Bucket-queue error vs speed ratio (dashed: bound)")
    ax.grid(True, which="both", linewidth=0.3, alpha=0.5)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_scaling_study(rows, path) -> None:
    """Per-point work and wall time vs problem size, one curve per queue."""
    fig, (ax_work, ax_time) = plt.subplots(1, 2, figsize=(10.0, 4.2))
    for kind in ("exact", "untidy"):
        series = sorted(
            (row.num_interior, row) for row in rows if row.queue == kind
        )
        ns = [s[0] for s in series]
        work = [
            (r.pops + r.stale_skips + r.bucket_traversals) / r.num_interior
            for _, r in series
        ]
        times = [r.wall_time for _, r in series]
        ax_work.plot(ns, work, marker="o", label=kind)
        ax_time.loglog(ns, times, marker="o", label=kind)
    ax_work.set_xscale("log")
    ax_work.set_xlabel("interior points N")
    ax_work.set_ylabel("(pops + skips + traversals) / N")
    ax_work.set_title("Work per point")
    ax_work.grid(True, which="both", linewidth=0.3, alpha=0.5)
    ax_work.legend(fontsize=8)
    ax_time.set_xlabel("interior points N")
    ax_time.set_ylabel("wall time [s]")
    ax_time.set_title("Wall time")
    ax_time.grid(True, which="both", linewidth=0.3, alpha=0.5)
    ax_time.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
