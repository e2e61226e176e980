"""Render sweep tables as coverage-curve figures."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_sweep_figure(rows: list[dict], path: str, title: str | None = None) -> None:
    """Plot analytic coverage vs n, one line per k, with empirical points and
    error bars where the rows carry them. Writes a PNG (or whatever the path
    extension selects) and closes the figure."""
    if not rows:
        raise ValueError("no rows to plot")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for k in sorted({row["k"] for row in rows}):
        sub = sorted((r for r in rows if r["k"] == k), key=lambda r: r["n"])
        ns = [r["n"] for r in sub]
        line, = ax.plot(ns, [r["analytic_coverage"] for r in sub],
                        label=f"k = {k} (analytic)")
        if any(r.get("empirical_mean") is not None for r in sub):
            ax.errorbar(ns,
                        [r["empirical_mean"] for r in sub],
                        yerr=[r["std_error"] for r in sub],
                        fmt="o", ms=4, capsize=3, color=line.get_color(),
                        label=f"k = {k} (simulated)")
    ax.set_xlabel("deployed nodes n")
    ax.set_ylabel("network coverage intensity")
    ax.set_ylim(0.0, 1.05)
    ax.grid(True, alpha=0.3)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
