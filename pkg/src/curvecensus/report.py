"""Figure rendering for census reports.

Figures are written straight to files (Agg backend), intended to sit next to
the delimited exports: a heatmap of the (defect, length) table and, per
defect, the census counts against their quadratic polynomial.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .census import CensusTable, motif_table, poly_extract


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def census_heatmap(table: CensusTable, path: str | Path) -> Path:
    """Render the table as an annotated log-scale grid."""
    plt = _plt()
    deltas = table.deltas()
    lengths = table.lengths()
    grid = np.array(
        [[table.count(d, L) for d in deltas] for L in lengths], dtype=float
    )
    fig, ax = plt.subplots(
        figsize=(1.0 + 0.6 * len(deltas), 1.0 + 0.45 * len(lengths))
    )
    im = ax.imshow(np.log10(grid + 1.0), aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(deltas)), [str(d) for d in deltas])
    ax.set_yticks(range(len(lengths)), [str(L) for L in lengths])
    ax.set_xlabel("defect")
    ax.set_ylabel("length L")
    ax.set_title(f"N_delta(L), method={table.method}")
    if grid.size <= 400:
        for i in range(len(lengths)):
            for j in range(len(deltas)):
                v = int(grid[i, j])
                ax.text(
                    j,
                    i,
                    str(v),
                    ha="center",
                    va="center",
                    fontsize=7,
                    color="white" if grid[i, j] < grid.max() / 2 else "black",
                )
    fig.colorbar(im, ax=ax, label="log10(1 + count)")
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def polynomial_figure(
    delta: int,
    path: str | Path,
    lmax: int | None = None,
    cache_dir: str | Path | None = None,
) -> Path:
    """Census counts for one defect with the fitted quadratic overlaid."""
    plt = _plt()
    hi = lmax if lmax is not None else delta + 12
    table = motif_table(delta, range(2, hi + 1), cache_dir)
    poly = poly_extract(delta, cache_dir)
    ls = list(range(2, hi + 1))
    counts = [table.count(delta, L) for L in ls]
    xs = np.linspace(2, hi, 200)
    ys = [float(poly.a2) * x * x + float(poly.a1) * x + float(poly.a0) for x in xs]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, ys, "-", color="tab:orange", label=f"p(L) = {poly}")
    ax.plot(ls, counts, "o", color="tab:blue", label="census count")
    ax.axvline(poly.valid_from, color="gray", linestyle=":", label=f"L = {poly.valid_from}")
    ax.set_xlabel("length L")
    ax.set_ylabel("count")
    ax.set_title(f"defect {delta}")
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
