"""Optional matplotlib rendering of sweep and figure datasets.

The CSV datasets are the contract; rendering is a convenience for eyeballing
them (``--plot`` on the CLI).  Collapsed spans serialize as a token, so they
are simply dropped from the plotted series.
"""

from __future__ import annotations

import csv
import io


def _series(text: str) -> tuple[list[str], list[list[str]]]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    return rows[0], rows[1:]


def render_csv_plot(text: str, png_path: str, title: str = "") -> None:
    """Plot every numeric column of a dataset against its first column."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    header, rows = _series(text)
    axis = header[0]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for col in range(1, len(header)):
        xs, ys = [], []
        for row in rows:
            try:
                y = float(row[col])
            except ValueError:
                continue  # booleans, regime labels, collapsed markers
            xs.append(float(row[0]))
            ys.append(y)
        if len(ys) >= 2 and len(set(ys)) > 1:
            ax.plot(xs, ys, label=header[col], linewidth=1.2)
    ax.set_xlabel(axis)
    ax.legend(loc="best", fontsize=8)
    if title:
        ax.set_title(title, fontsize=10)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
