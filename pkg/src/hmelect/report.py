"""CSV and figure output for the verification suites.

Figures are rendered with the Agg backend so the CLI works headless; the
delimited results file next to each figure carries the per-check rows the
figure summarizes.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def write_rows_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def agreement_figure(
    path: Path,
    title: str,
    labels: Sequence[str],
    agreements: Sequence[int],
    totals: Sequence[int],
) -> None:
    """Horizontal bar chart: agreement fraction per comparator."""
    fig, ax = plt.subplots(figsize=(7, max(2.0, 0.5 * len(labels) + 1)))
    fractions = [a / t if t else 1.0 for a, t in zip(agreements, totals)]
    ypos = range(len(labels))
    ax.barh(list(ypos), fractions, color="#2a6f97")
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(labels)
    ax.set_xlim(0, 1.05)
    ax.set_xlabel("agreement fraction")
    ax.set_title(title)
    for y, (a, t) in enumerate(zip(agreements, totals)):
        ax.text(min(a / t if t else 1.0, 1.0), y, f" {a}/{t}", va="center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def runtime_figure(path: Path, title: str, runtimes: Sequence[float]) -> None:
    """Histogram of per-instance runtimes in milliseconds."""
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.hist([r * 1000 for r in runtimes], bins=30, color="#6a994e")
    ax.set_xlabel("per-instance runtime (ms)")
    ax.set_ylabel("instances")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
