"""Rank aggregation and Nemenyi critical-difference analysis.

Accuracies are collected into a dataset-by-column table (a column is one
preprocessor+classifier pair). Within each dataset the columns are ranked
(rank 1 = most accurate, ties averaged); columns are then compared by their
average rank across datasets. Two columns are indistinguishable at the 0.05
level when their average ranks differ by less than the critical difference

    cd = q_alpha * sqrt(k * (k + 1) / (6 * n))

with q_alpha read from the embedded two-tailed Nemenyi table below.

Cells may be absent (a pair that is not applicable to some dataset); a row
ranks only its present columns and each column averages over its own
effective number of datasets.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

__all__ = [
    "AccuracyTable",
    "RankTable",
    "CdResult",
    "rank_within_dataset",
    "critical_difference",
    "average_ranks",
    "group_cliques",
    "nemenyi_report",
    "friedman_statistic",
    "rank_table_to_csv",
]

# Two-tailed studentized-range quantiles at alpha = 0.05, divided by sqrt(2),
# for k = 2..30 compared treatments (infinite degrees of freedom).
Q_ALPHA_05 = {
    2: 1.959964, 3: 2.343701, 4: 2.569032, 5: 2.727774, 6: 2.849705,
    7: 2.948320, 8: 3.030878, 9: 3.101730, 10: 3.163684, 11: 3.218654,
    12: 3.268004, 13: 3.312739, 14: 3.353618, 15: 3.391230, 16: 3.426041,
    17: 3.458425, 18: 3.488685, 19: 3.517073, 20: 3.543799, 21: 3.569040,
    22: 3.592946, 23: 3.615646, 24: 3.637252, 25: 3.657861, 26: 3.677556,
    27: 3.696413, 28: 3.714498, 29: 3.731869, 30: 3.748578,
}

ABSENT = float("nan")


@dataclass(frozen=True)
class AccuracyTable:
    """Dataset rows x column accuracies; NaN marks a non-applicable cell."""

    datasets: tuple[str, ...]
    columns: tuple[str, ...]
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.float64)
        if cells.shape != (len(self.datasets), len(self.columns)):
            raise ValueError(
                f"cells shape {cells.shape} does not match "
                f"{len(self.datasets)} datasets x {len(self.columns)} columns"
            )
        present = ~np.isnan(cells)
        if (present.sum(axis=1) < 2).any():
            bad = [d for d, ok in zip(self.datasets, present.sum(axis=1) >= 2) if not ok]
            raise ValueError(f"rows need >= 2 present cells: {bad}")
        vals = cells[present]
        if ((vals < 0.0) | (vals > 1.0)).any():
            raise ValueError("accuracies must lie in [0, 1]")
        object.__setattr__(self, "cells", cells)


@dataclass(frozen=True)
class RankTable:
    """Per-dataset ranks plus per-column averages.

    ``ranks`` is (n, k) with NaN where the accuracy cell was absent;
    ``effective_n[j]`` counts the datasets column j was ranked on.
    """

    datasets: tuple[str, ...]
    columns: tuple[str, ...]
    ranks: np.ndarray
    average_rank: np.ndarray
    effective_n: np.ndarray

    @property
    def k(self) -> int:
        return len(self.columns)

    @property
    def n(self) -> int:
        return len(self.datasets)


@dataclass(frozen=True)
class CdResult:
    cd: float
    q_alpha: float
    alpha: float
    groups: tuple[tuple[str, ...], ...]


def _rank_row(row: np.ndarray) -> np.ndarray:
    """Rank one row, highest accuracy first, NaN cells left NaN."""
    out = np.full(row.shape, np.nan)
    present = ~np.isnan(row)
    out[present] = stats.rankdata(-row[present], method="average")
    return out


def rank_within_dataset(
    accuracies: Sequence[tuple[str, float | None]],
) -> list[tuple[str, float]]:
    """Ranks for one dataset; absent (None/NaN) columns are skipped."""
    row = np.array(
        [np.nan if a is None else float(a) for _, a in accuracies], dtype=np.float64
    )
    if (~np.isnan(row)).sum() < 2:
        raise ValueError("need at least 2 present accuracies to rank")
    ranked = _rank_row(row)
    return [
        (col, float(r))
        for (col, _), r in zip(accuracies, ranked)
        if not math.isnan(r)
    ]


def critical_difference(k: int, n: int, alpha: float = 0.05) -> float:
    """Nemenyi critical difference for k columns over n datasets."""
    if alpha != 0.05:
        raise ValueError("only the alpha = 0.05 table is embedded")
    if k not in Q_ALPHA_05:
        raise ValueError(f"k must be in [2, 30], got {k}")
    if n < 1:
        raise ValueError("n must be >= 1")
    return Q_ALPHA_05[k] * math.sqrt(k * (k + 1) / (6.0 * n))


def average_ranks(table: AccuracyTable) -> RankTable:
    ranks = np.vstack([_rank_row(row) for row in table.cells])
    present = ~np.isnan(ranks)
    effective_n = present.sum(axis=0)
    if (effective_n == 0).any():
        bad = [c for c, n in zip(table.columns, effective_n) if n == 0]
        raise ValueError(f"columns never present: {bad}")
    with np.errstate(invalid="ignore"):
        avg = np.nanmean(ranks, axis=0)
    return RankTable(table.datasets, table.columns, ranks, avg, effective_n)


def group_cliques(ranks: RankTable, cd: float) -> tuple[tuple[str, ...], ...]:
    """Maximal runs of rank-adjacent columns whose spread is below cd.

    Every column appears in at least one group; groups contained in a wider
    one are dropped. Columns inside a group are ordered by average rank.
    """
    order = np.argsort(ranks.average_rank, kind="stable")
    avg = ranks.average_rank[order]
    cols = [ranks.columns[i] for i in order]
    k = len(cols)
    groups: list[tuple[str, ...]] = []
    prev_end = -1
    for i in range(k):
        j = i
        while j + 1 < k and avg[j + 1] - avg[i] < cd:
            j += 1
        if j > prev_end:
            groups.append(tuple(cols[i : j + 1]))
            prev_end = j
    return tuple(groups)


def nemenyi_report(table: AccuracyTable, alpha: float = 0.05) -> tuple[RankTable, CdResult]:
    """Average ranks plus the grouping implied by the critical difference."""
    rt = average_ranks(table)
    cd = critical_difference(rt.k, rt.n, alpha)
    groups = group_cliques(rt, cd)
    return rt, CdResult(cd, Q_ALPHA_05[rt.k], alpha, groups)


def friedman_statistic(table: AccuracyTable) -> tuple[float, float]:
    """Friedman omnibus (statistic, p-value) over fully populated rows.

    Informational only; nothing downstream branches on it. Returns NaNs when
    fewer than 3 columns or fewer than 2 complete rows are available.
    """
    complete = table.cells[~np.isnan(table.cells).any(axis=1)]
    if len(table.columns) < 3 or complete.shape[0] < 2:
        return (float("nan"), float("nan"))
    stat, p = stats.friedmanchisquare(*(complete[:, j] for j in range(complete.shape[1])))
    return (float(stat), float(p))


def rank_table_to_csv(ranks: RankTable) -> str:
    """CSV rows sorted by average rank (ties by column name)."""
    buf = io.StringIO()
    buf.write("column,avg_rank,effective_n\n")
    order = sorted(
        range(ranks.k), key=lambda j: (ranks.average_rank[j], ranks.columns[j])
    )
    for j in order:
        buf.write(
            f"{ranks.columns[j]},{ranks.average_rank[j]:.6f},{int(ranks.effective_n[j])}\n"
        )
    return buf.getvalue()
