"""Filtering and summarising a campaign of runs."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from ..errors import InsufficientData
from .experiment import RunRecord

STATISTICS = ("kappa", "F", "G_AB", "G_AC", "G_BC", "G_ABC")

# scaled median absolute deviation of a normal distribution
_MAD_SCALE = 1.4826


@dataclass(frozen=True)
class FilterPolicy:
    """Per-statistic robust outlier cut: drop values beyond ``threshold`` scaled MADs of the median.

    F is quadratic in the measurement noise around its complex-theory value,
    so its ensemble has a one-sided chi-square-like tail; a 5-MAD cut there
    removes genuine draws and shifts the mean by about one standard error.
    It gets its own, wider threshold.
    """

    threshold: float = 5.0
    peres_threshold: float = 10.0
    bins: str | int = "fd"

    def threshold_for(self, name: str) -> float:
        return self.peres_threshold if name == "F" else self.threshold


@dataclass(frozen=True)
class StatisticSummary:
    name: str
    mean: float
    std: float
    count: int
    count_before: int
    bin_edges: tuple[float, ...]
    bin_counts: tuple[int, ...]

    @property
    def standard_error(self) -> float:
        return self.std / math.sqrt(self.count)


@dataclass(frozen=True)
class CampaignSummary:
    runs_total: int
    lock_lost: int
    failed: int
    statistics: dict[str, StatisticSummary] = field(default_factory=dict)
    filtered_runs: tuple[int, ...] = ()

    def __getitem__(self, name: str) -> StatisticSummary:
        return self.statistics[name]


def outlier_mask(values: np.ndarray, threshold: float) -> np.ndarray:
    """True for values kept by the scaled-MAD cut."""
    if values.size == 0 or math.isinf(threshold):
        return np.ones(values.size, dtype=bool)
    median = np.median(values)
    deviation = np.abs(values - median)
    mad = _MAD_SCALE * np.median(deviation)
    return deviation <= threshold * mad


def _histogram(values: list[float], bins) -> tuple[tuple[float, ...], tuple[int, ...]]:
    data = np.asarray(values)
    if np.ptp(data) == 0:
        edges = np.array([data[0] - 0.5, data[0] + 0.5])
    else:
        edges = np.histogram_bin_edges(data, bins=bins)
    counts, edges = np.histogram(data, bins=edges)
    return tuple(float(e) for e in edges), tuple(int(c) for c in counts)


def aggregate_runs(records, policy: FilterPolicy = FilterPolicy()) -> CampaignSummary:
    """Drop lock-loss and failed runs, cut outliers per statistic, then summarise.

    Means and standard deviations are computed with :mod:`statistics`, whose
    exact rational arithmetic keeps summaries bit-reproducible.
    """
    records = sorted(records, key=lambda r: r.run_index)
    excluded: set[int] = set()
    summaries = {}
    for name in STATISTICS:
        indices, values = [], []
        for rec in records:
            value = rec.statistic(name)
            if value is None or not math.isfinite(value):
                excluded.add(rec.run_index)
                continue
            indices.append(rec.run_index)
            values.append(float(value))
        keep = outlier_mask(np.asarray(values), policy.threshold_for(name))
        retained = [v for v, k in zip(values, keep) if k]
        excluded.update(i for i, k in zip(indices, keep) if not k)
        if len(retained) < 2:
            raise InsufficientData(f"only {len(retained)} runs retained for {name}")
        edges, counts = _histogram(retained, policy.bins)
        summaries[name] = StatisticSummary(
            name=name,
            mean=statistics.mean(retained),
            std=statistics.stdev(retained),
            count=len(retained),
            count_before=len(records),
            bin_edges=edges,
            bin_counts=counts,
        )
    return CampaignSummary(
        runs_total=len(records),
        lock_lost=sum(r.lock_lost for r in records),
        failed=sum(r.failed and not r.lock_lost for r in records),
        statistics=summaries,
        filtered_runs=tuple(sorted(excluded)),
    )
