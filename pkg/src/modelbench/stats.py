"""Distribution summaries shared by all dataset-level aggregates.

Percentiles use linear interpolation between closest ranks; this convention
is pinned so repeated runs serialize byte-identical aggregates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable


def percentile(sorted_values: list[float], p: float) -> float:
    """Linear-interpolated percentile of pre-sorted values (0 <= p <= 100)."""
    if not sorted_values:
        raise ValueError("percentile of empty sequence")
    if len(sorted_values) == 1:
        return sorted_values[0]
    rank = (p / 100.0) * (len(sorted_values) - 1)
    lo = math.floor(rank)
    frac = rank - lo
    if frac == 0:
        return sorted_values[lo]
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo])


@dataclass(frozen=True)
class DistributionStats:
    """min/max/mean/median/p75 summary; all value fields are None when count == 0."""

    min: float | None
    max: float | None
    mean: float | None
    median: float | None
    p75: float | None
    count: int

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "DistributionStats":
        xs = sorted(float(v) for v in values)
        if not xs:
            return cls(None, None, None, None, None, 0)
        return cls(
            min=xs[0],
            max=xs[-1],
            mean=sum(xs) / len(xs),
            median=percentile(xs, 50),
            p75=percentile(xs, 75),
            count=len(xs),
        )

    def to_json_dict(self) -> dict:
        return {
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "median": self.median,
            "p75": self.p75,
            "count": self.count,
        }
