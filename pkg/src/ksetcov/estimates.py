"""Empirical coverage statistics shared by the simulator and the sampling oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CoverageEstimate:
    """Mean coverage over independent trials with a normal-theory 95% CI."""

    mean: float
    std_error: float
    trials: int
    ci95_halfwidth: float

    @classmethod
    def from_trials(cls, values: np.ndarray) -> "CoverageEstimate":
        values = np.asarray(values, dtype=float)
        n = values.size
        if n < 1:
            raise ValueError("trials must be >= 1")
        first = float(values[0])
        if np.all(values == first):
            # identical samples: report the value itself, not accumulated
            # roundoff masquerading as spread
            return cls(mean=first, std_error=0.0, trials=n, ci95_halfwidth=0.0)
        mean = float(values.mean())
        std_error = float(values.std(ddof=1) / math.sqrt(n))
        return cls(mean=mean, std_error=std_error, trials=n,
                   ci95_halfwidth=1.96 * std_error)
