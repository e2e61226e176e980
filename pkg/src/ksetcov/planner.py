"""Deployment design bounds inverted from the closed-form coverage model.

Two questions a deployment designer asks:

  * how many nodes are needed so coverage reaches a target t, for a given
    number of sub-networks k (min_nodes), and
  * after deployment, how far can k be raised (to save energy) before
    coverage drops below t (max_subsets).

Closed forms seed both answers, but every returned bound is certified by
direct evaluation of the coverage at the bound and at the adjacent value,
because the closed-form rounding can land one integer off at the fourth
decimal of the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import model


class InfeasibleTargetError(ValueError):
    """The coverage target cannot be met; carries the best achievable value
    when a finite one exists (None for t >= 1, where coverage can only
    approach 1)."""

    def __init__(self, message: str, best_coverage: float | None = None):
        super().__init__(message)
        self.best_coverage = best_coverage


@dataclass(frozen=True)
class PlanTarget:
    """Required network coverage intensity, in [0, 1)."""

    t: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.t < 1.0:
            raise ValueError("target t must be in [0, 1); t = 1 is unreachable")


@dataclass(frozen=True)
class BindingCheck:
    """Coverage at the certified bound and at the adjacent infeasible value."""

    coverage_at_bound: float
    adjacent_value: int | None
    coverage_at_adjacent: float | None


@dataclass(frozen=True)
class PlanResult:
    bound_value: int
    achieved_coverage: float
    target: float
    closed_form: float | None  # interior value before rounding, when defined
    binding: BindingCheck


def _check_q(q: float) -> None:
    if not 0.0 < q <= 1.0:
        raise ValueError("q must be in (0, 1]")


def min_nodes(q: float, k: int, t: float) -> PlanResult:
    """Least node count n with network coverage intensity >= t.

    Seeded by ceil(ln(1 - t) / ln(1 - q/k)) and then certified by direct
    evaluation at the bound and its neighbor.
    """
    _check_q(q)
    if k < 1:
        raise ValueError("k must be >= 1")
    if t >= 1.0:
        raise InfeasibleTargetError(
            "target t must be < 1; coverage approaches 1 but never reaches it")
    target = PlanTarget(t)

    x = q / k
    if x >= 1.0:  # q = 1, k = 1: coverage is exactly 1 for any n
        closed_form = None
        n = 1
    else:
        if target.t == 0.0:
            closed_form = 0.0
        else:
            closed_form = math.log1p(-target.t) / math.log1p(-x)
        n = max(1, math.ceil(closed_form))
        while model.network_coverage_intensity(q, n, k) < target.t:
            n += 1
        while n > 1 and model.network_coverage_intensity(q, n - 1, k) >= target.t:
            n -= 1

    achieved = model.network_coverage_intensity(q, n, k)
    adjacent = n - 1 if n > 1 else None
    return PlanResult(
        bound_value=n,
        achieved_coverage=achieved,
        target=target.t,
        closed_form=closed_form,
        binding=BindingCheck(
            coverage_at_bound=achieved,
            adjacent_value=adjacent,
            coverage_at_adjacent=(model.network_coverage_intensity(q, adjacent, k)
                                  if adjacent is not None else None),
        ),
    )


def max_subsets(q: float, n: int, t: float) -> PlanResult:
    """Greatest sub-network count k >= 1 keeping coverage >= t.

    Seeded by floor(q / (1 - (1 - t)^(1/n))) and certified by direct
    evaluation; raises InfeasibleTargetError when even k = 1 misses t.
    """
    _check_q(q)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < t < 1.0:
        raise ValueError("target t must be in (0, 1)")

    best = model.network_coverage_intensity(q, n, 1)
    if best < t:
        raise InfeasibleTargetError(
            f"even k = 1 reaches only coverage {best:.6g} < target {t:.6g}",
            best_coverage=best)

    closed_form = q / -math.expm1(math.log1p(-t) / n)
    k = max(1, math.floor(closed_form))
    while k > 1 and model.network_coverage_intensity(q, n, k) < t:
        k -= 1
    while model.network_coverage_intensity(q, n, k + 1) >= t:
        k += 1

    achieved = model.network_coverage_intensity(q, n, k)
    return PlanResult(
        bound_value=k,
        achieved_coverage=achieved,
        target=t,
        closed_form=closed_form,
        binding=BindingCheck(
            coverage_at_bound=achieved,
            adjacent_value=k + 1,
            coverage_at_adjacent=model.network_coverage_intensity(q, n, k + 1),
        ),
    )


def coverage_curve(q: float, k: int, n_values) -> list[tuple[int, float]]:
    """Coverage as a function of n, one (n, coverage) row per value."""
    n_values = list(n_values)
    if not n_values:
        raise ValueError("n_values must be non-empty")
    return [(n, model.network_coverage_intensity(q, n, k)) for n in n_values]
