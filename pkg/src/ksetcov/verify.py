"""Cross-check suite: closed forms against their independent oracles.

Three families of checks, each over a fixed desk-scale grid:

  * point coverage: exact enumeration equals the rational closed form
    (k**c - (k-1)**c) / k**c with zero tolerance,
  * network coverage: the closed form agrees with the explicit binomial
    summation to 1e-12 across the whole (q, n, k) grid,
  * planner bounds: every certified bound meets the target while the
    adjacent value misses it, and the two bounds agree with each other.

A failing cell is reported by name so a regression points straight at the
formula that drifted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import model, oracle, planner

NETWORK_AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cells: int
    detail: str  # empty when passed, failing cell otherwise


def check_point_coverage_enumeration(c_max: int = 8, k_max: int = 4) -> CheckResult:
    """Enumeration oracle equals the rational closed form, exactly."""
    name = "point-coverage-enumeration"
    cells = 0
    for k in range(1, k_max + 1):
        for c in range(0, c_max + 1):
            cells += 1
            expected = Fraction(k**c - (k - 1)**c, k**c)
            got = oracle.enumerate_point_coverage(c, k)
            if got != expected:
                return CheckResult(name, False, cells,
                                   f"c={c} k={k}: enumeration {got} != closed form {expected}")
    return CheckResult(name, True, cells, "")


def check_network_coverage_summation(
        n_max: int = 200,
        k_max: int = 6,
        q_values: tuple[float, ...] = (0.0, 0.003, 0.1, 0.5, 1.0),
        tol: float = NETWORK_AGREEMENT_TOL) -> CheckResult:
    """Closed form vs explicit binomial summation, within tol everywhere."""
    name = "network-coverage-summation"
    cells = 0
    for q in q_values:
        for k in range(1, k_max + 1):
            for n in range(1, n_max + 1):
                cells += 1
                closed = model.network_coverage_intensity(q, n, k)
                summed = oracle.binomial_network_coverage(q, n, k)
                if abs(closed - summed) > tol:
                    return CheckResult(
                        name, False, cells,
                        f"q={q} n={n} k={k}: |{closed!r} - {summed!r}| = "
                        f"{abs(closed - summed):.3e} > {tol:g}")
    return CheckResult(name, True, cells, "")


def check_planner_binding(
        q_values: tuple[float, ...] = (0.003, 0.01, 0.1),
        k_values: tuple[int, ...] = (1, 2, 3, 4, 5, 6),
        t_values: tuple[float, ...] = (0.5, 0.7, 0.9, 0.99)) -> CheckResult:
    """Certified bounds are tight and mutually consistent across the grid."""
    name = "planner-binding"
    cells = 0
    for q in q_values:
        for k in k_values:
            for t in t_values:
                cells += 1
                where = f"q={q} k={k} t={t}"
                res = planner.min_nodes(q, k, t)
                if res.achieved_coverage < t:
                    return CheckResult(name, False, cells,
                                       f"{where}: coverage at n_min below target")
                adj = res.binding.coverage_at_adjacent
                if adj is not None and adj >= t:
                    return CheckResult(name, False, cells,
                                       f"{where}: n_min - 1 already meets the target")
                kres = planner.max_subsets(q, res.bound_value, t)
                if kres.achieved_coverage < t:
                    return CheckResult(name, False, cells,
                                       f"{where}: coverage at k_max below target")
                if kres.binding.coverage_at_adjacent >= t:
                    return CheckResult(name, False, cells,
                                       f"{where}: k_max + 1 still meets the target")
                if kres.bound_value < k:
                    return CheckResult(name, False, cells,
                                       f"{where}: k_max {kres.bound_value} below the k "
                                       f"the node bound was planned for")
    return CheckResult(name, True, cells, "")


def run_all() -> list[CheckResult]:
    return [
        check_point_coverage_enumeration(),
        check_network_coverage_summation(),
        check_planner_binding(),
    ]
