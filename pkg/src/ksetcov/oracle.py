"""Ground-truth computations for the closed-form coverage model.

Everything here recomputes a coverage quantity by direct enumeration,
explicit summation, or sampling, without going through the closed forms in
`model`, so the two code paths can be checked against each other.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .estimates import CoverageEstimate

ENUMERATION_BUDGET = 10**7  # max assignment vectors for exact enumeration
SUMMATION_BUDGET = 10**5    # max node count for the explicit binomial sum

_SAMPLE_CHUNK = 100_000


class BudgetExceededError(ValueError):
    """An exact computation would exceed its configured budget."""


def _check_ck(c: int, k: int) -> None:
    if c < 0:
        raise ValueError("c must be >= 0")
    if k < 1:
        raise ValueError("k must be >= 1")


def enumerate_point_coverage(c: int, k: int) -> Fraction:
    """Point coverage intensity by brute force, as an exact rational.

    The c in-range sensors choose sub-networks independently and uniformly,
    so the k**c assignment vectors are equiprobable. For each vector the
    number of distinct indices used is the number of slots during which the
    point is covered; summing over all vectors and dividing by k**c * k
    gives the coverage intensity with no rounding anywhere.
    """
    _check_ck(c, k)
    outcomes = k**c
    if outcomes > ENUMERATION_BUDGET:
        raise BudgetExceededError(
            f"k**c = {outcomes} assignment vectors exceeds the enumeration "
            f"budget of {ENUMERATION_BUDGET}")
    total = 0
    for assignment in itertools.product(range(k), repeat=c):
        total += len(set(assignment))
    return Fraction(total, outcomes * k)


def binomial_network_coverage(q: float, n: int, k: int) -> float:
    """Network coverage intensity as an explicit expectation over the
    in-range sensor count:

        sum_{c=0..n} P[Binomial(n, q) = c] * (1 - (1 - 1/k)^c)

    Binomial weights are evaluated in log space (log-gamma differences), so
    the sum stays finite well past the n where factorials overflow, and the
    terms are combined with compensated summation.
    """
    _check_ck(0, k)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be in [0, 1]")
    if n > SUMMATION_BUDGET:
        raise BudgetExceededError(
            f"n = {n} exceeds the summation budget of {SUMMATION_BUDGET}")

    idle = 1.0 - 1.0 / k  # per-slot miss probability for one sensor
    if q == 0.0:
        return 0.0  # all mass at c = 0
    if q == 1.0:
        return 1.0 - idle**n  # all mass at c = n
    log_q = math.log(q)
    log_1mq = math.log1p(-q)
    lg_n1 = math.lgamma(n + 1)
    terms = []
    for count in range(n + 1):
        log_weight = (lg_n1 - math.lgamma(count + 1) - math.lgamma(n - count + 1)
                      + count * log_q + (n - count) * log_1mq)
        terms.append(math.exp(log_weight) * (1.0 - idle**count))
    return math.fsum(terms)


def sample_point_coverage(c: int, k: int, trials: int, seed: int) -> CoverageEstimate:
    """Monte Carlo point coverage for when k**c is beyond the enumeration budget.

    Draws `trials` independent assignment vectors from a Philox stream keyed
    by the seed and averages the distinct-index count over k. Deterministic
    for a fixed seed.
    """
    _check_ck(c, k)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if c == 0:
        return CoverageEstimate(mean=0.0, std_error=0.0, trials=trials,
                                ci95_halfwidth=0.0)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    values = np.empty(trials, dtype=float)
    for start in range(0, trials, _SAMPLE_CHUNK):
        stop = min(start + _SAMPLE_CHUNK, trials)
        draws = rng.integers(0, k, size=(stop - start, c))
        draws.sort(axis=1)
        distinct = 1 + np.count_nonzero(np.diff(draws, axis=1), axis=1)
        values[start:stop] = distinct / k
    return CoverageEstimate.from_trials(values)
