"""Wilcoxon rank-sum comparison and the +/-/= significance marking.

The two-sided p-value is exact (full enumeration over rank assignments,
ties sharing midranks) when the combined sample size is below 20, and a
normal approximation with tie and continuity corrections otherwise. Doubled
midranks are used internally so all exact-path comparisons are integer
arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

EXACT_LIMIT = 20  # combined sample size below which the exact test runs


@dataclass(frozen=True)
class SampleSummary:
    """Final-indicator values of one algorithm cell plus their moments."""

    values: tuple[float, ...]
    mean: float
    std: float  # sample standard deviation (N - 1)

    @classmethod
    def from_values(cls, values) -> "SampleSummary":
        vals = tuple(float(v) for v in values)
        if not vals:
            raise ValueError("values must be non-empty")
        arr = np.asarray(vals)
        std = float(arr.std(ddof=1)) if len(vals) > 1 else 0.0
        return cls(values=vals, mean=float(arr.mean()), std=std)

    def __post_init__(self):
        if not self.values:
            raise ValueError("values must be non-empty")
        arr = np.asarray(self.values)
        expect_std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
        if abs(self.mean - float(arr.mean())) > 1e-9 or abs(self.std - expect_std) > 1e-9:
            raise ValueError("mean/std inconsistent with values")


@dataclass(frozen=True)
class SignificanceMark:
    """'+', '-' or '=' for a variant against the baseline, with its p-value."""

    mark: str
    p_value: float

    def __post_init__(self):
        if self.mark not in ("+", "-", "="):
            raise ValueError("mark must be '+', '-' or '='")
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError("p_value must lie in [0, 1]")


def wilcoxon_rank_sum(a, b) -> float:
    """Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value for two samples."""
    a = np.asarray(list(a), dtype=float)
    b = np.asarray(list(b), dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("both samples need at least 2 values")
    n1, n = len(a), len(a) + len(b)
    combined = np.concatenate([a, b])
    if np.all(combined == combined[0]):
        return 1.0
    if n < EXACT_LIMIT:
        return _exact_p(combined, n1)
    return _normal_p(combined, n1)


def _exact_p(combined: np.ndarray, n1: int) -> float:
    """Exact two-sided p by enumerating all rank assignments of size n1.

    Doubled midranks keep every sum an integer, so tail counting is free of
    floating-point comparisons. The two-sided value doubles the smaller tail
    (capped at 1).
    """
    ranks2 = np.rint(2.0 * rankdata(combined)).astype(np.int64)
    observed = int(ranks2[:n1].sum())
    n = len(combined)
    subsets = np.array(list(itertools.combinations(range(n), n1)), dtype=np.intp)
    sums = ranks2[subsets].sum(axis=1)
    total = len(sums)
    tail_low = int((sums <= observed).sum())
    tail_high = int((sums >= observed).sum())
    return min(1.0, 2.0 * min(tail_low, tail_high) / total)


def _normal_p(combined: np.ndarray, n1: int) -> float:
    """Normal approximation with midranks, tie correction, and continuity
    correction."""
    n = len(combined)
    n2 = n - n1
    ranks = rankdata(combined)
    W = ranks[:n1].sum()
    mean = n1 * (n + 1) / 2.0
    _, tie_sizes = np.unique(combined, return_counts=True)
    tie_term = float(np.sum(tie_sizes**3 - tie_sizes))
    variance = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if variance <= 0.0:
        return 1.0
    shift = W - mean
    shift -= 0.5 * np.sign(shift)
    z = shift / math.sqrt(variance)
    return min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))


def mark(baseline: SampleSummary, variant: SampleSummary, alpha: float = 0.05) -> SignificanceMark:
    """Mark the variant against the baseline at significance level ``alpha``.

    '+' means the variant's values sit significantly lower (better, under
    minimization) by the rank-sum comparison, '-' significantly higher,
    '=' no significant difference. Direction comes from mean midranks, not
    means.
    """
    p = wilcoxon_rank_sum(baseline.values, variant.values)
    if p >= alpha:
        return SignificanceMark(mark="=", p_value=p)
    ranks = rankdata(np.concatenate([baseline.values, variant.values]))
    baseline_rank = ranks[: len(baseline.values)].mean()
    variant_rank = ranks[len(baseline.values) :].mean()
    return SignificanceMark(mark="+" if variant_rank < baseline_rank else "-", p_value=p)
