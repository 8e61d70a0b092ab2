"""Rank statistics: Mann-Whitney U (exact with ties / normal) and Kendall tau-b."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats as sps

EXACT_LIMIT = 400


@dataclass(frozen=True)
class RankSumResult:
    U: float
    p: float
    method: str


def midranks(values: Sequence[float]) -> np.ndarray:
    return sps.rankdata(values, method="average")


def _exact_counts(doubled_ranks: np.ndarray, n_a: int) -> np.ndarray:
    """Number of size-``n_a`` subsets of the pooled sample for each doubled rank sum."""
    total = int(doubled_ranks.sum())
    # dp[k, s]: subsets of size k with doubled rank sum s
    dp = np.zeros((n_a + 1, total + 1), dtype=np.int64)
    dp[0, 0] = 1
    for r in doubled_ranks.astype(np.int64):
        dp[1:, r:] += dp[:-1, : total + 1 - r].copy()
    return dp[n_a]


def rank_sum_test(a: Sequence[float], b: Sequence[float], exact: bool | None = None) -> RankSumResult:
    """Two-sided Mann-Whitney test. ``U`` is the statistic for ``a``.

    The exact null distribution (ties handled through midranks) is used when
    ``len(a) * len(b) <= 400`` unless ``exact`` says otherwise; larger samples
    use the tie-corrected normal approximation with continuity correction.
    """
    n_a, n_b = len(a), len(b)
    if n_a == 0 or n_b == 0:
        raise ValueError("both samples must be non-empty")
    pooled = np.concatenate([np.asarray(a, float), np.asarray(b, float)])
    ranks = midranks(pooled)
    r_a = ranks[:n_a].sum()
    U = float(r_a - n_a * (n_a + 1) / 2)
    if exact is None:
        exact = n_a * n_b <= EXACT_LIMIT

    if exact:
        doubled = np.rint(ranks * 2).astype(np.int64)
        # count over the smaller sample; the two-sided p is the same either way
        if n_a <= n_b:
            counts = _exact_counts(doubled, n_a)
            observed = int(doubled[:n_a].sum())
        else:
            counts = _exact_counts(doubled, n_b)
            observed = int(doubled[n_a:].sum())
        total = counts.sum()
        lower = counts[: observed + 1].sum()
        upper = counts[observed:].sum()
        p = min(1.0, 2 * min(lower, upper) / total)
        return RankSumResult(U, float(p), "exact")

    n = n_a + n_b
    _, tie_counts = np.unique(pooled, return_counts=True)
    tie_term = float((tie_counts**3 - tie_counts).sum())
    var = n_a * n_b / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0:
        return RankSumResult(U, 1.0, "normal")
    mu = n_a * n_b / 2.0
    z = (abs(U - mu) - 0.5) / math.sqrt(var)
    p = min(1.0, 2 * sps.norm.sf(max(z, 0.0)))
    return RankSumResult(U, float(p), "normal")


@dataclass(frozen=True)
class KendallResult:
    tau: float
    p: float
    n: int
    defined: bool = True


def kendall_tau_b(x: Sequence[float], y: Sequence[float]) -> KendallResult:
    """Tau-b with the asymptotic (normal) two-sided p-value."""
    n = len(x)
    if n != len(y):
        raise ValueError("x and y must have the same length")
    if n < 2:
        return KendallResult(math.nan, math.nan, n, False)
    if n == 2:
        # scipy's variance term divides by n - 2; for two untied pairs Var(S) = 1
        sx = (x[0] > x[1]) - (x[0] < x[1])
        sy = (y[0] > y[1]) - (y[0] < y[1])
        if sx == 0 or sy == 0:
            return KendallResult(math.nan, math.nan, n, False)
        return KendallResult(float(sx * sy), math.erfc(1 / math.sqrt(2)), n)
    res = sps.kendalltau(x, y, variant="b", method="asymptotic")
    tau, p = float(res.statistic), float(res.pvalue)
    if math.isnan(tau):
        return KendallResult(tau, p, n, False)
    return KendallResult(tau, p, n)
