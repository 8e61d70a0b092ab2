import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from teanet.stats import kendall_tau_b, rank_sum_test

from oracles import rank_sum_p_oracle, tau_b_oracle, u_statistic_oracle


def test_small_exact_example():
    res = rank_sum_test([1, 2], [3, 4])
    assert res.U == 0 and res.method == "exact"
    assert res.p == pytest.approx(2 / 6, abs=0) or res.p == float(Fraction(2, 6))


def test_extremes():
    a, b = [5, 6, 7], [1, 2]
    assert rank_sum_test(a, b).U == 6
    same = rank_sum_test([3, 3, 3], [3, 3, 3])
    assert same.U == 4.5 and same.p == 1.0


def test_empty_sample():
    with pytest.raises(ValueError):
        rank_sum_test([], [1.0])


def test_normal_branch_matches_scipy():
    rng = np.random.default_rng(7)
    a, b = rng.integers(0, 10, 25), rng.integers(0, 12, 25)
    ours = rank_sum_test(a, b)
    ref = sps.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True)
    assert ours.method == "normal"
    assert ours.U == ref.statistic
    assert ours.p == pytest.approx(ref.pvalue, abs=1e-12)


def test_forced_modes():
    assert rank_sum_test([1, 2, 3], [4, 5], exact=False).method == "normal"
    assert rank_sum_test(list(range(30)), list(range(30, 60)), exact=True).method == "exact"


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.integers(0, 4), min_size=1, max_size=6),
    st.lists(st.integers(0, 4), min_size=1, max_size=6),
)
def test_exact_with_ties_matches_enumeration(a, b):
    res = rank_sum_test(a, b)
    u, p = rank_sum_p_oracle(a, b)
    assert res.U == u
    assert res.p == float(p)


def test_exact_p_symmetric_in_arguments():
    rng = random.Random(3)
    for _ in range(50):
        a = [rng.randint(0, 6) for _ in range(rng.randint(1, 12))]
        b = [rng.randint(0, 6) for _ in range(rng.randint(1, 12))]
        assert rank_sum_test(a, b).p == rank_sum_test(b, a).p
        assert rank_sum_test(a, b).U + rank_sum_test(b, a).U == len(a) * len(b)


def test_kendall_examples():
    assert kendall_tau_b([1, 2, 3], [1, 2, 3]).tau == pytest.approx(1.0)
    assert kendall_tau_b([1, 2, 3], [3, 2, 1]).tau == pytest.approx(-1.0)
    assert kendall_tau_b([1, 2, 3], [1, 3, 2]).tau == pytest.approx(1 / 3)
    assert not kendall_tau_b([1.0], [2.0]).defined
    two = kendall_tau_b([0.1, 0.2], [0.4, 0.3])
    assert two.tau == -1.0 and two.p == pytest.approx(tau_b_oracle([0.1, 0.2], [0.4, 0.3])[1])
    assert not kendall_tau_b([1, 1], [1, 2]).defined
    assert not kendall_tau_b([1, 1, 1], [1, 2, 3]).defined
    with pytest.raises(ValueError):
        kendall_tau_b([1, 2], [1])


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=2, max_size=15))
def test_kendall_matches_pair_enumeration(pairs):
    x, y = [p[0] for p in pairs], [p[1] for p in pairs]
    res = kendall_tau_b(x, y)
    tau, p = tau_b_oracle(x, y)
    if math.isnan(tau):
        assert not res.defined
        return
    assert res.defined
    assert res.tau == pytest.approx(tau, abs=1e-12)
    assert res.p == pytest.approx(p, abs=1e-9)
    assert -1 <= res.tau <= 1 and 0 < res.p <= 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=3, max_size=12))
def test_kendall_monotone_invariance(pairs):
    x, y = [p[0] for p in pairs], [p[1] for p in pairs]
    base = kendall_tau_b(x, y)
    moved = kendall_tau_b([7 * v - 3 for v in x], [v**3 for v in y])
    if base.defined:
        assert moved.tau == pytest.approx(base.tau, abs=1e-12)
