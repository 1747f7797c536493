import math

import pytest

from strandcode.analysis import (
    bound_report,
    census,
    channel_bounds_hold,
    channel_log_bounds,
    channel_size_exact,
    distinct_bounds_hold,
    distinct_channel_size,
    indexed_bound,
    log_q,
    overlapping_bound,
    profile_count_upper,
    tradeoff_row,
    tradeoff_table,
)
from strandcode.core import StrandMultiset
from strandcode.errors import EmptySpace, ParameterError, ScaleTooLarge, WindowTooLong

import oracles


def test_channel_size_examples():
    assert channel_size_exact(2, 2, 2) == 10
    assert channel_size_exact(3, 4, 1) == 81
    assert distinct_channel_size(2, 2, 2) == 6
    assert distinct_channel_size(2, 1, 2) == 1


@pytest.mark.parametrize("q,n,k", [(2, 2, 3), (2, 3, 2), (3, 2, 2), (2, 1, 4)])
def test_channel_size_matches_oracle(q, n, k):
    assert channel_size_exact(q, n, k) == oracles.multiset_count(q, n, k)
    assert channel_size_exact(q, n, k) == len(oracles.all_multisets(q, n, k))


def test_distinct_space_empty():
    with pytest.raises(EmptySpace):
        distinct_channel_size(2, 2, 5)


def test_channel_log_bounds_example():
    lo, hi = channel_log_bounds(2, 2, 2)
    assert lo == pytest.approx(3.0)
    assert hi == pytest.approx(4 + 2 * math.log2(math.e / 2 + math.e / 8))
    assert lo <= math.log2(10) <= hi


@pytest.mark.parametrize("q", [2, 3, 4])
def test_channel_bounds_hold_exactly(q):
    for n in range(1, 5):
        for k in range(1, 7):
            assert channel_bounds_hold(q, n, k) == (True, True)


def test_distinct_lower_estimate_overshoots_single_strand():
    # one strand: the estimate is e q^n - e/2, which exceeds q^n
    for q, n in [(2, 1), (2, 5), (3, 3), (4, 2)]:
        lower_ok, upper_ok = distinct_bounds_hold(q, n, 1)
        assert upper_ok and not lower_ok


def test_profile_count_upper():
    assert profile_count_upper(2, 2, 2, 2) == 10
    assert profile_count_upper(2, 3, 1, 2) == math.comb(2 + 3, 3)
    with pytest.raises(WindowTooLong):
        profile_count_upper(2, 3, 1, 4)


@pytest.mark.parametrize("q,n,k,ell,A,B", [(2, 2, 1, 1, 2, 3), (2, 3, 1, 2, 6, 7)])
def test_census_small_examples(q, n, k, ell, A, B):
    c = census(q, n, k, ell)
    assert (c.size_A, c.size_B) == (A, B)


@pytest.mark.parametrize("q,n,k", [(2, 3, 2), (2, 4, 2), (3, 3, 2), (2, 3, 3), (2, 5, 1)])
def test_census_matches_oracle(q, n, k):
    for ell in range(1, n + 1):
        classes = oracles.profile_classes(q, n, k, ell)
        c = census(q, n, k, ell)
        assert c.size_B == len(classes)
        assert c.size_A == sum(1 for g in classes.values() if len(g) == 1)
        assert c.total == channel_size_exact(q, n, k)
        for key, group in list(classes.items())[:20]:
            assert c.class_size(StrandMultiset(group[0])) == len(group)


def test_census_full_window_separates_everything():
    c = census(3, 2, 3, 2)
    assert c.size_A == c.size_B == channel_size_exact(3, 2, 3)


def test_census_parallel_matches_serial():
    a = census(2, 4, 3, 2)
    b = census(2, 4, 3, 2, jobs=2)
    assert a.groups == b.groups


def test_census_monotone_in_window():
    sizes = [census(2, 5, 2, ell).size_B for ell in range(1, 6)]
    assert sizes == sorted(sizes)


def test_census_budget():
    with pytest.raises(ScaleTooLarge):
        census(2, 8, 4, 3, budget=1000)
    with pytest.raises(WindowTooLong):
        census(2, 3, 1, 4)


def test_indexed_case1_hand_value():
    q, n, k = 4, 1024, 16
    b = indexed_bound(1, q, n, k)
    n_in = (n - 2) * k
    ell = log_q(n_in, 4) + 2 * log_q(log_q(n_in, 4), 4) + 5 + 2
    assert b.ell == pytest.approx(ell)
    assert b.red_bound == pytest.approx(2 * n * k / log_q(n * k, 4) ** 2 + k * log_q(math.e, 4))
    assert b.red_bound == pytest.approx(680.276, abs=1e-3)
    assert b.asymptotic_leading_term


def test_overlapping_case3_value():
    b = overlapping_bound(3, 2, 10, 4, epsilon=1.0)
    assert b.red_bound == pytest.approx(4 * math.log2(400))
    assert b.ell == pytest.approx(2 * math.log2(40) + 5)


def test_binary_coefficient():
    a = overlapping_bound(1, 2, 256, 1)
    assert a.red_bound == pytest.approx(4 * 256 / 64 + 8)


def test_bound_case_checks():
    with pytest.raises(ParameterError):
        indexed_bound(4, 2, 10, 2)
    with pytest.raises(ParameterError):
        overlapping_bound(2, 2, 10, 2)


def test_bound_report():
    r = bound_report(2, 4, 2, 3)
    assert r.channel_size == 136
    assert r.census_B == census(2, 4, 2, 3).size_B
    assert r.census_B <= r.profile_upper
    assert 0 <= r.rate_A <= r.rate_B <= 1
    assert r.note == ""
    big = bound_report(2, 40, 8, 10, budget=100)
    assert big.census_A is None and "budget" in big.note


def test_tradeoff_rows_are_built():
    rows = tradeoff_table(3, 50, 4)
    assert [r.case for r in rows] == [1, 2, 3]
    for r in rows:
        assert r.expected_gap == 2
        assert r.ell_A_built is not None and r.ell_B_built is not None
        assert r.ell_A_built > r.ell_B_built


def test_tradeoff_unbuildable_is_noted():
    r = tradeoff_row(1, 2, 6, 16)
    assert r.gap_ok is None and "not buildable" in r.note
    assert r.deviations() == [r.note]
