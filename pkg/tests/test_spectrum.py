import pytest
import hypothesis.strategies as st
from hypothesis import given

from strandcode.core import StrandMultiset, strand
from strandcode.errors import AmbiguousSpectrum, MalformedSpectrum, SpectrumError, WindowTooLong
from strandcode.spectrum import Profile, is_repeat_free, profile, reconstruct, stitch, unique_count

import oracles

EXAMPLE = StrandMultiset.parse("01010", "00101", "11101")


def mers(*texts):
    return Profile([strand(t) for t in texts], len(texts[0]))


def test_profile_worked_example():
    expected = mers("010", "101", "010", "001", "010", "101", "111", "110", "101")
    assert profile(EXAMPLE, 3) == expected
    assert profile(EXAMPLE, 3).total == 9


def test_profile_full_window_is_the_multiset():
    assert sorted(profile(EXAMPLE, 5).elements()) == list(EXAMPLE.strands)


def test_profile_ternary():
    S = StrandMultiset.parse("0011", "1220")
    assert profile(S, 3) == mers("001", "011", "122", "220")


def test_profile_window_too_long():
    with pytest.raises(WindowTooLong):
        profile(EXAMPLE, 6)


def test_unique_count():
    assert unique_count(profile(EXAMPLE, 3)) == 5
    P = mers("001", "011", "122")
    assert unique_count(P) == P.total
    assert unique_count(Profile([], 3)) == 0


def test_is_repeat_free():
    assert is_repeat_free(strand("0110"), 2)
    assert not is_repeat_free(strand("01010"), 2)
    assert is_repeat_free(strand("01010"), 5)
    with pytest.raises(WindowTooLong):
        is_repeat_free(strand("01"), 3)


def test_stitch_examples():
    assert stitch(mers("001", "011", "122", "220"), 4, 2) == StrandMultiset.parse("0011", "1220")
    assert stitch(mers("0120"), 4, 1) == StrandMultiset.parse("0120")
    with pytest.raises(AmbiguousSpectrum):
        stitch(profile(EXAMPLE, 3), 5, 3)


def test_stitch_rejects_wrong_total():
    with pytest.raises(MalformedSpectrum):
        stitch(mers("001", "011", "122"), 4, 2)


def test_stitch_rejects_wrong_start_count():
    # 0110 and 1001 read as one cycle of 3-mers with no start
    with pytest.raises(MalformedSpectrum):
        stitch(mers("011", "110", "100", "001"), 4, 2)


def test_stitch_leftover_mers():
    # two chains of length 4 expected, a closed cycle is left unused
    P = mers("001", "012", "120", "201", "222", "220")
    with pytest.raises(SpectrumError):
        stitch(P, 4, 2)


def test_reconstruct():
    x = strand("0011021")
    assert reconstruct(x, 2) == x


@pytest.mark.parametrize("q,n,k", [(2, n, k) for n in range(2, 7) for k in (1, 2)]
                         + [(3, n, k) for n in range(2, 6) for k in (1, 2)])
def test_stitch_matches_brute_force(q, n, k):
    """Stitching agrees with exhaustive preimage search on every multiset."""
    multisets = oracles.all_multisets(q, n, k)
    for ell in range(1, n):
        classes = oracles.profile_classes(q, n, k, ell + 1)
        for S in multisets:
            key = oracles.profile_of(S, ell + 1)
            P = Profile(key, ell + 1)
            distinct = oracles.distinct_windows(S, ell)
            try:
                got = stitch(P, n, k)
            except SpectrumError:
                assert n > ell + 1
                assert not distinct or len(classes[key]) > 1
                continue
            assert got.strands == S
            assert len(classes[key]) == 1
            if n > ell + 1:
                assert distinct


@pytest.mark.slow
def test_stitch_matches_brute_force_q3_n6():
    q, n, k = 3, 6, 2
    pool = oracles.all_multisets(q, n, k)
    for ell in range(1, n):
        classes = oracles.profile_classes(q, n, k, ell + 1)
        for key, group in classes.items():
            try:
                got = stitch(Profile(key, ell + 1), n, k)
            except SpectrumError:
                assert len(group) > 1 or not oracles.distinct_windows(group[0], ell)
                continue
            assert len(group) == 1 and got.strands == group[0]
            assert n == ell + 1 or oracles.distinct_windows(group[0], ell)
    assert sum(1 for _ in pool) == 266085


short = st.lists(st.integers(0, 2), min_size=3, max_size=14).map(tuple)


@given(short, st.integers(1, 4))
def test_unique_count_iff_repeat_free(x, ell):
    if ell > len(x):
        return
    full = unique_count(profile([x], ell)) == len(x) - ell + 1
    assert full == is_repeat_free(x, ell)


@given(st.lists(short, min_size=1, max_size=4), st.integers(1, 4), st.randoms())
def test_stitch_round_trip_and_order_free(xs, ell, rnd):
    n = min(len(x) for x in xs)
    xs = [x[:n] for x in xs]
    if ell + 1 > n or not oracles.distinct_windows(xs, ell):
        return
    S = StrandMultiset(xs)
    P = profile(S, ell + 1)
    shuffled = P.elements()
    rnd.shuffle(shuffled)
    assert stitch(P, n, len(xs)) == S
    assert stitch(Profile(shuffled, ell + 1), n, len(xs)) == S
