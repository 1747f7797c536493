import itertools
import random

import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from strandcode import rll
from strandcode.errors import (
    InfeasibleParams,
    MalformedCodeword,
    ParameterError,
    WindowTooShort,
)
from strandcode.repeat_free import min_window, rf_decode, rf_encode, rf_params
from strandcode.spectrum import is_repeat_free, reconstruct


def test_basic_window_rule():
    P = rf_params(2, 10, "basic")
    assert (P.ell, P.m, P.redundancy) == (10, 9, 1)
    with pytest.raises(WindowTooShort):
        rf_params(2, 40, "basic", ell=13)
    assert rf_params(3, 40, "basic").ell == 2 * 4 + 2


def test_basic_degenerate_window_appends_one():
    P = rf_params(2, 10, "basic")
    for x in itertools.product(range(2), repeat=9):
        c = rf_encode(x, P)
        assert c == x + (1,)
        assert rf_decode(c, P) == x


def test_basic_no_work_appends_one():
    P = rf_params(3, 30, "basic")
    rng = random.Random(3)
    hits = 0
    for _ in range(200):
        x = tuple(rng.randrange(3) for _ in range(P.m))
        if is_repeat_free(x + (1,), P.ell):
            hits += 1
            assert rf_encode(x, P) == x + (1,)
            assert rf_decode(x + (1,), P) == x
    assert hits > 100


@pytest.mark.parametrize("q,n1", [(2, 40), (3, 30), (4, 64), (2, 200)])
def test_basic_all_zero(q, n1):
    P = rf_params(q, n1, "basic")
    x = (0,) * P.m
    c = rf_encode(x, P)
    assert len(c) == n1 and is_repeat_free(c, P.ell)
    assert rf_decode(c, P) == x


def test_marker_example():
    P = rf_params(3, 32, "marker", run_bound=2)
    assert P.ell == 4 + 2 + 5
    B = rll.block_len(3, 2)
    # largest m with m + ceil(m / B) <= n'
    assert P.m == max(m for m in range(33) if m + -(-m // B) <= 32) == 25
    assert P.redundancy == rll.redundancy(32, 2, 3)
    rng = random.Random(11)
    for _ in range(300):
        x = tuple(rng.randrange(3) for _ in range(P.m))
        c = rf_encode(x, P)
        assert is_repeat_free(c, P.ell)
        assert rf_decode(c, P) == x


def test_marker_without_repeats_is_plain_rll():
    P = rf_params(3, 32, "marker", run_bound=2)
    rng = random.Random(12)
    seen = 0
    for _ in range(200):
        x = tuple(rng.randrange(3) for _ in range(P.m))
        y = rll.encode(x, 2, 3)
        z = y + (1,) * (32 - len(y))
        if is_repeat_free(z, P.ell):
            seen += 1
            assert rf_encode(x, P) == z
    assert seen > 50


def test_marker_window_rule():
    with pytest.raises(WindowTooShort):
        rf_params(3, 32, "marker", ell=10, run_bound=2)
    with pytest.raises(InfeasibleParams):
        rf_params(2, 40, "marker", run_bound=2)


def test_unknown_variant():
    with pytest.raises(ParameterError):
        rf_params(2, 10, "fancy")


def test_enumerative_is_a_bijection_onto_a_prefix():
    P = rf_params(2, 8, "enumerative", ell=3)
    words = [w for w in itertools.product(range(2), repeat=8) if is_repeat_free(w, 3)]
    assert 2 ** P.m <= len(words) < 2 ** (P.m + 1)
    images = [rf_encode(x, P) for x in itertools.product(range(2), repeat=P.m)]
    assert images == words[:2 ** P.m]
    assert min_window(2, 8, "enumerative") == 3


@pytest.mark.parametrize("variant", ["basic", "marker"])
def test_truncated_codeword_rejected(variant):
    P = rf_params(3, 60, variant)
    c = rf_encode((0,) * P.m, P)
    with pytest.raises(MalformedCodeword):
        rf_decode(c[:-1], P)


@pytest.mark.parametrize("variant", ["basic", "marker"])
def test_random_words_never_decode_silently(variant):
    P = rf_params(2, 48, variant)
    rng = random.Random(9)
    for _ in range(400):
        c = tuple(rng.randrange(2) for _ in range(48))
        try:
            x = rf_decode(c, P)
        except MalformedCodeword:
            continue
        assert rf_encode(x, P) == c


def _payloads(q, m):
    return st.one_of(
        st.lists(st.integers(0, q - 1), min_size=m, max_size=m),
        st.lists(st.integers(0, q - 1), min_size=1, max_size=6).map(
            lambda pat: [pat[i % len(pat)] for i in range(m)]),
    ).map(tuple)


@pytest.mark.parametrize("variant", ["basic", "marker"])
@pytest.mark.parametrize("q,n1", [(2, 50), (3, 40), (4, 90)])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_round_trip(variant, q, n1, data):
    P = rf_params(q, n1, variant)
    x = data.draw(_payloads(q, P.m))
    c = rf_encode(x, P)
    assert len(c) == n1
    assert is_repeat_free(c, P.ell)
    assert rf_decode(c, P) == x
    assert reconstruct(c, P.ell) == c
    assert rf_encode(x, P) == c
