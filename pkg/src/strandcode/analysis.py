"""Exact counts, closed-form bounds and brute-force censuses.

All logarithms are base ``q``; :func:`log_q` is the single place where the
natural log is converted. Exact quantities are Python integers.
"""
from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core import StrandMultiset, ceil_log, lmers
from .errors import (
    EmptySpace,
    ParameterError,
    ScaleTooLarge,
    StrandCodeError,
    WindowTooLong,
)

DEFAULT_BUDGET = 10 ** 7
# exact binomials are refused once their base-2 size passes this many bits
MAX_BITS = 1 << 22
E = math.e


def enumeration_budget() -> int:
    """Census budget in multisets; ``STRANDCODE_BUDGET`` overrides."""
    raw = os.environ.get("STRANDCODE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def log_q(x, q: int) -> float:
    """``log_q x`` for positive ints of any size or floats."""
    return math.log(x) / math.log(q)


def _guard_bits(bits: float, what: str) -> None:
    if bits > MAX_BITS:
        raise ScaleTooLarge(f"{what} needs about {bits:.3g} bits")


# -- channel sizes ----------------------------------------------------------

def channel_size_exact(q: int, n: int, k: int) -> int:
    """Number of multisets of ``k`` strands of length ``n``."""
    _guard_bits(n * k * math.log2(q), "channel size")
    return math.comb(k + q ** n - 1, k)


def channel_log_bounds(q: int, n: int, k: int) -> Tuple[float, float]:
    """Lower and upper estimates of ``log_q`` of the channel size.

    Below by ``q**(nk) / k!``, above by ``q**(nk) * (e/k + e/(2 q**n))**k``.
    """
    nk = n * k
    lower = nk - math.lgamma(k + 1) / math.log(q)
    upper = nk + k * log_q(E / k + E / 2 * q ** (-float(n)), q)
    return lower, upper


def distinct_channel_size(q: int, n: int, k: int) -> int:
    """Number of sets of ``k`` pairwise distinct strands."""
    if k > q ** n:
        raise EmptySpace(f"only {q}^{n} strands exist, cannot pick {k} distinct")
    _guard_bits(n * k * math.log2(q), "distinct channel size")
    return math.comb(q ** n, k)


def distinct_channel_log_bounds(q: int, n: int, k: int) -> Tuple[float, float]:
    """``log_q`` of ``q**(nk) (e/k - e/(2 q**n))**k`` and of ``q**(nk) / k!``."""
    if k > q ** n:
        raise EmptySpace(f"only {q}^{n} strands exist, cannot pick {k} distinct")
    nk = n * k
    lower = nk + k * log_q(E / k - E / 2 * q ** (-float(n)), q)
    upper = nk - math.lgamma(k + 1) / math.log(q)
    return lower, upper


def _e_bracket(terms: int = 40) -> Tuple[Fraction, Fraction]:
    """Rationals ``lo <= e <= hi`` from the factorial series."""
    total, term = Fraction(0), Fraction(1)
    for j in range(terms):
        total += term
        term /= j + 1
    return total, total + 2 * term


def _at_most(left: Fraction, rhs_lo: Fraction, rhs_hi: Fraction) -> bool:
    if left <= rhs_lo:
        return True
    if left > rhs_hi:
        return False
    raise ArithmeticError("comparison not settled by the rational bracket on e")


def channel_bounds_hold(q: int, n: int, k: int) -> Tuple[bool, bool]:
    """Exact check of both channel-size bounds, no floating point."""
    size = channel_size_exact(q, n, k)
    lower_ok = q ** (n * k) <= math.factorial(k) * size
    e_lo, e_hi = _e_bracket()
    qn = q ** n

    def rhs(e):
        return q ** (n * k) * (e / k + e / (2 * qn)) ** k

    # right side grows with e
    upper_ok = _at_most(Fraction(size), rhs(e_lo), rhs(e_hi))
    return lower_ok, upper_ok


def distinct_bounds_hold(q: int, n: int, k: int) -> Tuple[bool, bool]:
    """Exact check of both bounds on the distinct-strand space."""
    size = distinct_channel_size(q, n, k)
    e_lo, e_hi = _e_bracket()
    qn = q ** n

    def rhs(e):
        return q ** (n * k) * (e / k - e / (2 * qn)) ** k

    if rhs(e_hi) <= size:
        lower_ok = True
    elif rhs(e_lo) > size:
        lower_ok = False
    else:
        raise ArithmeticError("comparison not settled by the rational bracket on e")
    upper_ok = math.factorial(k) * size <= q ** (n * k)
    return lower_ok, upper_ok


def profile_count_upper(q: int, n: int, k: int, ell: int) -> int:
    """Count of profile vectors: ``C(k(n-ell+1) + q**ell - 1, q**ell - 1)``."""
    if ell > n:
        raise WindowTooLong(f"window {ell} exceeds strand length {n}")
    _guard_bits(min(q ** ell, k * (n - ell + 1)) * math.log2(k * (n - ell + 1) + q ** ell),
                "profile bound")
    return math.comb(k * (n - ell + 1) + q ** ell - 1, q ** ell - 1)


# -- census -----------------------------------------------------------------

def _profile_key(strands: Sequence[Tuple[int, ...]], mers: Dict) -> Tuple:
    out: list = []
    for s in strands:
        out.extend(mers[s])
    out.sort()
    return tuple(out)


def _census_shard(args) -> Counter:
    q, n, k, ell, firsts = args
    words = list(itertools.product(range(q), repeat=n))
    mers = {w: lmers(w, ell) for w in words}
    groups: Counter = Counter()
    for f in firsts:
        # the pool is copied per call, which would make k=1 quadratic
        tails = [()] if k == 1 else itertools.combinations_with_replacement(
            range(f, len(words)), k - 1)
        for rest in tails:
            groups[_profile_key([words[f]] + [words[i] for i in rest], mers)] += 1
    return groups


@dataclass
class Census:
    """Every multiset of ``k`` length-``n`` strands grouped by ``ell``-profile."""

    q: int
    n: int
    k: int
    ell: int
    groups: Counter = field(repr=False)

    @property
    def size_B(self) -> int:
        """Number of distinct profiles."""
        return len(self.groups)

    @property
    def size_A(self) -> int:
        """Number of multisets whose profile no other multiset shares."""
        return sum(1 for c in self.groups.values() if c == 1)

    @property
    def total(self) -> int:
        return sum(self.groups.values())

    def class_size(self, S: StrandMultiset) -> int:
        """How many multisets share the profile of ``S``."""
        return self.groups.get(_profile_key(S.strands, _MerCache(self.ell)), 0)

    def is_unique(self, S: StrandMultiset) -> bool:
        return self.class_size(S) == 1


class _MerCache(dict):
    def __init__(self, ell: int):
        super().__init__()
        self.ell = ell

    def __missing__(self, w):
        self[w] = v = lmers(w, self.ell)
        return v


def census(q: int, n: int, k: int, ell: int, budget: Optional[int] = None,
           jobs: int = 1) -> Census:
    """Exhaustive census of the channel at window ``ell``.

    Multisets are enumerated as nondecreasing index tuples, so no
    permutation is generated twice. With ``jobs > 1`` the enumeration is
    sharded on the smallest strand and the counters are merged.
    """
    if ell > n:
        raise WindowTooLong(f"window {ell} exceeds strand length {n}")
    if k < 1:
        raise ParameterError("k must be at least 1")
    budget = enumeration_budget() if budget is None else budget
    size = channel_size_exact(q, n, k) if n * k * math.log2(q) < 4096 else None
    if size is None or size > budget:
        raise ScaleTooLarge(f"census of q={q}, n={n}, k={k} exceeds budget {budget}")
    firsts = range(q ** n)
    if jobs <= 1:
        groups = _census_shard((q, n, k, ell, firsts))
    else:
        shards = [(q, n, k, ell, firsts[j::jobs]) for j in range(jobs)]
        groups = Counter()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_census_shard, shards):
                groups.update(part)
    return Census(q, n, k, ell, groups)


# -- leading-term redundancy formulas ---------------------------------------

@dataclass(frozen=True)
class BoundEval:
    """Window and redundancy from a leading-term formula.

    Lower-order terms are dropped, so these are indications, never
    guarantees; ``asymptotic_leading_term`` is always set.
    """

    construction: str
    case: int
    q: int
    n: int
    k: int
    epsilon: Optional[float]
    ell: float
    red_bound: float
    asymptotic_leading_term: bool = True


def _coefficient(q: int) -> float:
    return 2 * q if q == 2 else q / (q - 2)


def _loglog(x: float, q: int) -> float:
    return log_q(log_q(x, q), q)


def _check_case(case: int, epsilon: Optional[float]) -> float:
    if case not in (1, 2, 3):
        raise ParameterError(f"case must be 1, 2 or 3, got {case}")
    if case == 1:
        return 0.0
    if epsilon is None or epsilon <= 0:
        raise ParameterError("cases 2 and 3 need epsilon > 0")
    return float(epsilon)


def indexed_bound(case: int, q: int, n: int, k: int, epsilon: Optional[float] = None) -> BoundEval:
    """Leading terms for the indexed construction.

    Windows follow the inner code on ``n' = (n - log_q k) k`` symbols plus
    the label width ``log_q k``.
    """
    eps = _check_case(case, epsilon)
    nk = n * k
    lk = log_q(k, q)
    n_in = (n - lk) * k
    c = _coefficient(q)
    ke = k * log_q(E, q)
    if case == 1:
        ell = log_q(n_in, q) + 2 * _loglog(n_in, q) + 5 + lk
        red = c * nk / log_q(nk, q) ** 2 + ke
    else:
        ell = (1 + eps) * log_q(n_in, q) + 5 + lk
        if case == 2:
            alpha = lk / n
            red = c * (1 - alpha) ** (1 - eps) * nk ** (1 - eps) + ke
        else:
            red = ke
    return BoundEval("A", case, q, n, k, None if case == 1 else eps, ell, red)


def overlapping_bound(case: int, q: int, n: int, k: int, epsilon: Optional[float] = None) -> BoundEval:
    """Leading terms for the overlapping construction."""
    eps = _check_case(case, epsilon)
    nk = n * k
    c = _coefficient(q)
    if case == 1:
        ell = log_q(nk, q) + 2 * _loglog(nk, q) + 5
        red = c * nk / log_q(nk, q) ** 2 + k * log_q(n, q)
    else:
        ell = (1 + eps) * log_q(nk, q) + 5
        tail = k * ((1 + eps) * log_q(n, q) + eps * log_q(k, q))
        red = (c * nk ** (1 - eps) + tail) if case == 2 else tail
    return BoundEval("B", case, q, n, k, None if case == 1 else eps, ell, red)


# -- reports ----------------------------------------------------------------

@dataclass
class BoundReport:
    """One window length at fixed ``(q, n, k)``.

    ``rate_A``/``rate_B`` are ``log`` of the census sizes over ``log`` of the
    channel size; ``redundancy_measured`` is the redundancy of the largest
    unique-profile code at this window. ``formula_redundancy`` is the case-1
    leading-term redundancy of the overlapping construction. Census fields
    stay ``None`` when the enumeration is over budget, and ``note`` says why.
    """

    q: int
    n: int
    k: int
    ell: int
    channel_size: Optional[int]
    channel_log: float
    channel_log_lower: float
    channel_log_upper: float
    profile_upper: Optional[int]
    census_A: Optional[int] = None
    census_B: Optional[int] = None
    rate_A: Optional[float] = None
    rate_B: Optional[float] = None
    redundancy_measured: Optional[float] = None
    formula_redundancy: Optional[float] = None
    alpha: float = 0.0
    epsilon: Optional[float] = None
    note: str = ""
    asymptotic_leading_term: bool = False


def _rate(size: int, channel_log: float, q: int) -> float:
    if channel_log <= 0:
        return 1.0
    return log_q(size, q) / channel_log if size > 1 else 0.0


def bound_report(q: int, n: int, k: int, ell: int, budget: Optional[int] = None,
                 jobs: int = 1) -> BoundReport:
    lo, hi = channel_log_bounds(q, n, k)
    notes = []
    try:
        size = channel_size_exact(q, n, k)
        clog = log_q(size, q)
    except ScaleTooLarge as exc:
        size, clog = None, float("nan")
        notes.append(str(exc))
    try:
        upper = profile_count_upper(q, n, k, ell)
    except ScaleTooLarge as exc:
        upper = None
        notes.append(str(exc))
    row = BoundReport(q, n, k, ell, size, clog, lo, hi, upper, alpha=log_q(k, q) / n,
                      formula_redundancy=overlapping_bound(1, q, n, k).red_bound)
    try:
        cen = census(q, n, k, ell, budget, jobs)
    except ScaleTooLarge as exc:
        notes.append(str(exc))
    else:
        row.census_A, row.census_B = cen.size_A, cen.size_B
        row.rate_A = _rate(cen.size_A, clog, q)
        row.rate_B = _rate(cen.size_B, clog, q)
        if cen.size_A:
            row.redundancy_measured = clog - log_q(cen.size_A, q)
    row.note = "; ".join(notes)
    return row


@dataclass
class TradeoffRow:
    """Indexed vs overlapping construction at one ``(q, n, k)`` and case.

    ``*_formula`` fields are leading-term evaluations; ``*_built`` fields
    come from parameters this package actually derives. ``gap_ok`` checks
    the built window gap against ``ceil(log_q k)`` with slack 1.
    """

    case: int
    q: int
    n: int
    k: int
    epsilon: Optional[float]
    ell_A_formula: float
    ell_B_formula: float
    red_A_formula: float
    red_B_formula: float
    ell_A_built: Optional[int] = None
    ell_B_built: Optional[int] = None
    red_A_built: Optional[float] = None
    red_B_built: Optional[float] = None
    expected_gap: int = 0
    gap_ok: Optional[bool] = None
    red_ok: Optional[bool] = None
    note: str = ""
    asymptotic_leading_term: bool = True

    def deviations(self) -> List[str]:
        out = []
        if self.gap_ok is False:
            out.append(f"window gap {self.ell_A_built - self.ell_B_built} is not within 1 "
                       f"of {self.expected_gap}")
        if self.red_ok is False:
            out.append(f"red_A {self.red_A_built:.3f} > red_B {self.red_B_built:.3f}")
        if self.note:
            out.append(self.note)
        return out


def _built_variant(case: int, q: int, n_inner: int, epsilon: Optional[float]):
    if case == 3:
        return "basic", None
    if case == 1:
        return "marker", None
    floor = 3 if q == 2 else 2
    return "marker", max(floor, math.ceil(epsilon * log_q(n_inner, q)))


def tradeoff_row(case: int, q: int, n: int, k: int, epsilon: Optional[float] = None) -> TradeoffRow:
    from .constructions import derive_params_A, derive_params_B

    a = indexed_bound(case, q, n, k, epsilon)
    b = overlapping_bound(case, q, n, k, epsilon)
    row = TradeoffRow(case, q, n, k, a.epsilon, a.ell, b.ell, a.red_bound, b.red_bound,
                      expected_gap=ceil_log(q, k))
    try:
        clog = log_q(channel_size_exact(q, n, k), q)
    except ScaleTooLarge:
        clog = channel_log_bounds(q, n, k)[0]
    z = ceil_log(q, k)
    try:
        var, M = _built_variant(case, q, (n - z) * k, epsilon)
        pa = derive_params_A(q, n, k, var, run_bound=M)
        var, M = _built_variant(case, q, n * k, epsilon)
        pb = derive_params_B(q, n, k, var, run_bound=M)
    except StrandCodeError as exc:
        row.note = f"not buildable: {exc}"
        return row
    row.ell_A_built, row.ell_B_built = pa.ell, pb.ell
    row.red_A_built, row.red_B_built = clog - pa.m, clog - pb.m
    row.gap_ok = abs((pa.ell - pb.ell) - row.expected_gap) <= 1
    row.red_ok = row.red_A_built <= row.red_B_built
    return row


def tradeoff_table(q: int, n: int, k: int, epsilon: float = 0.5,
                   epsilon3: float = 1.5) -> List[TradeoffRow]:
    """The three cases side by side; case 3 uses ``epsilon3``."""
    return [tradeoff_row(1, q, n, k), tradeoff_row(2, q, n, k, epsilon),
            tradeoff_row(3, q, n, k, epsilon3)]
