"""Profiles (multisets of windows), repeat-freeness, and stitching."""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .core import Strand, StrandMultiset, lmers, to_str
from .errors import AmbiguousSpectrum, MalformedSpectrum, WindowTooLong


class Profile:
    """Multiset of equal-length mers, kept as a ``Counter``."""

    __slots__ = ("counts", "mer_length")

    def __init__(self, mers: Iterable[Sequence[int]], mer_length: int):
        self.mer_length = mer_length
        self.counts = Counter(tuple(m) for m in mers)
        for m in self.counts:
            if len(m) != mer_length:
                raise MalformedSpectrum(
                    f"mer {to_str(m)} has length {len(m)}, expected {mer_length}")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def elements(self) -> list:
        """All mers with multiplicity, in sorted order."""
        return sorted(self.counts.elements())

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self.mer_length == other.mer_length and self.counts == other.counts

    def __hash__(self):
        return hash((self.mer_length, frozenset(self.counts.items())))

    def __repr__(self):
        return "Profile({{" + ", ".join(to_str(m) for m in self.elements()) + "}})"


def profile(S, ell: int) -> Profile:
    """The ``ell``-profile of a strand multiset (or of a single strand)."""
    strands = [tuple(S)] if S and isinstance(next(iter(S)), int) else list(S)
    mers = []
    for x in strands:
        mers.extend(lmers(x, ell))
    return Profile(mers, ell)


def unique_count(P: Profile) -> int:
    return len(P.counts)


def is_repeat_free(x: Sequence[int], ell: int) -> bool:
    if ell > len(x):
        raise WindowTooLong(f"window {ell} exceeds strand length {len(x)}")
    x = tuple(x)
    seen = set()
    for i in range(len(x) - ell + 1):
        w = x[i:i + ell]
        if w in seen:
            return False
        seen.add(w)
    return True


def stitch(P: Profile, n: int, k: int) -> StrandMultiset:
    """Rebuild the ``k`` length-``n`` strands whose profile is ``P``.

    ``P`` holds ``(ell+1)``-mers. Works whenever the source strands have
    pairwise distinct ``ell``-mers; anything else is reported rather than
    guessed.
    """
    L = P.mer_length
    ell = L - 1
    if n < L:
        raise MalformedSpectrum(f"strand length {n} shorter than mer length {L}")
    if P.total != k * (n - ell):
        raise MalformedSpectrum(
            f"profile holds {P.total} mers, expected {k * (n - ell)} for n={n}, k={k}")
    if n == L:
        return StrandMultiset(P.counts.elements())

    by_prefix = {}
    suffixes = set()
    for mer, mult in P.counts.items():
        if mult > 1:
            raise AmbiguousSpectrum(f"mer {to_str(mer)} occurs {mult} times")
        pre, suf = mer[:-1], mer[1:]
        if pre in by_prefix:
            raise AmbiguousSpectrum(f"{ell}-mer {to_str(pre)} opens two mers")
        if suf in suffixes:
            raise AmbiguousSpectrum(f"{ell}-mer {to_str(suf)} closes two mers")
        by_prefix[pre] = mer
        suffixes.add(suf)

    starts = sorted(m for pre, m in by_prefix.items() if pre not in suffixes)
    if len(starts) != k:
        raise MalformedSpectrum(f"found {len(starts)} chain starts, expected {k}")

    used = 0
    strands = []
    for mer in starts:
        chain = list(mer)
        used += 1
        while len(chain) < n:
            nxt = by_prefix.get(tuple(chain[-ell:]))
            if nxt is None:
                raise MalformedSpectrum(
                    f"chain ended at length {len(chain)}, expected {n}")
            chain.append(nxt[-1])
            used += 1
        if tuple(chain[-ell:]) in by_prefix:
            raise MalformedSpectrum("chain continues past strand length")
        strands.append(tuple(chain))
    if used != P.total:
        raise MalformedSpectrum(f"{P.total - used} mers left after stitching")
    return StrandMultiset(strands)


def reconstruct(x: Strand, ell: int) -> Strand:
    """Single-strand round trip through the ``(ell+1)``-profile."""
    (out,) = stitch(profile([x], ell + 1), len(x), 1).strands
    return out
