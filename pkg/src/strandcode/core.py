"""Alphabet, strand and multiset primitives.

A strand is a plain ``tuple`` of ints in ``[0, q-1]``; tuples are hashable,
which makes counting windows and grouping multisets cheap. Positions in the
public API are 1-based, slices internally are 0-based.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .errors import ParameterMismatch, WidthTooSmall, WindowTooLong

Strand = Tuple[int, ...]


def strand(text: str) -> Strand:
    """Parse a digit string such as ``"0110"`` into a strand."""
    return tuple(int(ch) for ch in text)


def to_str(x: Sequence[int]) -> str:
    if any(s > 9 for s in x):
        return ",".join(str(s) for s in x)
    return "".join(str(s) for s in x)


def check_alphabet(x: Sequence[int], q: int) -> None:
    for s in x:
        if not 0 <= s < q:
            raise ParameterMismatch(f"symbol {s} outside alphabet of size {q}")


def ceil_log(q: int, x: int) -> int:
    """Smallest ``w >= 0`` with ``q**w >= x`` (exact integer ceil of log_q x)."""
    w, p = 0, 1
    while p < x:
        p *= q
        w += 1
    return w


def ceil_loglog(q: int, x: int) -> int:
    """Exact ``ceil(log_q(log_q x))`` clamped at 0 for ``x <= q``."""
    t = 0
    while q ** (q ** t) < x:
        t += 1
    return t


def concat(*parts: Sequence[int]) -> Strand:
    out: list = []
    for p in parts:
        out.extend(p)
    return tuple(out)


def lmers(x: Sequence[int], ell: int) -> list:
    """All length-``ell`` windows of ``x``, left to right."""
    if ell < 1:
        raise ValueError("window length must be positive")
    if ell > len(x):
        raise WindowTooLong(f"window {ell} exceeds strand length {len(x)}")
    x = tuple(x)
    return [x[i:i + ell] for i in range(len(x) - ell + 1)]


def to_digits(value: int, width: int, q: int) -> Strand:
    """Big-endian base-q digits of ``value``, zero padded to ``width``."""
    digits = [0] * width
    for pos in range(width - 1, -1, -1):
        value, digits[pos] = divmod(value, q)
    if value:
        raise WidthTooSmall(f"value does not fit in {width} base-{q} digits")
    return tuple(digits)


def from_digits(digits: Sequence[int], q: int) -> int:
    value = 0
    for d in digits:
        value = value * q + d
    return value


def index_expansion(i: int, width: int, q: int, k: Optional[int] = None) -> Strand:
    """Fixed-width base-q label of strand number ``i`` (1-based).

    Encodes ``i - 1`` so that exactly ``ceil(log_q k)`` symbols suffice even
    when ``k`` is a power of ``q``.
    """
    k = i if k is None else k
    if q ** width < k:
        raise WidthTooSmall(f"{width} base-{q} symbols cannot label {k} strands")
    if not 1 <= i <= k:
        raise ValueError(f"strand index {i} outside [1, {k}]")
    return to_digits(i - 1, width, q)


class StrandMultiset:
    """An unordered multiset of equal-length strands.

    Stored in canonical form (sorted), so equality and hashing are multiset
    equality.
    """

    __slots__ = ("strands", "n", "k")

    def __init__(self, strands: Iterable[Sequence[int]]):
        items = tuple(sorted(tuple(s) for s in strands))
        if not items:
            raise ValueError("a strand multiset needs at least one strand")
        n = len(items[0])
        if n < 1 or any(len(s) != n for s in items):
            raise ParameterMismatch("all strands must share one positive length")
        self.strands = items
        self.n = n
        self.k = len(items)

    @classmethod
    def parse(cls, *texts: str) -> "StrandMultiset":
        return cls(strand(t) for t in texts)

    def counts(self) -> Counter:
        return Counter(self.strands)

    def is_distinct(self) -> bool:
        return len(set(self.strands)) == self.k

    def __iter__(self):
        return iter(self.strands)

    def __len__(self):
        return self.k

    def __eq__(self, other):
        if not isinstance(other, StrandMultiset):
            return NotImplemented
        return self.strands == other.strands

    def __hash__(self):
        return hash(self.strands)

    def __repr__(self):
        body = ", ".join(to_str(s) for s in self.strands)
        return f"{{{{{body}}}}}"


def multiset_equal(a: StrandMultiset, b: StrandMultiset) -> bool:
    return a.strands == b.strands


@dataclass(frozen=True)
class CodeParams:
    """Parameters of a multi-strand code instance.

    ``ell`` is the repeat-free window of the strand multiset (decoding reads
    ``(ell+1)``-mers). ``ell_prime`` and ``index_width`` are only meaningful
    for the indexed construction; ``m`` is the message length in symbols.
    """

    q: int
    n: int
    k: int
    ell: int
    n_prime: int
    m: int
    construction: str
    rf_variant: str
    ell_prime: Optional[int] = None
    index_width: int = 0
    run_bound: Optional[int] = None

    @property
    def redundancy(self) -> int:
        """Symbols of the raw ``n*k`` storage not carrying message."""
        return self.n * self.k - self.m
