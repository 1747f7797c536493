"""Zero-run-limited strings: membership, exact counting, block encoders.

``Z(N, M)`` is the set of length-``N`` q-ary strings with no run of ``M``
consecutive zeros. Two block encoders are provided:

* ``q >= 3``: one redundant symbol per block of ``q**(M-1)*(q-2) + M - 1``
  payload symbols. A ``1`` is appended, then the leftmost ``0^M`` is cut out
  and replaced by an ``M``-symbol index at the end whose last symbol is in
  ``{2..q-1}``. A trailing ``1`` means "done".
* ``q == 2``: two redundant symbols per block of ``2**(M-2) + M - 1``
  payload symbols. Indices are framed as ``1 . (M-2 bits) . 0`` and the
  block is sealed with a leading ``1``.

Blocks end (binary: begin) with a ``1``-framed boundary, so encoded blocks
concatenate without creating a forbidden run. The final block may be short;
it is encoded as is, without padding.
"""
from __future__ import annotations

from typing import List, Sequence

from .core import Strand, from_digits, to_digits
from .errors import AlphabetTooSmall, MalformedCodeword, NonTermination


def is_rll(x: Sequence[int], M: int) -> bool:
    run = 0
    for s in x:
        run = run + 1 if s == 0 else 0
        if run >= M:
            return False
    return True


def count_rll(N: int, M: int, q: int) -> int:
    """Exact ``|Z(N, M)|`` by DP over the length of the trailing zero run."""
    if M < 1:
        raise ValueError("M must be at least 1")
    state = [1] + [0] * (M - 1)
    for _ in range(N):
        nxt = [0] * M
        total = sum(state)
        nxt[0] = total * (q - 1)
        for t in range(M - 1):
            nxt[t + 1] = state[t]
        state = nxt
    return sum(state)


# -- block geometry ---------------------------------------------------------

def block_len(q: int, M: int) -> int:
    if q >= 3:
        return q ** (M - 1) * (q - 2) + M - 1
    return 2 ** (M - 2) + M - 1


def block_redundancy(q: int) -> int:
    return 1 if q >= 3 else 2


def _check(q: int, M: int) -> None:
    if q < 2:
        raise AlphabetTooSmall("alphabet must have at least two symbols")
    if q >= 3 and M < 2:
        raise ValueError("the q>=3 encoder needs M >= 2")
    if q == 2 and M < 3:
        raise ValueError("the binary encoder needs M >= 3")


def encoded_length(N: int, M: int, q: int) -> int:
    """Codeword length for a length-``N`` payload."""
    B = block_len(q, M)
    return N + block_redundancy(q) * -(-N // B)


def capacity(N: int, M: int, q: int) -> int:
    """Largest payload length whose codeword fits in ``N`` symbols."""
    B = block_len(q, M)
    r = block_redundancy(q)
    full, rest = divmod(N, B + r)
    return full * B + max(0, rest - r)


def redundancy(N: int, M: int, q: int) -> int:
    """Redundancy of the encoder when its output must fill ``N`` symbols."""
    return N - capacity(N, M, q)


# -- q >= 3 -----------------------------------------------------------------

def _index_q(p: int, M: int, q: int) -> List[int]:
    # p is 1-based; the last symbol avoids {0, 1}
    hi, lo = divmod(p - 1, q - 2)
    return list(to_digits(hi, M - 1, q)) + [2 + lo]


def _unindex_q(tail: Sequence[int], M: int, q: int) -> int:
    return from_digits(tail[:-1], q) * (q - 2) + (tail[-1] - 2) + 1


def _find_run(w: Sequence[int], M: int, stop: int) -> int:
    """0-based start of the leftmost ``0^M`` fully inside ``w[:stop]``."""
    run = 0
    for i in range(stop):
        run = run + 1 if w[i] == 0 else 0
        if run == M:
            return i - M + 1
    return -1


def _encode_block_q(block: Sequence[int], M: int, q: int) -> List[int]:
    w = list(block) + [1]
    limit = len(w) * (len(w) + 1)
    data_end = len(block)
    for _ in range(limit):
        p = _find_run(w, M, data_end)
        if p < 0:
            return w
        assert p + 1 <= q ** (M - 1) * (q - 2)
        del w[p:p + M]
        w.extend(_index_q(p + 1, M, q))
        data_end -= M
    raise NonTermination("zero-run elimination did not terminate")


def _decode_block_q(w: Sequence[int], M: int, q: int) -> List[int]:
    w = list(w)
    while w and w[-1] not in (0, 1):
        if len(w) < M + 1:
            raise MalformedCodeword("index overruns block")
        tail = w[-M:]
        del w[-M:]
        p = _unindex_q(tail, M, q)
        if not 1 <= p <= len(w):
            raise MalformedCodeword(f"zero-run position {p} out of range")
        w[p - 1:p - 1] = [0] * M
    if not w or w[-1] != 1:
        raise MalformedCodeword("block does not end in the terminator 1")
    return w[:-1]


def rll_encode(x: Sequence[int], M: int, q: int) -> Strand:
    """Encode ``x`` into ``Z(len, M)`` with one redundant symbol per block."""
    if q < 3:
        raise AlphabetTooSmall("this encoder needs q >= 3; use rll_encode_binary")
    _check(q, M)
    B = block_len(q, M)
    out: List[int] = []
    for start in range(0, len(x), B):
        out.extend(_encode_block_q(x[start:start + B], M, q))
    return tuple(out)


def rll_decode(y: Sequence[int], M: int, q: int, validate: bool = True) -> Strand:
    if q < 3:
        raise AlphabetTooSmall("this decoder needs q >= 3; use rll_decode_binary")
    _check(q, M)
    B = block_len(q, M)
    out: List[int] = []
    for start in range(0, len(y), B + 1):
        chunk = y[start:start + B + 1]
        if len(chunk) < 2:
            raise MalformedCodeword("trailing block too short")
        out.extend(_decode_block_q(chunk, M, q))
    x = tuple(out)
    if validate and rll_encode(x, M, q) != tuple(y):
        raise MalformedCodeword("input is not a codeword (re-encoding differs)")
    return x


# -- q == 2 -----------------------------------------------------------------

def _encode_block_2(block: Sequence[int], M: int) -> List[int]:
    w = list(block) + [1]
    data_end = len(block)
    limit = len(w) * (len(w) + 1)
    for _ in range(limit):
        p = _find_run(w, M, data_end)
        if p < 0:
            return [1] + w
        assert p < 2 ** (M - 2)
        del w[p:p + M]
        w.extend([1, *to_digits(p, M - 2, 2), 0])
        data_end -= M
    raise NonTermination("zero-run elimination did not terminate")


def _decode_block_2(w: Sequence[int], M: int) -> List[int]:
    if not w or w[0] != 1:
        raise MalformedCodeword("binary block must start with the seal 1")
    w = list(w[1:])
    while w and w[-1] == 0:
        if len(w) < M + 1 or w[-M] != 1:
            raise MalformedCodeword("malformed index frame")
        p = from_digits(w[-M + 1:-1], 2)
        del w[-M:]
        if p > len(w) - 1:
            raise MalformedCodeword(f"zero-run position {p} out of range")
        w[p:p] = [0] * M
    if not w or w[-1] != 1:
        raise MalformedCodeword("block does not end in the terminator 1")
    return w[:-1]


def rll_encode_binary(x: Sequence[int], M: int) -> Strand:
    """Binary encoder into ``Z(len, M)``: two redundant bits per block."""
    _check(2, M)
    B = block_len(2, M)
    out: List[int] = []
    for start in range(0, len(x), B):
        out.extend(_encode_block_2(x[start:start + B], M))
    return tuple(out)


def rll_decode_binary(y: Sequence[int], M: int, validate: bool = True) -> Strand:
    _check(2, M)
    B = block_len(2, M)
    out: List[int] = []
    for start in range(0, len(y), B + 2):
        chunk = y[start:start + B + 2]
        if len(chunk) < 3:
            raise MalformedCodeword("trailing block too short")
        out.extend(_decode_block_2(chunk, M))
    x = tuple(out)
    if validate and rll_encode_binary(x, M) != tuple(y):
        raise MalformedCodeword("input is not a codeword (re-encoding differs)")
    return x


def encode(x: Sequence[int], M: int, q: int) -> Strand:
    """Dispatch to the encoder suited to ``q``."""
    return rll_encode_binary(x, M) if q == 2 else rll_encode(x, M, q)


def decode(y: Sequence[int], M: int, q: int, validate: bool = True) -> Strand:
    if q == 2:
        return rll_decode_binary(y, M, validate)
    return rll_decode(y, M, q, validate)
