"""Invertible encoders into repeat-free strings.

A string is ``ell``-repeat-free when its ``ell``-windows are pairwise
distinct; such a string is recovered from its ``(ell+1)``-windows by
stitching. Three variants share one interface:

``basic``
    ``ell >= 2*ceil(log_q n') + 2``, message length ``n' - 1``. A terminator
    ``1`` is added; while two windows coincide the earlier one is cut out and
    a segment ``(flag 0, i, j)`` of ``2w + 1 < ell`` symbols records where to
    copy it back from. The string shrinks with every cut, so the loop ends;
    the freed length is refilled with filler symbols that keep windows
    distinct. The codeword is emitted reversed, so for an input that needs no
    work the codeword is simply ``x . 1``.

``marker``
    ``ell >= ceil(log_q n') + M + 5``. The message is first mapped into
    ``Z(n', M)`` (no ``0^M``), after which ``0^M`` can serve as a marker. A
    repeated window is overwritten in place by ``0^M 1 E(src) 1...`` of the
    same length, where ``E`` is the zero-run-limited encoding of the source
    position. The newest block is always the rightmost ``0^M`` run, which is
    what lets the decoder peel blocks off in reverse order. No redundancy is
    added beyond the zero-run step.

``enumerative``
    Table lookup into the lexicographically sorted list of all repeat-free
    strings. Exponential, but usable for any window length at toy sizes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence

from . import rll
from .core import Strand, ceil_log, ceil_loglog, check_alphabet, from_digits, to_digits
from .errors import (
    EncodingFailure,
    InfeasibleParams,
    MalformedCodeword,
    NonTermination,
    ParameterError,
    ParameterMismatch,
    ScaleTooLarge,
    WindowTooShort,
)
from .spectrum import is_repeat_free

VARIANTS = ("basic", "marker", "enumerative")

ENUM_BUDGET = 1 << 20
_FILL_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class RfParams:
    q: int
    n_prime: int
    ell: int
    variant: str
    m: int
    run_bound: Optional[int] = None

    @property
    def redundancy(self) -> int:
        return self.n_prime - self.m


def default_run_bound(q: int, n_prime: int) -> int:
    floor = 3 if q == 2 else 2
    return max(2 * ceil_loglog(q, n_prime), floor)


def min_window(q: int, n_prime: int, variant: str, run_bound: Optional[int] = None) -> int:
    """Smallest window the variant supports at length ``n_prime``."""
    w = ceil_log(q, n_prime)
    if variant == "basic":
        return 2 * w + 2
    if variant == "marker":
        M = default_run_bound(q, n_prime) if run_bound is None else run_bound
        # marker, separator, source label and at least one closing 1
        return max(w + M + 5, M + 2 + rll.encoded_length(w, M, q))
    if variant == "enumerative":
        for ell in range(1, n_prime):
            if _enum_table(q, n_prime, ell)[1] >= 1:
                return ell
        raise InfeasibleParams(f"no repeat-free code of length {n_prime} carries a symbol")
    raise ValueError(f"unknown repeat-free variant {variant!r}")


def rf_params(q: int, n_prime: int, variant: str, ell: Optional[int] = None,
              run_bound: Optional[int] = None) -> RfParams:
    if variant not in VARIANTS:
        raise ParameterError(f"unknown repeat-free variant {variant!r}")
    if q < 2:
        raise InfeasibleParams("alphabet size q must be at least 2")
    if n_prime < 2:
        raise InfeasibleParams("codeword length n' must be at least 2")
    if variant == "marker":
        run_bound = default_run_bound(q, n_prime) if run_bound is None else run_bound
        if run_bound < (3 if q == 2 else 2):
            raise InfeasibleParams(f"run bound {run_bound} too small for q={q}")
    else:
        run_bound = None
    if ell is None:
        ell = min_window(q, n_prime, variant, run_bound)
    elif variant == "enumerative":
        if ell < 1:
            raise WindowTooShort(f"window must be positive, got {ell}")
    else:
        lo = min_window(q, n_prime, variant, run_bound)
        if ell < lo:
            raise WindowTooShort(
                f"{variant} encoder needs ell >= {lo} at n'={n_prime}, got {ell}")
    if ell > n_prime or (ell == n_prime and variant != "basic"):
        raise InfeasibleParams(f"window {ell} too long for n'={n_prime}")
    if variant == "basic":
        m = n_prime - 1
    elif variant == "marker":
        m = rll.capacity(n_prime, run_bound, q)
    else:
        m = _enum_table(q, n_prime, ell)[1]
    if m < 1:
        raise WindowTooShort(f"{variant} code of length {n_prime} at ell={ell} carries no message")
    return RfParams(q, n_prime, ell, variant, m, run_bound)


# -- shared helpers ---------------------------------------------------------

def _first_repeat(w: Sequence[int], ell: int):
    """``(i, j)`` with ``j`` minimal and ``i`` its first earlier copy."""
    seen = {}
    t = tuple(w)
    for pos in range(len(t) - ell + 1):
        win = t[pos:pos + ell]
        first = seen.setdefault(win, pos)
        if first != pos:
            return first, pos
    return None


def _check_input(x: Sequence[int], params: RfParams, length: int) -> None:
    if len(x) != length:
        raise ParameterMismatch(f"expected {length} symbols, got {len(x)}")
    check_alphabet(x, params.q)


# -- basic ------------------------------------------------------------------

def _fill(w: List[int], target: int, ell: int, q: int) -> List[int]:
    """Extend repeat-free ``w`` to ``target`` symbols, lexicographically first."""
    t = list(w)
    windows = {tuple(t[p:p + ell]) for p in range(len(t) - ell + 1)}
    base = len(t)
    choice: List[int] = []
    added: List[Optional[tuple]] = []
    nodes = 0
    sym = 0
    while len(t) < target:
        placed = False
        while sym < q:
            nodes += 1
            if nodes > _FILL_NODE_LIMIT:
                raise EncodingFailure("could not complete a repeat-free filler")
            t.append(sym)
            win = tuple(t[-ell:]) if len(t) >= ell else None
            if win is None or win not in windows:
                if win is not None:
                    windows.add(win)
                added.append(win)
                choice.append(sym)
                placed = True
                sym = 0
                break
            t.pop()
            sym += 1
        if placed:
            continue
        if not choice:
            raise EncodingFailure("no filler keeps the codeword repeat-free")
        t.pop()
        win = added.pop()
        if win is not None:
            windows.discard(win)
        sym = choice.pop() + 1
    assert len(t) - base == target - len(w)
    return t


def _restore_earlier(rem: Sequence[int], i: int, j: int, ell: int) -> List[int]:
    """Undo deletion of the window at ``i`` copied from the later window ``j``."""
    full = list(rem[:i]) + [None] * ell + list(rem[i:])
    if not 0 <= i < j or j + ell > len(full):
        raise MalformedCodeword(f"bad copy pointer ({i}, {j})")
    for s in range(ell - 1, -1, -1):
        full[i + s] = full[j + s]
    return full


def rf_encode_basic(x: Sequence[int], params: RfParams) -> Strand:
    q, n1, ell = params.q, params.n_prime, params.ell
    _check_input(x, params, n1 - 1)
    width = ceil_log(q, n1)
    # built reversed: segments go to the front, filler to the back
    w = [1] + list(reversed(x))
    for _ in range(n1 + 1):
        pair = _first_repeat(w, ell)
        if pair is None:
            break
        i, j = pair
        del w[i:i + ell]
        w[0:0] = [0, *to_digits(i, width, q), *to_digits(j, width, q)]
    else:
        raise NonTermination("window elimination did not terminate")
    if len(w) < n1:
        w = _fill(w, n1, ell, q)
    return tuple(reversed(w))


def rf_decode_basic(c: Sequence[int], params: RfParams, validate: bool = True) -> Strand:
    q, n1, ell = params.q, params.n_prime, params.ell
    if len(c) != n1:
        raise MalformedCodeword(f"codeword length {len(c)} != {n1}")
    width = ceil_log(q, n1)
    seg = 2 * width + 1
    w = list(reversed(c))
    for _ in range(n1 + 1):
        if not w or w[0] != 0:
            break
        if len(w) < seg:
            raise MalformedCodeword("truncated segment")
        i = from_digits(w[1:1 + width], q)
        j = from_digits(w[1 + width:seg], q)
        w = _restore_earlier(w[seg:], i, j, ell)
    else:
        raise MalformedCodeword("too many segments")
    if len(w) < n1 or w[0] != 1:
        raise MalformedCodeword("terminator not found")
    x = tuple(reversed(w[1:n1]))
    if validate and rf_encode_basic(x, params) != tuple(c):
        raise MalformedCodeword("input is not a codeword (re-encoding differs)")
    return x


# -- marker -----------------------------------------------------------------

def _label_len(params: RfParams) -> int:
    return rll.encoded_length(ceil_log(params.q, params.n_prime), params.run_bound, params.q)


def _block(src: int, params: RfParams) -> List[int]:
    q, M, ell = params.q, params.run_bound, params.ell
    width = ceil_log(q, params.n_prime)
    label = rll.encode(to_digits(src, width, q), M, q)
    fill = ell - M - 1 - len(label)
    assert fill >= 1
    return [0] * M + [1] + list(label) + [1] * fill


def _last_marker(z: Sequence[int], M: int) -> int:
    """Start of the last ``M`` zeros of the rightmost run of length ``>= M``."""
    run = 0
    for pos in range(len(z) - 1, -1, -1):
        if z[pos] == 0:
            run += 1
        else:
            if run >= M:
                return pos + 1 + run - M
            run = 0
    return run - M if run >= M else -1


def rf_encode_marker(x: Sequence[int], params: RfParams) -> Strand:
    q, n1, ell, M = params.q, params.n_prime, params.ell, params.run_bound
    _check_input(x, params, params.m)
    y = rll.encode(x, M, q)
    z = list(y) + [1] * (n1 - len(y))
    newest = None
    for _ in range(4 * n1 * ell):
        pair = _first_repeat(z, ell)
        if pair is None:
            return tuple(z)
        src, dst = pair
        if newest is not None and dst <= newest - ell:
            raise EncodingFailure("repeat left of the newest marker block")
        z[dst:dst + ell] = _block(src, params)
        newest = dst
    raise NonTermination("marker elimination did not terminate")


def rf_decode_marker(c: Sequence[int], params: RfParams, validate: bool = True) -> Strand:
    q, n1, ell, M = params.q, params.n_prime, params.ell, params.run_bound
    if len(c) != n1:
        raise MalformedCodeword(f"codeword length {len(c)} != {n1}")
    width = ceil_log(q, n1)
    lab = _label_len(params)
    z = list(c)
    for _ in range(4 * n1 * ell + 1):
        dst = _last_marker(z, M)
        if dst < 0:
            break
        if dst + ell > n1 or z[dst + M] != 1:
            raise MalformedCodeword(f"malformed marker block at {dst}")
        body = z[dst + M + 1:dst + M + 1 + lab]
        if any(s != 1 for s in z[dst + M + 1 + lab:dst + ell]):
            raise MalformedCodeword(f"malformed block filler at {dst}")
        try:
            src = from_digits(rll.decode(body, M, q), q)
        except MalformedCodeword as exc:
            raise MalformedCodeword(f"bad source label at {dst}: {exc}") from None
        if len(rll.decode(body, M, q)) != width or src >= dst:
            raise MalformedCodeword(f"bad source pointer {src} at {dst}")
        for s in range(ell):
            z[dst + s] = z[src + s]
    else:
        raise MalformedCodeword("too many marker blocks")
    used = rll.encoded_length(params.m, M, q)
    if any(s != 1 for s in z[used:]):
        raise MalformedCodeword("bad tail after zero-run codeword")
    x = rll.decode(z[:used], M, q)
    if validate and rf_encode_marker(x, params) != tuple(c):
        raise MalformedCodeword("input is not a codeword (re-encoding differs)")
    return x


# -- enumerative ------------------------------------------------------------

@lru_cache(maxsize=64)
def _enum_table(q: int, n_prime: int, ell: int):
    if q ** n_prime > ENUM_BUDGET:
        raise ScaleTooLarge(f"{q}^{n_prime} strings exceed the enumeration budget")
    words = tuple(w for w in itertools.product(range(q), repeat=n_prime)
                  if is_repeat_free(w, ell))
    m = 0
    while q ** (m + 1) <= len(words):
        m += 1
    return words, m, {w: r for r, w in enumerate(words)}


def rf_encode_enum(x: Sequence[int], params: RfParams) -> Strand:
    _check_input(x, params, params.m)
    words, _, _ = _enum_table(params.q, params.n_prime, params.ell)
    return words[from_digits(x, params.q)]


def rf_decode_enum(c: Sequence[int], params: RfParams, validate: bool = True) -> Strand:
    _, m, rank = _enum_table(params.q, params.n_prime, params.ell)
    r = rank.get(tuple(c))
    if r is None or r >= params.q ** m:
        raise MalformedCodeword("not a codeword of the enumerative code")
    return to_digits(r, m, params.q)


# -- dispatch ---------------------------------------------------------------

_ENCODERS = {"basic": rf_encode_basic, "marker": rf_encode_marker,
             "enumerative": rf_encode_enum}
_DECODERS = {"basic": rf_decode_basic, "marker": rf_decode_marker,
             "enumerative": rf_decode_enum}


def rf_encode(x: Sequence[int], params: RfParams) -> Strand:
    return _ENCODERS[params.variant](x, params)


def rf_decode(c: Sequence[int], params: RfParams, validate: bool = True) -> Strand:
    return _DECODERS[params.variant](c, params, validate)
