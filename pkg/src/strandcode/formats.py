"""Text file formats for strands, profiles and symbol payloads.

Every file starts with one header line ``#<kind> key=value ...`` followed by
one record per line. Symbols are written as digits; alphabets larger than
ten use comma-separated integers instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Strand, StrandMultiset, ceil_log, check_alphabet, from_digits, to_digits, to_str
from .errors import FormatError, ParameterMismatch, StrandCodeError
from .spectrum import Profile

STRANDS_MAGIC = "#strands"
PROFILE_MAGIC = "#profile"
PAYLOAD_MAGIC = "#payload"


def _parse_header(line: str, magic: str, keys: Sequence[str]) -> Dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != magic:
        raise FormatError(f"expected header starting with {magic!r}")
    fields = {}
    for p in parts[1:]:
        key, sep, value = p.partition("=")
        if not sep:
            raise FormatError(f"malformed header field {p!r}")
        fields[key] = value
    missing = [k for k in keys if k not in fields]
    if missing:
        raise FormatError(f"header lacks {', '.join(missing)}")
    return fields


def _int(fields: Dict[str, str], key: str) -> int:
    try:
        return int(fields[key])
    except ValueError:
        raise FormatError(f"header field {key}={fields[key]!r} is not an integer") from None


def _parse_symbols(line: str, q: int) -> Strand:
    try:
        sym = tuple(int(t) for t in line.split(",")) if "," in line else tuple(int(c) for c in line)
    except ValueError:
        raise FormatError(f"bad symbol line {line!r}") from None
    try:
        check_alphabet(sym, q)
    except StrandCodeError as exc:
        raise FormatError(str(exc)) from None
    return sym


def _body(text: str) -> Tuple[str, List[str]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty file")
    return lines[0], lines[1:]


@dataclass(frozen=True)
class StrandFile:
    q: int
    strands: StrandMultiset

    def dumps(self) -> str:
        S = self.strands
        body = "".join(to_str(s) + "\n" for s in S)
        return f"{STRANDS_MAGIC} q={self.q} n={S.n} k={S.k}\n{body}"

    @classmethod
    def loads(cls, text: str) -> "StrandFile":
        head, rows = _body(text)
        h = _parse_header(head, STRANDS_MAGIC, ("q", "n", "k"))
        q, n, k = _int(h, "q"), _int(h, "n"), _int(h, "k")
        strands = [_parse_symbols(r, q) for r in rows]
        if len(strands) != k:
            raise FormatError(f"header says k={k}, file holds {len(strands)} strands")
        if any(len(s) != n for s in strands):
            raise FormatError(f"every strand must have length n={n}")
        return cls(q, StrandMultiset(strands))


@dataclass(frozen=True)
class ProfileFile:
    q: int
    profile: Profile
    # line order as read or to be written; None means sorted
    order: Optional[Tuple[Strand, ...]] = field(default=None, compare=False)

    def dumps(self) -> str:
        P = self.profile
        mers = self.order if self.order is not None else P.elements()
        body = "".join(to_str(m) + "\n" for m in mers)
        return f"{PROFILE_MAGIC} q={self.q} mer_length={P.mer_length} total={P.total}\n{body}"

    @classmethod
    def loads(cls, text: str) -> "ProfileFile":
        head, rows = _body(text)
        h = _parse_header(head, PROFILE_MAGIC, ("q", "mer_length", "total"))
        q, L, total = _int(h, "q"), _int(h, "mer_length"), _int(h, "total")
        mers = tuple(_parse_symbols(r, q) for r in rows)
        if len(mers) != total:
            raise FormatError(f"header says total={total}, file holds {len(mers)} mers")
        if any(len(m) != L for m in mers):
            raise FormatError(f"every mer must have length {L}")
        return cls(q, Profile(mers, L), mers)


@dataclass(frozen=True)
class PayloadContainer:
    """A symbol string tagged with the code it belongs to."""

    q: int
    construction: str
    rf_variant: str
    symbols: Strand

    def dumps(self) -> str:
        return (f"{PAYLOAD_MAGIC} q={self.q} construction={self.construction} "
                f"rf={self.rf_variant} length={len(self.symbols)}\n{to_str(self.symbols)}\n")

    @classmethod
    def loads(cls, text: str) -> "PayloadContainer":
        head, rows = _body(text)
        h = _parse_header(head, PAYLOAD_MAGIC, ("q", "construction", "rf", "length"))
        q, length = _int(h, "q"), _int(h, "length")
        if len(rows) > 1:
            raise FormatError("payload body must be a single line")
        symbols = _parse_symbols(rows[0], q) if rows else ()
        if len(symbols) != length:
            raise FormatError(f"declared length {length} != {len(symbols)} symbols")
        return cls(q, h["construction"], h["rf"], symbols)


# -- bytes <-> symbols ------------------------------------------------------

def symbol_width(nbytes: int, q: int) -> int:
    """Symbols needed to hold any ``nbytes``-byte value in base ``q``."""
    return ceil_log(q, 256 ** nbytes)


def bytes_to_symbols(data: bytes, q: int) -> Strand:
    """Big-endian: the bytes read as one integer, written in base ``q``."""
    return to_digits(int.from_bytes(data, "big"), symbol_width(len(data), q), q)


def symbols_to_bytes(symbols: Sequence[int], nbytes: int, q: int) -> bytes:
    value = from_digits(symbols, q)
    if value >= 256 ** nbytes:
        raise FormatError(f"symbols encode a value wider than {nbytes} bytes")
    return value.to_bytes(nbytes, "big")


def frame_payload(data: bytes, q: int, m: int) -> Strand:
    """Message of exactly ``m`` symbols: byte count, payload, zero fill.

    The count takes ``ceil(log_q(m+1))`` symbols so the decoder needs no
    side channel.
    """
    head = ceil_log(q, m + 1)
    body = bytes_to_symbols(data, q)
    if len(data) > m or head + len(body) > m:
        raise ParameterMismatch(
            f"payload of {len(data)} bytes needs {head + len(body)} symbols, code carries {m}")
    return to_digits(len(data), head, q) + body + (0,) * (m - head - len(body))


def unframe_payload(x: Sequence[int], q: int) -> bytes:
    m = len(x)
    head = ceil_log(q, m + 1)
    nbytes = from_digits(x[:head], q)
    w = symbol_width(nbytes, q)
    if head + w > m:
        raise FormatError(f"declared {nbytes} bytes do not fit the message")
    if any(x[head + w:]):
        raise FormatError("nonzero symbols after the payload")
    return symbols_to_bytes(x[head:head + w], nbytes, q)
