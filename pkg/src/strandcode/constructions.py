"""Two multi-strand codes built on a repeat-free inner code.

Indexed (``"A"``)
    The repeat-free codeword ``c`` of length ``n'`` is cut into ``k`` equal
    blocks and block ``i`` is prefixed by the ``z = ceil(log_q k)`` symbol
    label of ``i``. The inner window is ``ell'`` and the multiset is readable
    from its ``(ell' + z + 1)``-mers.

Overlapping (``"B"``)
    Strand ``i`` is the length-``n`` window of ``c`` starting at
    ``(i-1)(n-ell)``, so neighbours share ``ell`` symbols and the
    ``(ell+1)``-profile of the strands equals that of ``c``. No labels are
    needed; ``n' = (n - ell) k + ell``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .core import (
    CodeParams,
    Strand,
    StrandMultiset,
    ceil_log,
    concat,
    from_digits,
    index_expansion,
    lmers,
)
from .errors import (
    DivisibilityViolation,
    IndexSetBroken,
    InfeasibleParams,
    ParameterMismatch,
    WindowTooShort,
)
from .repeat_free import RfParams, rf_decode, rf_encode, rf_params
from .spectrum import Profile, is_repeat_free, profile, stitch

CONSTRUCTIONS = ("A", "B")


def inner_params(params: CodeParams) -> RfParams:
    """The repeat-free code a multi-strand code is built on."""
    window = params.ell_prime if params.construction == "A" else params.ell
    return RfParams(params.q, params.n_prime, window, params.rf_variant,
                    params.m, params.run_bound)


# -- construction A ---------------------------------------------------------

def derive_params_A(q: int, n: int, k: int, rf_variant: str,
                    ell_prime: Optional[int] = None,
                    run_bound: Optional[int] = None) -> CodeParams:
    if k < 1:
        raise InfeasibleParams("k must be at least 1")
    z = ceil_log(q, k)
    if n <= z:
        raise InfeasibleParams(f"need n > ceil(log_q k): n={n}, ceil(log_q k)={z}")
    block = n - z
    n_prime = block * k
    rf = rf_params(q, n_prime, rf_variant, ell_prime, run_bound)
    if block < rf.ell + 1:
        raise InfeasibleParams(
            f"need n'/k >= ell'+1: block {block} < {rf.ell + 1} "
            f"({rf_variant} window {rf.ell} at n'={n_prime})")
    return CodeParams(q=q, n=n, k=k, ell=rf.ell + z, n_prime=n_prime, m=rf.m,
                      construction="A", rf_variant=rf_variant, ell_prime=rf.ell,
                      index_width=z, run_bound=rf.run_bound)


def split_indexed(c: Sequence[int], k: int, q: int, width: Optional[int] = None) -> List[Strand]:
    """Cut ``c`` into ``k`` blocks and prefix each with its label."""
    if len(c) % k:
        raise DivisibilityViolation(f"k={k} does not divide n'={len(c)}")
    z = ceil_log(q, k) if width is None else width
    b = len(c) // k
    return [concat(index_expansion(i, z, q, k), c[(i - 1) * b:i * b])
            for i in range(1, k + 1)]


@dataclass(frozen=True)
class CodewordA:
    strands: StrandMultiset
    params: CodeParams
    inner: Strand

    def violations(self) -> List[str]:
        """Broken structural invariants, empty when the codeword is sound."""
        p = self.params
        out = []
        z = p.index_width
        labels = sorted(from_digits(s[:z], p.q) for s in self.strands)
        if labels != list(range(p.k)):
            out.append(f"labels {labels} are not 0..{p.k - 1}")
        if not is_repeat_free(self.inner, p.ell_prime):
            out.append("inner codeword is not repeat-free")
        mers = [m for s in self.strands for m in lmers(s, p.ell)]
        if len(set(mers)) != len(mers):
            out.append(f"{p.ell}-mers are not pairwise distinct")
        if not self.strands.is_distinct():
            out.append("strands are not pairwise distinct")
        return out


def encode_A(x: Sequence[int], params: CodeParams) -> CodewordA:
    if params.construction != "A":
        raise ParameterMismatch("parameters are not for construction A")
    if params.n_prime % params.k:
        raise DivisibilityViolation(f"k={params.k} does not divide n'={params.n_prime}")
    c = rf_encode(x, inner_params(params))
    strands = split_indexed(c, params.k, params.q, params.index_width)
    return CodewordA(StrandMultiset(strands), params, c)


def join_indexed(S, k: int, q: int, width: int) -> Strand:
    """Order labelled strands by label, strip labels and concatenate."""
    by_label = {}
    for s in S:
        label = from_digits(s[:width], q)
        if label >= k or label in by_label:
            raise IndexSetBroken(f"strand labels do not form a permutation of 1..{k}")
        by_label[label] = s[width:]
    if len(by_label) != k:
        raise IndexSetBroken(f"expected {k} labelled strands, got {len(by_label)}")
    return concat(*(by_label[i] for i in range(k)))


def decode_A(P: Profile, params: CodeParams, validate: bool = True) -> Strand:
    _check_profile(P, params)
    S = stitch(P, params.n, params.k)
    c = join_indexed(S, params.k, params.q, params.index_width)
    return rf_decode(c, inner_params(params), validate)


# -- construction B ---------------------------------------------------------

def n_prime_B(n: int, k: int, ell: int) -> int:
    return (n - ell) * k + ell


def derive_params_B(q: int, n: int, k: int, rf_variant: str,
                    ell: Optional[int] = None,
                    run_bound: Optional[int] = None) -> CodeParams:
    """Smallest window ``ell < n`` the variant supports at ``n'(ell)``.

    ``n'`` shrinks as ``ell`` grows while the window a variant needs never
    grows with ``n'``, so the first window that fits is the fixed point.
    """
    if k < 1:
        raise InfeasibleParams("k must be at least 1")
    if ell is not None:
        if n <= ell:
            raise InfeasibleParams(f"need n > ell: n={n}, ell={ell}")
        rf = rf_params(q, n_prime_B(n, k, ell), rf_variant, ell, run_bound)
        return _params_B(q, n, k, rf)
    last = None
    for cand in range(1, n):
        try:
            rf = rf_params(q, n_prime_B(n, k, cand), rf_variant, cand, run_bound)
        except (WindowTooShort, InfeasibleParams) as exc:
            last = exc
            continue
        return _params_B(q, n, k, rf)
    raise InfeasibleParams(
        f"need n > ell: no window below n={n} works for {rf_variant} ({last})")


def _params_B(q: int, n: int, k: int, rf: RfParams) -> CodeParams:
    return CodeParams(q=q, n=n, k=k, ell=rf.ell, n_prime=rf.n_prime, m=rf.m,
                      construction="B", rf_variant=rf.variant, run_bound=rf.run_bound)


def split_overlapping(c: Sequence[int], n: int, k: int, ell: int) -> List[Strand]:
    """The ``k`` length-``n`` windows of ``c`` at stride ``n - ell``."""
    if len(c) != n_prime_B(n, k, ell):
        raise ParameterMismatch(f"length {len(c)} != (n-ell)k+ell = {n_prime_B(n, k, ell)}")
    step = n - ell
    return [tuple(c[i * step:i * step + n]) for i in range(k)]


@dataclass(frozen=True)
class CodewordB:
    strands: StrandMultiset
    params: CodeParams
    inner: Strand

    def ordered(self) -> List[Strand]:
        p = self.params
        return split_overlapping(self.inner, p.n, p.k, p.ell)

    def violations(self) -> List[str]:
        p = self.params
        out = []
        seq = self.ordered()
        if StrandMultiset(seq) != self.strands:
            out.append("strands are not the windows of the inner codeword")
        if not is_repeat_free(self.inner, p.ell):
            out.append("inner codeword is not repeat-free")
        for a, b in zip(seq, seq[1:]):
            if a[len(a) - p.ell:] != b[:p.ell]:
                out.append("neighbouring strands do not overlap")
                break
        if profile(self.strands, p.ell + 1) != profile(self.inner, p.ell + 1):
            out.append("strand profile differs from the inner codeword's profile")
        if not self.strands.is_distinct():
            out.append("strands are not pairwise distinct")
        return out


def encode_B(x: Sequence[int], params: CodeParams) -> CodewordB:
    if params.construction != "B":
        raise ParameterMismatch("parameters are not for construction B")
    c = rf_encode(x, inner_params(params))
    strands = split_overlapping(c, params.n, params.k, params.ell)
    return CodewordB(StrandMultiset(strands), params, c)


def decode_B(P: Profile, params: CodeParams, validate: bool = True) -> Strand:
    _check_profile(P, params)
    (c,) = stitch(P, params.n_prime, 1).strands
    return rf_decode(c, inner_params(params), validate)


# -- shared -----------------------------------------------------------------

def _check_profile(P: Profile, params: CodeParams) -> None:
    if P.mer_length != params.ell + 1:
        raise ParameterMismatch(
            f"profile holds {P.mer_length}-mers, decoder reads {params.ell + 1}-mers")


def derive_params(construction: str, q: int, n: int, k: int, rf_variant: str,
                  ell: Optional[int] = None, run_bound: Optional[int] = None) -> CodeParams:
    """Dispatch on ``construction``; ``ell`` is the inner window for ``A``."""
    if construction == "A":
        return derive_params_A(q, n, k, rf_variant, ell, run_bound)
    if construction == "B":
        return derive_params_B(q, n, k, rf_variant, ell, run_bound)
    raise ParameterMismatch(f"unknown construction {construction!r}")


def encode(x: Sequence[int], params: CodeParams):
    return encode_A(x, params) if params.construction == "A" else encode_B(x, params)


def decode(P: Profile, params: CodeParams, validate: bool = True) -> Strand:
    if params.construction == "A":
        return decode_A(P, params, validate)
    return decode_B(P, params, validate)


def round_trip(x: Sequence[int], params: CodeParams) -> Tuple[object, Strand]:
    """Encode, read the profile, decode. Returns ``(codeword, decoded)``."""
    cw = encode(x, params)
    P = profile(cw.strands, params.ell + 1)
    return cw, decode(P, params)
