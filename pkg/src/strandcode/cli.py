"""Command line front end.

Exit status is 0 on success and ``exc.exit_code`` for library errors
(10-19 spectrum, 20-29 codec, 30-39 parameters, 40 format). Unreadable or
unwritable files exit with 41, usage errors with 2.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import random
import sys
from typing import List, Optional

from . import analysis, rll
from .constructions import derive_params, decode, encode
from .core import CodeParams, strand, to_str
from .errors import (
    InfeasibleParams,
    ParameterMismatch,
    StrandCodeError,
    WindowTooShort,
)
from .formats import (
    PAYLOAD_MAGIC,
    PayloadContainer,
    ProfileFile,
    StrandFile,
    frame_payload,
    unframe_payload,
)
from .repeat_free import VARIANTS, rf_decode, rf_encode, rf_params
from .spectrum import profile

IO_EXIT = 41
SCHEMA_VERSION = 1


def _read(path: str, binary: bool = False):
    if path == "-":
        return sys.stdin.buffer.read() if binary else sys.stdin.read()
    with open(path, "rb" if binary else "r") as fh:
        return fh.read()


def _write(path: Optional[str], data) -> None:
    if path in (None, "-"):
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
        return
    with open(path, "wb" if isinstance(data, bytes) else "w") as fh:
        fh.write(data)


def _code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--construction", choices=("A", "B"), required=True)
    p.add_argument("--rf", choices=VARIANTS, default="marker", help="repeat-free inner code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, default=None,
                   help="inner window (A) or window (B); smallest feasible by default")
    p.add_argument("--run-bound", type=int, default=None, help="zero-run bound of the marker code")


def _params(args) -> CodeParams:
    return derive_params(args.construction, args.q, args.n, args.k, args.rf,
                         args.ell, args.run_bound)


def _summary(p: CodeParams) -> str:
    inner = f" ell'={p.ell_prime} index_width={p.index_width}" if p.construction == "A" else ""
    return (f"construction={p.construction} rf={p.rf_variant} q={p.q} n={p.n} k={p.k} "
            f"ell={p.ell}{inner} n'={p.n_prime} m={p.m} redundancy={p.redundancy}")


# -- subcommands -------------------------------------------------------------

def cmd_encode(args) -> int:
    p = _params(args)
    raw = _read(args.payload, binary=True)
    if raw.startswith(PAYLOAD_MAGIC.encode()):
        box = PayloadContainer.loads(raw.decode())
        if box.q != p.q or len(box.symbols) != p.m:
            raise ParameterMismatch(
                f"container holds {len(box.symbols)} symbols over q={box.q}, "
                f"code expects {p.m} over q={p.q}")
        x = box.symbols
    else:
        x = frame_payload(raw, p.q, p.m)
    cw = encode(x, p)
    _write(args.output, StrandFile(p.q, cw.strands).dumps())
    print(_summary(p), file=sys.stderr)
    return 0


def cmd_shred(args) -> int:
    sf = StrandFile.loads(_read(args.strands))
    P = profile(sf.strands, args.window)
    mers = P.elements()
    random.Random(args.shuffle_seed).shuffle(mers)
    _write(args.output, ProfileFile(sf.q, P, tuple(mers)).dumps())
    return 0


def cmd_decode(args) -> int:
    p = _params(args)
    pf = ProfileFile.loads(_read(args.profile))
    if pf.q != p.q:
        raise ParameterMismatch(f"profile is over q={pf.q}, code over q={p.q}")
    if pf.profile.mer_length != p.ell + 1:
        raise ParameterMismatch(
            f"profile holds {pf.profile.mer_length}-mers, code reads {p.ell + 1}-mers")
    step, total = p.n - p.ell, pf.profile.total
    # a whole number of strands, just not k of them: wrong parameters rather than damage
    if total % step == 0 and total != p.k * step:
        raise ParameterMismatch(
            f"profile holds {total // step} strands' worth of mers, --k is {p.k}")
    x = decode(pf.profile, p)
    if args.container:
        _write(args.output, PayloadContainer(p.q, p.construction, p.rf_variant, x).dumps())
    else:
        _write(args.output, unframe_payload(x, p.q))
    return 0


def _ell_range(text: str, n: int) -> List[int]:
    if not text:
        return list(range(1, n + 1))
    lo, sep, hi = text.partition(":")
    if not sep:
        lo, sep, hi = text.partition("-")
    return list(range(int(lo), int(hi or lo) + 1))


def _record(obj, kind: str) -> str:
    row = {"schema_version": SCHEMA_VERSION, "kind": kind}
    for k, v in dataclasses.asdict(obj).items():
        if isinstance(v, float) and math.isnan(v):
            v = None
        elif isinstance(v, int) and not isinstance(v, bool) and v > 2 ** 53:
            v = str(v)
        row[k] = v
    return json.dumps(row)


def _fmt(v, digits=3) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.{digits}f}"
    return str(v)


def cmd_bounds(args) -> int:
    rows = [analysis.bound_report(args.q, args.n, args.k, ell, args.census_budget, args.jobs)
            for ell in _ell_range(args.ell_range, args.n)]
    trade = analysis.tradeoff_table(args.q, args.n, args.k, args.epsilon, args.epsilon3)
    out = []
    if args.format in ("table", "both"):
        out.append(f"q={args.q} n={args.n} k={args.k}  channel size "
                   f"{_fmt(rows[0].channel_size)}  log_q {_fmt(rows[0].channel_log)}  "
                   f"bounds [{_fmt(rows[0].channel_log_lower)}, {_fmt(rows[0].channel_log_upper)}]")
        out.append(f"{'ell':>4} {'census_A':>10} {'census_B':>10} {'profile_upper':>14} "
                   f"{'rate_A':>7} {'rate_B':>7} {'red':>8}  note")
        for r in rows:
            out.append(f"{r.ell:>4} {_fmt(r.census_A):>10} {_fmt(r.census_B):>10} "
                       f"{_fmt(r.profile_upper):>14} {_fmt(r.rate_A):>7} {_fmt(r.rate_B):>7} "
                       f"{_fmt(r.redundancy_measured):>8}  {r.note}")
        out.append("")
        out.append("indexed (A) vs overlapping (B); formula columns keep leading terms only")
        out.append(f"{'case':>4} {'eps':>5} {'ellA~':>7} {'ellB~':>7} {'redA~':>9} {'redB~':>9}"
                   f" {'ellA':>5} {'ellB':>5} {'gap':>4} {'redA':>8} {'redB':>8}  deviations")
        for t in trade:
            gap = (t.ell_A_built - t.ell_B_built) if t.ell_A_built is not None else None
            out.append(f"{t.case:>4} {_fmt(t.epsilon, 2):>5} {_fmt(t.ell_A_formula, 2):>7} "
                       f"{_fmt(t.ell_B_formula, 2):>7} {_fmt(t.red_A_formula, 1):>9} "
                       f"{_fmt(t.red_B_formula, 1):>9} {_fmt(t.ell_A_built):>5} "
                       f"{_fmt(t.ell_B_built):>5} {_fmt(gap):>4} {_fmt(t.red_A_built, 2):>8} "
                       f"{_fmt(t.red_B_built, 2):>8}  {'; '.join(t.deviations()) or 'none'}")
    if args.format in ("jsonl", "both"):
        out.extend(_record(r, "bound") for r in rows)
        out.extend(_record(t, "tradeoff") for t in trade)
    _write(args.output, "\n".join(out) + "\n")
    return 0


def cmd_census(args) -> int:
    c = analysis.census(args.q, args.n, args.k, args.ell, args.budget, args.jobs)
    print(f"q={c.q} n={c.n} k={c.k} ell={c.ell} multisets={c.total} "
          f"profiles={c.size_B} unique={c.size_A}")
    return 0


def cmd_rll(args) -> int:
    if args.action == "count":
        print(rll.count_rll(args.N, args.M, args.q))
        return 0
    x = strand(args.symbols)
    if args.action == "encode":
        print(to_str(rll.encode(x, args.M, args.q)))
    else:
        print(to_str(rll.decode(x, args.M, args.q)))
    return 0


def cmd_rf(args) -> int:
    P = rf_params(args.q, args.n_prime, args.variant, args.ell, args.run_bound)
    if args.action == "params":
        print(f"variant={P.variant} q={P.q} n'={P.n_prime} ell={P.ell} m={P.m} "
              f"redundancy={P.redundancy} run_bound={P.run_bound}")
        return 0
    x = strand(args.symbols)
    if args.action == "encode":
        print(to_str(rf_encode(x, P)))
    else:
        print(to_str(rf_decode(x, P)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="strandcode",
                                 description="Multi-strand codes read back from substring profiles.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="payload file -> strand file")
    p.add_argument("payload", help="raw bytes, or a #payload container with exactly m symbols")
    p.add_argument("-o", "--output", default=None)
    _code_args(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("shred", help="strand file -> shuffled profile file")
    p.add_argument("strands")
    p.add_argument("--window", type=int, required=True, help="mer length read by the decoder")
    p.add_argument("--shuffle-seed", type=int, default=0,
                   help="seed for Python's random.Random (Mersenne Twister)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_shred)

    p = sub.add_parser("decode", help="profile file -> payload file")
    p.add_argument("profile")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--container", action="store_true",
                   help="write the recovered message as a #payload container")
    _code_args(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bounds", help="exact counts and bound evaluations per window")
    for name in ("q", "n", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--ell-range", default="", help="lo:hi inclusive, default 1:n")
    p.add_argument("--census-budget", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=0.5, help="case 2 parameter")
    p.add_argument("--epsilon3", type=float, default=1.5, help="case 3 parameter")
    p.add_argument("--format", choices=("table", "jsonl", "both"), default="both")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("census", help="exhaustive profile census")
    for name in ("q", "n", "k", "ell"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("rll", help="zero-run-limited code")
    p.add_argument("action", choices=("encode", "decode", "count"))
    p.add_argument("symbols", nargs="?", default="")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, default=0, help="length for count")
    p.set_defaults(func=cmd_rll)

    p = sub.add_parser("rf", help="repeat-free code")
    p.add_argument("action", choices=("encode", "decode", "params"))
    p.add_argument("symbols", nargs="?", default="")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-prime", type=int, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="basic")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--run-bound", type=int, default=None)
    p.set_defaults(func=cmd_rf)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InfeasibleParams, WindowTooShort) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: increase --n, lower --k, or pick another --rf variant", file=sys.stderr)
        return exc.exit_code
    except StrandCodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IO_EXIT


if __name__ == "__main__":
    sys.exit(main())
