"""Command-line front end.

Subcommands:

  table         rows of od(2^e!) in backward binary, split at the stable bit
  bits          stream the limit constants z, w, zw, K in three formats
  verify        run a named congruence checker over a parameter grid
  bench         multiplication counts and wall times for the level rewrite
  oeis-compare  check bits of a limit constant against an OEIS b-file

Primary results go to stdout and are byte-deterministic for fixed flags;
wall times, certificates, and warnings go to stderr.  Exit status: 0 all
checks pass, 1 a verification failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import dataclass

from . import kernels
from .bitring import bbe_encode
from .checks import REGISTRY, ParamError, sweep
from .factorial import od_factorial_fast, od_factorial_prop14
from .limits import limit_bits


class UsageError(Exception):
    """Bad flags or unparseable input; maps to exit status 2."""


# -- b-file handling ---------------------------------------------------------


class BFileError(Exception):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True)
class BFile:
    """Parsed OEIS b-file: (index, value) pairs, indices strictly increasing."""

    entries: tuple[tuple[int, int], ...]


def parse_bfile(text: str) -> BFile:
    """Parse b-file text: '#' comments, blank lines, and 'index value' rows."""
    entries = []
    last = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(lineno, f"expected 'index value', got {line!r}")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(lineno, f"non-integer field in {line!r}") from None
        if index < 0:
            raise BFileError(lineno, f"negative index {index}")
        if last is not None and index <= last:
            raise BFileError(lineno, f"index {index} does not increase past {last}")
        if value not in (0, 1):
            raise BFileError(lineno, f"value {value} is not a bit")
        entries.append((index, value))
        last = index
    return BFile(tuple(entries))


# -- range flags -------------------------------------------------------------

_RANGE = re.compile(r"-?\d+(\.\.-?\d+)?")


def parse_range(text: str) -> list[int]:
    """'7' -> [7]; '2..5' -> [2, 3, 4, 5]; negatives allowed on both ends."""
    if not _RANGE.fullmatch(text):
        raise UsageError(f"expected N or LO..HI, got {text!r}")
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ['--A', '-2..3'] as ['--A=-2..3'].

    argparse refuses option values that begin with '-' unless they parse as
    plain negative numbers, which range syntax does not; merging the two
    tokens sidesteps that without changing the documented interface.
    """
    merged = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok.startswith("--")
            and "=" not in tok
            and nxt is not None
            and nxt.startswith("-")
            and _RANGE.fullmatch(nxt)
        ):
            merged.append(f"{tok}={nxt}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


# -- subcommands -------------------------------------------------------------


def cmd_table(args: argparse.Namespace) -> int:
    if not 2 <= args.e_max <= 40:
        raise UsageError("--e-max must be in 2..40")
    if not 1 <= args.bits <= 64:
        raise UsageError("--bits must be in 1..64")
    for e in range(2, args.e_max + 1):
        row = bbe_encode(od_factorial_fast(e, args.bits).residue, args.bits)
        if args.bits > e + 1:
            row = row[: e + 1] + " " + row[e + 1 :]
        print(row)
    return 0


def cmd_bits(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError("bit count must be >= 1")
    if args.n > 64:
        print(
            f"note: {args.n} bits is beyond the 64-bit desk-scale guarantee",
            file=sys.stderr,
        )
    lb = limit_bits(args.which, args.n)
    if args.format == "bbe":
        print(lb.residue.bbe())
    elif args.format == "binary":
        print(lb.residue.binary())
    else:
        for k in range(args.n):
            print(f"{k} {lb.residue.bit(k)}")
    print(f"certificate: {lb.describe_certificate()}", file=sys.stderr)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.id not in REGISTRY:
        known = ", ".join(sorted(REGISTRY))
        raise UsageError(f"unknown checker {args.id!r}; known: {known}")
    entry = REGISTRY[args.id]
    names = {spec.name for spec in entry.params}
    overrides = {}
    for name in ("e", "d", "m", "B", "A", "A2", "j"):
        text = getattr(args, name)
        if text is None:
            continue
        if name not in names:
            flags = ", ".join(f"--{spec.name}" for spec in entry.params)
            raise UsageError(f"checker {args.id} takes only {flags}")
        overrides[name] = parse_range(text)
    try:
        reports = sweep(args.id, overrides)
    except ParamError as exc:
        raise UsageError(str(exc)) from None
    for report in reports:
        print(report.render())
    return 0 if all(report.passed for report in reports) else 1


def cmd_bench(args: argparse.Namespace) -> int:
    if not 2 <= args.e <= 40:
        raise UsageError("--e must be in 2..40")
    if not 1 <= args.B <= 64:
        raise UsageError("--B must be in 1..64")
    start = time.perf_counter()
    fast = od_factorial_fast(args.e, args.B)
    fast_seconds = time.perf_counter() - start

    print("m direct fast measured mode d")
    ok = True
    for lc in fast.mulcount.levels:
        direct = (1 << (lc.m - 2)) - 1
        if lc.fast:
            formula = (1 << (lc.d - 1)) + lc.m - 2 - lc.d
            mode, d_text = "fast", str(lc.d)
        else:
            formula = direct
            mode, d_text = "direct", "-"
        ok = ok and formula == lc.muls
        print(f"{lc.m} {direct} {formula} {lc.muls} {mode} {d_text}")
    direct_sum = sum((1 << (m - 2)) - 1 for m in range(2, args.e + 1))
    print(f"totals direct_sum={direct_sum} fast_total={fast.mulcount.total}")

    print(f"wall: fast {fast_seconds * 1e3:.2f} ms", file=sys.stderr)
    if direct_sum <= 1 << 24:
        start = time.perf_counter()
        slow = od_factorial_prop14(args.e, args.B)
        slow_seconds = time.perf_counter() - start
        if slow.residue != fast.residue:
            print("algorithms disagree", file=sys.stderr)
            return 1
        print(f"wall: per-level-direct {slow_seconds * 1e3:.2f} ms", file=sys.stderr)
    else:
        print(
            f"wall: per-level-direct skipped ({direct_sum} multiplications)",
            file=sys.stderr,
        )
    if kernels.compiled_available():
        timings = []
        for name in ("compiled", "pure"):
            with kernels.backend(name):
                start = time.perf_counter()
                od_factorial_fast(args.e, args.B)
                timings.append(f"{name} {(time.perf_counter() - start) * 1e3:.2f} ms")
        print(f"backend: {', '.join(timings)}", file=sys.stderr)
    else:
        print("backend: compiled kernels unavailable, pure only", file=sys.stderr)
    if not ok:
        print("measured fast count deviates from its closed form", file=sys.stderr)
        return 1
    return 0


def cmd_oeis_compare(args: argparse.Namespace) -> int:
    try:
        with open(args.path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    bfile = parse_bfile(text)
    usable = [(i, v) for i, v in bfile.entries if i <= 64]
    skipped = len(bfile.entries) - len(usable)
    if skipped:
        print(f"note: {skipped} entries beyond index 64 skipped", file=sys.stderr)
    if not usable:
        print("warning: no data to compare; vacuous agreement", file=sys.stderr)
        print("agreement: 0 bits compared")
        return 0
    width = max(index for index, _ in usable) + 1
    computed = limit_bits(args.which, width).residue
    for index, value in usable:
        have = computed.bit(index)
        if have != value:
            print(f"mismatch at index {index}: file {value}, computed {have}")
            return 1
    print(f"agreement: {len(usable)} bits compared")
    return 0


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoadic",
        description="odd parts of 2^e! and their 2-adic limit constants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="od(2^e!) rows in backward binary")
    p.add_argument("--e-max", type=int, default=30, dest="e_max")
    p.add_argument("--bits", type=int, default=40)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("bits", help="bits of a limit constant")
    p.add_argument("which", choices=["z", "w", "zw", "K"])
    p.add_argument("n", type=int)
    p.add_argument("format", nargs="?", default="bbe", choices=["bbe", "binary", "bfile"])
    p.set_defaults(fn=cmd_bits)

    p = sub.add_parser("verify", help="run a congruence checker over a grid")
    p.add_argument("id", help="checker id; see error message for the list")
    for flag in ("e", "d", "m", "B", "A", "A2", "j"):
        p.add_argument(f"--{flag}", help="N or LO..HI")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="level-rewrite multiplication counts")
    p.add_argument("--e", type=int, default=16)
    p.add_argument("--B", type=int, default=40)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("oeis-compare", help="compare a limit against a b-file")
    p.add_argument("path")
    p.add_argument("--which", default="z", choices=["z", "w", "zw", "K"])
    p.set_defaults(fn=cmd_oeis_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    args = parser.parse_args(_merge_negative_values(argv))
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
