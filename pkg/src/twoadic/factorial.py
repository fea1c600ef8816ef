"""Odd-part factorial products mod 2^B, by three independent algorithms.

od(2^e!) is the odd part of 2^e factorial.  Writing h(m) for the product of
the odd integers in (2^(m-1), 2^m), it factors as

    od(2^e!) = prod_{m=2}^{e} h(m)^(e+1-m),

which also means od(2^e!) = od(2^(e-1)!) * (2^e - 1)!!.  The three routes
implemented here:

  naive   - multiply the odd parts of 1..2^e (2^e - 1 multiplications);
  prop14  - the product formula above, each h(m) computed directly;
  fast    - the same formula with each h(m) accelerated: a short block
            product raised to a power of two replaces the full product of
            2^(m-2) odd integers whenever that rewrite is sound.

All three must agree; the test suite cross-checks them.  Multiplication
counts are measured (not assumed) and reported per level, with a product of
n factors costing n - 1 multiplications and each squaring costing one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .bitring import BitWindow, Residue2


@dataclass(frozen=True)
class LevelCount:
    """Multiplications spent producing one h(m) value.

    fast is True when the accelerated block-power route was taken, in which
    case d records the block exponent (the block holds 2^(d-1) odd factors)
    and muls always equals 2^(d-1) + m - 2 - d.  On the direct route muls
    equals 2^(m-2) - 1 and d is None.
    """

    m: int
    muls: int
    fast: bool
    d: int | None = None


@dataclass(frozen=True)
class MulCount:
    total: int
    levels: tuple[LevelCount, ...] = ()

    @property
    def fast_levels(self) -> tuple[LevelCount, ...]:
        return tuple(lc for lc in self.levels if lc.fast)


@dataclass(frozen=True)
class OdFactorialResult:
    e: int
    width: int
    residue: Residue2
    algorithm: str
    mulcount: MulCount


def odprod(lo: int, hi: int, width: int) -> Residue2:
    """Product of all odd integers in [lo, hi] mod 2^width (empty -> 1)."""
    if lo < 1:
        raise ValueError("lower bound must be >= 1")
    value, _ = kernels.odd_prod_range(lo, hi, width)
    return Residue2(width, value)


def double_factorial(e: int, width: int) -> Residue2:
    """(2^e - 1)!!: the product of all odd integers below 2^e."""
    if e < 1:
        raise ValueError("e must be >= 1")
    return odprod(1, (1 << e) - 1, width)


def h(m: int, width: int) -> Residue2:
    """The level-m block: product of the odd integers in (2^(m-1), 2^m)."""
    if m < 2:
        raise ValueError("h(m) needs m >= 2")
    return odprod((1 << (m - 1)) + 1, (1 << m) - 1, width)


def _h_direct_counted(m: int, width: int) -> tuple[Residue2, LevelCount]:
    value, muls = kernels.odd_prod_range((1 << (m - 1)) + 1, (1 << m) - 1, width)
    return Residue2(width, value), LevelCount(m, muls, fast=False)


def h_fast(m: int, width: int) -> tuple[Residue2, LevelCount]:
    """h(m) mod 2^width by the accelerated route when it is sound.

    The accelerated rewrite replaces the full level product with

        odprod(2^(m-1)+1, 2^(m-1)+2^d-1) ** 2^(m-1-d)

    In the stated region 2 <= m-1 <= width <= 3m-7 the exponent is
    d = 2 + floor((width - m)/2), never searched.  Two refinements, both
    forced by checking the claim itself:

    * d = 1 (exactly width == m-1) is excluded: the descent that justifies
      the rewrite needs d >= 2, and at (m, width) = (3, 2) the d = 1 claim
      is plainly false (block 5^2 = 25 is 1 mod 4, but h(3) = 35 is 3).
      Those calls fall back to the direct product.
    * For width < m - 1 (narrow targets) the rewrite is instantiated at
      width m, where d = 2 is in range for every m >= 4, and the result is
      truncated; products commute with truncation so this is exact.

    Anything else falls back to the direct product; the returned LevelCount
    says which route ran and what it measured.
    """
    if m < 2:
        raise ValueError("h(m) needs m >= 2")
    in_region = 2 <= m - 1 <= width <= 3 * m - 7
    d = 2 + (width - m) // 2
    if in_region and d >= 2:
        pass
    elif width < m - 1 and m >= 4:
        d = 2
    else:
        return _h_direct_counted(m, width)
    lo = (1 << (m - 1)) + 1
    value, muls = kernels.odd_prod_range(lo, lo + (1 << d) - 2, width)
    block = Residue2(width, value)
    for _ in range(m - 1 - d):
        block = block.mul(block)
        muls += 1
    return block, LevelCount(m, muls, fast=True, d=d)


def _pow_counted(a: Residue2, k: int) -> tuple[Residue2, int]:
    """Square-and-multiply with every multiplication counted."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    if k == 0:
        return Residue2(a.width, 1), 0
    result = a
    muls = 0
    for bit in bin(k)[3:]:
        result = result.mul(result)
        muls += 1
        if bit == "1":
            result = result.mul(a)
            muls += 1
    return result, muls


def od_factorial_naive(e: int, width: int) -> OdFactorialResult:
    """od(2^e!) as the product of the odd parts of 1..2^e.

    One multiplication per integer below 2^e; practical up to e around 24.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    value, muls = kernels.od_naive_prod(e, width)
    return OdFactorialResult(e, width, Residue2(width, value), "naive", MulCount(muls))


def od_factorial_prop14(e: int, width: int) -> OdFactorialResult:
    """od(2^e!) by the literal product formula prod h(m)^(e+1-m)."""
    if e < 2:
        raise ValueError("the product formula needs e >= 2")
    result = Residue2(width, 1)
    levels = []
    total = 0
    for m in range(2, e + 1):
        hm, lc = _h_direct_counted(m, width)
        powered, pmuls = _pow_counted(hm, e + 1 - m)
        result = result.mul(powered)
        levels.append(lc)
        total += lc.muls + pmuls + 1
    return OdFactorialResult(
        e, width, result, "prop14", MulCount(total, tuple(levels))
    )


def od_factorial_fast(e: int, width: int) -> OdFactorialResult:
    """od(2^e!) with every level accelerated where sound.

    Uses the running-double-factorial form of the product formula:
    df_m = df_{m-1} * h(m) and result_m = result_{m-1} * df_m, which costs
    two multiplications per level on top of the per-level h cost.
    """
    if e < 2:
        raise ValueError("the product formula needs e >= 2")
    result = Residue2(width, 1)
    df = Residue2(width, 1)
    levels = []
    total = 0
    for m in range(2, e + 1):
        hm, lc = h_fast(m, width)
        df = df.mul(hm)
        result = result.mul(df)
        levels.append(lc)
        total += lc.muls + 2
    return OdFactorialResult(
        e, width, result, "fast", MulCount(total, tuple(levels))
    )


def uns(e: int, d: int) -> BitWindow:
    """The first d unstable bits of od(2^e!): bits e+1 .. e+d."""
    if e < 2 or d < 1:
        raise ValueError("uns(e, d) needs e >= 2 and d >= 1")
    r = od_factorial_fast(e, e + d + 1).residue
    return r.window(e + 1, d)


def stab(lo: int, d: int) -> BitWindow:
    """Bits lo .. lo+d-1 of the 2-adic limit of od(2^e!).

    Bits 0..E of od(2^E!) are stable (they agree with the limit), so the
    window is read off od(2^E!) at the first stage E = lo+d-1 that has
    stabilized through bit lo+d-1.
    """
    if lo < 1 or d < 1:
        raise ValueError("stab(lo, d) needs lo >= 1 and d >= 1")
    stage = max(lo + d - 1, 2)
    r = od_factorial_fast(stage, stage + 1).residue
    return r.window(lo, d)
