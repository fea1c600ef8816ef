"""Pure-Python kernels: the hot product and inverse-sum loops.

Same contract as the compiled extension in _kernels.pyx; kernels.py picks
whichever is importable.  Values are plain ints, already reduced mod
2^width.  Multiplication counts follow the seed-with-first-factor
convention: a product of n >= 1 factors costs n - 1 multiplications, an
empty product costs 0.
"""

from __future__ import annotations


def odd_prod_range(lo: int, hi: int, width: int) -> tuple[int, int]:
    """Product of all odd j in [lo, hi] mod 2^width, with its mul count."""
    mask = (1 << width) - 1
    j = lo | 1 if lo % 2 == 0 else lo
    if j > hi:
        return 1, 0
    p = j & mask
    muls = 0
    j += 2
    while j <= hi:
        p = (p * j) & mask
        muls += 1
        j += 2
    return p, muls


def offset_odd_prod(base: int, e: int, width: int) -> tuple[int, int]:
    """Product of (base + i) over odd i in [1, 2^e) mod 2^width."""
    mask = (1 << width) - 1
    base &= mask
    top = 1 << e
    p = (base + 1) & mask
    muls = 0
    i = 3
    while i < top:
        p = (p * (base + i)) & mask
        muls += 1
        i += 2
    return p, muls


def od_naive_prod(e: int, width: int) -> tuple[int, int]:
    """Product of the odd parts of 1..2^e mod 2^width."""
    mask = (1 << width) - 1
    p = 1
    muls = 0
    for i in range(2, (1 << e) + 1):
        o = i >> ((i & -i).bit_length() - 1)
        p = (p * o) & mask
        muls += 1
    return p, muls


def inv_sums(e: int, width: int) -> tuple[int, int]:
    """Sum of j^(-1) and of j^(-2) over odd j in [1, 2^e), mod 2^width."""
    mod = 1 << width
    mask = mod - 1
    s1 = 0
    s2 = 0
    for j in range(1, 1 << e, 2):
        x = pow(j, -1, mod)
        s1 += x
        s2 += x * x
    return s1 & mask, s2 & mask
