# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: hot product and inverse-sum loops.

Same contract as _kernels_py (see that module for the count convention).
Widths up to 64 run in native unsigned 64-bit arithmetic, where wraparound
is exactly reduction mod 2^64; wider requests fall through to Python-int
loops, which the compiler still speeds up considerably.
"""


cdef unsigned long long _mask64(int width):
    if width >= 64:
        return <unsigned long long>0xFFFFFFFFFFFFFFFF
    return ((<unsigned long long>1) << width) - 1


cdef unsigned long long _inv64(unsigned long long a, unsigned long long mask):
    # Quadratic lifting from the 3-bit inverse (x = a works mod 8).
    cdef unsigned long long x = a
    cdef int i
    for i in range(5):
        x = x * (2 - a * x)
    return x & mask


def odd_prod_range(lo, hi, width):
    """Product of all odd j in [lo, hi] mod 2^width, with its mul count."""
    cdef unsigned long long p, j64, hi64, m
    cdef long long muls = 0
    start = lo | 1 if lo % 2 == 0 else lo
    if start > hi:
        return 1, 0
    if width <= 64 and hi < (1 << 63):
        m = _mask64(width)
        j64 = start
        hi64 = hi
        p = j64 & m
        j64 += 2
        while j64 <= hi64:
            p = (p * j64) & m
            muls += 1
            j64 += 2
        return int(p), int(muls)
    mask = (1 << width) - 1
    prod = start & mask
    j = start + 2
    while j <= hi:
        prod = (prod * j) & mask
        muls += 1
        j += 2
    return prod, int(muls)


def offset_odd_prod(base, e, width):
    """Product of (base + i) over odd i in [1, 2^e) mod 2^width."""
    cdef unsigned long long p, b64, i64, top64, m
    cdef long long muls = 0
    if width <= 64 and e < 63:
        m = _mask64(width)
        b64 = base & m
        top64 = (<unsigned long long>1) << e
        p = (b64 + 1) & m
        i64 = 3
        while i64 < top64:
            p = (p * (b64 + i64)) & m
            muls += 1
            i64 += 2
        return int(p), int(muls)
    mask = (1 << width) - 1
    b = base & mask
    top = 1 << e
    prod = (b + 1) & mask
    i = 3
    while i < top:
        prod = (prod * (b + i)) & mask
        muls += 1
        i += 2
    return prod, int(muls)


def od_naive_prod(e, width):
    """Product of the odd parts of 1..2^e mod 2^width."""
    cdef unsigned long long p, o64, i64, top64, m
    cdef long long muls = 0
    if width <= 64 and e < 63:
        m = _mask64(width)
        top64 = (<unsigned long long>1) << e
        p = 1
        i64 = 2
        while i64 <= top64:
            o64 = i64
            while (o64 & 1) == 0:
                o64 >>= 1
            p = (p * o64) & m
            muls += 1
            i64 += 1
        return int(p), int(muls)
    mask = (1 << width) - 1
    prod = 1
    for i in range(2, (1 << e) + 1):
        o = i
        while o % 2 == 0:
            o //= 2
        prod = (prod * o) & mask
        muls += 1
    return prod, int(muls)


def inv_sums(e, width):
    """Sum of j^(-1) and of j^(-2) over odd j in [1, 2^e), mod 2^width."""
    cdef unsigned long long s1_64 = 0, s2_64 = 0, j64, x64, top64, m
    if width <= 64 and e < 63:
        m = _mask64(width)
        top64 = (<unsigned long long>1) << e
        j64 = 1
        while j64 < top64:
            x64 = _inv64(j64, m)
            s1_64 += x64
            s2_64 = (s2_64 + x64 * x64) & m
            j64 += 2
        return int(s1_64 & m), int(s2_64)
    mod = 1 << width
    mask = mod - 1
    s1 = 0
    s2 = 0
    for j in range(1, 1 << e, 2):
        x = pow(j, -1, mod)
        s1 += x
        s2 += x * x
    return s1 & mask, s2 & mask
