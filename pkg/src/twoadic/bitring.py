"""Fixed-width residues mod 2^B and their bit-level operations.

Residue2 is the value type used everywhere else in the package: an integer
residue carried together with its explicit width B.  Mixing widths is a bug
in this domain (the moduli shift constantly between 2^e, 2^(e+1), 2^(2e),
2^(3e-1), ...), so mixed-width arithmetic raises instead of coercing; width
changes go through widen/truncate.

Residues print and parse in backward binary expansion (BBE): character k of
the string is bit k, so the least significant bit comes first and trailing
zero bits are written out to the requested length.
"""

from __future__ import annotations

from dataclasses import dataclass


class WidthMismatchError(ValueError):
    """Two residues of different widths were combined."""


class ExactnessError(ValueError):
    """An operation that must be exact (shift, halving) would drop set bits."""


def nu(n: int) -> int:
    """2-adic valuation: the exponent of 2 in n. Undefined (error) for 0."""
    if n == 0:
        raise ValueError("nu(0) is infinite")
    if n < 0:
        n = -n
    return (n & -n).bit_length() - 1


def od(n: int) -> int:
    """Odd part of n: n with every factor of 2 removed."""
    if n <= 0:
        raise ValueError("odd part needs a positive integer")
    return n >> nu(n)


@dataclass(frozen=True)
class BitWindow:
    """d consecutive bits of some residue, starting at bit position lo."""

    lo: int
    d: int
    value: int

    def __post_init__(self):
        if self.d < 0 or not 0 <= self.value < (1 << self.d):
            raise ValueError(f"window value {self.value} does not fit in {self.d} bits")

    def bbe(self) -> str:
        return bbe_of_int(self.value, self.d)


@dataclass(frozen=True)
class Residue2:
    """An integer mod 2^width, stored canonically in [0, 2^width)."""

    width: int
    value: int

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        object.__setattr__(self, "value", self.value & ((1 << self.width) - 1))

    # -- arithmetic ------------------------------------------------------

    def _check_width(self, other: "Residue2") -> None:
        if not isinstance(other, Residue2):
            raise TypeError(f"expected Residue2, got {type(other).__name__}")
        if self.width != other.width:
            raise WidthMismatchError(
                f"width mismatch: {self.width} vs {other.width}; "
                "widen/truncate explicitly"
            )

    def mul(self, other: "Residue2") -> "Residue2":
        self._check_width(other)
        return Residue2(self.width, self.value * other.value)

    def add(self, other: "Residue2") -> "Residue2":
        self._check_width(other)
        return Residue2(self.width, self.value + other.value)

    def sub(self, other: "Residue2") -> "Residue2":
        self._check_width(other)
        return Residue2(self.width, self.value - other.value)

    def neg(self) -> "Residue2":
        return Residue2(self.width, -self.value)

    def pow(self, k: int) -> "Residue2":
        """self^k by square-and-multiply; k must be nonnegative."""
        if k < 0:
            raise ValueError("negative exponents go through inv_odd")
        return Residue2(self.width, pow(self.value, k, 1 << self.width))

    def inv_odd(self) -> "Residue2":
        """Multiplicative inverse of an odd residue.

        Quadratic lifting from the 1-bit inverse: each step x -> x(2 - ax)
        doubles the number of correct low bits, so ceil(log2(width)) steps
        reach full width.  Even input has no inverse mod a power of 2.
        """
        a = self.value
        if a % 2 == 0:
            raise ValueError(f"{a} is even and has no inverse mod 2^{self.width}")
        mask = (1 << self.width) - 1
        x = 1
        bits = 1
        while bits < self.width:
            x = (x * (2 - a * x)) & mask
            bits *= 2
        return Residue2(self.width, x)

    # -- width and bit manipulation --------------------------------------

    def widen(self, width: int) -> "Residue2":
        if width < self.width:
            raise ValueError(f"widen to {width} would narrow width {self.width}")
        return Residue2(width, self.value)

    def truncate(self, width: int) -> "Residue2":
        if width > self.width:
            raise ValueError(f"truncate to {width} would widen width {self.width}")
        return Residue2(width, self.value)

    def shr_exact(self, s: int) -> "Residue2":
        """Divide by 2^s exactly, narrowing the width by s.

        The low s bits must all be zero: the result is the exact integer
        quotient, known only mod 2^(width - s).
        """
        if s < 0:
            raise ValueError("shift must be nonnegative")
        if s == 0:
            return self
        if s >= self.width:
            raise ValueError(f"shift {s} leaves no bits of width {self.width}")
        if self.value & ((1 << s) - 1):
            raise ExactnessError(
                f"low {s} bits of {self.value} are not zero; division is inexact"
            )
        return Residue2(self.width - s, self.value >> s)

    def window(self, lo: int, d: int) -> BitWindow:
        """Bits lo .. lo+d-1 as a BitWindow."""
        if lo < 0 or d < 0 or lo + d > self.width:
            raise ValueError(
                f"window [{lo}, {lo + d}) out of range for width {self.width}"
            )
        return BitWindow(lo, d, (self.value >> lo) & ((1 << d) - 1))

    def bit(self, k: int) -> int:
        if not 0 <= k < self.width:
            raise ValueError(f"bit {k} out of range for width {self.width}")
        return (self.value >> k) & 1

    @property
    def is_odd(self) -> bool:
        return self.value & 1 == 1

    # -- operators and display -------------------------------------------

    __mul__ = mul
    __add__ = add
    __sub__ = sub
    __neg__ = neg

    def __pow__(self, k: int) -> "Residue2":
        return self.pow(k)

    def bbe(self, n: int | None = None) -> str:
        return bbe_encode(self, self.width if n is None else n)

    def binary(self, n: int | None = None) -> str:
        """Ordinary (most significant bit first) binary, zero-padded to n."""
        n = self.width if n is None else n
        if n > self.width:
            raise ValueError(f"only {self.width} bits are known")
        return format(self.value & ((1 << n) - 1), f"0{n}b")

    def __str__(self) -> str:
        return f"{self.value} (mod 2^{self.width})"


def residue(value: int, width: int) -> Residue2:
    """Convenience constructor; canonicalizes value into [0, 2^width)."""
    return Residue2(width, value)


def bbe_of_int(value: int, n: int) -> str:
    return "".join("1" if (value >> k) & 1 else "0" for k in range(n))


def bbe_encode(a: Residue2, n: int) -> str:
    """First n bits of a in backward binary: character k is bit k.

    Trailing zero bits are written; the string always has exactly n
    characters.
    """
    if n < 0 or n > a.width:
        raise ValueError(f"cannot encode {n} bits of a width-{a.width} residue")
    return bbe_of_int(a.value, n)


def bbe_decode(s: str) -> Residue2:
    """Parse a backward-binary string into a residue of width len(s)."""
    if not s:
        raise ValueError("empty BBE string")
    bad = set(s) - {"0", "1"}
    if bad:
        raise ValueError(f"invalid BBE characters: {sorted(bad)}")
    value = sum(1 << k for k, c in enumerate(s) if c == "1")
    return Residue2(len(s), value)
