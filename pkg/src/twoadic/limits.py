"""The 2-adic limit constants z, w, zw, K, with stability certificates.

z is the limit of od(2^e!): its low e+1 bits stop changing from stage e on.
w is the limit of ((2^e - 1)!! - 1) / 2^e, which stage e pins down mod
2^(e-1).  K = -z*w is the constant that maps unstable windows of od(2^e!)
onto later stable windows (see checks.check_thm1).

Every width-B value returned here carries a certificate: the value was
recomputed at the next deeper stage and the two stages agreed on all B
bits.  Disagreement would mean the requested bits have not stabilized and
raises instead of returning a wrong answer.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

from .bitring import Residue2
from .factorial import double_factorial, od_factorial_fast

# A width-B request for w costs about 2^(B+2) multiplications (two stages
# of the double factorial at 2^(B+1) odd factors each).  Beyond this width
# the call still runs, but emits a warning with the estimated cost.
_W_COMFORT_WIDTH = 32


class StabilityError(ArithmeticError):
    """Two stages that must agree on the requested bits did not."""


@dataclass(frozen=True)
class LimitBits:
    """First `width` bits of one limit constant plus its certificate.

    The certificate is a tuple of (component, stage1, stage2) triples: each
    component of the value was computed at stage1 and recomputed at stage2,
    and the two runs agreed mod 2^width.  z and w have one component;
    zw and K inherit both of theirs.
    """

    name: str
    width: int
    residue: Residue2
    certificate: tuple[tuple[str, int, int], ...]

    def describe_certificate(self) -> str:
        parts = ", ".join(
            f"{name} stages ({e1}, {e2})" for name, e1, e2 in self.certificate
        )
        return f"{parts} agree mod 2^{self.width}"


@lru_cache(maxsize=None)
def _z_stage(e: int, width: int) -> Residue2:
    return od_factorial_fast(e, width).residue


def z_bits(width: int) -> LimitBits:
    """Bits 0..width-1 of z, the limit of od(2^e!).

    Stage e fixes bits 0..e, so stage width-1 (clamped up to the smallest
    stage the factorial routines accept) already has all requested bits;
    the certificate recomputes at the next stage.
    """
    if width < 1:
        raise ValueError("width must be >= 1")
    e1 = max(width - 1, 2)
    e2 = e1 + 1
    r1 = _z_stage(e1, width)
    r2 = _z_stage(e2, width)
    if r1 != r2:
        raise StabilityError(
            f"z stages {e1} and {e2} disagree mod 2^{width}: {r1} vs {r2}"
        )
    return LimitBits("z", width, r1, (("z", e1, e2),))


@lru_cache(maxsize=None)
def stage_quotient(e: int, width: int) -> Residue2:
    """((2^e - 1)!! - 1) / 2^e, exact, as a width-bit residue.

    Defined for e >= 3: the double factorial is 1 plus an odd multiple of
    2^e from that stage on, so the quotient is an odd integer.  It is
    carried at width e + width so that subtracting 1 and shifting out the
    e guaranteed-zero low bits still leaves `width` exact bits; the shift
    raises if those bits are not zero.
    """
    if e < 3:
        raise ValueError("the stage quotient is an integer only for e >= 3")
    df = double_factorial(e, e + width)
    return (df - Residue2(e + width, 1)).shr_exact(e)


def w_bits(width: int) -> LimitBits:
    """Bits 0..width-1 of w, the limit of ((2^e - 1)!! - 1) / 2^e.

    Stage e pins w mod 2^(e-1), so stage width+1 (at least 3: below that
    the quotient is not even an integer) covers the request; the
    certificate recomputes at stage width+2.
    """
    if width < 1:
        raise ValueError("width must be >= 1")
    if width > _W_COMFORT_WIDTH:
        warnings.warn(
            f"w to {width} bits multiplies about 2^{width + 2} odd integers; "
            "this is far beyond desk scale",
            RuntimeWarning,
            stacklevel=2,
        )
    e1 = max(width + 1, 3)
    e2 = e1 + 1
    r1 = stage_quotient(e1, width)
    r2 = stage_quotient(e2, width)
    if r1 != r2:
        raise StabilityError(
            f"w stages {e1} and {e2} disagree mod 2^{width}: {r1} vs {r2}"
        )
    return LimitBits("w", width, r1, (("w", e1, e2),))


def zw_bits(width: int) -> LimitBits:
    """Bits 0..width-1 of the product z*w."""
    z = z_bits(width)
    w = w_bits(width)
    return LimitBits(
        "zw", width, z.residue.mul(w.residue), z.certificate + w.certificate
    )


def K_bits(width: int) -> LimitBits:
    """Bits 0..width-1 of K = -z*w."""
    zw = zw_bits(width)
    return LimitBits("K", width, zw.residue.neg(), zw.certificate)


def limit_bits(name: str, width: int) -> LimitBits:
    """Dispatch by constant name: one of z, w, zw, K."""
    try:
        fn = {"z": z_bits, "w": w_bits, "zw": zw_bits, "K": K_bits}[name]
    except KeyError:
        raise ValueError(f"unknown limit constant {name!r}") from None
    return fn(width)


def difference_quotient(e: int, width: int) -> Residue2:
    """(od(2^e!) - od(2^(e-1)!)) / 2^e, exact, truncated to `width` bits.

    The two odd parts agree mod 2^e, so the difference shifts out exactly;
    both are computed at width e + width so nothing is lost.
    """
    if e < 3:
        raise ValueError("the difference quotient needs e >= 3")
    wide = e + width
    a = od_factorial_fast(e, wide).residue
    b = od_factorial_fast(e - 1, wide).residue
    return (a - b).shr_exact(e).truncate(width)
