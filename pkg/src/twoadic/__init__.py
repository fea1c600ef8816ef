"""Fixed-precision 2-adic arithmetic around the odd part of 2^e!.

The package computes od(2^e!) mod 2^B by three independent algorithms,
materializes the limit constants z, w, zw, K with stability certificates,
and re-derives every congruence it relies on through the checkers in
twoadic.checks.  See the README for the command-line interface.
"""

from .bitring import (
    BitWindow,
    ExactnessError,
    Residue2,
    WidthMismatchError,
    bbe_decode,
    bbe_encode,
    nu,
    od,
    residue,
)
from .checks import REGISTRY, CheckReport, ParamError, sigma_hat, sweep
from .factorial import (
    LevelCount,
    MulCount,
    OdFactorialResult,
    double_factorial,
    h,
    h_fast,
    od_factorial_fast,
    od_factorial_naive,
    od_factorial_prop14,
    odprod,
    stab,
    uns,
)
from .kernels import active_backend, backend, compiled_available, force_backend
from .limits import (
    K_bits,
    LimitBits,
    StabilityError,
    difference_quotient,
    limit_bits,
    stage_quotient,
    w_bits,
    z_bits,
    zw_bits,
)
