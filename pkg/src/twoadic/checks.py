"""Congruence checkers: every identity the package claims, re-derived.

Each checker evaluates both sides of one stated congruence from scratch and
returns a CheckReport (a few return several sub-reports).  Checkers never
consult one another's results: the value of the suite is that the two sides
of every statement arrive by independent routes.  The registry at the bottom
maps sweepable checker ids to their parameter grids and legality filters;
sweep() runs a grid in parallel and reports in deterministic order.

Precision follows one rule: every intermediate is carried at the target
modulus width plus one guard bit per exact division still to come, so each
halving or shift provably cannot lose information.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping, Sequence

from . import kernels
from .bitring import Residue2, WidthMismatchError, od
from .factorial import double_factorial, h, od_factorial_fast, odprod, stab, uns
from .limits import K_bits, difference_quotient, stage_quotient, zw_bits


class ParamError(ValueError):
    """A checker was called outside its legal parameter region."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one congruence instance.

    lhs and rhs are the two sides reduced to the stated modulus; passed is
    exactly their equality there.  The note carries anything the bare
    numbers do not say (expected failures, what a count is counting).
    """

    theorem: str
    params: tuple[tuple[str, int], ...]
    lhs: int
    rhs: int
    modulus_bits: int
    passed: bool
    note: str = ""

    def render(self) -> str:
        parts = [f"theorem={self.theorem}"]
        parts.extend(f"{name}={value}" for name, value in self.params)
        parts.append(f"lhs={self.lhs}")
        parts.append(f"rhs={self.rhs}")
        parts.append(f"modulus=2^{self.modulus_bits}")
        parts.append(f"pass={'true' if self.passed else 'false'}")
        if self.note:
            parts.append(f"note={self.note}")
        return " ".join(parts)


def _report(
    theorem: str,
    params: tuple[tuple[str, int], ...],
    lhs: Residue2,
    rhs: Residue2,
    note: str = "",
) -> CheckReport:
    if lhs.width != rhs.width:
        raise WidthMismatchError(
            f"report sides at widths {lhs.width} and {rhs.width}"
        )
    return CheckReport(
        theorem, params, lhs.value, rhs.value, lhs.width, lhs.value == rhs.value, note
    )


@lru_cache(maxsize=None)
def _df(e: int, width: int) -> Residue2:
    return double_factorial(e, width)


@lru_cache(maxsize=None)
def _inv_sums(e: int, width: int) -> tuple[int, int]:
    return kernels.inv_sums(e, width)


# -- symmetric-function evaluators ----------------------------------------


def sigma_hat(e: int, i: int, width: int) -> Residue2:
    """Near-top elementary symmetric function of the odd residues below 2^e.

    For the n-element set S_e (n = 2^(e-1)), sigma_hat(e, i) is the
    elementary symmetric polynomial of degree n - i: the sum over all
    (n-i)-subsets of their products.  Dividing out the full product P turns
    it into a sum over inverses, which is how it is evaluated:

        sigma_hat_1 = P * sum(1/j),
        sigma_hat_2 = P * (sum(1/j)^2 - sum(1/j^2)) / 2.

    The i = 2 case carries one guard bit so the halving is exact (the
    double sum counts each unordered pair twice).
    """
    if e < 2:
        raise ParamError("sigma_hat needs e >= 2")
    if i == 1:
        s1, _ = _inv_sums(e, width)
        return _df(e, width).mul(Residue2(width, s1))
    if i == 2:
        wide = width + 1
        s1, s2 = _inv_sums(e, wide)
        half = Residue2(wide, s1 * s1 - s2).shr_exact(1)
        return _df(e, width).mul(half)
    raise ParamError("only the first and second functions are implemented")


# -- checkers ---------------------------------------------------------------


def check_thm1(e: int, d: int) -> CheckReport:
    """Unstable window plus K lands on the stable window one level up.

    uns(e, d) + K == stab(e+1, d) mod 2^d: the d bits of od(2^e!) just
    above the stable region differ from the limit's bits at the same
    positions by the single constant K, independent of e and d.
    """
    if not 1 <= d < e:
        raise ParamError("check_thm1 needs 1 <= d < e")
    u = uns(e, d)
    s = stab(e + 1, d)
    lhs = Residue2(d, u.value).add(K_bits(d).residue)
    rhs = Residue2(d, s.value)
    return _report("thm1", (("e", e), ("d", d)), lhs, rhs)


def check_thm2(m: int, B: int) -> CheckReport:
    """Level product vs its block-power rewrite at width B.

    h(m) == odprod(2^(m-1)+1, 2^(m-1)+2^d-1) ** 2^(m-1-d) mod 2^B with
    d = 2 + floor((B - m)/2), for 2 <= m-1 <= B <= 3m-7.  Both sides are
    computed directly here, with no fallback: the corner (m, B) = (3, 2),
    where d comes out 1, genuinely fails and is reported as a failure.
    """
    if not 2 <= m - 1 <= B <= 3 * m - 7:
        raise ParamError(
            f"check_thm2 needs 2 <= m-1 <= B <= 3m-7; got m={m}, B={B}"
        )
    d = 2 + (B - m) // 2
    lo = (1 << (m - 1)) + 1
    lhs = h(m, B)
    rhs = odprod(lo, lo + (1 << d) - 2, B).pow(1 << (m - 1 - d))
    note = "" if lhs == rhs else f"d={d} corner; the block-power rewrite needs d >= 2"
    return _report("thm2", (("m", m), ("B", B)), lhs, rhs, note)


def check_weak1(e: int) -> CheckReport:
    """Product over odd j < 2^e vs the same product shifted up by 2^e.

    prod(j) == prod(2^e + j) mod 2^(2e).  False at e = 1 (1 vs 3 mod 4),
    hence the precondition.
    """
    if e < 2:
        raise ParamError("check_weak1 needs e >= 2 (1 vs 3 mod 4 fails at e=1)")
    width = 2 * e
    lhs = double_factorial(e, width)
    rhs = odprod((1 << e) + 1, (1 << (e + 1)) - 1, width)
    return _report("weak1", (("e", e),), lhs, rhs)


def check_wcor(e: int) -> CheckReport:
    """Consecutive stage quotients ((2^e-1)!! - 1) / 2^e agree mod 2^(e-1).

    The quotient is an integer only from e = 3 on (at e = 2 it is 2/4),
    so that is where the comparison starts.
    """
    if e < 3:
        raise ParamError("check_wcor needs e >= 3 (the e=2 quotient is 2/4)")
    lhs = stage_quotient(e + 1, e - 1)
    rhs = stage_quotient(e, e - 1)
    return _report("wcor", (("e", e),), lhs, rhs)


def check_gauss(e: int) -> CheckReport:
    """(2^e - 1)!! == 2^e + 1 mod 2^(e+1), by direct product.

    False at e = 2 (3 vs 5 mod 8), hence the precondition.
    """
    if e < 3:
        raise ParamError("check_gauss needs e >= 3 (3 vs 5 mod 8 fails at e=2)")
    width = e + 1
    lhs = double_factorial(e, width)
    rhs = Residue2(width, (1 << e) + 1)
    return _report("gauss", (("e", e),), lhs, rhs)


def check_bijection(e: int) -> CheckReport:
    """od maps (2^(e-1), 2^e] one-to-one onto the odd integers below 2^e.

    Both sets have 2^(e-1) elements and every odd part lands in the target,
    so counting distinct valid images decides bijectivity.
    """
    if e < 1:
        raise ParamError("check_bijection needs e >= 1")
    top = 1 << e
    image = {od(i) for i in range((top >> 1) + 1, top + 1)}
    valid = sum(1 for x in image if x & 1 and x < top)
    lhs = Residue2(e + 1, valid)
    rhs = Residue2(e + 1, top >> 1)
    return _report(
        "bijection", (("e", e),), lhs, rhs, "distinct odd parts vs target size"
    )


def check_stability(e: int) -> CheckReport:
    """od(2^(e-1)!) == od(2^e!) mod 2^e: bits up to e-1 have stopped moving.

    False at e = 2 (1 vs 3 mod 4): stability starts one level later.
    """
    if e < 3:
        raise ParamError("check_stability needs e >= 3 (1 vs 3 mod 4 fails at e=2)")
    lhs = od_factorial_fast(e - 1, e).residue
    rhs = od_factorial_fast(e, e).residue
    return _report("stability", (("e", e),), lhs, rhs)


def check_prod_thm(e: int) -> CheckReport:
    """The step from stage e-1 to stage e, divided by 2^e, is zw mod 2^(e-1).

    (od(2^e!) - od(2^(e-1)!)) / 2^e == z*w mod 2^(e-1): the successive
    corrections to the limit are themselves governed by the two limit
    constants.
    """
    if e < 3:
        raise ParamError("check_prod_thm needs e >= 3")
    lhs = difference_quotient(e, e - 1)
    rhs = zw_bits(e - 1).residue
    return _report("prodthm", (("e", e),), lhs, rhs)


def check_hard(e: int, A: int) -> CheckReport:
    """prod(A*2^e + i) over odd i < 2^e equals prod(i), mod 2^(3e-1).

    A may be any integer, negatives included; A*2^e enters as its canonical
    residue, which leaves every factor unchanged mod 2^(3e-1).
    """
    if e < 2:
        raise ParamError("check_hard needs e >= 2")
    width = 3 * e - 1
    base = (A << e) % (1 << width)
    value, _ = kernels.offset_odd_prod(base, e, width)
    lhs = Residue2(width, value)
    rhs = _df(e, width)
    return _report("hard", (("e", e), ("A", A)), lhs, rhs)


def check_abcor(e: int, A: int, A2: int, j: int) -> CheckReport:
    """Two shifted products, each raised to 2^j, agree mod 2^(3e-1+j).

    prod(A*2^e + i)^(2^j) == prod(A2*2^e + i)^(2^j): each squaring buys
    one more bit of agreement on top of the unpowered statement.
    """
    if e < 2 or j < 0:
        raise ParamError("check_abcor needs e >= 2 and j >= 0")
    width = 3 * e - 1 + j

    def side(shift: int) -> Residue2:
        value, _ = kernels.offset_odd_prod((shift << e) % (1 << width), e, width)
        return Residue2(width, value).pow(1 << j)

    return _report(
        "abcor",
        (("e", e), ("A", A), ("A2", A2), ("j", j)),
        side(A),
        side(A2),
    )


def check_sigma1(e: int) -> CheckReport:
    """sigma_hat_1(S_e) == 2^(2e-2) mod 2^(2e-1)."""
    if e < 2:
        raise ParamError("check_sigma1 needs e >= 2")
    width = 2 * e - 1
    lhs = sigma_hat(e, 1, width)
    rhs = Residue2(width, 1 << (2 * e - 2))
    return _report("sigma1", (("e", e),), lhs, rhs)


def check_sigma2(e: int) -> CheckReport:
    """sigma_hat_2(S_e) == 2^(e-2) mod 2^(e-1)."""
    if e < 2:
        raise ParamError("check_sigma2 needs e >= 2")
    width = e - 1
    lhs = sigma_hat(e, 2, width)
    rhs = Residue2(width, 1 << (e - 2))
    return _report("sigma2", (("e", e),), lhs, rhs)


def check_H(e: int) -> tuple[CheckReport, CheckReport, CheckReport]:
    """The paired-inverse sum H_e, three ways.

    H_e groups the inverse sum over S_e into pairs (a, 2^e - a) scaled by
    P = (2^e - 1)!!.  Three sub-reports:

    * hsum.literal: the sum with lower index i = 1, which omits the
      (1, 2^e - 1) pair, against 2^(e-2) mod 2^(e-1).  This is kept
      exactly as stated even though it fails for every e; the failure is
      recorded, not corrected.
    * hsum.pairs: the pair-complete sum (i from 0) against the same
      target.  Observational companion to the literal form.
    * hsum.display: the unambiguous identity the grouping feeds,
      sigma_hat_1(S_e) == 2^e * (pair-complete H_e), at mod 2^(2e-1).
    """
    if e < 2:
        raise ParamError("check_H needs e >= 2")
    wide = 2 * e - 1
    mod = 1 << wide
    big = _df(e, wide).value
    top = 1 << e

    def term(i: int) -> int:
        return big * pow((2 * i + 1) * (top - 1 - 2 * i), -1, mod) % mod

    literal = sum(term(i) for i in range(1, 1 << (e - 2))) % mod
    full = (term(0) + literal) % mod
    narrow = e - 1
    target = Residue2(narrow, 1 << (e - 2))
    params = (("e", e),)
    lit_report = _report(
        "hsum.literal",
        params,
        Residue2(wide, literal).truncate(narrow),
        target,
        "lower index i=1 omits the (1, 2^e-1) pair; failure expected and recorded",
    )
    pair_report = _report(
        "hsum.pairs",
        params,
        Residue2(wide, full).truncate(narrow),
        target,
        "pair-complete sum (i from 0); observational",
    )
    display_report = _report(
        "hsum.display",
        params,
        sigma_hat(e, 1, wide),
        Residue2(wide, full << e),
        "inverse-sum identity: sigma_hat_1 equals 2^e times the pair sum",
    )
    return lit_report, pair_report, display_report


def check_square_census(e: int) -> CheckReport:
    """Squares of odd residues mod 2^e hit each class ==1 mod 8 four times.

    There are 2^(e-3) such classes and 2^(e-1) odd residues, so "every
    class exactly four times" accounts for everything; the report counts
    classes that are both == 1 mod 8 and hit exactly four times.
    """
    if e < 3:
        raise ParamError("check_square_census needs e >= 3")
    mod = 1 << e
    hist = Counter(i * i % mod for i in range(1, mod, 2))
    good = sum(1 for c, k in hist.items() if c % 8 == 1 and k == 4)
    return _report(
        "census",
        (("e", e),),
        Residue2(e, good),
        Residue2(e, 1 << (e - 3)),
        "classes congruent to 1 mod 8 hit exactly four times",
    )


def check_four_copy(e: int) -> CheckReport:
    """sigma_hat_1 of four copies of {1, 9, ..., 2^e - 7} is 2^(e-1) mod 2^e.

    The multiset of the previous census: every residue == 1 mod 8 below
    2^e, with multiplicity four.
    """
    if e < 3:
        raise ParamError("check_four_copy needs e >= 3")
    mod = 1 << e
    prod_all = 1
    inv_sum = 0
    for x in range(1, mod, 8):
        prod_all = prod_all * pow(x, 4, mod) % mod
        inv_sum += pow(x, -1, mod)
    lhs = Residue2(e, prod_all * (4 * inv_sum))
    rhs = Residue2(e, 1 << (e - 1))
    return _report("fourcopy", (("e", e),), lhs, rhs)


def check_sqprop(e: int) -> CheckReport:
    """Sum over odd i < 2^e of ((2^e-1)!!)^2 / i^2 is 2^(e-1) mod 2^e."""
    if e < 3:
        raise ParamError("check_sqprop needs e >= 3")
    mod = 1 << e
    square = _df(e, e).value ** 2 % mod
    total = 0
    for i in range(1, mod, 2):
        inv = pow(i, -1, mod)
        total += square * inv % mod * inv
    lhs = Residue2(e, total)
    rhs = Residue2(e, 1 << (e - 1))
    return _report("sqprop", (("e", e),), lhs, rhs)


def check_T_split(e: int) -> tuple[CheckReport, CheckReport, CheckReport]:
    """sigma_hat_2 split by whether a pair differs by 2^(e-1).

    With P = (2^e - 1)!!, every unordered pair a < b in S_e contributes
    P/(ab).  Pairs with b = a + 2^(e-1) form T2, computed directly; the
    remaining pairs form T1, computed as an ordered double sum (each pair
    twice) and halved with one guard bit.  Sub-reports:

    * tsplit.t1:  T1 == 0        mod 2^(e-1)
    * tsplit.t2:  T2 == 2^(e-2)  mod 2^(e-1)
    * tsplit.sum: T1 + T2 == sigma_hat_2(S_e), tying the regrouped pair
      enumeration to the power-sum evaluation route.
    """
    if e < 3:
        raise ParamError("check_T_split needs e >= 3")
    guard = 1 << e
    half_top = 1 << (e - 1)
    big = _df(e, e).value
    inv = {a: pow(a, -1, guard) for a in range(1, guard, 2)}
    s1 = sum(inv.values()) % guard

    t2 = 0
    for a in range(1, half_top, 2):
        t2 += big * inv[a] % guard * inv[a + half_top]
    t2 %= guard

    doubled = 0
    for a in range(1, guard, 2):
        rest = s1 - inv[a] - inv[a ^ half_top]
        doubled += big * inv[a] % guard * (rest % guard)
    t1 = Residue2(e, doubled).shr_exact(1)

    narrow = e - 1
    params = (("e", e),)
    t2r = Residue2(e, t2).truncate(narrow)
    sum_lhs = t1.add(t2r)
    return (
        _report("tsplit.t1", params, t1, Residue2(narrow, 0)),
        _report("tsplit.t2", params, t2r, Residue2(narrow, 1 << (e - 2))),
        _report(
            "tsplit.sum",
            params,
            sum_lhs,
            sigma_hat(e, 2, narrow),
            "pair enumeration vs power-sum route",
        ),
    )


def strictness_probe(which: str, e: int) -> CheckReport:
    """Re-test a congruence one bit above its stated modulus.

    Failures here are observations that the stated modulus is sharp at
    this e, not defects; nothing in the package asserts sharpness.
    """
    if which == "sigma1":
        width = 2 * e
        lhs = sigma_hat(e, 1, width)
        rhs = Residue2(width, 1 << (2 * e - 2))
    elif which == "sigma2":
        width = e
        lhs = sigma_hat(e, 2, width)
        rhs = Residue2(width, 1 << (e - 2))
    elif which == "hard":
        width = 3 * e
        value, _ = kernels.offset_odd_prod((1 << e) % (1 << width), e, width)
        lhs = Residue2(width, value)
        rhs = _df(e, width)
    else:
        raise ParamError(f"no strictness probe named {which!r}")
    return _report(
        f"sharp.{which}",
        (("e", e),),
        lhs,
        rhs,
        "probe one bit above the stated modulus; failure = sharpness witness",
    )


# -- registry and sweeps ----------------------------------------------------


@dataclass(frozen=True)
class ParamSpec:
    name: str
    lo: int
    hi: int

    def default(self) -> list[int]:
        return list(range(self.lo, self.hi + 1))


@dataclass(frozen=True)
class CheckerEntry:
    fn: Callable[..., object]
    params: tuple[ParamSpec, ...]
    legal: Callable[..., bool]
    constraint: str


REGISTRY: dict[str, CheckerEntry] = {
    "thm1": CheckerEntry(
        check_thm1,
        (ParamSpec("e", 2, 20), ParamSpec("d", 1, 19)),
        lambda e, d: 1 <= d < e,
        "1 <= d < e",
    ),
    "thm2": CheckerEntry(
        check_thm2,
        (ParamSpec("m", 3, 14), ParamSpec("B", 2, 35)),
        lambda m, B: 2 <= m - 1 <= B <= 3 * m - 7,
        "2 <= m-1 <= B <= 3m-7",
    ),
    "weak1": CheckerEntry(
        check_weak1, (ParamSpec("e", 2, 16),), lambda e: e >= 2, "e >= 2"
    ),
    "wcor": CheckerEntry(
        check_wcor, (ParamSpec("e", 3, 16),), lambda e: e >= 3, "e >= 3"
    ),
    "gauss": CheckerEntry(
        check_gauss, (ParamSpec("e", 3, 20),), lambda e: e >= 3, "e >= 3"
    ),
    "bijection": CheckerEntry(
        check_bijection, (ParamSpec("e", 3, 20),), lambda e: e >= 1, "e >= 1"
    ),
    "stability": CheckerEntry(
        check_stability, (ParamSpec("e", 3, 20),), lambda e: e >= 3, "e >= 3"
    ),
    "prodthm": CheckerEntry(
        check_prod_thm, (ParamSpec("e", 3, 20),), lambda e: e >= 3, "e >= 3"
    ),
    "hard": CheckerEntry(
        check_hard,
        (ParamSpec("e", 2, 12), ParamSpec("A", -2, 3)),
        lambda e, A: e >= 2,
        "e >= 2",
    ),
    "abcor": CheckerEntry(
        check_abcor,
        (
            ParamSpec("e", 2, 10),
            ParamSpec("A", -2, 3),
            ParamSpec("A2", -2, 3),
            ParamSpec("j", 0, 3),
        ),
        lambda e, A, A2, j: e >= 2 and j >= 0,
        "e >= 2 and j >= 0",
    ),
    "sigma1": CheckerEntry(
        check_sigma1, (ParamSpec("e", 2, 18),), lambda e: e >= 2, "e >= 2"
    ),
    "sigma2": CheckerEntry(
        check_sigma2, (ParamSpec("e", 2, 18),), lambda e: e >= 2, "e >= 2"
    ),
    "hsum": CheckerEntry(
        check_H, (ParamSpec("e", 2, 16),), lambda e: e >= 2, "e >= 2"
    ),
    "census": CheckerEntry(
        check_square_census, (ParamSpec("e", 3, 14),), lambda e: e >= 3, "e >= 3"
    ),
    "fourcopy": CheckerEntry(
        check_four_copy, (ParamSpec("e", 3, 14),), lambda e: e >= 3, "e >= 3"
    ),
    "sqprop": CheckerEntry(
        check_sqprop, (ParamSpec("e", 3, 14),), lambda e: e >= 3, "e >= 3"
    ),
    "tsplit": CheckerEntry(
        check_T_split, (ParamSpec("e", 3, 14),), lambda e: e >= 3, "e >= 3"
    ),
}


def sweep(
    theorem: str,
    overrides: Mapping[str, Sequence[int]] | None = None,
    max_workers: int | None = None,
) -> list[CheckReport]:
    """Run one checker over its parameter grid; reports in grid order.

    overrides replaces the default range of any parameter by name.  Tuples
    that fall outside the legality region are skipped; a grid with no legal
    tuple at all (a directly illegal request) raises ParamError naming the
    constraint.
    """
    if theorem not in REGISTRY:
        raise KeyError(f"unknown checker id {theorem!r}")
    entry = REGISTRY[theorem]
    axes = []
    for spec in entry.params:
        chosen = overrides.get(spec.name) if overrides else None
        axes.append(list(chosen) if chosen is not None else spec.default())
    tuples = [t for t in product(*axes) if entry.legal(*t)]
    if not tuples:
        raise ParamError(f"no legal parameter tuples: {theorem} needs {entry.constraint}")
    with ThreadPoolExecutor(max_workers=max_workers or 8) as pool:
        results = list(pool.map(lambda t: entry.fn(*t), tuples))
    reports: list[CheckReport] = []
    for outcome in results:
        if isinstance(outcome, CheckReport):
            reports.append(outcome)
        else:
            reports.extend(outcome)
    return reports
