"""Tests for the three od(2^e!) algorithms and their count accounting."""

import pathlib

import pytest

from twoadic.bitring import Residue2, bbe_encode, od
from twoadic.factorial import (
    LevelCount,
    MulCount,
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

import oracles

DATA = pathlib.Path(__file__).parent / "data"


def table_row(e: int, bits: int = 40) -> str:
    """Published row for od(2^e!): BBE string without the column gap."""
    lines = (DATA / "table_rows.txt").read_text().splitlines()
    row = lines[e - 2].replace(" ", "")
    assert len(row) == bits
    return row


# -- building blocks ----------------------------------------------------------


def test_odprod_examples():
    assert odprod(3, 7, 16).value == 105
    assert odprod(5, 9, 16).value == 315
    assert odprod(9, 7, 8).value == 1
    with pytest.raises(ValueError):
        odprod(0, 7, 8)


def test_double_factorial_examples():
    assert double_factorial(3, 16).value == 105
    assert double_factorial(4, 32).value == 2027025
    assert double_factorial(3, 4).value == 9
    with pytest.raises(ValueError):
        double_factorial(0, 8)


def test_double_factorial_vs_oracle():
    for e in range(1, 13):
        assert double_factorial(e, 64).value == oracles.exact_double_factorial(
            e
        ) % (1 << 64)


def test_h_examples():
    assert h(2, 8).value == 3
    assert h(3, 8).value == 35
    # h(4) is 9*11*13*15 = 19305; narrower widths truncate it.
    assert h(4, 16).value == 19305
    assert oracles.exact_h(4) == 19305
    assert h(4, 8).value == 19305 % 256
    with pytest.raises(ValueError):
        h(1, 8)


def test_h_vs_oracle():
    for m in range(2, 13):
        assert h(m, 64).value == oracles.exact_h(m) % (1 << 64)


# -- accelerated h ------------------------------------------------------------


def legal_pairs(m_max):
    for m in range(3, m_max + 1):
        for width in range(m - 1, 3 * m - 6):
            yield m, width


def test_h_fast_matches_h_on_legal_pairs():
    for m, width in legal_pairs(16):
        value, lc = h_fast(m, width)
        assert value == h(m, width), (m, width)
        d = 2 + (width - m) // 2
        if d == 1:
            # width == m-1 computes d = 1, which the d >= 2 guard excludes:
            # the rewrite's justification needs d >= 2 and is plainly false
            # at (3, 2) (25 vs 35 mod 4).  Those pairs run direct.
            assert not lc.fast
            assert lc.muls == (1 << (m - 2)) - 1
        else:
            assert lc == LevelCount(m, (1 << (d - 1)) + m - 2 - d, fast=True, d=d)


def test_h_fast_d_one_corner_is_really_false():
    # 5^2 = 25 is 1 mod 4 while h(3) = 35 is 3 mod 4, so excluding d = 1
    # is forced, not defensive.
    assert pow(5, 2, 4) != oracles.exact_h(3) % 4


def test_h_fast_narrow_widths_use_block_at_m():
    for m in range(4, 17):
        for width in range(1, m - 1):
            value, lc = h_fast(m, width)
            assert value == h(m, width), (m, width)
            assert lc.fast and lc.d == 2
            assert lc.muls == (1 << 1) + m - 2 - 2


def test_h_fast_fallback_cases():
    # m = 2 has a single factor; m = 3 narrow hits the excluded corner.
    for m, width in [(2, 1), (2, 8), (3, 1), (3, 2), (4, 12)]:
        value, lc = h_fast(m, width)
        assert value == h(m, width)
        assert not lc.fast and lc.d is None
        assert lc.muls == (1 << (m - 2)) - 1 if m > 2 else lc.muls == 0


def test_h_fast_count_example():
    # Level 9 at 10 bits: 2 block factors + 6 squarings = 7 multiplications
    # against 127 on the direct route.
    _, lc = h_fast(9, 10)
    assert (lc.muls, lc.d) == (7, 2)
    _, direct = h_fast(9, 40)
    assert not direct.fast and direct.muls == 127


# -- the three algorithms -----------------------------------------------------


def test_naive_examples():
    assert od_factorial_naive(1, 4).residue.value == 1
    assert od_factorial_naive(2, 4).residue.value == 3
    r = od_factorial_naive(3, 16)
    assert r.residue.value == 315
    assert od(40320) == 315
    assert r.mulcount.total == 7
    assert (r.e, r.width, r.algorithm) == (3, 16, "naive")


def test_naive_matches_published_row():
    r = od_factorial_naive(5, 40)
    assert bbe_encode(r.residue, 40) == table_row(5)


def test_prop14_examples():
    assert od_factorial_prop14(2, 8).residue.value == 3
    assert od_factorial_prop14(3, 16).residue.value == 315
    assert od_factorial_prop14(8, 40).residue.value == int(table_row(8)[::-1], 2)


def test_fast_matches_published_row_30():
    r = od_factorial_fast(30, 40)
    assert bbe_encode(r.residue, 40) == table_row(30)


def test_preconditions():
    with pytest.raises(ValueError):
        od_factorial_naive(0, 8)
    with pytest.raises(ValueError):
        od_factorial_prop14(1, 8)
    with pytest.raises(ValueError):
        od_factorial_fast(1, 8)


def test_all_algorithms_match_exact_oracle():
    for e in range(2, 13):
        exact = oracles.exact_od_factorial(e)
        for width in (8, 40):
            want = exact % (1 << width)
            assert od_factorial_naive(e, width).residue.value == want
            assert od_factorial_prop14(e, width).residue.value == want
            assert od_factorial_fast(e, width).residue.value == want


def test_results_are_odd():
    for e in range(2, 10):
        assert od_factorial_fast(e, 16).residue.is_odd


# -- multiplication accounting -------------------------------------------------


def direct_level_sum(e: int) -> int:
    return sum((1 << (m - 2)) - 1 for m in range(2, e + 1))


def test_naive_count_is_two_to_e_minus_one():
    for e in range(1, 14):
        assert od_factorial_naive(e, 8).mulcount.total == (1 << e) - 1


def test_fast_overhead_is_two_per_level_when_nothing_accelerates():
    # At 40 bits no level below m = 16 qualifies for the block-power route,
    # so the fast algorithm pays exactly the direct products plus two
    # multiplications per level.
    for e in range(10, 16):
        mc = od_factorial_fast(e, 40).mulcount
        assert mc.fast_levels == ()
        assert mc.total == direct_level_sum(e) + 2 * (e - 1)


def test_fast_wins_once_levels_accelerate():
    for e in range(16, 21):
        mc = od_factorial_fast(e, 40).mulcount
        assert mc.fast_levels != ()
        assert mc.total < direct_level_sum(e) + 2 * (e - 1)
        assert mc.total < od_factorial_naive(e, 8).mulcount.total


def test_level_counts_are_measured_not_assumed():
    mc = od_factorial_fast(18, 40).mulcount
    assert mc.total == sum(lc.muls for lc in mc.levels) + 2 * (18 - 1)
    for lc in mc.levels:
        if lc.fast:
            assert lc.muls == (1 << (lc.d - 1)) + lc.m - 2 - lc.d
        else:
            assert lc.muls == (1 << (lc.m - 2)) - 1


def test_mulcount_shape():
    mc = MulCount(3, (LevelCount(2, 0, False), LevelCount(3, 1, True, 2)))
    assert [lc.m for lc in mc.fast_levels] == [3]


# -- structural facts used elsewhere -------------------------------------------


def test_gauss_style_double_factorial():
    # (2^e - 1)!! is 2^e + 1 mod 2^(e+1) for e >= 3 but not at e = 2.
    for e in range(3, 25):
        assert double_factorial(e, e + 1).value == (1 << e) + 1
    assert double_factorial(2, 3).value == 3 != 5


def test_odd_part_bijection_on_dyadic_blocks():
    # On (2^(e-1), 2^e] the odd-part map hits each odd number below 2^e
    # exactly once, so the block's odd-part product is (2^e - 1)!!.
    for e in range(1, 13):
        block = [od(i) for i in range((1 << (e - 1)) + 1, (1 << e) + 1)]
        assert sorted(block) == list(range(1, 1 << e, 2))
    for e in range(13, 19):
        mask = (1 << 64) - 1
        p = 1
        for i in range((1 << (e - 1)) + 1, (1 << e) + 1):
            p = (p * od(i)) & mask
        assert p == double_factorial(e, 64).value


def test_low_bits_stabilize():
    # Bits 0..e-1 never change after stage e-1.
    for e in range(3, 21):
        assert od_factorial_fast(e - 1, e).residue == od_factorial_fast(e, e).residue
    assert od_factorial_naive(1, 2).residue.value == 1
    assert od_factorial_naive(2, 2).residue.value == 3


# -- bit windows ----------------------------------------------------------------


def test_uns_example():
    w = uns(17, 7)
    assert (w.lo, w.d, w.value) == (18, 7, 74)
    assert w.bbe() == "0101001"


def test_uns_zero_window():
    assert uns(2, 5).value == 0


def test_stab_example():
    w = stab(18, 7)
    assert (w.lo, w.d, w.value) == (18, 7, 55)
    assert w.bbe() == "1110110"


def test_stab_low_bits():
    assert stab(1, 2).value == 1
    assert stab(1, 30).bbe() == table_row(30)[1:31]


def test_window_preconditions():
    with pytest.raises(ValueError):
        uns(1, 3)
    with pytest.raises(ValueError):
        uns(4, 0)
    with pytest.raises(ValueError):
        stab(0, 3)
