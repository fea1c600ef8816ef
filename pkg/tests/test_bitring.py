"""Unit and property tests for fixed-width residues and BBE text."""

import pytest
from hypothesis import given, strategies as st

from twoadic.bitring import (
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

import oracles


widths = st.integers(min_value=1, max_value=200)


@st.composite
def residues(draw, width=None):
    w = draw(widths) if width is None else width
    value = draw(st.integers(min_value=0, max_value=(1 << w) - 1))
    return Residue2(w, value)


@st.composite
def residue_triples(draw):
    w = draw(widths)
    return tuple(draw(residues(width=w)) for _ in range(3))


# -- construction and canonical form ----------------------------------------


def test_canonical_form():
    assert Residue2(4, 81).value == 1
    assert Residue2(4, -1).value == 15
    assert residue(105 * 105, 8).value == 17


def test_width_must_be_positive():
    with pytest.raises(ValueError):
        Residue2(0, 1)


def test_width_mismatch_raises():
    with pytest.raises(WidthMismatchError):
        Residue2(4, 1).mul(Residue2(5, 1))
    with pytest.raises(WidthMismatchError):
        Residue2(4, 1).add(Residue2(5, 1))


def test_mul_rejects_non_residues():
    with pytest.raises(TypeError):
        Residue2(4, 1).mul(3)


# -- arithmetic --------------------------------------------------------------


def test_mul_examples():
    assert Residue2(8, 3).mul(Residue2(8, 5)).value == 15
    assert Residue2(4, 9).mul(Residue2(4, 9)).value == 1
    assert Residue2(8, 105).mul(Residue2(8, 105)).value == 17


def test_pow_examples():
    assert Residue2(8, 3).pow(0).value == 1
    assert Residue2(8, 3).pow(4).value == 81
    block = Residue2(10, 257 * 259)
    assert block.pow(64).value == oracles.exact_h(9) % (1 << 10)


def test_pow_rejects_negative_exponent():
    with pytest.raises(ValueError):
        Residue2(8, 3).pow(-1)


def test_operator_sugar():
    a, b = Residue2(6, 11), Residue2(6, 7)
    assert (a * b).value == a.mul(b).value
    assert (a + b).value == a.add(b).value
    assert (a - b).value == a.sub(b).value
    assert (-a).value == a.neg().value
    assert (a**3).value == a.pow(3).value


@given(residue_triples())
def test_ring_laws(triple):
    a, b, c = triple
    assert a.add(b) == b.add(a)
    assert a.mul(b) == b.mul(a)
    assert a.add(b).add(c) == a.add(b.add(c))
    assert a.mul(b).mul(c) == a.mul(b.mul(c))
    assert a.mul(b.add(c)) == a.mul(b).add(a.mul(c))
    assert a.add(a.neg()).value == 0


@given(residue_triples(), st.integers(min_value=1, max_value=199))
def test_truncation_homomorphism(triple, narrow):
    a, b, _ = triple
    if narrow >= a.width:
        narrow = a.width
    assert a.mul(b).truncate(narrow) == a.truncate(narrow).mul(b.truncate(narrow))
    assert a.add(b).truncate(narrow) == a.truncate(narrow).add(b.truncate(narrow))


@given(st.integers(min_value=1, max_value=60), st.integers(), st.integers())
def test_squaring_gains_precision(t, x, k):
    """a == b mod 2^(t+1) forces a^2 == b^2 mod 2^(t+2)."""
    width = t + 2
    a = Residue2(width, x)
    b = Residue2(width, x + (k << (t + 1)))
    assert a.mul(a) == b.mul(b)


# -- inversion ---------------------------------------------------------------


def test_inv_odd_examples():
    assert Residue2(4, 1).inv_odd().value == 1
    assert Residue2(4, 3).inv_odd().value == 11
    a = Residue2(8, 105)
    assert a.mul(a.inv_odd()).value == 1


def test_inv_odd_rejects_even():
    with pytest.raises(ValueError):
        Residue2(8, 6).inv_odd()


@given(st.integers(min_value=1, max_value=128), st.integers(min_value=0))
def test_inv_odd_inverts(width, seed):
    a = Residue2(width, seed | 1)
    assert a.mul(a.inv_odd()).value == 1 % (1 << width)


# -- valuation and odd part --------------------------------------------------


def test_nu_od_examples():
    assert (od(1), nu(1)) == (1, 0)
    assert (od(24), nu(24)) == (3, 3)
    assert (od(40320), nu(40320)) == (315, 7)
    assert bbe_encode(Residue2(9, 315), 9) == "110111001"


def test_nu_of_zero_raises():
    with pytest.raises(ValueError):
        nu(0)


def test_nu_of_negative_uses_magnitude():
    assert nu(-24) == 3


def test_od_needs_positive():
    with pytest.raises(ValueError):
        od(0)
    with pytest.raises(ValueError):
        od(-6)


@given(st.integers(min_value=1, max_value=10**12))
def test_nu_od_factorization(n):
    assert n == (1 << nu(n)) * od(n)
    assert od(n) % 2 == 1


# -- shifts, widths, windows ---------------------------------------------------


def test_shr_exact_examples():
    assert Residue2(8, 0).shr_exact(4).value == 0
    r = Residue2(8, 48).shr_exact(4)
    assert (r.width, r.value) == (4, 3)
    df4 = oracles.exact_double_factorial(4)
    r = Residue2(25, df4 - 1).shr_exact(4)
    assert (r.width, r.value) == (21, 126689 % (1 << 21))


def test_shr_exact_rejects_inexact():
    with pytest.raises(ExactnessError):
        Residue2(8, 49).shr_exact(4)


def test_shr_exact_range_checks():
    with pytest.raises(ValueError):
        Residue2(8, 0).shr_exact(8)
    with pytest.raises(ValueError):
        Residue2(8, 0).shr_exact(-1)
    assert Residue2(8, 5).shr_exact(0).value == 5


def test_widen_truncate_direction():
    a = Residue2(8, 200)
    assert a.widen(12).width == 12
    assert a.truncate(4).value == 200 % 16
    with pytest.raises(ValueError):
        a.widen(4)
    with pytest.raises(ValueError):
        a.truncate(12)


def test_window():
    a = Residue2(10, 0b1011001101)
    assert a.window(0, 10).value == a.value
    w = a.window(3, 4)
    assert w == BitWindow(3, 4, 0b1001)
    assert w.bbe() == "1001"
    with pytest.raises(ValueError):
        a.window(5, 6)


def test_window_value_must_fit():
    with pytest.raises(ValueError):
        BitWindow(0, 3, 8)


def test_bit_accessor():
    a = Residue2(4, 0b1010)
    assert [a.bit(k) for k in range(4)] == [0, 1, 0, 1]
    with pytest.raises(ValueError):
        a.bit(4)


def test_wide_widths_supported():
    a = Residue2(256, (1 << 255) + 3)
    assert a.mul(a).value == ((1 << 255) + 3) ** 2 % (1 << 256)


# -- BBE text ------------------------------------------------------------------


def test_bbe_examples():
    assert bbe_encode(Residue2(4, 11), 4) == "1101"
    assert bbe_decode("0101001").value == 74
    assert bbe_decode("1011011").value == 109
    assert bbe_encode(Residue2(10, 3), 10) == "1100000000"


def test_bbe_decode_validates():
    with pytest.raises(ValueError):
        bbe_decode("10a1")
    with pytest.raises(ValueError):
        bbe_decode("")


def test_bbe_encode_length_check():
    with pytest.raises(ValueError):
        bbe_encode(Residue2(4, 11), 5)


@given(residues())
def test_bbe_round_trip(a):
    s = bbe_encode(a, a.width)
    assert len(s) == a.width
    assert bbe_decode(s) == a


def test_binary_is_msb_first():
    assert Residue2(13, 5017).binary() == "1001110011001"
    assert Residue2(8, 5).binary(4) == "0101"
    with pytest.raises(ValueError):
        Residue2(4, 5).binary(5)


def test_str_shows_modulus():
    assert str(Residue2(5, 7)) == "7 (mod 2^5)"
