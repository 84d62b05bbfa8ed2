import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cardtrick.errors import IntegerOverflow, InvalidArgument
from cardtrick.exactmath import (
    ceil_div,
    checked_pow,
    divisors_gt1,
    floor_div,
    gcd,
    lcm,
    rational_parts,
)


def oracle_ceil(num: int, den: int) -> int:
    # Fraction.__ceil__ is exact and does not go through ceil_div.
    return math.ceil(Fraction(num, den))


@pytest.mark.parametrize("a, d, expected", [(20, 3, 7), (6, 3, 2), (-1, 3, 0)])
def test_ceil_div_examples(a, d, expected):
    assert ceil_div(a, d) == expected


@pytest.mark.parametrize("a, d, expected", [(7, 2, 3), (6, 3, 2), (-1, 3, -1)])
def test_floor_div_examples(a, d, expected):
    assert floor_div(a, d) == expected


@pytest.mark.parametrize("func", [ceil_div, floor_div])
@pytest.mark.parametrize("d", [0, -3])
def test_division_rejects_nonpositive_denominator(func, d):
    with pytest.raises(InvalidArgument):
        func(5, d)


def test_division_rejects_non_integers():
    with pytest.raises(InvalidArgument):
        ceil_div(1.5, 2)
    with pytest.raises(InvalidArgument):
        floor_div(3, True)


@pytest.mark.parametrize("a, b, expected", [(7, 2, 1), (3, 6, 3), (1, 20, 1), (9, 0, 9), (0, 4, 4)])
def test_gcd_examples(a, b, expected):
    assert gcd(a, b) == expected


def test_gcd_rejects_double_zero_and_negatives():
    with pytest.raises(InvalidArgument):
        gcd(0, 0)
    with pytest.raises(InvalidArgument):
        gcd(-2, 4)


@pytest.mark.parametrize("a, b, expected", [(7, 2, 14), (4, 6, 12), (5, 5, 5)])
def test_lcm_examples(a, b, expected):
    assert lcm(a, b) == expected


@pytest.mark.parametrize("a, b", [(0, 3), (3, -1)])
def test_lcm_rejects_nonpositive(a, b):
    with pytest.raises(InvalidArgument):
        lcm(a, b)


@pytest.mark.parametrize(
    "C, expected", [(21, [3, 7, 21]), (1, []), (6, [2, 3, 6]), (36, [2, 3, 4, 6, 9, 12, 18, 36])]
)
def test_divisors_gt1_examples(C, expected):
    assert divisors_gt1(C) == expected


def test_divisors_match_brute_force():
    for C in range(1, 301):
        assert divisors_gt1(C) == [n for n in range(2, C + 1) if C % n == 0]


def test_divisors_rejects_nonpositive():
    with pytest.raises(InvalidArgument):
        divisors_gt1(0)


def test_checked_pow_examples():
    assert checked_pow(3, 3) == 27
    assert checked_pow(7, 0) == 1
    assert checked_pow(2, 200, max_bits=201) == 2**200


def test_checked_pow_overflow_names_operands():
    with pytest.raises(IntegerOverflow) as info:
        checked_pow(2, 200, max_bits=200)
    assert (info.value.base, info.value.exponent) == (2, 200)
    with pytest.raises(IntegerOverflow):
        checked_pow(10**6, 10**6)


def test_checked_pow_boundary_is_exact():
    # 3**k widths around a 64-bit limit: no off-by-one in the early rejection.
    for k in range(1, 60):
        value = 3**k
        if value.bit_length() <= 64:
            assert checked_pow(3, k, max_bits=64) == value
        else:
            with pytest.raises(IntegerOverflow):
                checked_pow(3, k, max_bits=64)


def test_rational_parts_examples():
    assert rational_parts(Fraction(7, 2)) == (3, Fraction(1, 2))
    assert rational_parts(Fraction(5, 1)) == (5, Fraction(0))
    # 10 = 3*3 + 1
    assert rational_parts(Fraction(10, 3)) == (3, Fraction(1, 3))
    assert rational_parts(Fraction(-7, 2)) == (-4, Fraction(1, 2))


def test_rational_is_normalized():
    r = Fraction(10, -4)
    assert (r.numerator, r.denominator) == (-5, 2)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
def test_rational_parts_decomposition(num, den):
    whole, frac = rational_parts(Fraction(num, den))
    assert whole + frac == Fraction(num, den)
    assert 0 <= frac < 1
    assert math.gcd(frac.numerator, frac.denominator) == 1


@given(st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_ceil_matches_oracle_and_floor_duality(a, d):
    assert ceil_div(a, d) == oracle_ceil(a, d)
    assert ceil_div(a, d) == -floor_div(-a, d)
    assert floor_div(a, d) == ceil_div(a - d + 1, d)
    q = ceil_div(a, d)
    assert q - 1 < Fraction(a, d) <= q


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 1000))
def test_ceiling_is_monotone(a1, a2, d):
    lo, hi = sorted((a1, a2))
    assert ceil_div(lo, d) <= ceil_div(hi, d)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 1000))
def test_integer_shift_leaves_ceiling_offset(v, a, d):
    assert ceil_div(v * d + a, d) == v + ceil_div(a, d)


@given(
    st.integers(-10**6, 10**6),
    st.integers(1, 1000),
    st.integers(-10**6, 10**6),
    st.integers(1, 1000),
)
def test_nested_ceiling_collapses(v, m, a, d):
    lhs = ceil_div(v + ceil_div(a, d), m)
    rhs = math.ceil((v + Fraction(a, d)) / m)
    assert lhs == rhs


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_gcd_lcm_product(a, b):
    assert gcd(a, b) * lcm(a, b) == a * b
