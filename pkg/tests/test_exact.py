from fractions import Fraction

import pytest
from hypothesis import given

from euler_zeta.exact import ComplexRational, format_complex, is_exact, parse_complex

from conftest import gaussian

I = ComplexRational(0, 1)


@given(gaussian, gaussian, gaussian)
def test_mul_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(gaussian, gaussian, gaussian)
def test_add_associative_and_distributive(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(gaussian)
def test_power_matches_repeated_product(a):
    acc = ComplexRational(1)
    for k in range(6):
        assert a**k == acc
        acc = acc * a


@given(gaussian)
def test_format_parse_round_trip(a):
    assert parse_complex(format_complex(a)) == a


def test_i_squared():
    assert I * I == -1
    assert I**4 == 1
    assert (I**-1) == -I


def test_division():
    a = ComplexRational(3, 4)
    assert a / a == 1
    assert a * (ComplexRational(1) / a) == 1
    with pytest.raises(ZeroDivisionError):
        a / 0


def test_reduced_fractions():
    z = ComplexRational(Fraction(2, 4), Fraction(-6, 8))
    assert (z.re.numerator, z.re.denominator) == (1, 2)
    assert (z.im.numerator, z.im.denominator) == (-3, 4)


def test_immutable():
    with pytest.raises(AttributeError):
        I.re = 3


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1", ComplexRational(1)),
        ("-1/2", ComplexRational(Fraction(-1, 2))),
        ("i", I),
        ("-i", -I),
        ("+i", I),
        ("3/4 i", ComplexRational(0, Fraction(3, 4))),
        ("1/2+1/3 i", ComplexRational(Fraction(1, 2), Fraction(1, 3))),
        ("3/5-4/5i", ComplexRational(Fraction(3, 5), Fraction(-4, 5))),
        ("-1/2 - 3 i", ComplexRational(Fraction(-1, 2), -3)),
        ("0", ComplexRational(0)),
    ],
)
def test_parse(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "x", "1+", "1 2", "ii", "1/0", "1.5"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_predicates():
    assert ComplexRational(Fraction(3, 5), Fraction(4, 5)).is_unit()
    assert ComplexRational(0).is_nonnegative_real()
    assert not ComplexRational(-1).is_nonnegative_real()
    assert not I.is_real()
    assert is_exact(I) and not is_exact(1j)
    assert complex(ComplexRational(Fraction(1, 2), -1)) == 0.5 - 1j
    assert hash(ComplexRational(2)) == hash(Fraction(2))
