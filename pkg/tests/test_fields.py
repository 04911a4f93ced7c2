from fractions import Fraction

import pytest

from arcmodel.errors import InputError
from arcmodel.fields import PrimeField, RationalField, field_from_spec


def test_rationals_are_normalized(qq):
    a = qq.from_fraction(4, -6)
    assert a == Fraction(-2, 3)
    assert a.denominator > 0
    assert qq.parse_scalar("3/9") == Fraction(1, 3)


def test_rational_inverse(qq):
    a = qq.from_fraction(7, 3)
    assert a * qq.invert(a) == qq.one()
    with pytest.raises(ZeroDivisionError):
        qq.invert(qq.zero())


def test_prime_field_basics(f5):
    a = f5.from_int(7)
    assert a == f5.from_int(2)
    assert (a + f5.from_int(3)) == f5.zero()
    assert (a * f5.invert(a)) == f5.one()
    assert f5.from_fraction(1, 2) == f5.from_int(3)
    assert -f5.from_int(1) == f5.from_int(4)


def test_prime_field_pow_and_div(f3):
    a = f3.from_int(2)
    assert a ** 3 == f3.from_int(2)
    assert a ** -1 == f3.invert(a)
    assert (f3.from_int(1) / a) == f3.invert(a)


def test_prime_validation():
    with pytest.raises(InputError):
        PrimeField(6)
    with pytest.raises(InputError):
        PrimeField(1)
    PrimeField(2)
    PrimeField(2**31 - 1)


def test_field_from_spec():
    assert field_from_spec({"type": "rational"}) == RationalField()
    assert field_from_spec({"type": "prime", "p": 5}) == PrimeField(5)
    assert field_from_spec("p=7") == PrimeField(7)
    assert field_from_spec("rational") == RationalField()
    with pytest.raises(InputError):
        field_from_spec({"type": "real"})


def test_scalar_parsing(f5, qq):
    assert f5.parse_scalar("-3") == f5.from_int(2)
    assert f5.parse_scalar("2/3") == f5.from_fraction(2, 3)
    with pytest.raises(InputError):
        qq.parse_scalar("x")
    with pytest.raises(InputError):
        f5.parse_scalar("1/5")
