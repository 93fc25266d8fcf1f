from fractions import Fraction

import pytest
from hypothesis import given, settings

from qmock.cyclotomic import (CycloNum, CyclotomicError, cyc_add, cyc_inv, cyc_mul, cyclotomic_polynomial,
                              format_cyclo, norm_inverse, root_power, totient)

from conftest import cyclo

w = root_power(4)
one = CycloNum.rational(1)


def test_phi12():
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert totient(12) == 4


def test_add_examples():
    assert cyc_add(w, w * w) == CycloNum.rational(-1)
    x = CycloNum([3, Fraction(1, 2), 0, -1])
    assert cyc_add(CycloNum.rational(0), x) == x
    assert cyc_add(CycloNum.rational(Fraction(1, 2)), CycloNum.rational(Fraction(1, 3))) == \
        CycloNum.rational(Fraction(5, 6))


def test_mul_examples():
    assert cyc_mul(w, w) == -one - w
    assert cyc_mul(root_power(6), root_power(6)) == one
    assert cyc_mul(2 * w + 1, 2 * w + 1) == CycloNum.rational(-3)


def test_inverse_examples():
    a = 2 * w + 1
    assert cyc_inv(a) == -a / 3
    assert cyc_inv(one) == one
    assert cyc_inv(root_power(1)) == root_power(11)
    with pytest.raises(ZeroDivisionError):
        cyc_inv(CycloNum.rational(0))


def test_root_power():
    assert root_power(0) == one
    assert root_power(6) == CycloNum.rational(-1)
    assert root_power(16) == w
    assert one + root_power(4) + root_power(8) == CycloNum.rational(0)


def test_mismatched_fields():
    with pytest.raises(CyclotomicError):
        root_power(1, 12) + root_power(1, 8)


def test_normalized_rationals():
    x = CycloNum([Fraction(2, 4), Fraction(-6, 8)])
    assert x.denominator == 4 and x.numerators[:2] == (2, -3)
    assert CycloNum.rational(0).denominator == 1


def test_format():
    assert format_cyclo(CycloNum.rational(Fraction(-3, 2))) == "-3/2"


@settings(max_examples=100)
@given(cyclo(), cyclo(), cyclo())
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if not a.is_zero():
        assert a * cyc_inv(a) == one


@settings(max_examples=50)
@given(cyclo(nonzero=True))
def test_inverse_matches_conjugate_product(a):
    assert cyc_inv(a) == norm_inverse(a)


@given(cyclo(K=8, nonzero=True))
def test_other_field(a):
    assert a * cyc_inv(a) == CycloNum.rational(1, 8)
