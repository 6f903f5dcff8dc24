from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwa.poly import cyclotomic_polynomial, Poly
from gwa.scalars import (
    Cyclotomic,
    ScalarFieldError,
    cyclotomic_coeffs,
    euler_phi,
    parse_rational,
    zeta,
)


def test_cyclotomic_polynomial_small_orders():
    assert cyclotomic_polynomial(1) == Poly([-1, 1])
    assert cyclotomic_polynomial(2) == Poly([1, 1])
    assert cyclotomic_polynomial(4) == Poly([1, 0, 1])
    assert cyclotomic_polynomial(3) == Poly([1, 1, 1])
    assert cyclotomic_polynomial(6) == Poly([1, -1, 1])


def test_cyclotomic_product_recovers_x_m_minus_1():
    # prod over divisors d of m of Phi_d = x^m - 1
    for m in (1, 2, 3, 4, 6, 8, 12, 15):
        prod = Poly([1])
        for d in range(1, m + 1):
            if m % d == 0:
                prod = prod * Poly(cyclotomic_coeffs(d))
        expected = Poly([-1] + [0] * (m - 1) + [1])
        assert prod == expected


def test_invert_rational():
    assert 1 / Fraction(2, 3) == Fraction(3, 2)


def test_zeta4_square_is_minus_one():
    z = zeta(4)
    assert z * z == -1


def test_zeta3_sum_of_powers_vanishes():
    z = zeta(3)
    assert 1 + z + z * z == 0


def test_zeta_has_exact_multiplicative_order():
    for m in (2, 3, 4, 5, 6, 8, 12):
        z = zeta(m)
        for j in range(1, m):
            assert z ** j != 1
        assert z ** m == 1


def test_mixed_orders_rejected():
    with pytest.raises(ScalarFieldError):
        zeta(3) + zeta(4)


def test_rationals_embed_at_any_order():
    assert zeta(4) + Fraction(1, 2) == Cyclotomic(4, (Fraction(1, 2), Fraction(1)))
    assert Fraction(2) * zeta(3) == zeta(3) + zeta(3)


def test_order_cap():
    with pytest.raises(ScalarFieldError):
        zeta(65)
    assert zeta(65, cap=128) ** 65 == 1


def test_print_format():
    assert str(1 + 2 * zeta(4)) == "(1 + 2*z) @ zeta4"
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert str(Fraction(5)) == "5"


def test_canonical_reduction_gives_representation_equality():
    z = zeta(4)
    a = (z + 1) * (z - 1)   # z^2 - 1 = -2
    assert a.coeffs == (Fraction(-2), Fraction(0))
    assert euler_phi(4) == 2 and len(a.coeffs) == 2


scalars = st.one_of(
    st.fractions(min_value=-4, max_value=4, max_denominator=6),
    st.builds(
        lambda a, b: Cyclotomic(4, (a, b)),
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
    ),
)


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(scalars)
def test_inverse_is_two_sided(a):
    if a == 0:
        return
    inv = a.inverse() if isinstance(a, Cyclotomic) else 1 / a
    assert a * inv == 1
    assert inv * a == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.from_rational(3, 0).inverse()
