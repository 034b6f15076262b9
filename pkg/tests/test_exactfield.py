from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatplane.exactfield import (DivisionByZero, FieldMismatch, NonInvertible, NonPrimeModulus,
                                 cyclotomic_poly, field_make, root_of_unity)

SPECS = ["Q", "F7", "F2[b]/(b^2+b+1)", "Q[z]/(z^2+z+1)", "Q[a]/(a^4-a^2+4)", "F3[i]/(i^2+1)"]


def elems(spec):
    F = field_make(spec)
    n = F.degree
    gen = F(F.var) if n > 1 else F(1)
    return st.lists(st.integers(-20, 20), min_size=n, max_size=n).map(
        lambda cs: sum((F(c) * gen ** k for k, c in enumerate(cs)), F(0)))


@pytest.mark.parametrize("spec", SPECS)
def test_field_axioms(spec):
    F = field_make(spec)

    @settings(max_examples=40, deadline=None)
    @given(elems(spec), elems(spec), elems(spec))
    def check(a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + F(0) == a and a * F(1) == a
        assert a - a == F(0)
        if not a.is_zero():
            assert a * a.inverse() == F(1)
            assert (b / a) * a == b

    check()


def test_field_cache_and_spec_text():
    assert field_make("Q[a]/(a^4-a^2+4)") is field_make("Q[a]/(a^4 - a^2 + 4)")
    assert field_make("F2[b]/(b^2+b+1)").spec.text.startswith("F2[b]")


def test_errors():
    with pytest.raises(NonPrimeModulus):
        field_make("F9")
    with pytest.raises(DivisionByZero):
        field_make("Q")(0).inverse()
    with pytest.raises(FieldMismatch):
        field_make("Q")(1) + field_make("F5")(1)


def test_reducible_modulus_zero_divisor():
    # x^2 - 1 is reducible; x - 1 has no inverse
    K = field_make("Q[x]/(x^2-1)")
    with pytest.raises((NonInvertible, DivisionByZero)):
        (K("x") - K(1)).inverse()


def test_prime_field_fraction_coercion():
    F = field_make("F7")
    assert F(Fraction(1, 3)) * F(3) == F(1)


def test_extension_relations():
    K = field_make("Q[a]/(a^4-a^2+4)")
    a = K("a")
    assert a ** 4 - a ** 2 + 4 == K(0)
    A = K("(-1/4)*(a^3-3*a-2)")
    B = K("(1/4)*(a^3+a-2)")
    # A and B are the constants of the 45-line fixture; both are nonzero and distinct
    assert A != B and not A.is_zero() and not B.is_zero()


@pytest.mark.parametrize("n", [3, 4, 5, 6, 12])
def test_root_of_unity_is_primitive(n):
    K, z = root_of_unity(n)
    assert z ** n == K(1)
    assert all(z ** k != K(1) for k in range(1, n))


def test_root_of_unity_over_prime_field():
    K, w = root_of_unity(3, base="F7")
    assert w ** 3 == K(1) and w != K(1)


def test_cyclotomic():
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
