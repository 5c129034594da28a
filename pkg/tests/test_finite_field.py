"""GF(q) construction, arithmetic and the Frobenius automorphism."""
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from app.core.errors import FieldError
from app.services.finite_field import (
    arith,
    decode,
    encode,
    enumerate_elements,
    field_of_order,
    frobenius,
    make_field,
    reduction_polynomial_text,
)

BUILTIN_ORDERS = [4, 8, 9, 16, 25, 27, 49]


def test_prime_field_has_no_polynomial():
    gf5 = make_field(5)
    assert gf5.q == 5
    assert gf5.reduction == ()
    assert reduction_polynomial_text(gf5) == ""


def test_gf4_uses_the_only_irreducible_quadratic():
    gf4 = make_field(2, 2)
    assert gf4.q == 4
    assert gf4.reduction == (1, 1)
    assert reduction_polynomial_text(gf4) == "x^2 + x + 1"
    # x * x = x + 1
    assert arith(gf4, "mul", 2, 2) == 3


def test_non_prime_characteristic_rejected():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        field_of_order(6)


def test_reducible_polynomial_rejected():
    # x^2 + x = x (x + 1)
    with pytest.raises(FieldError):
        make_field(2, 2, (0, 1))


def test_supplied_irreducible_polynomial_accepted():
    gf9 = make_field(3, 2, (1, 0))       # x^2 + 1
    assert gf9.q == 9
    assert reduction_polynomial_text(gf9) == "x^2 + 1"
    assert field_of_order(25).reduction == (2, 0)


def test_order_cap():
    with pytest.raises(FieldError):
        make_field(2, 7)                 # 128 > 121
    assert field_of_order(121).q == 121


def test_prime_field_arithmetic():
    gf5 = make_field(5)
    assert arith(gf5, "mul", 3, 4) == 2
    assert arith(gf5, "inv", 3) == 2
    assert arith(gf5, "sub", 1, 3) == 3
    assert arith(gf5, "neg", 2) == 3
    assert arith(gf5, "pow", 2, 3) == 3
    assert arith(gf5, "pow", 2, -1) == 3
    with pytest.raises(FieldError):
        arith(gf5, "inv", 0)
    with pytest.raises(FieldError):
        arith(gf5, "add", 5, 1)
    with pytest.raises(FieldError):
        arith(gf5, "log", 2)


@pytest.mark.parametrize("q", BUILTIN_ORDERS)
def test_field_axioms_exhaustive(q):
    gf = field_of_order(q)
    els = enumerate_elements(gf)
    for a in els:
        assert gf.add(a, 0) == a and gf.mul(a, 1) == a
        assert gf.add(a, gf.neg(a)) == 0
        assert gf.pow(a, q) == a
        if a:
            assert gf.mul(a, gf.inv(a)) == 1
        for b in els:
            assert gf.add(a, b) == gf.add(b, a)
            assert gf.mul(a, b) == gf.mul(b, a)
            for c in els:
                assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))
                assert gf.mul(a, gf.mul(b, c)) == gf.mul(gf.mul(a, b), c)


@pytest.mark.parametrize("q", [4, 9, 25, 27])
def test_frobenius_is_an_automorphism(q):
    gf = field_of_order(q)
    els = enumerate_elements(gf)
    for a in els:
        assert frobenius(gf, a, 1) == gf.pow(a, gf.p)
        assert frobenius(gf, a, gf.k) == a
        for b in els:
            assert frobenius(gf, gf.add(a, b)) == gf.add(frobenius(gf, a), frobenius(gf, b))
            assert frobenius(gf, gf.mul(a, b)) == gf.mul(frobenius(gf, a), frobenius(gf, b))


def test_frobenius_examples():
    gf4 = make_field(2, 2)
    assert frobenius(gf4, 2, 1) == 3
    assert frobenius(gf4, 3, 1) == 2
    gf5 = make_field(5)
    assert all(frobenius(gf5, a, 1) == a for a in range(5))


def test_enumerate():
    assert enumerate_elements(make_field(3), units_only=True) == [1, 2]
    assert enumerate_elements(make_field(5), units_only=True) == [1, 2, 3, 4]
    assert enumerate_elements(make_field(2, 2)) == [0, 1, 2, 3]


def test_coefficient_encoding():
    gf9 = field_of_order(9)
    assert decode(gf9, 5) == [2, 1]      # 2 + x
    assert encode(gf9, [2, 1]) == 5
    with pytest.raises(FieldError):
        encode(gf9, [3, 0])


def test_builtin_polynomials_are_pinned():
    assert field_of_order(8).reduction == (1, 1, 0)      # x^3 + x + 1
    assert field_of_order(27).reduction == (1, 2, 0)     # x^3 + 2x + 1
    assert field_of_order(49).reduction == (1, 0)        # x^2 + 1
    assert field_of_order(16) is field_of_order(16)
