"""Tests for GF(q^n) construction and element arithmetic."""

import pytest

from orbit_subspace_codes.errors import (
    FieldError,
    FieldZeroDivisionError,
    NonPrimitivePolynomialError,
    ReduciblePolynomialError,
)
from orbit_subspace_codes.finite_field import (
    default_field,
    frobenius,
    parse_field_descriptor,
    to_coords,
)

from .conftest import GF64


def test_descriptor_parameters(gf64):
    """Test the descriptor fixes q, n and the multiplicative order."""
    assert gf64.q == 2
    assert gf64.n == 6
    assert gf64.order == 64
    assert gf64.mult_order == 63


def test_descriptor_round_trip(gf64):
    """Test the printed descriptor parses back to the same field."""
    assert parse_field_descriptor(gf64.descriptor()) == gf64
    assert parse_field_descriptor(GF64.upper()) == gf64


def test_primitive_element_relation(gf64):
    """Test a^6 = a + 1 for p(x) = x^6 + x + 1."""
    assert to_coords(gf64.element(6)) == (1, 1, 0, 0, 0, 0)
    assert gf64.element(6) + gf64.alpha == gf64.one


def test_exponents_wrap_modulo_group_order(gf64):
    """Test a^63 is the identity."""
    assert gf64.element(63) == gf64.one
    assert gf64.element(-1) == gf64.element(62)


def test_inverse_and_division(gf64):
    """Test multiplicative inverses."""
    a = gf64.element(17)
    assert a * a.inverse() == gf64.one
    assert a / a == gf64.one


def test_zero_has_no_inverse(gf64):
    """Test inverting zero raises a ZeroDivisionError subclass."""
    with pytest.raises(FieldZeroDivisionError):
        gf64.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        gf64.zero.inverse()


def test_coordinates_round_trip(gf64):
    """Test coordinates and logarithms agree for every nonzero element."""
    for i in range(gf64.mult_order):
        assert gf64.from_coords(gf64.exp_coords(i)).exponent == i
    assert gf64.from_coords([0] * 6).is_zero


def test_frobenius(gf64):
    """Test the Frobenius map squares in characteristic 2 and has order n."""
    a = gf64.element(5)
    assert frobenius(a, 1) == a * a
    assert frobenius(a, 6) == a
    assert frobenius(gf64.zero, 3) == gf64.zero


def test_elements_enumerates_field(gf16):
    """Test elements() lists all q^n elements once."""
    elements = gf16.elements()
    assert len(elements) == 16
    assert len(set(elements)) == 16


def test_default_field_for_odd_and_tower_fields():
    """Test galois default primitive polynomials give valid fields."""
    assert default_field(3, 2).mult_order == 8
    tower = default_field(4, 2)
    assert (tower.p, tower.t, tower.q) == (2, 2, 4)
    assert tower.element(15) == tower.one
    assert tower.element(5) != tower.one


def test_reducible_polynomial_rejected():
    """Test x^2 + 1 = (x + 1)^2 over F_2 is rejected."""
    with pytest.raises(ReduciblePolynomialError):
        parse_field_descriptor("gf(2,1,2,[1,0,1])")


def test_non_primitive_polynomial_rejected():
    """Test x^4 + x^3 + x^2 + x + 1 is irreducible of order 5, not primitive."""
    with pytest.raises(NonPrimitivePolynomialError):
        parse_field_descriptor("gf(2,1,4,[1,1,1,1,1])")


@pytest.mark.parametrize(
    "descriptor",
    [
        "gf(2,6)",
        "gf(4,1,2,[1,1,1])",
        "gf(11,1,2,[2,1,1])",
        "gf(2,1,2,[1,1,0])",
        "gf(2,1,2,[1,1])",
    ],
)
def test_malformed_descriptors(descriptor):
    """Test malformed or unsupported descriptors raise FieldError."""
    with pytest.raises(FieldError):
        parse_field_descriptor(descriptor)


@pytest.mark.parametrize("descriptor", [GF64, "gf(3,1,3,[1,2,0,1])"])
def test_field_identities_on_random_samples(descriptor, rng):
    """Test Frobenius additivity and a * a^-1 = 1 on 100 random samples."""
    spec = parse_field_descriptor(descriptor)
    for _ in range(100):
        a, b = spec.random_element(rng), spec.random_element(rng)
        j = int(rng.integers(spec.n))
        assert frobenius(a + b, j) == frobenius(a, j) + frobenius(b, j)
        assert frobenius(a * b, j) == frobenius(a, j) * frobenius(b, j)
        if not a.is_zero:
            assert a * a.inverse() == spec.one
