from fractions import Fraction

import pytest

import config
from errors import DivisionRemainderError, InvariantViolationError, VariableMismatchError
from exactpoly import (
    MultiPoly,
    binary_quadratic_coefficients,
    collect_binary_quadratic,
    poly_add,
    poly_eval,
    poly_exact_div,
    poly_mul,
    poly_substitute,
)
from quadratic import rational_sqrt, second_root

X2 = ("x1", "x2")
X4 = ("x1", "x2", "x3", "x4")
XM = ("x1", "x2", "m1", "m2")


def random_poly(rng, vars, terms=6, degree=3) -> MultiPoly:
    monoms = {}
    for _ in range(terms):
        monom = tuple(rng.randint(0, degree) for _ in vars)
        monoms[monom] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return MultiPoly.from_terms(vars, monoms)


def test_add_cancels_to_zero():
    x1, x2 = MultiPoly.variables(X2)
    assert not poly_add(x1 * x1, -(x1 * x1))
    assert poly_add(x1 + x2, x1 - x2) == 2 * x1


def test_add_then_subtract_is_identity(rng):
    for _ in range(config.PROPERTY_CASES):
        a, b = random_poly(rng, X4), random_poly(rng, X4)
        assert a + b - b == a


def test_mul_difference_of_squares():
    x1, x2 = MultiPoly.variables(X2)
    assert poly_mul(x1 + x2, x1 - x2) == MultiPoly.parse("x1^2 - x2^2", X2)
    assert poly_mul(MultiPoly.constant(1, X2), x1 + x2) == x1 + x2


def test_mul_distributes_over_add(rng):
    for _ in range(config.PROPERTY_CASES):
        a, b, c = (random_poly(rng, X4, terms=4, degree=2) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_mismatched_variables_are_rejected():
    a = MultiPoly.variable("x1", X2)
    b = MultiPoly.variable("x1", X4)
    with pytest.raises(VariableMismatchError):
        a + b
    with pytest.raises(VariableMismatchError):
        poly_eval(a, [1, 2, 3])


def test_binary_form_identity_under_substitution():
    # Q(x3, x4) = Q(m) Q(x) for p = 3, q = -1
    x1, x2, m1, m2 = MultiPoly.variables(XM)
    x3 = m1 * x1 + (3 * m1 - m2) * x2
    x4 = m2 * x1 - m1 * x2

    def q(u, v):
        return u * u + 3 * u * v - v * v

    assert q(x3, x4) == q(m1, m2) * q(x1, x2)


def test_evaluate_is_exact():
    form = MultiPoly.parse("x1^2 + x2^2", X2)
    assert poly_eval(form, [0, 0]) == 0
    assert poly_eval(form, [Fraction(1, 3), Fraction(1, 2)]) == Fraction(13, 36)


def test_substitute_commutes_with_evaluation(rng):
    a = random_poly(rng, X4)
    images = {"x3": random_poly(rng, X2, terms=3, degree=2), "x4": random_poly(rng, X2, terms=3, degree=2)}
    composed = a.substitute(images, X2)
    for _ in range(config.PROPERTY_CASES):
        point = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in X2]
        inner = [point[0], point[1], images["x3"].evaluate(point), images["x4"].evaluate(point)]
        assert composed.evaluate(point) == a.evaluate(inner)


def test_identity_substitution():
    a = MultiPoly.parse("x1^3 - 2*x1*x2 + 5", X2)
    x1, x2 = MultiPoly.variables(X2)
    assert poly_substitute(a, {"x1": x1, "x2": x2}) == a


def test_specialize_drops_fixed_variables():
    a = MultiPoly.parse("x1*x3 + x2*x4 + x3^2", X4)
    section = a.specialize(x1=0)
    assert section.vars == ("x2", "x3", "x4")
    assert section == MultiPoly.parse("x2*x4 + x3^2", ("x2", "x3", "x4"))


def test_exact_division_recovers_quotient(rng):
    divisor = MultiPoly.parse("x1^2 + 3*x1*x2 - x2^2", X2)
    for _ in range(config.PROPERTY_CASES):
        quotient = random_poly(rng, X2, terms=4, degree=3)
        assert poly_exact_div(divisor * quotient, divisor, "x1") == quotient


def test_exact_division_with_remainder_fails():
    divisor = MultiPoly.parse("x1^2 + x2^2", X2)
    with pytest.raises(DivisionRemainderError):
        MultiPoly.parse("x1^3 + x2^3", X2).exact_div(divisor, "x1")


def test_exact_division_needs_monic_divisor():
    with pytest.raises(DivisionRemainderError):
        MultiPoly.parse("x1^4", X2).exact_div(MultiPoly.parse("2*x1^2 + x2^2", X2), "x1")


def test_parse_substitutes_parameters():
    poly = MultiPoly.parse("h*x1^2 + (p + 1)*x1*x2", X2, h=Fraction(1, 2), p=3)
    assert poly.coefficient(x1=2) == Fraction(1, 2)
    assert poly.coefficient(x1=1, x2=1) == 4


def test_embed_reorders_variables():
    a = MultiPoly.parse("x2^2 + x1", X2)
    wide = a.embed(("x2", "y", "x1"))
    assert wide.evaluate({"x2": 2, "y": 7, "x1": 1}) == 5
    with pytest.raises(VariableMismatchError):
        a.embed(("x1",))


def test_embed_keeps_values(rng):
    wide_vars = ("x4", "x2", "y", "x1", "x3")
    for _ in range(config.PROPERTY_CASES):
        a = random_poly(rng, X4, terms=5, degree=3)
        point = {v: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for v in wide_vars}
        assert a.embed(wide_vars).evaluate(point) == a.evaluate(point)
        assert a.embed(wide_vars).embed(X4) == a


def test_homogeneity_and_degree():
    form = MultiPoly.parse("x1^4 - 11*x1^2*x2^2 + x2^4", X2)
    assert form.total_degree == 4
    assert form.is_homogeneous(4)
    assert not (form + 1).is_homogeneous()


def test_collect_binary_quadratic():
    quad = MultiPoly.parse("2*x1^2 - 3*x1*x2 + x2^2/4", X2)
    assert collect_binary_quadratic(quad) == (2, -3, Fraction(1, 4))


def test_symbolic_binary_quadratic_coefficients():
    quad = MultiPoly.parse("m1*x1^2 + (m1 + m2)*x1*x2 - m2^2*x2^2", XM)
    phi0, phi1, phi2 = binary_quadratic_coefficients(quad)
    assert phi0.evaluate({"m1": 2, "m2": 3}) == 2
    assert phi1.evaluate({"m1": 2, "m2": 3}) == 5
    assert phi2.evaluate({"m1": 2, "m2": 3}) == -9


def test_rational_sqrt():
    assert rational_sqrt(Fraction(49, 36)) == Fraction(7, 6)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None
    assert rational_sqrt(Fraction(0)) == 0
    root = Fraction(12345678901234567890123, 1446700126228932448001123)
    assert rational_sqrt(root * root) == root
    assert rational_sqrt(root * root + 1) is None


def test_second_root_uses_product_of_roots():
    # (x1 - 2 x2)(3 x1 + x2)
    phi = (Fraction(3), Fraction(-5), Fraction(-2))
    b1, b2 = second_root(phi, (Fraction(2), Fraction(1)))
    assert b1 / b2 == Fraction(-1, 3)


def test_second_root_rejects_non_root():
    with pytest.raises(InvariantViolationError):
        second_root((Fraction(1), Fraction(0), Fraction(1)), (Fraction(1), Fraction(1)))
