from fractions import Fraction

import pytest

from errors import FormShapeError
from exactpoly import MultiPoly
from families import (
    QuarticFamilyParams,
    SexticFamilyParams,
    build_quartic_family,
    curve_pairing,
    decic_params,
    invariant_curve,
    verify_decic_parametrization,
    verify_parametric_family,
)
from families.degree2d import DECIC_VARS, Degree2dParams, build_degree2d_family, degree2d_form
from families.quartic import binary_form, quadratic_forms, quartic_form
from families.sextic import cubic_forms
from point import normalize
from presets import DECIC_SEED, surface_spec, system_preset
from printed_forms import (
    DECIC,
    QUARTIC_EX1,
    QUARTIC_EX2,
    QUARTIC_EX2_CURVE,
    SEXTIC_EX1,
    SEXTIC_EX1_ORBIT,
    SEXTIC_EX2,
    SEXTIC_EX2_ORBIT,
)
from surface import X4
from systems.quartic_norm import ADJUGATE_TEXTS, NORM_TEXT, WEIGHT_TEXTS, X8, sextic_form

X4H = X4 + ("h",)


def test_quartic_family_matches_printed_form_for_every_h():
    h = MultiPoly.variable("h", X4H)
    a = (1, -2 * h, -h, -h, -h, -h, 4 * h, -h, -h, 1, 3, -1)
    assert quartic_form(3, -1, a, X4H) == MultiPoly.parse(QUARTIC_EX1, X4H)


def test_quartic_preset_specializes_h():
    assert surface_spec("quartic-ex1", 7).form == MultiPoly.parse(QUARTIC_EX1, X4, h=7)
    assert surface_spec("quartic-ex2").form == MultiPoly.parse(QUARTIC_EX2, X4)


def test_decic_family_matches_printed_form_for_every_h():
    h = MultiPoly.variable("h", DECIC_VARS)
    form = degree2d_form(decic_params(h, DECIC_VARS), DECIC_VARS)
    assert form == MultiPoly.parse(DECIC, DECIC_VARS)
    assert form.is_homogeneous() is False
    assert surface_spec("decic", 0).form.is_homogeneous(10)


def test_sextic_coefficients_match_printed_forms():
    ex1 = surface_spec("sextic-ex1").form
    assert ex1.coefficient(x1=2, x2=1, x3=3) == 44957
    assert ex1.coefficient(x4=6) == 891
    ex2 = surface_spec("sextic-ex2").form
    assert ex2.coefficient(x2=4, x3=2) == 540
    assert ex2.coefficient(x1=4, x3=2) == 44


@pytest.mark.parametrize(
    "name, text, orbit",
    [
        ("sextic-ex1", SEXTIC_EX1, SEXTIC_EX1_ORBIT),
        ("sextic-ex2", SEXTIC_EX2, SEXTIC_EX2_ORBIT),
    ],
)
def test_printed_sextic_vanishes_on_printed_orbit(name, text, orbit):
    printed = MultiPoly.parse(text, X4)
    form = surface_spec(name).form
    for point in orbit:
        assert printed.evaluate(point) == 0
        assert form.evaluate(point) == 0


def test_family_forms_are_even_in_x1():
    for name in ("quartic-ex2", "sextic-ex1", "sextic-ex2"):
        form = surface_spec(name).form
        assert all(monom[0] % 2 == 0 for monom in form.terms())


def test_family_rejects_wrong_coefficient_count():
    with pytest.raises(FormShapeError):
        QuarticFamilyParams(p=1, q=1, a=(1, 2, 3))
    with pytest.raises(FormShapeError):
        SexticFamilyParams(p=1, q=1, a=(1,) * 12)


def test_zero_form_is_rejected():
    with pytest.raises(FormShapeError):
        build_quartic_family(QuarticFamilyParams(p=1, q=1, a=(0,) * 12))


def test_invariant_curve_of_quartic_ex2():
    curve = invariant_curve(surface_spec("quartic-ex2"))
    assert curve.vars == ("x2", "x3", "x4")
    assert curve == 3 * MultiPoly.parse(QUARTIC_EX2_CURVE, ("x2", "x3", "x4"))


def test_curve_pairing_preserves_invariant_curves():
    for name in ("quartic-ex2", "sextic-ex2"):
        curve = invariant_curve(surface_spec(name))
        assert curve.evaluate((1, 1, 0)) == 0
        partner = curve_pairing((1, 1, 0))
        assert partner == normalize([1, 1, 0])
        moved = curve_pairing((2, 3, Fraction(1, 2)))
        assert curve_pairing(moved) == normalize([2, 3, Fraction(1, 2)])


def test_parametric_families_lie_on_h0_quartic():
    assert verify_parametric_family()


def test_decic_parametrization_is_an_identity():
    assert verify_decic_parametrization()


SYMBOLIC = ("x1", "x2", "m1", "m2", "p", "q")


def substituted_pair():
    x1, x2, m1, m2, p, q = MultiPoly.variables(SYMBOLIC)
    return x1, x2, m1, m2, p, q, m1 * x1 + (p * m1 + q * m2) * x2, m2 * x1 - m1 * x2


def test_quadratic_form_identities_for_symbolic_p_q():
    x1, x2, m1, m2, p, q, x3, x4 = substituted_pair()
    q0, q1, q2 = quadratic_forms(p, q, x1, x2, x3, x4)
    assert binary_form(p, q, x3, x4) == binary_form(p, q, m1, m2) * q0
    assert q1 == m1 * q0
    assert q2 == m2 * q0


def test_cubic_form_identities_for_symbolic_p_q():
    x1, x2, m1, m2, p, q, x3, x4 = substituted_pair()
    q0 = binary_form(p, q, x1, x2)
    c1, c2 = cubic_forms(p, q, x1, x2, x3, x4)
    assert c1 == (m1 * x1 + q * m2 * x2) * q0
    assert c2 == (m2 * x1 - (m1 + p * m2) * x2) * q0


def printed_quartic_norm_sextic(h: Fraction) -> MultiPoly:
    p, q = h + 3, h + 4
    f = MultiPoly.parse(NORM_TEXT, X8, p=p, q=q)
    big_h = MultiPoly.zero(X8)
    for weight, g in zip(WEIGHT_TEXTS, ADJUGATE_TEXTS):
        big_h = big_h + MultiPoly.parse(weight, X8, p=p, q=q) * MultiPoly.parse(g, X8, p=p, q=q)
    rest = MultiPoly.parse("-x1^2 + 3*x2^2 + 31*x4^2 - (x5 - 2*x7 + 2*x8 + h*(x6 - x8))^2", X8, h=h)
    return f * rest + 2 * h * big_h


@pytest.mark.parametrize("h", [Fraction(0), Fraction(1), Fraction(-3), Fraction(7, 2)])
def test_quartic_norm_sextic_matches_printed(h):
    assert sextic_form(h) == printed_quartic_norm_sextic(h)


def test_decic_system_divides_exactly_for_random_h(rng):
    for h in rng.sample([h for h in range(-12, 13) if h != -4], 4):
        system = system_preset("decic-10in8", h)
        for _ in range(3):
            m = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
            assert any(system.sys_reduce(m))
        phi0, phi1, phi2 = system.sys_reduce(system.sys_recover(normalize(DECIC_SEED)))
        assert 9 * phi0 + 3 * phi1 + phi2 == 0


def test_degree2d_family_at_d2_is_the_quartic_family():
    a = (1, -1, -2, 3, 3, -1, -2, 6, 0, -1, 0, -2)
    zero = MultiPoly.zero(X4)
    quartic = QuarticFamilyParams(p=0, q=2, a=a)
    params = Degree2dParams(d=2, q=2, quadratics=(zero, zero), b=(1,), quartic=quartic)
    assert degree2d_form(params) == quartic_form(0, 2, a)
    degree2d, family = build_degree2d_family(params), build_quartic_family(quartic)
    assert degree2d.form == family.form
    assert degree2d.removable == family.removable
    assert (degree2d.sub_x3, degree2d.sub_x4) == (family.sub_x3, family.sub_x4)
