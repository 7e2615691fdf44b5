from dataclasses import replace
from fractions import Fraction

import pytest

from errors import FormShapeError, InvariantViolationError
from exactpoly import MultiPoly
from point import ProjPoint, negate_coords, normalize
from presets import surface_preset, surface_spec
from printed_forms import QUARTIC_EX1_DISC_H7, QUARTIC_EX2_DISC, QUARTIC_EX2_ORBIT, SEXTIC_EX2_D
from reflection import Reflection
from surface import M12, X4, Surface


@pytest.fixture
def quartic_ex2() -> Surface:
    return surface_preset("quartic-ex2")


def test_verify(quartic_ex2):
    assert quartic_ex2.verify(normalize([0, 1, 1, 0]))
    assert not quartic_ex2.verify(normalize([1, 1, 1, 1]))
    assert not quartic_ex2.verify(normalize([1, 1, 0, 0]))
    assert not quartic_ex2.verify(ProjPoint((0, 1, 1)))


def test_recover_params(quartic_ex2):
    m = quartic_ex2.recover_params(normalize([0, 1, 1, 0]))
    assert m == (0, Fraction(1, 3))


def test_reduced_quadratic_vanishes_at_the_point(quartic_ex2):
    point = normalize(QUARTIC_EX2_ORBIT[1])
    phi0, phi1, phi2 = quartic_ex2.reduce_to_quadratic(quartic_ex2.recover_params(point))
    x1, x2 = point[0], point[1]
    assert phi0 * x1 * x1 + phi1 * x1 * x2 + phi2 * x2 * x2 == 0


def test_symbolic_quadratic_agrees_with_numeric(quartic_ex2):
    m = quartic_ex2.recover_params(normalize(QUARTIC_EX2_ORBIT[1]))
    symbolic = tuple(c.evaluate(m) for c in quartic_ex2.symbolic_quadratic)
    assert symbolic == quartic_ex2.reduce_to_quadratic(m)


def test_conjugate_is_an_involution(quartic_ex2):
    seed = quartic_ex2.seed
    partner = quartic_ex2.conjugate(seed)
    assert partner == negate_coords(normalize(QUARTIC_EX2_ORBIT[1]), [0])
    assert quartic_ex2.conjugate(partner) == seed


def test_conjugate_keeps_multiplier(quartic_ex2):
    seed = quartic_ex2.seed
    assert quartic_ex2.recover_params(quartic_ex2.conjugate(seed)) == quartic_ex2.recover_params(seed)


def test_quartic_discriminants_match_printed():
    assert surface_preset("quartic-ex2").discriminant_poly == MultiPoly.parse(QUARTIC_EX2_DISC, M12)
    assert surface_preset("quartic-ex1", 7).discriminant_poly == MultiPoly.parse(
        QUARTIC_EX1_DISC_H7, M12
    )


def test_quartic_ex2_discriminant_coefficients():
    disc = surface_preset("quartic-ex2").discriminant_poly
    assert disc.coefficient(m1=8) == 45
    assert disc.coefficient() == -396


def test_sextic_discriminant_factors():
    disc = surface_preset("sextic-ex2").discriminant_poly
    q = MultiPoly.parse("m1^2 + m1*m2 + 3*m2^2", M12)
    d = MultiPoly.parse(SEXTIC_EX2_D, M12)
    assert disc == -9 * q * q * d
    assert disc.coefficient(m1=8) == -243


def test_witness_is_the_discriminant_root(quartic_ex2):
    witness = quartic_ex2.witness(quartic_ex2.seed)
    assert witness.m == (0, Fraction(1, 3))
    assert witness.z == 7
    assert witness.aux["discriminant"] == 49
    assert quartic_ex2.discriminant_witness(quartic_ex2.seed) == witness


def test_divided_witness_on_sextic():
    sextic = surface_preset("sextic-ex2")
    witness = sextic.witness(sextic.seed)
    assert witness.z == Fraction(137, 3)
    assert witness.z * witness.z == -MultiPoly.parse(SEXTIC_EX2_D, M12).evaluate(witness.m)


def test_conserved_ratio_on_decic():
    decic = surface_preset("decic", 0)
    assert decic.conserved(decic.seed) == 1
    assert surface_preset("quartic-ex2").conserved(normalize([0, 1, 1, 0])) is None


def test_non_homogeneous_form_is_rejected():
    spec = surface_spec("quartic-ex2")
    x1 = MultiPoly.variable("x1", X4)
    with pytest.raises(FormShapeError):
        Surface(replace(spec, form=spec.form + x1 * x1))


def test_wrong_symmetry_is_rejected():
    spec = surface_spec("quartic-ex2")
    with pytest.raises(InvariantViolationError):
        Surface(replace(spec, reflection=Reflection.negate(1, 4)))


def test_seed_off_the_surface_is_rejected():
    spec = surface_spec("quartic-ex2")
    with pytest.raises(InvariantViolationError):
        Surface(replace(spec, seed=normalize([1, 1, 1, 1])))


def test_removable_factor_must_match_degree():
    spec = surface_spec("quartic-ex2")
    with pytest.raises(FormShapeError):
        Surface(replace(spec, removable=spec.removable * spec.removable))
