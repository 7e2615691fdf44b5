from fractions import Fraction

import pytest

import config
from errors import InvariantViolationError
from point import negate_coords, normalize
from presets import surface_preset
from printed_forms import (
    DECIC_H0_ORBIT,
    QUARTIC_EX1_H0_ORBIT,
    QUARTIC_EX1_H7_ORBIT,
    QUARTIC_EX1_H7_WITNESSES,
    QUARTIC_EX2_ORBIT,
    QUARTIC_EX2_WITNESSES,
    SEXTIC_EX1_ORBIT,
    SEXTIC_EX2_ORBIT,
    SEXTIC_EX2_WITNESSES,
)
from variety import Op


def as_points(orbit):
    return [normalize(p) for p in orbit]


def up_to_sign_flip(got, want) -> bool:
    """Equal, or equal after negating x3 and x4 together."""
    expected = normalize(want)
    return got == expected or got == negate_coords(expected, [2, 3])


@pytest.mark.parametrize(
    "name, h, printed",
    [
        ("quartic-ex1", 7, QUARTIC_EX1_H7_ORBIT),
        ("quartic-ex2", None, QUARTIC_EX2_ORBIT),
        ("sextic-ex2", None, SEXTIC_EX2_ORBIT),
    ],
)
def test_rc_orbit_matches_printed(name, h, printed):
    surface = surface_preset(name, h)
    orbit = surface.generate_sequence(surface.seed, Op.RC, len(printed) - 1)
    assert orbit.points == as_points(printed)
    assert orbit.period is None
    assert orbit.steps == len(printed) - 1


@pytest.mark.parametrize(
    "name, h, printed, witnesses",
    [
        ("quartic-ex1", 7, QUARTIC_EX1_H7_ORBIT, QUARTIC_EX1_H7_WITNESSES[:2]),
        ("quartic-ex2", None, QUARTIC_EX2_ORBIT, QUARTIC_EX2_WITNESSES),
        ("sextic-ex2", None, SEXTIC_EX2_ORBIT, SEXTIC_EX2_WITNESSES),
    ],
)
def test_witnesses_match_printed(name, h, printed, witnesses):
    surface = surface_preset(name, h)
    for point, (m1, m2, z) in zip(as_points(printed), witnesses):
        witness = surface.witness(point)
        assert witness.m == (Fraction(m1), Fraction(m2))
        assert witness.z == Fraction(z)


def test_cr_step_on_quartic_ex1():
    surface = surface_preset("quartic-ex1", 7)
    assert surface.cr_step(surface.seed) == normalize([15, 8, 8, -15])


@pytest.mark.parametrize(
    "name, printed", [("quartic-ex1", QUARTIC_EX1_H0_ORBIT), ("decic", DECIC_H0_ORBIT)]
)
def test_h0_orbits_match_up_to_sign_flip(name, printed):
    surface = surface_preset(name, 0)
    orbit = surface.generate_sequence(surface.seed, Op.RC, len(printed) - 1)
    assert len(orbit.points) == len(printed)
    for got, want in zip(orbit.points, printed):
        assert up_to_sign_flip(got, want)


def test_decic_conserves_ratio_along_orbit():
    decic = surface_preset("decic", 0)
    orbit = decic.generate_sequence(decic.seed, Op.RC, 3)
    assert {decic.conserved(p) for p in orbit.points} == {1}


def test_sextic_ex1_orbit_is_periodic():
    surface = surface_preset("sextic-ex1")
    orbit = surface.generate_sequence(surface.seed, Op.RC, 12)
    assert orbit.period == 11
    assert orbit.points == as_points(SEXTIC_EX1_ORBIT)
    assert surface.order(surface.seed) == 11


def test_sextic_ex1_cr_orbit_has_the_same_period():
    surface = surface_preset("sextic-ex1")
    assert surface.order(surface.seed, Op.CR) == 11


def test_rc_inverse_step_undoes_rc_step():
    surface = surface_preset("quartic-ex2")
    point = normalize(QUARTIC_EX2_ORBIT[1])
    assert surface.rc_inverse_step(surface.rc_step(point)) == point


def test_invariant_seed():
    surface = surface_preset("quartic-ex2")
    assert surface.is_invariant(surface.seed)
    assert not surface.is_self_conjugate(surface.seed)


def test_orbit_rejects_bad_input():
    surface = surface_preset("quartic-ex2")
    with pytest.raises(ValueError):
        surface.generate_sequence(surface.seed, Op.RC, -1)
    with pytest.raises(InvariantViolationError):
        surface.generate_sequence(normalize([1, 1, 1, 1]), Op.RC, 1)


def test_zero_steps_returns_start():
    surface = surface_preset("quartic-ex2")
    orbit = surface.generate_sequence(surface.seed, Op.RC, 0)
    assert orbit.points == [surface.seed]
    assert orbit.max_digits == 1


def test_cr_walks_rc_orbit_backwards():
    surface = surface_preset("quartic-ex2")
    points = as_points(QUARTIC_EX2_ORBIT[:3])
    assert surface.cr_step(points[2]) == points[1]
    assert surface.cr_step(points[1]) == points[0]


def test_sextic_ex1_orbit_census():
    surface = surface_preset("sextic-ex1")
    points = as_points(SEXTIC_EX1_ORBIT)
    assert [p for p in points if surface.is_invariant(p)] == [points[0]]
    assert [p for p in points if surface.is_self_conjugate(p)] == [points[5]]


@pytest.mark.parametrize(
    "name, holds",
    [("quartic-ex1", lambda r, s: r * s == -1), ("decic", lambda r, s: r + s == 0)],
)
def test_h0_ratio_identities(name, holds):
    surface = surface_preset(name, 0)
    for point in surface.generate_sequence(surface.seed, Op.RC, 3).points:
        partner = surface.conjugate(point)
        assert holds(Fraction(point[0], point[1]), Fraction(partner[0], partner[1]))


def test_h0_multiplier_closed_forms():
    quartic, decic = surface_preset("quartic-ex1", 0), surface_preset("decic", 0)
    for point in quartic.generate_sequence(quartic.seed, Op.RC, 3).points:
        s, _, a, b = point
        assert quartic.recover_params(point) == (Fraction(a + b, 3 * s), Fraction(a + 4 * b, 3 * s))
    for point in decic.generate_sequence(decic.seed, Op.RC, 3).points:
        s, _, a, b = point
        assert decic.recover_params(point) == (Fraction(a - 2 * b, 3 * s), Fraction(a + b, 3 * s))


@pytest.fixture(scope="module")
def orbit_points():
    """Points of short RC and CR orbits whose neighbours on both sides are known."""
    pool = []
    for name, h in [("quartic-ex1", 7), ("quartic-ex2", None), ("sextic-ex1", None), ("sextic-ex2", None), ("decic", 0)]:
        surface = surface_preset(name, h)
        for op in Op:
            orbit = surface.generate_sequence(surface.seed, op, 4)
            points = orbit.points if orbit.period else orbit.points[1:-1]
            pool += [(surface, point) for point in points]
    return pool


def test_conjugate_and_composite_steps_invert_on_random_orbit_points(rng, orbit_points):
    for _ in range(config.PROPERTY_CASES):
        surface, point = rng.choice(orbit_points)
        assert surface.conjugate(surface.conjugate(point)) == point
        assert surface.cr_step(surface.rc_step(point)) == point
        assert surface.rc_step(surface.cr_step(point)) == point
        assert surface.rc_inverse_step(surface.rc_step(point)) == point
