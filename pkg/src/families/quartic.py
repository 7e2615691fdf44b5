from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from errors import FormShapeError, InvariantViolationError
from exactpoly import MultiPoly
from point import ProjPoint
from reflection import Reflection
from surface import X4, X12, SurfaceSpec, bilinear

Coefficient = int | Fraction | MultiPoly


@dataclass(frozen=True)
class QuarticFamilyParams:
    """p, q of the binary form x1^2 + p x1 x2 + q x2^2 and the twelve weights a1..a12."""

    p: Coefficient
    q: Coefficient
    a: tuple[Coefficient, ...]

    def __post_init__(self) -> None:
        if len(self.a) != 12:
            raise FormShapeError(f"the quartic family takes 12 coefficients, got {len(self.a)}")


def binary_form(p: Coefficient, q: Coefficient, u: MultiPoly, v: MultiPoly) -> MultiPoly:
    return u * u + p * u * v + q * v * v


def quadratic_forms(
    p: Coefficient,
    q: Coefficient,
    x1: MultiPoly,
    x2: MultiPoly,
    x3: MultiPoly,
    x4: MultiPoly,
) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """
    Q(x1, x2), Q1 and Q2. Under x3 = m1 x1 + (p m1 + q m2) x2, x4 = m2 x1 - m1 x2
    they satisfy Q(x3, x4) = Q(m) Q, Q1 = m1 Q and Q2 = m2 Q.
    """
    q0 = binary_form(p, q, x1, x2)
    q1 = x1 * x3 - q * x2 * x4
    q2 = x1 * x4 + x2 * x3 + p * x2 * x4
    return q0, q1, q2


def substitution_maps(p: Coefficient, q: Coefficient):
    """x3 and x4 as bilinear maps; rows are indexed by m, columns by x."""
    return bilinear([[1, p], [0, q]]), bilinear([[0, -1], [1, 0]])


def quartic_form(
    p: Coefficient, q: Coefficient, a: Sequence[Coefficient], vars: Sequence[str] = X4
) -> MultiPoly:
    """The quartic F, even in x1, over ``vars`` (which start with x1..x4)."""
    x1, x2, x3, x4 = (MultiPoly.variable(v, vars) for v in X4)
    q0, q1, q2 = quadratic_forms(p, q, x1, x2, x3, x4)
    r0, r1, r2 = quadratic_forms(p, q, -x1, x2, x3, x4)
    tail = (
        a[5] * x1 * x1
        + a[6] * x2 * x2
        + a[7] * x2 * x3
        + a[8] * x2 * x4
        + a[9] * x3 * x3
        + a[10] * x3 * x4
        + a[11] * x4 * x4
    )
    return (
        a[0] * q0 * r0
        + a[1] * q1 * r1
        + a[2] * q2 * r2
        + a[3] * (q0 * r1 + r0 * q1)
        + a[4] * (q0 * r2 + r0 * q2)
        + tail * binary_form(p, q, x3, x4)
    )


def build_quartic_family(
    params: QuarticFamilyParams,
    name: str = "quartic",
    seed: ProjPoint | None = None,
    h: Fraction | None = None,
) -> SurfaceSpec:
    if not any(params.a):
        raise FormShapeError(f"{name}: all coefficients vanish, the form is zero")
    p, q = Fraction(params.p), Fraction(params.q)
    sub_x3, sub_x4 = substitution_maps(p, q)
    x1, x2 = MultiPoly.variables(X12)
    logger.debug(f"{name}: quartic family with p={p}, q={q}")
    return SurfaceSpec(
        name=name,
        form=quartic_form(p, q, params.a),
        sub_x3=sub_x3,
        sub_x4=sub_x4,
        reflection=Reflection.negate(0, 4),
        removable=binary_form(p, q, x1, x2),
        seed=seed,
        h=h,
    )


# x1 = x2 families on the h = 0 member of the first quartic example
PARAMETRIC_FAMILIES = (
    ("r^2 - 8*r*s + 3*s^2", "r^2 - 8*r*s + 3*s^2", "r^2 - 6*r*s + 21*s^2", "2*r^2 - 6*s^2"),
    ("-r^2 + r*s + 3*s^2", "-r^2 + r*s + 3*s^2", "-r^2 + 6*r*s - 6*s^2", "r^2 + 3*s^2"),
)
RS = ("r", "s")


def parametric_family_residual(form: MultiPoly, family: Sequence[str]) -> MultiPoly:
    """form(x1(r, s), ..., x4(r, s)) as a polynomial in (r, s)."""
    images = {v: MultiPoly.parse(text, RS) for v, text in zip(X4, family)}
    return form.substitute(images, RS)


def verify_parametric_family(form: MultiPoly | None = None) -> bool:
    """Both x1 = x2 families vanish identically on the h = 0 quartic."""
    if form is None:
        from presets import surface_spec

        form = surface_spec("quartic-ex1", 0).form
    for family in PARAMETRIC_FAMILIES:
        residual = parametric_family_residual(form, family)
        if residual:
            raise InvariantViolationError(f"family {family} leaves residual {residual}")
    return True
