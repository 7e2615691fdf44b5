from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from errors import FormShapeError
from exactpoly import MultiPoly
from point import ProjPoint
from reflection import Reflection
from surface import X4, X12, SurfaceSpec

from .quartic import Coefficient, binary_form, substitution_maps


@dataclass(frozen=True)
class SexticFamilyParams:
    p: Coefficient
    q: Coefficient
    a: tuple[Coefficient, ...]

    def __post_init__(self) -> None:
        if len(self.a) != 14:
            raise FormShapeError(f"the sextic family takes 14 coefficients, got {len(self.a)}")


def cubic_forms(
    p: Coefficient,
    q: Coefficient,
    x1: MultiPoly,
    x2: MultiPoly,
    x3: MultiPoly,
    x4: MultiPoly,
) -> tuple[MultiPoly, MultiPoly]:
    """
    C1 and C2, even in x1. After the quartic family's substitution
    C1 = (m1 x1 + q m2 x2) Q and C2 = (m2 x1 - (m1 + p m2) x2) Q.
    """
    c1 = x1 * x1 * x3 + q * x2 * x2 * x3 + p * q * x2 * x2 * x4
    c2 = x1 * x1 * x4 - p * x2 * x2 * x3 - (p * p - q) * x2 * x2 * x4
    return c1, c2


def sextic_form(
    p: Coefficient, q: Coefficient, a: Sequence[Coefficient], vars: Sequence[str] = X4
) -> MultiPoly:
    x1, x2, x3, x4 = (MultiPoly.variable(v, vars) for v in X4)
    c1, c2 = cubic_forms(p, q, x1, x2, x3, x4)
    q34 = binary_form(p, q, x3, x4)
    tail = (
        a[7] * x1 * x1
        + a[8] * x2 * x2
        + a[9] * x2 * x3
        + a[10] * x2 * x4
        + a[11] * x3 * x3
        + a[12] * x3 * x4
        + a[13] * x4 * x4
    )
    return (
        a[0] * c1 * c1
        + a[1] * c1 * c2
        + a[2] * c2 * c2
        + q34 * (x2 * (a[3] * c1 + a[4] * c2) + x4 * (a[5] * c1 + a[6] * c2))
        + tail * q34 * q34
    )


def build_sextic_family(
    params: SexticFamilyParams,
    name: str = "sextic",
    seed: ProjPoint | None = None,
    witness_divisor: MultiPoly | None = None,
) -> SurfaceSpec:
    if not any(params.a):
        raise FormShapeError(f"{name}: all coefficients vanish, the form is zero")
    p, q = Fraction(params.p), Fraction(params.q)
    sub_x3, sub_x4 = substitution_maps(p, q)
    x1, x2 = MultiPoly.variables(X12)
    removable = binary_form(p, q, x1, x2)
    logger.debug(f"{name}: sextic family with p={p}, q={q}")
    return SurfaceSpec(
        name=name,
        form=sextic_form(p, q, params.a),
        sub_x3=sub_x3,
        sub_x4=sub_x4,
        reflection=Reflection.negate(0, 4),
        removable=removable * removable,
        seed=seed,
        witness_divisor=witness_divisor,
    )
