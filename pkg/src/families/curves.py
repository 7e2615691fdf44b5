from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from exactpoly import MultiPoly
from point import ProjPoint, normalize
from surface import SurfaceSpec


def invariant_curve(spec: SurfaceSpec, x4_zero: bool = False) -> MultiPoly:
    """
    The form at x1 = 0, a curve in (x2, x3, x4) carrying the points fixed by
    negating x1. With ``x4_zero`` the further restriction to x4 = 0.
    """
    if x4_zero:
        return spec.form.specialize(x1=0, x4=0)
    return spec.form.specialize(x1=0)


def curve_pairing(point: ProjPoint | Sequence[int | Fraction]) -> ProjPoint:
    """(x2, x3, x4) -> (x2, x3 + x4, -x4), an involution of the invariant curve when p = 1."""
    x2, x3, x4 = point
    return normalize([x2, x3 + x4, -x4])
