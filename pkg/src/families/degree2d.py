from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from errors import FormShapeError, InvariantViolationError
from exactpoly import MultiPoly
from point import ProjPoint
from reflection import Reflection
from surface import X4, X12, SurfaceSpec

from .quartic import Coefficient, QuarticFamilyParams, binary_form, quartic_form, substitution_maps


@dataclass(frozen=True)
class Degree2dParams:
    """
    Weights of the degree 2d form
    G = sum_j Q^(d-1-j) Q(x3, x4)^j Q_(j+3) + (sum_j b_j Q^(d-2-j) Q(x3, x4)^j) F
    with Q = x1^2 + q x2^2 and F a member of the quartic family at p = 0.
    """

    d: int
    q: Coefficient
    quadratics: tuple[MultiPoly, ...]
    b: tuple[Coefficient, ...]
    quartic: QuarticFamilyParams

    def __post_init__(self) -> None:
        if self.d < 2:
            raise FormShapeError("degree 2d families need d >= 2")
        if len(self.quadratics) != self.d or len(self.b) != self.d - 1:
            raise FormShapeError(f"d = {self.d} needs {self.d} quadratics and {self.d - 1} weights b")
        if self.quartic.p != 0 or self.quartic.q != self.q:
            raise FormShapeError("the embedded quartic must use p = 0 and the same q")
        for k, form in enumerate(self.quadratics, start=3):
            if form and not form.is_homogeneous(2):
                raise FormShapeError(f"Q{k} is not a quadratic form")
            ix = form.vars.index("x1")
            if any(monom[ix] % 2 for monom in form.terms()):
                raise FormShapeError(f"Q{k} has x1 in odd degree")


def degree2d_form(params: Degree2dParams, vars: Sequence[str] = X4) -> MultiPoly:
    x1, x2, x3, x4 = (MultiPoly.variable(v, vars) for v in X4)
    d, q = params.d, params.q
    base = binary_form(0, q, x1, x2)
    image = binary_form(0, q, x3, x4)
    total = MultiPoly.zero(vars)
    for j, quadratic in enumerate(params.quadratics):
        if quadratic:
            total = total + base ** (d - 1 - j) * image**j * quadratic.embed(vars)
    weight = MultiPoly.zero(vars)
    for j, b in enumerate(params.b):
        if b:
            weight = weight + b * base ** (d - 2 - j) * image**j
    if weight:
        total = total + weight * quartic_form(0, q, params.quartic.a, vars)
    return total


def build_degree2d_family(
    params: Degree2dParams,
    name: str = "degree2d",
    seed: ProjPoint | None = None,
    h: Fraction | None = None,
) -> SurfaceSpec:
    q = Fraction(params.q)
    sub_x3, sub_x4 = substitution_maps(0, q)
    x1, x2 = MultiPoly.variables(X12)
    x3, x4 = MultiPoly.variable("x3", X4), MultiPoly.variable("x4", X4)
    y1, y2 = MultiPoly.variable("x1", X4), MultiPoly.variable("x2", X4)
    logger.debug(f"{name}: degree {2 * params.d} family with q={q}")
    return SurfaceSpec(
        name=name,
        form=degree2d_form(params),
        sub_x3=sub_x3,
        sub_x4=sub_x4,
        reflection=Reflection.negate(0, 4),
        removable=binary_form(0, q, x1, x2) ** (params.d - 1),
        seed=seed,
        conserved_ratio=(binary_form(0, q, x3, x4), binary_form(0, q, y1, y2)),
        h=h,
    )


def decic_params(h: Coefficient, vars: Sequence[str] = X4) -> Degree2dParams:
    """d = 5, q = 2; ``h`` may be a rational or a polynomial over ``vars``."""
    x1, x2, x3, x4 = (MultiPoly.variable(v, vars) for v in X4)
    zero = MultiPoly.zero(vars)
    quadratics = (
        x1 * x1 + x2 * x2,
        2 * x1 * x1 + 3 * x2 * x2,
        zero,
        zero,
        -(x3 * x3 + 2 * x4 * x4),
    )
    a = (1, -1, -2, h, h, -1, -2, 2 * h, 0, -1, 0, -2)
    return Degree2dParams(
        d=5,
        q=2,
        quadratics=quadratics,
        b=(1, 0, 0, 0),
        quartic=QuarticFamilyParams(p=0, q=2, a=a),
    )


XYH = ("X", "Y", "h")
XH = ("X", "h")
DECIC_VARS = ("x1", "x2", "x3", "x4", "h")


def decic_parametrization() -> tuple[tuple[MultiPoly, ...], MultiPoly]:
    """x1..x4 as polynomials in (X, Y, h) and the quartic E(X, h) with Y^2 = E."""
    xs = tuple(
        MultiPoly.parse(text, XYH)
        for text in (
            "4*h*X^3 - 2*X^2 + 2*X*Y + 6*h*X + 2*h - 1",
            "4*X^3 + 2*h*X^2 + 2*h*X + 2*X - Y - h",
            "-4*h*X^3 + 10*X^2 - 2*X*Y + 2*h*X + 2*h - 1",
            "4*X^3 + 6*h*X^2 + 2*h*X - 4*X + Y + h",
        )
    )
    curve = MultiPoly.parse(
        "4*(h+1)^2*X^4 + 8*h*(h-2)*X^3 + 4*X^2 - 4*h*(h+2)*X + (h-1)^2", XH
    )
    return xs, curve


def reduce_mod_curve(poly: MultiPoly, curve: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """
    Write a polynomial in (X, Y, h) as r0 + r1 Y modulo Y^2 = E(X, h);
    returns (r0, r1) over (X, h).
    """
    iy = poly.vars.index("Y")
    rest = [i for i, v in enumerate(poly.vars) if v != "Y"]
    buckets: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for monom, coeff in poly.terms().items():
        buckets.setdefault(monom[iy], {})[tuple(monom[i] for i in rest)] = coeff
    r0, r1 = MultiPoly.zero(XH), MultiPoly.zero(XH)
    for k, terms in buckets.items():
        part = MultiPoly.from_terms(XH, terms) * curve ** (k // 2)
        if k % 2:
            r1 = r1 + part
        else:
            r0 = r0 + part
    return r0, r1


def verify_decic_parametrization() -> bool:
    """
    The parametrized points lie on the decic for every h and on the quadric
    x1^2 + 2 x2^2 = x3^2 + 2 x4^2, as identities modulo the curve.
    """
    xs, curve = decic_parametrization()
    images = dict(zip(X4, xs))
    decic = degree2d_form(decic_params(MultiPoly.variable("h", DECIC_VARS), DECIC_VARS), DECIC_VARS)
    x1, x2, x3, x4 = xs
    checks = {
        "decic": decic.substitute(images, XYH),
        "quadric": x1 * x1 + 2 * x2 * x2 - x3 * x3 - 2 * x4 * x4,
    }
    for label, poly in checks.items():
        r0, r1 = reduce_mod_curve(poly, curve)
        if r0 or r1:
            raise InvariantViolationError(
                f"parametrization misses the {label}: residues with {len(r0.terms())} and {len(r1.terms())} terms"
            )
    logger.info("decic parametrization verified as an identity in (X, h)")
    return True
