from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import TYPE_CHECKING

from loguru import logger

from errors import InvariantViolationError
from exactpoly import MultiPoly, symbols_of
from numberfield import FieldSpec, bilinear_maps, norm_form_symbolic
from point import ProjPoint, normalize
from reflection import Reflection
from system import SystemSpec

from .norm_quadric import block_norm

if TYPE_CHECKING:
    from system import System

X6 = symbols_of(6, "x")
M3 = symbols_of(3, "m")
PQR = ("p", "q", "r")
ABH = ("x1", "x2", "a", "b", "h")

NORM_TEXT = (
    "x1^3 - p*x1^2*x2 + (p^2 - 2*q)*x1^2*x3 + q*x1*x2^2 - (p*q - 3*r)*x1*x2*x3"
    " - (2*p*r - q^2)*x1*x3^2 - r*x2^3 + p*r*x2^2*x3 - q*r*x2*x3^2 + r^2*x3^3"
)

MAP_TEXTS = (
    "m1*x1 - r*m3*x2 - (r*m2 - p*r*m3)*x3",
    "m2*x1 + (m1 - q*m3)*x2 - (q*m2 - (p*q - r)*m3)*x3",
    "m3*x1 + (m2 - p*m3)*x2 + (m1 - p*m2 + (p^2 - q)*m3)*x3",
)

PSI_TEXTS = (
    "-(m1 + m2 + m3)^2 - (h + 3)*(49*m1^2 - 36*m2^2 + m3^2)",
    "-9*m1^2 + (324*h + 954)*m1*m2 + (392*h^2 + 2351*h + 3507)*m1*m3 - 9*m2^2"
    " + (648*h^2 + 3230*h + 3840)*m2*m3 + (9*h^2 + 26*h - 12)*m3^2",
    "6885*m1^2 + (11664*h + 23310)*m1*m3 - 2997*m2^2 + (162*h - 18)*m2*m3"
    " + (8447*h^2 + 27839*h + 18492)*m3^2",
    "81*m1^3 - 81*h*m1^2*m2 + 81*(h^2 + 4*h + 8)*m1^2*m3 - 162*(h + 2)*m1*m2^2"
    " + (162*h^2 + 540*h + 648)*m1*m2*m3 + (180*h^2 + 864*h + 1296)*m1*m3^2"
    " - 72*(h + 3)*m2^3 + 72*(h + 3)*h*m2^2*m3 + 144*(h + 3)*(h + 2)*m2*m3^2"
    " + 64*(h + 3)^2*m3^3",
)

K1, K2 = 8, 39
WITNESS_DIVISOR = Fraction(16, 3)
PSI3_AT_RATIO_8 = 648


def cubic_coefficients(h: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    return h, -2 * h - 4, Fraction(8, 9) * h + Fraction(8, 3)


def cubic_field(h: Fraction) -> FieldSpec:
    """t^3 + h t^2 - (2h + 4) t + 8h/9 + 8/3, reducible at h = -3."""
    field = FieldSpec(cubic_coefficients(h), name=f"cubic at h={h}", screen=False)
    roots = field.rational_roots()
    if roots:
        logger.warning(f"{field.name} has rational roots {roots}, the norm form factors")
    return field


def block_map(a: MultiPoly | Fraction, b: MultiPoly | Fraction, scaled: bool = False):
    """
    x1 -> -a x1/(a + b) - 2(a^2 + ab + b^2) x2/(a^2 - b^2),
    x2 -> (a - b) x1/(2(a + b)) - b x2/(a + b).
    With ``scaled`` the rows are multiplied by 2(a^2 - b^2) to clear denominators,
    which symbolic a, b require.
    """
    rows = [
        [-2 * a * (a - b), -4 * (a * a + a * b + b * b)],
        [(a - b) * (a - b), -2 * b * (a - b)],
    ]
    if scaled:
        return rows
    d = 2 * (a * a - b * b)
    return [[Fraction(e) / d for e in row] for row in rows]


BLOCK = block_map(Fraction(1), Fraction(-2))


def verify_block_invariance() -> bool:
    """
    For symbolic a, b, h the quadratic Q and the cubics C4, C5 (cleared of the
    (a - b)^2 denominators) are fixed by the block map, and C(x1, x2, 0) with
    the matching p, q, r equals C4 - h C5.
    """
    x1, x2, a, b, h = MultiPoly.variables(ABH)
    s = a * a + a * b + b * b
    w = (a - b) * (a - b)
    forms = {
        "Q": (w * x1 * x1 + 2 * w * x1 * x2 + 4 * s * x2 * x2, 2),
        "C4": (w * x1**3 - 12 * s * x1 * x2 * x2 - 8 * s * x2**3, 3),
        "C5": (w * x1 * x1 * x2 + 2 * w * x1 * x2 * x2 - 4 * a * b * x2**3, 3),
    }
    rows = block_map(a, b, scaled=True)
    images = {
        "x1": rows[0][0] * x1 + rows[0][1] * x2,
        "x2": rows[1][0] * x1 + rows[1][1] * x2,
    }
    d = 2 * (a * a - b * b)
    for label, (form, degree) in forms.items():
        if form.substitute(images, ABH) != d**degree * form:
            raise InvariantViolationError(f"the block map does not fix {label}")

    # (a - b)^2 C(x1, x2, 0) = x1^3 w - h w x1^2 x2 + w q x1 x2^2 - w r x2^3
    wq = -2 * ((h + 6) * a * a - (2 * h - 6) * a * b + (h + 6) * b * b)
    wr = 4 * (2 * a * a - (h - 2) * a * b + 2 * b * b)
    edge = w * x1**3 - h * w * x1 * x1 * x2 + wq * x1 * x2 * x2 - wr * x2**3
    if edge != forms["C4"][0] - h * forms["C5"][0]:
        raise InvariantViolationError("C(x1, x2, 0) is not C4 - h C5")
    logger.info("block map invariance verified for symbolic a, b, h")
    return True


def verify_printed_forms() -> bool:
    """The printed C and x4..x6 products agree with the norm and product forms for symbolic p, q, r."""
    vars = X6[:3] + M3 + PQR
    p, q, r = (MultiPoly.variable(v, vars) for v in PQR)
    field = FieldSpec((p, q, r), name="t^3 + p t^2 + q t + r")
    if MultiPoly.parse(NORM_TEXT, vars) != norm_form_symbolic(field, X6[:3], vars):
        raise InvariantViolationError("printed C differs from the norm form")
    for j, (text, derived) in enumerate(zip(MAP_TEXTS, bilinear_maps(field, M3, X6[:3], vars)), start=4):
        if MultiPoly.parse(text, vars) != derived:
            raise InvariantViolationError(f"printed x{j} differs from the product form")
    return True


def psi_values(m: Sequence[Fraction], h: Fraction) -> tuple[Fraction, ...]:
    return tuple(MultiPoly.parse(text, M3, h=h).evaluate(m) for text in PSI_TEXTS)


def witness_z_squared(psi: Sequence[Fraction], h: Fraction) -> Fraction:
    """z^2 as a polynomial in psi0, psi1, psi2 once psi3 = 648."""
    p0, p1, p2, _ = psi
    return (
        -13689 * p0 * p0
        - 169 * (h + 3) * p0 * p2
        + 169 * p1 * p1
        - 7371 * p0
        + 702 * p1
        - 39 * (h + 3) * p2
        - 243
    )


def psi_checks(system: System, m: tuple[Fraction, ...], z: Fraction) -> dict[str, Fraction]:
    """Evaluate psi0..psi3 at m and check them against C(m) and z."""
    h = system.spec.h
    psi = psi_values(m, h)
    c_m = system.spec.ratio_form.evaluate(m)
    if psi[3] != 81 * c_m:
        raise InvariantViolationError(f"{system.name}: psi3 = {psi[3]} but 81 C(m) = {81 * c_m}")
    if psi[3] == PSI3_AT_RATIO_8 and witness_z_squared(psi, h) != z * z:
        raise InvariantViolationError(f"{system.name}: z^2 disagrees with the psi relation at m = {m}")
    return {f"psi{i}": value for i, value in enumerate(psi)}


def build_cubic_norm_system(
    h: Fraction,
    name: str = "quintic-cubic",
    seed: ProjPoint | None = None,
    ratio_pair: bool = False,
) -> SystemSpec:
    """
    8 C(x1, x2, x3) (9 x1^2 + 18 x1 x2 + 12 x2^2)
      = 39 C(x4, x5, x6) ((x4 + x5 + x6)^2 + (h + 3)(49 x4^2 - 36 x5^2 + x6^2))
    with x3 = 0.
    """
    h = Fraction(h)
    field = cubic_field(h)
    norm = norm_form_symbolic(field, symbols_of(3, "y"))
    c_x = block_norm(norm, X6[:3], X6)
    c_xp = block_norm(norm, X6[3:], X6)
    quad = MultiPoly.parse("9*x1^2 + 18*x1*x2 + 12*x2^2", X6)
    q1 = MultiPoly.parse("(x4 + x5 + x6)^2 + (h + 3)*(49*x4^2 - 36*x5^2 + x6^2)", X6, h=h)
    extra: tuple[MultiPoly, ...] = ()
    if ratio_pair:
        extra = (c_xp - 8 * c_x,)
    removable = block_norm(norm.specialize(y3=0), ("x1", "x2"), ("x1", "x2"))
    logger.debug(f"{name}: cubic-norm system at h={h}, removable {removable}")
    return SystemSpec(
        name=name,
        field=field,
        vars=X6,
        x_block=(0, 1, 2),
        xp_block=(3, 4, 5),
        main_form=K1 * c_x * quad - K2 * c_xp * q1,
        reflection=Reflection.block(BLOCK, 6, name="order-3 block map"),
        removable=removable,
        constraints=(MultiPoly.variable("x3", X6),),
        extra_forms=extra,
        seed=seed,
        ratio_form=norm,
        ratio_name="C",
        witness_divisor=WITNESS_DIVISOR,
        witness_checks=psi_checks,
        h=h,
    )


def double_step_h_minus3(alpha: Sequence[Fraction]) -> ProjPoint:
    """(RC)^2 of (1, 1, 0, a4, a5, a6) on the h = -3 system, in closed form."""
    a4, a5, a6 = (Fraction(v) for v in alpha)
    return normalize(
        [24, 24, 0, -288 * a4, 481 * a4 + 50 * a5 + 52 * a6, -169 * a4 - 26 * a5 - 28 * a6]
    )
