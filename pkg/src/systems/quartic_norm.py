from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from loguru import logger

from errors import InvariantViolationError
from exactpoly import MultiPoly, symbols_of
from numberfield import FieldSpec, adjugate_forms, bilinear_maps, norm_form_symbolic
from point import ProjPoint
from reflection import Reflection
from system import SystemSpec

from .norm_quadric import block_norm

X8 = symbols_of(8, "x")
PQ = ("p", "q")
X8PQ = X8 + PQ
M4 = symbols_of(4, "m")

NORM_TEXT = (
    "x1^4 - 2*p*x1^3*x3 + p*x1^2*x2^2 - (2*p^2 - 4*q)*x1^2*x2*x4 + (p^2 + 2*q)*x1^2*x3^2"
    " + p*(p^2 - 3*q)*x1^2*x4^2 - 4*q*x1*x2^2*x3 + 4*p*q*x1*x2*x3*x4 - 2*p*q*x1*x3^3"
    " - 2*q*(p^2 - 2*q)*x1*x3*x4^2 + q*x2^4 - 2*p*q*x2^3*x4 + p*q*x2^2*x3^2"
    " + q*(p^2 + 2*q)*x2^2*x4^2 - 4*q^2*x2*x3^2*x4 - 2*p*q^2*x2*x4^3 + q^2*x3^4"
    " + p*q^2*x3^2*x4^2 + q^3*x4^4"
)

MAP_TEXTS = (
    "m1*x1 - q*m4*x2 - q*m3*x3 - q*(m2 - p*m4)*x4",
    "m2*x1 + m1*x2 - q*m4*x3 - q*m3*x4",
    "m3*x1 + (m2 - p*m4)*x2 + (m1 - p*m3)*x3 - (p*m2 - (p^2 - q)*m4)*x4",
    "m4*x1 + m3*x2 + (m2 - p*m4)*x3 + (m1 - p*m3)*x4",
)

# G_j = m_j F(x1, x2, x3, x4) once x5..x8 are the products above
ADJUGATE_TEXTS = (
    "x1^3*x5 + (q*x2*x8 - 2*p*x3*x5 + q*x3*x7 + q*x4*x6 - p*q*x4*x8)*x1^2"
    " + (p*x2^2*x5 - q*x2^2*x7 - 2*q*x2*x3*x6 - 2*p^2*x2*x4*x5 + 2*q*x2*x4*x5"
    " + 2*p*q*x2*x4*x7 + p^2*x3^2*x5 + q*x3^2*x5 - p*q*x3^2*x7 + 2*q^2*x3*x4*x8"
    " + p^3*x4^2*x5 - 2*p*q*x4^2*x5 - p^2*q*x4^2*x7 + q^2*x4^2*x7)*x1"
    " + q*(x2^3*x6 - x2^2*x3*x5 - 2*p*x2^2*x4*x6 + q*x2^2*x4*x8 + p*x2*x3^2*x6"
    " - q*x2*x3^2*x8 + 2*p*x2*x3*x4*x5 - 2*q*x2*x3*x4*x7 + p^2*x2*x4^2*x6"
    " + q*x2*x4^2*x6 - p*q*x2*x4^2*x8 - p*x3^3*x5 + q*x3^3*x7 - q*x3^2*x4*x6"
    " - p^2*x3*x4^2*x5 + q*x3*x4^2*x5 + p*q*x3*x4^2*x7 - p*q*x4^3*x6 + q^2*x4^3*x8)",
    "x1^3*x6 - (x2*x5 + 2*p*x3*x6 - q*x3*x8 - q*x4*x7)*x1^2"
    " + (p*x2^2*x6 - q*x2^2*x8 + 2*p*x2*x3*x5 - 2*q*x2*x3*x7 - 2*p^2*x2*x4*x6"
    " + 2*q*x2*x4*x6 + 2*p*q*x2*x4*x8 + p^2*x3^2*x6 + q*x3^2*x6 - p*q*x3^2*x8"
    " - 2*q*x3*x4*x5 + p^3*x4^2*x6 - 2*p*q*x4^2*x6 - p^2*q*x4^2*x8 + q^2*x4^2*x8)*x1"
    " - p*x2^3*x5 + q*x2^3*x7 - q*x2^2*x3*x6 + 2*p^2*x2^2*x4*x5 - q*x2^2*x4*x5"
    " - 2*p*q*x2^2*x4*x7 - p^2*x2*x3^2*x5 + q*x2*x3^2*x5 + p*q*x2*x3^2*x7"
    " + 2*p*q*x2*x3*x4*x6 - 2*q^2*x2*x3*x4*x8 - p^3*x2*x4^2*x5 + q^2*x2*x4^2*x7"
    " + p^2*q*x2*x4^2*x7 - p*q*x3^3*x6 + q^2*x3^3*x8 + p*q*x3^2*x4*x5"
    " - q^2*x3^2*x4*x7 + q^2*x3*x4^2*x6 - p^2*q*x3*x4^2*x6 + p*q^2*x3*x4^2*x8"
    " + p^2*q*x4^3*x5 - q^2*x4^3*x5 - p*q^2*x4^3*x7",
    "x1^3*x7 - (x2*x6 - p*x2*x8 + x3*x5 + p*x3*x7 - p*x4*x6 + p^2*x4*x8 - q*x4*x8)*x1^2"
    " + (x2^2*x5 - 2*q*x2*x3*x8 - 2*p*x2*x4*x5 + 2*q*x2*x4*x7 + p*x3^2*x5"
    " + q*x3^2*x7 - 2*q*x3*x4*x6 + 2*p*q*x3*x4*x8 + p^2*x4^2*x5 - q*x4^2*x5"
    " - p*q*x4^2*x7)*x1 - q*(-x2^3*x8 + x2^2*x3*x7 + x2^2*x4*x6 + p*x2^2*x4*x8"
    " - x2*x3^2*x6 - 2*x2*x3*x4*x5 - p*x2*x4^2*x6 - q*x2*x4^2*x8 + x3^3*x5"
    " + q*x3^2*x4*x8 + p*x3*x4^2*x5 - q*x3*x4^2*x7 + q*x4^3*x6)",
    "x1^3*x8 - (x2*x7 + x3*x6 + p*x3*x8 + x4*x5 - p*x4*x7)*x1^2"
    " + (x2^2*x6 + 2*x2*x3*x5 - 2*p*x2*x4*x6 + 2*q*x2*x4*x8 + p*x3^2*x6"
    " + q*x3^2*x8 - 2*q*x3*x4*x7 + p^2*x4^2*x6 - q*x4^2*x6 - p*q*x4^2*x8)*x1"
    " - p^2*x2*x4^2*x5 + p*q*x2*x4^2*x7 - p*q*x3*x4^2*x6 + p*q*x4^3*x5"
    " + q^2*x3*x4^2*x8 - q^2*x4^3*x7 + 2*p*x2^2*x4*x5 - p*x2*x3^2*x5"
    " - q*x2^2*x3*x8 - q*x2^2*x4*x7 + q*x2*x3^2*x7 + 2*q*x2*x3*x4*x6"
    " - q*x2*x4^2*x5 - q*x3^3*x6 + q*x3^2*x4*x5 - x2^3*x5",
)

# H = sum_j w_j G_j
WEIGHT_TEXTS = (
    "-2*x5*x6 + 3*x6^2 + 2*p*x6*x7 - 3*p*x6*x8 - 2*q*x7*x8 + 3*q*x8^2",
    "2*x5^2 - 3*x5*x6 - 2*p*x5*x7 + 3*p*x5*x8 + 2*q*x7^2 - 3*q*x7*x8",
    "2*q*(x5*x8 - x6*x7)",
    "-3*q*(x5*x8 - x6*x7)",
)

PHI_FACTOR_TEXTS = (
    "m1^2 + m1*m2 - 3*m1*m3 - 5*m1*m4 + 2*m2^2 + 2*m2*m3 - 6*m2*m4 + 4*m3^2 + 4*m3*m4 + 8*m4^2",
    "m1^2 - m1*m2 - 3*m1*m3 + 5*m1*m4 + 2*m2^2 - 2*m2*m3 - 6*m2*m4 + 4*m3^2 - 4*m3*m4 + 8*m4^2",
    "m1 - 2*m3 + 2*m4",
)


def quartic_field(h: Fraction) -> FieldSpec:
    """t^4 + (h + 3) t^2 + (h + 4)."""
    return FieldSpec((0, h + 3, 0, h + 4), name=f"t^4 + {h + 3} t^2 + {h + 4}")


def symbolic_quartic_field() -> FieldSpec:
    p, q = MultiPoly.variable("p", X8PQ), MultiPoly.variable("q", X8PQ)
    return FieldSpec((0, p, 0, q), name="t^4 + p t^2 + q")


def verify_printed_forms() -> bool:
    """
    The printed F, the x5..x8 products and G1..G4 agree term by term with the
    norm, product and adjugate forms of t^4 + p t^2 + q for symbolic p, q.
    """
    field = symbolic_quartic_field()
    checks = [("F", MultiPoly.parse(NORM_TEXT, X8PQ), norm_form_symbolic(field, X8[:4], X8PQ))]
    mvars = X8[:4] + M4 + PQ
    mfield = FieldSpec(
        (0, MultiPoly.variable("p", mvars), 0, MultiPoly.variable("q", mvars)), name="t^4 + p t^2 + q"
    )
    products = bilinear_maps(mfield, M4, X8[:4], mvars)
    for j, (text, derived) in enumerate(zip(MAP_TEXTS, products), start=5):
        checks.append((f"x{j}", MultiPoly.parse(text, mvars), derived))
    adjugates = adjugate_forms(field, X8[:4], X8[4:], X8PQ)
    for j, (text, derived) in enumerate(zip(ADJUGATE_TEXTS, adjugates), start=1):
        checks.append((f"G{j}", MultiPoly.parse(text, X8PQ), derived))
    for label, printed, derived in checks:
        if printed != derived:
            raise InvariantViolationError(
                f"printed {label} differs from the derived form by {printed - derived}"
            )
    logger.info("printed norm, product and adjugate forms agree with the derived ones")
    return True


@dataclass(frozen=True)
class QuarticNormPieces:
    field: FieldSpec
    norm: MultiPoly
    f_x: MultiPoly
    f_xp: MultiPoly
    h_form: MultiPoly
    line: MultiPoly


@lru_cache(maxsize=16)
def quartic_norm_pieces(h: Fraction) -> QuarticNormPieces:
    """F over y1..y4, F(x), F(x'), H and the linear form x5 - 2 x7 + 2 x8 + h (x6 - x8)."""
    field = quartic_field(h)
    p, q = h + 3, h + 4
    norm = norm_form_symbolic(field, symbols_of(4, "y"))
    adjugates = adjugate_forms(field, X8[:4], X8[4:], X8)
    h_form = MultiPoly.zero(X8)
    for text, g in zip(WEIGHT_TEXTS, adjugates):
        h_form = h_form + MultiPoly.parse(text, X8, p=p, q=q) * g
    return QuarticNormPieces(
        field=field,
        norm=norm,
        f_x=block_norm(norm, X8[:4], X8),
        f_xp=block_norm(norm, X8[4:], X8),
        h_form=h_form,
        line=MultiPoly.parse("x5 - 2*x7 + 2*x8 + h*(x6 - x8)", X8, h=h),
    )


def decic_main_form(h: Fraction) -> MultiPoly:
    """F^2(x) (-x1^2 + 3 x2^2 + 31 x4^2) + h (F(x) + F(x')) H - F^2(x') L^2, degree 10."""
    s = quartic_norm_pieces(Fraction(h))
    quad = MultiPoly.parse("-x1^2 + 3*x2^2 + 31*x4^2", X8)
    return s.f_x * s.f_x * quad + h * (s.f_x + s.f_xp) * s.h_form - s.f_xp * s.f_xp * s.line * s.line


def sextic_form(h: Fraction) -> MultiPoly:
    """F(x) (-x1^2 + 3 x2^2 + 31 x4^2 - L^2) + 2 h H, the degree 10 form divided by F(x) at F(x') = F(x)."""
    s = quartic_norm_pieces(Fraction(h))
    quad = MultiPoly.parse("-x1^2 + 3*x2^2 + 31*x4^2", X8)
    return s.f_x * (quad - s.line * s.line) + 2 * h * s.h_form


def build_quartic_norm_system(
    h: Fraction,
    name: str = "decic-10in8",
    seed: ProjPoint | None = None,
    ratio_pair: bool = False,
) -> SystemSpec:
    h = Fraction(h)
    s = quartic_norm_pieces(h)
    x2 = MultiPoly.variable("x2", ("x1", "x2"))
    removable = s.f_x.substitute({"x3": 0, "x4": x2, **{v: 0 for v in X8[4:]}}, ("x1", "x2"))
    constraints = (
        MultiPoly.variable("x3", X8),
        MultiPoly.variable("x4", X8) - MultiPoly.variable("x2", X8),
    )
    extra: tuple[MultiPoly, ...] = ()
    if ratio_pair:
        extra = (s.f_xp - s.f_x, sextic_form(h))
    logger.debug(f"{name}: quartic-norm system at h={h}, removable {removable}")
    return SystemSpec(
        name=name,
        field=s.field,
        vars=X8,
        x_block=(0, 1, 2, 3),
        xp_block=(4, 5, 6, 7),
        main_form=decic_main_form(h),
        reflection=Reflection.negate(0, 8),
        removable=removable,
        removable_power=2,
        constraints=constraints,
        extra_forms=extra,
        seed=seed,
        ratio_form=s.norm,
        ratio_name="F",
        h=h,
    )


def phi_h0(m: Sequence[Fraction]) -> Fraction:
    """phi(m) with F(m) L(m x) = phi(m) (x1 + 2 x2) on the h = 0 system."""
    value = Fraction(1)
    for text in PHI_FACTOR_TEXTS:
        value *= MultiPoly.parse(text, M4).evaluate(m)
    return value


def reduced_quadratic_h0(m: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """The h = 0 reduced quadratic -x1^2 + 34 x2^2 - phi^2 (x1 + 2 x2)^2."""
    phi2 = phi_h0(m) ** 2
    return -(phi2 + 1), -4 * phi2, 34 - 4 * phi2


def ratio_step_h0(m: Sequence[Fraction]) -> Fraction:
    """x1/x2 grows by this amount at each RC step on the h = 0 system."""
    phi2 = phi_h0(m) ** 2
    return 4 * phi2 / (phi2 + 1)
