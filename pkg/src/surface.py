from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from loguru import logger

from errors import (
    DegeneratePointError,
    FormShapeError,
    InvariantViolationError,
    NotASquareError,
    ParametricDegeneracyError,
)
from exactpoly import MultiPoly, binary_quadratic_coefficients, collect_binary_quadratic
from linalg import solve
from point import ProjPoint, normalize
from quadratic import discriminant, rational_sqrt, second_root
from reflection import Reflection
from variety import Variety, Witness

X4 = ("x1", "x2", "x3", "x4")
X12 = ("x1", "x2")
M12 = ("m1", "m2")
XM = ("x1", "x2", "m1", "m2")

# sub[i][j] is the coefficient of m_(i+1) x_(j+1)
BilinearMap = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


class ParamPair(NamedTuple):
    m1: Fraction
    m2: Fraction


def bilinear(rows: Sequence[Sequence[int | Fraction]]) -> BilinearMap:
    (a, b), (c, d) = rows
    return (Fraction(a), Fraction(b)), (Fraction(c), Fraction(d))


@dataclass(frozen=True)
class SurfaceSpec:
    """
    One homogeneous equation in x1..x4 together with the data the RC engine
    needs: x3 and x4 as bilinear forms in (m1, m2) and (x1, x2), a symmetry
    of the form, and the binary factor removed after substitution.
    """

    name: str
    form: MultiPoly
    sub_x3: BilinearMap
    sub_x4: BilinearMap
    reflection: Reflection
    removable: MultiPoly
    seed: ProjPoint | None = None
    witness_divisor: MultiPoly | None = None
    conserved_ratio: tuple[MultiPoly, MultiPoly] | None = None
    h: Fraction | None = None

    @property
    def degree(self) -> int:
        return self.form.total_degree


def _numeric_map(sub: BilinearMap, m: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """Coefficients of x1 and x2 once m is fixed."""
    return (
        sub[0][0] * m[0] + sub[1][0] * m[1],
        sub[0][1] * m[0] + sub[1][1] * m[1],
    )


def _symbolic_map(sub: BilinearMap, vars: Sequence[str]) -> MultiPoly:
    x1, x2, m1, m2 = (MultiPoly.variable(v, vars) for v in XM)
    total = MultiPoly.zero(vars)
    for mi, row in zip((m1, m2), sub):
        for xj, c in zip((x1, x2), row):
            if c:
                total = total + c * mi * xj
    return total


class Surface(Variety):
    """RC/CR engine for a single quaternary equation."""

    def __init__(self, spec: SurfaceSpec, check: bool = True) -> None:
        super().__init__(spec.name, spec.reflection, spec.seed)
        self.spec = spec
        if check:
            self.check()

    def check(self) -> None:
        """Build-time checks: shape, symmetry, divisibility and the seed."""
        spec = self.spec
        if spec.form.vars != X4:
            raise FormShapeError(f"{spec.name}: form must be over {X4}")
        if not spec.form:
            raise FormShapeError(f"{spec.name}: the zero form defines no surface")
        d = spec.degree
        if not spec.form.is_homogeneous(d):
            raise FormShapeError(f"{spec.name}: form is not homogeneous")
        if spec.removable.vars != X12 or not spec.removable.is_homogeneous(d - 2):
            raise FormShapeError(
                f"{spec.name}: removable factor must be a binary form of degree {d - 2}"
            )
        if spec.removable.coefficient(x1=d - 2) != 1:
            raise FormShapeError(f"{spec.name}: removable factor is not monic in x1")
        spec.reflection.check_form(spec.form)
        _ = self.symbolic_quadratic
        if spec.seed is not None:
            self.require(spec.seed)
        logger.info(f"built surface {spec.name} of degree {d}")

    # --- Membership ---

    def verify(self, point: ProjPoint) -> bool:
        if len(point) != 4:
            return False
        x1, x2, x3, x4 = point
        if (x1, x2) == (0, 0) or (x3, x4) == (0, 0):
            return False
        return self.spec.form.evaluate(point.coords) == 0

    # --- Parameters and reduction ---

    def recover_params(self, point: ProjPoint | Sequence[Fraction]) -> ParamPair:
        """Solve the two linear relations x3 = B1(m, x), x4 = B2(m, x) for m."""
        x1, x2, x3, x4 = (Fraction(c) for c in point)
        s3, s4 = self.spec.sub_x3, self.spec.sub_x4
        rows = [
            [s3[0][0] * x1 + s3[0][1] * x2, s3[1][0] * x1 + s3[1][1] * x2],
            [s4[0][0] * x1 + s4[0][1] * x2, s4[1][0] * x1 + s4[1][1] * x2],
        ]
        try:
            m1, m2 = solve(rows, [x3, x4])
        except DegeneratePointError as err:
            raise DegeneratePointError(
                f"{self.name}: the substitution maps are dependent at {tuple(point)}"
            ) from err
        return ParamPair(m1, m2)

    def substituted(self, m: Sequence[Fraction]) -> MultiPoly:
        """The form with x3, x4 replaced by their linear forms in (x1, x2) at fixed m."""
        x1, x2 = MultiPoly.variables(X12)
        images = {}
        for name, sub in (("x3", self.spec.sub_x3), ("x4", self.spec.sub_x4)):
            c1, c2 = _numeric_map(sub, m)
            images[name] = c1 * x1 + c2 * x2
        return self.spec.form.substitute(images, X12)

    def reduce_to_quadratic(self, m: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
        reduced = self.substituted(m).exact_div(self.spec.removable, "x1")
        phi = collect_binary_quadratic(reduced)
        if not any(phi):
            raise ParametricDegeneracyError(
                f"{self.name}: reduced quadratic vanishes identically at m = {tuple(m)}"
            )
        logger.debug(f"{self.name}: phi at m={tuple(m)} is {phi}")
        return phi

    @cached_property
    def symbolic_quadratic(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        """phi0, phi1, phi2 as polynomials in (m1, m2)."""
        images = {
            "x3": _symbolic_map(self.spec.sub_x3, XM),
            "x4": _symbolic_map(self.spec.sub_x4, XM),
        }
        substituted = self.spec.form.substitute(images, XM)
        reduced = substituted.exact_div(self.spec.removable.embed(XM), "x1")
        return tuple(c.embed(M12) for c in binary_quadratic_coefficients(reduced, "x1", "x2"))

    @cached_property
    def discriminant_poly(self) -> MultiPoly:
        phi0, phi1, phi2 = self.symbolic_quadratic
        return phi1 * phi1 - 4 * phi0 * phi2

    # --- RC engine ---

    def conjugate(self, point: ProjPoint) -> ProjPoint:
        m = self.recover_params(point)
        phi = self.reduce_to_quadratic(m)
        b1, b2 = second_root(phi, (Fraction(point[0]), Fraction(point[1])))
        c3, d3 = _numeric_map(self.spec.sub_x3, m)
        c4, d4 = _numeric_map(self.spec.sub_x4, m)
        x3, x4 = c3 * b1 + d3 * b2, c4 * b1 + d4 * b2
        if x3 == 0 and x4 == 0:
            raise DegeneratePointError(f"{self.name}: conjugate of {point} has x3 = x4 = 0")
        conjugate = normalize([b1, b2, x3, x4])
        if conjugate == point:
            logger.warning(f"{self.name}: {point} is self-conjugate")
        return conjugate

    def witness(self, point: ProjPoint) -> Witness:
        return self.discriminant_witness(point)

    def discriminant_witness(self, point: ProjPoint) -> Witness:
        """Multipliers of the point and the root of the reduced discriminant, over the witness divisor."""
        m = self.recover_params(point)
        disc = discriminant(self.reduce_to_quadratic(m))
        root = rational_sqrt(disc)
        if root is None:
            raise NotASquareError(f"{self.name}: discriminant {disc} at {point} is not a square")
        z = root
        if self.spec.witness_divisor is not None:
            w = self.spec.witness_divisor.evaluate(m)
            if w == 0:
                raise DegeneratePointError(f"{self.name}: witness divisor vanishes at m = {m}")
            z = root / abs(w)
        return Witness(m=tuple(m), z=z, aux={"discriminant": disc})

    def conserved(self, point: ProjPoint) -> Fraction | None:
        if self.spec.conserved_ratio is None:
            return None
        top, bottom = self.spec.conserved_ratio
        den = bottom.evaluate(point.coords)
        if den == 0:
            raise DegeneratePointError(f"{self.name}: conserved ratio undefined at {point}")
        return top.evaluate(point.coords) / den

    def check_step(self, previous: ProjPoint, current: ProjPoint) -> None:
        if self.spec.conserved_ratio is None:
            return
        before, after = self.conserved(previous), self.conserved(current)
        if before != after:
            raise InvariantViolationError(
                f"{self.name}: conserved ratio changed from {before} to {after}"
            )
