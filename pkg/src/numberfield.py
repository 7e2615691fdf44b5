from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from loguru import logger
from sympy import Poly, Rational, Symbol
from sympy.polys.domains import QQ

import config
from errors import DegeneratePointError, FormShapeError, VariableMismatchError
from exactpoly import MultiPoly
from linalg import adjugate, determinant, mat_vec, solve

Coefficient = int | Fraction | MultiPoly


@dataclass(frozen=True)
class FieldSpec:
    """
    The ring Q[t]/(t^n + p1 t^(n-1) + ... + pn) in the power basis
    1, rho, ..., rho^(n-1).

    Coefficients are rationals for orbit work or polynomials in parameter
    variables for symbolic identity checks.
    """

    coefficients: tuple[Coefficient, ...]
    name: str = "field"
    screen: bool = True

    def __post_init__(self) -> None:
        if len(self.coefficients) < 2:
            raise FormShapeError("the modulus must have degree at least 2")
        if self.screen and self.is_rational:
            roots = self.rational_roots()
            if roots:
                raise ValueError(f"modulus of {self.name} has rational root {roots[0]}")

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    @property
    def is_rational(self) -> bool:
        return not any(isinstance(c, MultiPoly) for c in self.coefficients)

    def rational_roots(self) -> list[Fraction]:
        """Rational roots of the modulus, from its linear factors over QQ."""
        if not self.is_rational:
            raise FormShapeError("rational root screen needs rational coefficients")
        coeffs = [Fraction(1)] + [Fraction(c) for c in self.coefficients]
        modulus = Poly([Rational(c.numerator, c.denominator) for c in coeffs], Symbol("t"), domain=QQ)
        return sorted(Fraction(int(r.p), int(r.q)) for r in modulus.ground_roots())

    @cached_property
    def power_table(self) -> list[list[Coefficient]]:
        """Coordinates of rho^k for k < 2n - 1."""
        n = self.degree
        table: list[list[Coefficient]] = []
        for k in range(n):
            table.append([Fraction(int(i == k)) for i in range(n)])
        # rho^n = -(p1 rho^(n-1) + ... + pn)
        reduction = [-self.coefficients[n - 1 - i] for i in range(n)]
        for _ in range(n, 2 * n - 1):
            previous = table[-1]
            top = previous[n - 1]
            shifted = [Fraction(0)] + previous[: n - 1]
            table.append([s + top * r for s, r in zip(shifted, reduction)])
        return table


@dataclass(frozen=True)
class RingElement:
    coords: tuple[Coefficient, ...]
    field: FieldSpec

    def __post_init__(self) -> None:
        if len(self.coords) != self.field.degree:
            raise ValueError(
                f"{self.field.name} elements have {self.field.degree} coordinates, got {len(self.coords)}"
            )

    def __mul__(self, other: RingElement) -> RingElement:
        return ring_mul(self, other, self.field)

    def norm(self) -> Coefficient:
        return norm(self, self.field)


def _coords(element: RingElement | Sequence[Coefficient]) -> tuple[Coefficient, ...]:
    if isinstance(element, RingElement):
        return element.coords
    return tuple(element)


def multiply_coords(
    a: Sequence[Coefficient], b: Sequence[Coefficient], f: FieldSpec
) -> tuple[Coefficient, ...]:
    n = f.degree
    if len(a) != n or len(b) != n:
        raise ValueError(f"{f.name} elements have {n} coordinates")
    table = f.power_table
    out: list[Coefficient] = [Fraction(0)] * n
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            product = ai * bj
            for k, c in enumerate(table[i + j]):
                if c != 0:
                    out[k] = c * product + out[k]
    return tuple(out)


def ring_mul(a: RingElement, b: RingElement, f: FieldSpec) -> RingElement:
    if a.field != f or b.field != f:
        raise ValueError("ring elements belong to different fields")
    return RingElement(multiply_coords(a.coords, b.coords, f), f)


def multiplication_matrix(
    x: RingElement | Sequence[Coefficient], f: FieldSpec
) -> list[list[Coefficient]]:
    """Column j holds the coordinates of x * rho^j, so (x m) = M m."""
    coords = _coords(x)
    n = f.degree
    columns = [multiply_coords(coords, f.power_table[j], f) for j in range(n)]
    return [[columns[j][i] for j in range(n)] for i in range(n)]


def norm(a: RingElement | Sequence[Coefficient], f: FieldSpec) -> Coefficient:
    return determinant(multiplication_matrix(a, f))


def recover_multiplier(
    x: RingElement | Sequence[Fraction],
    xprime: RingElement | Sequence[Fraction],
    f: FieldSpec,
) -> RingElement:
    """The unique m with m * x = x'."""
    matrix = multiplication_matrix(x, f)
    if determinant(matrix) == 0:
        raise DegeneratePointError(
            f"multiplier undefined: degenerate point, norm of {_coords(x)} is 0"
        )
    m = solve(matrix, [Fraction(v) for v in _coords(xprime)])
    logger.debug(f"recovered multiplier {m}")
    return RingElement(tuple(m), f)


def _generic(f: FieldSpec, names: Sequence[str], vars: Sequence[str] | None):
    vars = tuple(vars) if vars is not None else tuple(names)
    for c in f.coefficients:
        if isinstance(c, MultiPoly) and c.vars != vars:
            raise VariableMismatchError(
                f"field coefficients live over {c.vars}, forms requested over {vars}"
            )
    return [MultiPoly.variable(v, vars) for v in names], vars


def norm_form_symbolic(
    f: FieldSpec, varnames: Sequence[str], vars: Sequence[str] | None = None
) -> MultiPoly:
    """N(x1 + x2 rho + ... + xn rho^(n-1)) as a form in ``varnames``."""
    if f.degree > config.MAX_NORM_DEGREE:
        raise FormShapeError(
            f"symbolic norms are limited to degree {config.MAX_NORM_DEGREE}, got {f.degree}"
        )
    if len(varnames) != f.degree:
        raise ValueError(f"need {f.degree} variable names")
    element, vars = _generic(f, varnames, vars)
    return MultiPoly.zero(vars) + norm(element, f)


def bilinear_maps(
    f: FieldSpec,
    m_names: Sequence[str],
    x_names: Sequence[str],
    vars: Sequence[str] | None = None,
) -> tuple[MultiPoly, ...]:
    """Coordinates of m * x for generic m and x."""
    vars = tuple(vars) if vars is not None else tuple(m_names) + tuple(x_names)
    m, _ = _generic(f, m_names, vars)
    x, _ = _generic(f, x_names, vars)
    return tuple(MultiPoly.zero(vars) + c for c in multiply_coords(m, x, f))


def adjugate_forms(
    f: FieldSpec,
    x_names: Sequence[str],
    xp_names: Sequence[str],
    vars: Sequence[str] | None = None,
) -> tuple[MultiPoly, ...]:
    """G = adj(M(x)) x', so that G_j = m_j N(x) whenever x' = m x."""
    vars = tuple(vars) if vars is not None else tuple(x_names) + tuple(xp_names)
    x, _ = _generic(f, x_names, vars)
    xp, _ = _generic(f, xp_names, vars)
    adj = adjugate(multiplication_matrix(x, f))
    return tuple(MultiPoly.zero(vars) + c for c in mat_vec(adj, xp))
