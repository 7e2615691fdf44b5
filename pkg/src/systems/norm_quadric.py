from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from loguru import logger

from errors import FormShapeError
from exactpoly import MultiPoly, symbols_of
from numberfield import FieldSpec, norm_form_symbolic
from point import ProjPoint
from reflection import Reflection
from system import SystemSpec

Scalar = int | Fraction


def block_norm(psi: MultiPoly, names: Sequence[str], vars: Sequence[str]) -> MultiPoly:
    """A norm form over y1..yn rewritten in the given block of ``vars``."""
    images = {y: MultiPoly.variable(x, vars) for y, x in zip(psi.vars, names)}
    return psi.substitute(images, vars)


def build_norm_quadric_system(
    field: FieldSpec,
    a: tuple[Scalar, Scalar],
    b: Sequence[Scalar],
    name: str = "norm-quadric",
    seed: ProjPoint | None = None,
    display_indices: tuple[int, ...] | None = None,
) -> SystemSpec:
    """
    psi(x) (a1 x1^2 + a2 x2^2) + psi(x') (b1 x'1^2 + ... + bn x'n^2) = 0 with
    x3 = ... = xn = 0, where psi is the norm form of ``field`` and x' = m x.

    With an even modulus the roots pair up as +-rho, so psi(x1, x2, 0, ..., 0)
    is even in x1 and negating x1 maps the constrained variety to itself.
    """
    n = field.degree
    if n % 2:
        raise FormShapeError(f"{name}: the modulus must have even degree, got {n}")
    if any(field.coefficients[j] != 0 for j in range(0, n, 2)):
        raise FormShapeError(f"{name}: the modulus must only contain even powers of t")
    if len(b) != n:
        raise FormShapeError(f"{name}: need {n} weights b, got {len(b)}")

    vars = symbols_of(2 * n, "x")
    x_names, xp_names = vars[:n], vars[n:]
    psi = norm_form_symbolic(field, symbols_of(n, "y"))
    psi_x = block_norm(psi, x_names, vars)
    psi_xp = block_norm(psi, xp_names, vars)

    gens = MultiPoly.variables(vars)
    left = a[0] * gens[0] * gens[0] + a[1] * gens[1] * gens[1]
    right = MultiPoly.zero(vars)
    for weight, g in zip(b, gens[n:]):
        if weight:
            right = right + weight * g * g

    edge = psi.specialize(**{y: 0 for y in psi.vars[2:]})
    removable = block_norm(edge, ("x1", "x2"), ("x1", "x2"))
    logger.debug(f"{name}: norm-quadric system over a degree {n} field, removable {removable}")
    return SystemSpec(
        name=name,
        field=field,
        vars=vars,
        x_block=tuple(range(n)),
        xp_block=tuple(range(n, 2 * n)),
        main_form=psi_x * left + psi_xp * right,
        reflection=Reflection.negate(0, 2 * n),
        removable=removable,
        constraints=tuple(MultiPoly.variable(v, vars) for v in x_names[2:]),
        seed=seed,
        ratio_form=psi,
        ratio_name="psi",
        display_indices=display_indices,
    )


def octic_system(seed: ProjPoint | None = None) -> SystemSpec:
    """rho^6 = -2, (x1^6 + 2 x2^6)(-x1^2 + 33 x2^2) = psi(x')(x7^2 + ... + x11^2 + 3 x12^2)."""
    field = FieldSpec((0, 0, 0, 0, 0, 2), name="t^6 + 2")
    return build_norm_quadric_system(
        field,
        a=(-1, 33),
        b=(-1, -1, -1, -1, -1, -3),
        name="octic-x6p2",
        seed=seed,
        display_indices=(0, 1, 6, 7, 8, 9, 10, 11),
    )
