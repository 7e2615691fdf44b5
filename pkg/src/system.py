from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from loguru import logger

import config
from errors import (
    DegeneratePointError,
    FormShapeError,
    InvariantViolationError,
    NotASquareError,
    ParametricDegeneracyError,
)
from exactpoly import MultiPoly, collect_binary_quadratic
from numberfield import FieldSpec, multiply_coords, recover_multiplier
from point import ProjPoint, normalize
from quadratic import discriminant, rational_sqrt, second_root
from reflection import Reflection
from variety import Variety, Witness

X12 = ("x1", "x2")

WitnessCheck = Callable[["System", tuple[Fraction, ...], Fraction], dict[str, Fraction]]


@dataclass(frozen=True)
class SystemSpec:
    """
    A variety in x1..x(2n): one main form, linear constraints, an x-block and
    an x'-block tied by x' = m x in a ring Q[t]/(p(t)), a reflection and the
    binary factor removed after substitution.
    """

    name: str
    field: FieldSpec
    vars: tuple[str, ...]
    x_block: tuple[int, ...]
    xp_block: tuple[int, ...]
    main_form: MultiPoly
    reflection: Reflection
    removable: MultiPoly
    removable_power: int = 1
    constraints: tuple[MultiPoly, ...] = ()
    extra_forms: tuple[MultiPoly, ...] = ()
    seed: ProjPoint | None = None
    ratio_form: MultiPoly | None = None
    ratio_name: str | None = None
    display_indices: tuple[int, ...] | None = None
    witness_divisor: Fraction = Fraction(1)
    witness_checks: WitnessCheck | None = field(default=None, compare=False)
    h: Fraction | None = None

    @property
    def num_vars(self) -> int:
        return len(self.vars)


def eliminate(constraints: Sequence[MultiPoly], vars: Sequence[str]) -> dict[str, MultiPoly]:
    """
    Solve linear constraints one at a time for their highest-index variable.
    Returns each eliminated variable as a form in the remaining ones.
    """
    vars = tuple(vars)
    solved: dict[str, MultiPoly] = {}
    for constraint in constraints:
        if not constraint.is_homogeneous(1):
            raise FormShapeError(f"constraint {constraint} is not a linear form")
        reduced = constraint.substitute(solved, vars) if solved else constraint
        if not reduced:
            raise FormShapeError(f"constraint {constraint} depends on the earlier ones")
        pivot = reduced.used_variables()[-1]
        coeff = reduced.coefficient(**{pivot: 1})
        expr = MultiPoly.variable(pivot, vars) - (1 / coeff) * reduced
        solved = {k: v.substitute({pivot: expr}, vars) for k, v in solved.items()}
        solved[pivot] = expr
    return solved


class System(Variety):
    """RC/CR engine for the norm-form systems."""

    def __init__(self, spec: SystemSpec, check: bool = True) -> None:
        super().__init__(spec.name, spec.reflection, spec.seed)
        self.spec = spec
        self.n = spec.field.degree
        self.x_names = tuple(spec.vars[i] for i in spec.x_block)
        self.xp_names = tuple(spec.vars[i] for i in spec.xp_block)
        self.eliminated = eliminate(spec.constraints, spec.vars)
        self.block_forms = self._block_forms()
        self.divisor = spec.removable**spec.removable_power
        if check:
            self.check()

    def _block_forms(self) -> tuple[MultiPoly, ...]:
        """The x-block as forms in (x1, x2) once the constraints hold."""
        spec = self.spec
        if len(spec.x_block) != self.n or len(spec.xp_block) != self.n:
            raise FormShapeError(f"{spec.name}: blocks must have {self.n} coordinates")
        if sorted(spec.x_block + spec.xp_block) != list(range(spec.num_vars)):
            raise FormShapeError(f"{spec.name}: the two blocks must cover every coordinate")
        if self.x_names[:2] != X12:
            raise FormShapeError(f"{spec.name}: the x-block must start with x1, x2")
        for name in self.eliminated:
            if name in self.xp_names:
                raise FormShapeError(f"{spec.name}: constraints may not fix x'-block coordinate {name}")
        forms = []
        for name in self.x_names:
            expr = self.eliminated.get(name, MultiPoly.variable(name, spec.vars))
            extra = [v for v in expr.used_variables() if v not in X12]
            if extra:
                raise FormShapeError(
                    f"{spec.name}: {name} depends on {extra} after the constraints"
                )
            forms.append(expr.embed(X12))
        return tuple(forms)

    def check(self) -> None:
        """Shape checks, exact divisibility at sampled multipliers, and the seed."""
        spec = self.spec
        if not spec.main_form or not spec.main_form.is_homogeneous():
            raise FormShapeError(f"{spec.name}: main form must be a nonzero form")
        for form in spec.extra_forms:
            if not form.is_homogeneous():
                raise FormShapeError(f"{spec.name}: extra form {form} is not homogeneous")
        if spec.reflection.size != spec.num_vars:
            raise FormShapeError(f"{spec.name}: reflection acts on {spec.reflection.size} coordinates")
        lead = self.divisor.total_degree
        if self.divisor.vars != X12 or self.divisor.coefficient(x1=lead) != 1:
            raise FormShapeError(f"{spec.name}: removable factor must be monic in x1")
        rng = random.Random(config.RANDOM_SEED)
        for _ in range(config.BUILD_CHECK_SAMPLES):
            m = [
                Fraction(
                    rng.randint(-config.RANDOM_NUMERATOR_BOUND, config.RANDOM_NUMERATOR_BOUND),
                    rng.randint(1, config.RANDOM_DENOMINATOR_BOUND),
                )
                for _ in range(self.n)
            ]
            try:
                self.sys_reduce(m)
            except ParametricDegeneracyError:
                logger.warning(f"{spec.name}: build sample m={m} is degenerate, skipped")
        if spec.seed is not None:
            self.require(spec.seed)
            self.require(self.reflect(spec.seed))
            self.sys_reduce(self.sys_recover(spec.seed))
        logger.info(f"built system {spec.name} in {spec.num_vars} variables")

    # --- Membership ---

    def verify(self, point: ProjPoint) -> bool:
        spec = self.spec
        if len(point) != spec.num_vars:
            return False
        if (point[0], point[1]) == (0, 0) or not any(point.pick(spec.xp_block)):
            return False
        coords = point.coords
        if any(c.evaluate(coords) != 0 for c in spec.constraints):
            return False
        if any(f.evaluate(coords) != 0 for f in spec.extra_forms):
            return False
        return spec.main_form.evaluate(coords) == 0

    def display(self, point: ProjPoint) -> tuple[int, ...]:
        if self.spec.display_indices is None:
            return point.coords
        return point.pick(self.spec.display_indices)

    # --- Multipliers and reduction ---

    def sys_recover(self, point: ProjPoint) -> tuple[Fraction, ...]:
        x = [Fraction(v) for v in point.pick(self.spec.x_block)]
        xp = [Fraction(v) for v in point.pick(self.spec.xp_block)]
        m = recover_multiplier(x, xp, self.spec.field)
        return tuple(m.coords)

    def _assignments(self, m: Sequence[Fraction]) -> dict[str, MultiPoly]:
        images = multiply_coords(list(m), list(self.block_forms), self.spec.field)
        assignments = {
            name: MultiPoly.zero(X12) + image for name, image in zip(self.xp_names, images)
        }
        for name, form in zip(self.x_names, self.block_forms):
            if name not in X12:
                assignments[name] = form
        return assignments

    def sys_reduce(self, m: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
        substituted = self.spec.main_form.substitute(self._assignments(m), X12)
        reduced = substituted.exact_div(self.divisor, "x1")
        phi = collect_binary_quadratic(reduced)
        if not any(phi):
            raise ParametricDegeneracyError(
                f"{self.name}: reduced quadratic vanishes identically at m = {tuple(m)}"
            )
        logger.debug(f"{self.name}: phi at m={tuple(m)} is {phi}")
        return phi

    def reduce_to_quadratic(self, m: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
        return self.sys_reduce(m)

    # --- RC engine ---

    def conjugate(self, point: ProjPoint) -> ProjPoint:
        m = self.sys_recover(point)
        b1, b2 = second_root(self.sys_reduce(m), (Fraction(point[0]), Fraction(point[1])))
        x = [form.evaluate((b1, b2)) for form in self.block_forms]
        xp = multiply_coords(list(m), x, self.spec.field)
        coords: list[Fraction] = [Fraction(0)] * self.spec.num_vars
        for i, v in zip(self.spec.x_block, x):
            coords[i] = v
        for i, v in zip(self.spec.xp_block, xp):
            coords[i] = Fraction(v)
        if not any(xp):
            raise DegeneratePointError(f"{self.name}: conjugate of {point} has a zero x'-block")
        conjugate = normalize(coords)
        if conjugate == point:
            logger.warning(f"{self.name}: {point} is self-conjugate")
        return conjugate

    def sys_conjugate(self, point: ProjPoint) -> ProjPoint:
        return self.conjugate(point)

    def sys_reflect(self, point: ProjPoint) -> ProjPoint:
        return self.reflect(point)

    def sys_rc_step(self, point: ProjPoint) -> ProjPoint:
        return self.rc_step(point)

    # --- Invariants and witnesses ---

    def ratio_invariant(self, point: ProjPoint) -> Fraction:
        form = self.spec.ratio_form
        if form is None:
            raise FormShapeError(f"{self.name} tracks no ratio form")
        den = form.evaluate(point.pick(self.spec.x_block))
        if den == 0:
            raise DegeneratePointError(f"{self.name}: {self.spec.ratio_name} vanishes on the x-block of {point}")
        return form.evaluate(point.pick(self.spec.xp_block)) / den

    def check_step(self, previous: ProjPoint, current: ProjPoint) -> None:
        if self.spec.ratio_form is None:
            return
        before, after = self.ratio_invariant(previous), self.ratio_invariant(current)
        if before != after:
            raise InvariantViolationError(
                f"{self.name}: {self.spec.ratio_name} ratio changed from {before} to {after}"
            )

    def witness(self, point: ProjPoint) -> Witness:
        m = self.sys_recover(point)
        disc = discriminant(self.sys_reduce(m))
        root = rational_sqrt(disc)
        if root is None:
            raise NotASquareError(f"{self.name}: discriminant {disc} at {point} is not a square")
        z = root / self.spec.witness_divisor
        aux: dict[str, Fraction] = {}
        if self.spec.witness_checks is not None:
            aux = self.spec.witness_checks(self, m, z)
        return Witness(m=m, z=z, aux=aux)

    def m_witness(self, point: ProjPoint) -> Witness:
        return self.witness(point)
