from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from errors import InvariantViolationError
from exactpoly import MultiPoly
from linalg import identity, inverse, mat_mul, mat_vec
from point import ProjPoint, normalize

Scalar = int | Fraction


@dataclass(frozen=True)
class Reflection:
    """
    Invertible rational linear map on coordinates with
    form(R x) = scale * form(x) for the form it belongs to.
    """

    matrix: tuple[tuple[Fraction, ...], ...]
    name: str = "reflection"
    scale: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        size = len(self.matrix)
        if any(len(row) != size for row in self.matrix):
            raise ValueError("reflection matrix must be square")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Scalar]], name: str = "reflection", scale: Scalar = 1
    ) -> Reflection:
        return cls(
            tuple(tuple(Fraction(e) for e in row) for row in rows), name, Fraction(scale)
        )

    @classmethod
    def negate(cls, index: int, size: int) -> Reflection:
        rows = identity(size)
        rows[index][index] = Fraction(-1)
        return cls.from_rows(rows, name=f"negate x{index + 1}")

    @classmethod
    def swap_scaled(cls, factor: Scalar = 2) -> Reflection:
        """(x1, x2, x3, x4) -> (c x3, c x4, x1, x2), a symmetry of F(x1,x2) + c^2 F(x3,x4)."""
        c = Fraction(factor)
        rows = [
            [0, 0, c, 0],
            [0, 0, 0, c],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
        ]
        return cls.from_rows(rows, name="swap with scaling", scale=c * c)

    @classmethod
    def block(
        cls,
        block: Sequence[Sequence[Scalar]],
        size: int,
        offset: int = 0,
        name: str = "block map",
    ) -> Reflection:
        """Identity on every coordinate except a square block starting at ``offset``."""
        rows = identity(size)
        for i, row in enumerate(block):
            for j, value in enumerate(row):
                rows[offset + i][offset + j] = Fraction(value)
        return cls.from_rows(rows, name=name)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def apply(self, coords: Sequence[Scalar]) -> list[Fraction]:
        if len(coords) != self.size:
            raise ValueError(f"expected {self.size} coordinates, got {len(coords)}")
        return [Fraction(v) for v in mat_vec(self.matrix, [Fraction(c) for c in coords])]

    def __call__(self, point: ProjPoint) -> ProjPoint:
        return normalize(self.apply(point.coords))

    def inverse(self) -> Reflection:
        return Reflection(
            tuple(tuple(row) for row in inverse(self.matrix)),
            f"{self.name} inverse",
            1 / self.scale,
        )

    def compose(self, other: Reflection) -> Reflection:
        """self after other."""
        rows = mat_mul(self.matrix, other.matrix)
        return Reflection.from_rows(
            rows, f"{self.name} * {other.name}", self.scale * other.scale
        )

    def order(self, limit: int = 12) -> int | None:
        """Least k with R^k a scalar matrix (projective order), None above ``limit``."""
        power = self
        for k in range(1, limit + 1):
            if _is_scalar(power.matrix):
                return k
            power = self.compose(power)
        return None

    def is_involution(self) -> bool:
        return self.order(2) in (1, 2)

    def transformed(self, form: MultiPoly, names: Sequence[str] | None = None) -> MultiPoly:
        """form(R x) for a form over ``names`` (defaults to its first variables)."""
        names = tuple(names) if names is not None else form.vars[: self.size]
        if len(names) != self.size:
            raise ValueError(f"need {self.size} variable names, got {len(names)}")
        gens = [MultiPoly.variable(v, form.vars) for v in names]
        images = {}
        for name, row in zip(names, self.matrix):
            image = MultiPoly.zero(form.vars)
            for coeff, g in zip(row, gens):
                if coeff:
                    image = image + coeff * g
            images[name] = image
        return form.substitute(images, form.vars)

    def check_form(self, form: MultiPoly, names: Sequence[str] | None = None) -> None:
        """Raise unless form(R x) = scale * form(x) identically."""
        if self.transformed(form, names) != self.scale * form:
            raise InvariantViolationError(
                f"{self.name} does not map the form to {self.scale} times itself"
            )


def _is_scalar(rows: Sequence[Sequence[Fraction]]) -> bool:
    c = rows[0][0]
    if c == 0:
        return False
    return all(e == (c if i == j else 0) for i, row in enumerate(rows) for j, e in enumerate(row))
