from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from errors import DegeneratePointError

Scalar = int | Fraction


@dataclass(frozen=True, slots=True)
class ProjPoint:
    """
    Canonical representative of a projective point: primitive integer
    coordinates, not all zero, first nonzero entry positive.
    """

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if not any(self.coords):
            raise DegeneratePointError("a projective point cannot be all zero")
        if math.gcd(*self.coords) != 1:
            raise ValueError(f"{self.coords} is not primitive, use normalize()")
        if next(c for c in self.coords if c) < 0:
            raise ValueError(f"{self.coords} is not sign-normalized, use normalize()")

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> int:
        return self.coords[index]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coords)

    @property
    def digits(self) -> int:
        return len(str(self.height))

    def pick(self, indices: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.coords[i] for i in indices)


def normalize(raw: Sequence[Scalar]) -> ProjPoint:
    """Scale a rational tuple to its canonical primitive integer representative."""
    values = [Fraction(v) for v in raw]
    if not any(values):
        raise DegeneratePointError("cannot normalize the zero tuple")
    scale = math.lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    if next(c for c in ints if c) < 0:
        ints = [-c for c in ints]
    return ProjPoint(tuple(ints))


def negate_coords(point: ProjPoint, indices: Iterable[int]) -> ProjPoint:
    """Flip the sign of the given coordinates and renormalize."""
    flipped = list(point.coords)
    for i in indices:
        flipped[i] = -flipped[i]
    return normalize(flipped)


_SPLIT = re.compile(r"[\s,]+")


def parse_coords(text: str) -> list[Fraction]:
    """Read ``(1, -2, 3/4)`` style tuples; raises ValueError when malformed."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p for p in _SPLIT.split(body.strip()) if p]
    if not parts:
        raise ValueError(f"no coordinates in {text!r}")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"malformed point {text!r}") from err
