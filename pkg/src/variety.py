from __future__ import annotations

from abc import abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING

from loguru import logger

import config
from errors import DegeneratePointError, InvariantViolationError

if TYPE_CHECKING:
    from point import ProjPoint
    from reflection import Reflection


class Op(Enum):
    RC = "RC"
    CR = "CR"


@dataclass(frozen=True)
class Witness:
    """Multiplier m of a point and the square root z of the reduced discriminant."""

    m: tuple[Fraction, ...]
    z: Fraction
    aux: dict[str, Fraction] = field(default_factory=dict, compare=False)


@dataclass
class Orbit:
    start: ProjPoint
    op: Op
    points: list[ProjPoint]
    period: int | None = None
    stopped: str | None = None

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    @property
    def max_digits(self) -> int:
        return max(p.digits for p in self.points)


class Variety:
    """
    Abstract base class for the equations and systems the RC/CR engine runs on.

    Subclasses provide membership, the conjugate map and the witness; the
    reflection, the composite steps and orbit generation live here.
    """

    def __init__(self, name: str, reflection: Reflection, seed: ProjPoint | None) -> None:
        self.name = name
        self.reflection = reflection
        self.seed = seed

    @abstractmethod
    def verify(self, point: ProjPoint) -> bool:
        raise NotImplementedError

    @abstractmethod
    def conjugate(self, point: ProjPoint) -> ProjPoint:
        raise NotImplementedError

    @abstractmethod
    def witness(self, point: ProjPoint) -> Witness:
        raise NotImplementedError

    def check_step(self, previous: ProjPoint, current: ProjPoint) -> None:
        """Hook for invariants that must agree between consecutive orbit points."""

    def require(self, point: ProjPoint) -> None:
        if not self.verify(point):
            raise InvariantViolationError(f"{point} is not a point of {self.name}")

    def reflect(self, point: ProjPoint) -> ProjPoint:
        return self.reflection(point)

    def rc_step(self, point: ProjPoint) -> ProjPoint:
        return self.reflect(self.conjugate(point))

    def cr_step(self, point: ProjPoint) -> ProjPoint:
        return self.conjugate(self.reflect(point))

    def rc_inverse_step(self, point: ProjPoint) -> ProjPoint:
        """Inverse of rc_step, also for reflections that are not involutions."""
        return self.conjugate(self.reflection.inverse()(point))

    def step(self, point: ProjPoint, op: Op) -> ProjPoint:
        if op is Op.RC:
            return self.rc_step(point)
        return self.cr_step(point)

    def is_self_conjugate(self, point: ProjPoint) -> bool:
        return self.conjugate(point) == point

    def is_invariant(self, point: ProjPoint) -> bool:
        return self.reflect(point) == point

    def generate_sequence(
        self,
        start: ProjPoint,
        op: Op = Op.RC,
        steps: int = config.DEFAULT_STEPS,
    ) -> Orbit:
        """
        Apply ``op`` up to ``steps`` times, verifying every new point.

        Stops early with the period when a point repeats, or with a
        diagnostic when a degenerate point is reached.
        """
        if steps < 0:
            raise ValueError("steps must be nonnegative")
        self.require(start)
        orbit = Orbit(start=start, op=op, points=[start])
        seen = {start: 0}
        current = start
        for index in range(1, steps + 1):
            try:
                following = self.step(current, op)
            except DegeneratePointError as err:
                logger.warning(f"{self.name}: orbit stopped after {index - 1} steps: {err}")
                orbit.stopped = str(err)
                break
            self.require(following)
            self.check_step(current, following)
            if following in seen:
                orbit.period = index - seen[following]
                logger.info(f"{self.name}: {op.value} orbit closes with period {orbit.period}")
                break
            seen[following] = index
            orbit.points.append(following)
            logger.debug(f"{self.name}: step {index} -> {following}")
            current = following
        else:
            logger.info(
                f"{self.name}: {op.value} orbit ran {steps} steps without repeat, "
                f"largest coordinate has {orbit.max_digits} digits"
            )
        return orbit

    def order(self, start: ProjPoint, op: Op = Op.RC, max_steps: int = config.MAX_ORBIT_STEPS) -> int | None:
        return self.generate_sequence(start, op, max_steps).period
