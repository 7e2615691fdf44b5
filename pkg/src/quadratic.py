from __future__ import annotations

from fractions import Fraction

from loguru import logger
from sympy import integer_nthroot

from errors import InvariantViolationError

Triple = tuple[Fraction, Fraction, Fraction]


def discriminant(phi: Triple) -> Fraction:
    phi0, phi1, phi2 = phi
    return phi1 * phi1 - 4 * phi0 * phi2


def evaluate(phi: Triple, root: tuple[Fraction, Fraction]) -> Fraction:
    phi0, phi1, phi2 = phi
    a1, a2 = root
    return phi0 * a1 * a1 + phi1 * a1 * a2 + phi2 * a2 * a2


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact nonnegative square root of a rational, or None."""
    value = Fraction(value)
    if value < 0:
        return None
    rn, exact_num = integer_nthroot(value.numerator, 2)
    rd, exact_den = integer_nthroot(value.denominator, 2)
    if not (exact_num and exact_den):
        return None
    return Fraction(int(rn), int(rd))


def second_root(phi: Triple, known: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    """
    Other projective root (b1 : b2) of phi0 x1^2 + phi1 x1 x2 + phi2 x2^2
    given the root (a1 : a2). A double root comes back unchanged.
    """
    phi0, phi1, phi2 = phi
    a1, a2 = Fraction(known[0]), Fraction(known[1])
    if a1 == 0 and a2 == 0:
        raise InvariantViolationError("known root (0 : 0) is not a projective point")
    if evaluate(phi, (a1, a2)) != 0:
        raise InvariantViolationError(
            f"({a1} : {a2}) is not a root of the reduced quadratic {phi}"
        )
    if phi0 == 0:
        # roots (1 : 0) and (-phi2 : phi1)
        if a2 == 0:
            if phi1 == 0:
                return a1, a2
            return -phi2, phi1
        return Fraction(1), Fraction(0)
    if a1 == 0:
        # phi2 = 0, the form is x1 (phi0 x1 + phi1 x2)
        return -phi1, phi0
    if discriminant(phi) == 0:
        logger.debug(f"double root at ({a1} : {a2})")
    return phi2 * a2, phi0 * a1
