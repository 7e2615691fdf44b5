from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction
from functools import lru_cache

from sympy import Rational, Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from errors import DivisionRemainderError, FormShapeError, VariableMismatchError

Scalar = int | Fraction
Monomial = tuple[int, ...]

_PARSE_TRANSFORMATIONS = standard_transformations + (convert_xor,)


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...]) -> PolyRing:
    """Graded lex ring over QQ, first declared variable highest."""
    return PolyRing(names, QQ, grlex)


def to_qq(value: Scalar):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class MultiPoly:
    """
    Sparse multivariate polynomial with rational coefficients over an ordered
    list of variable names.

    Values are immutable. Arithmetic between polynomials requires identical
    variable lists; ints and Fractions mix in freely as constants.
    """

    __slots__ = ("vars", "poly")

    def __init__(self, vars: Sequence[str], poly: PolyElement | None = None) -> None:
        self.vars: tuple[str, ...] = tuple(vars)
        ring = poly_ring(self.vars)
        self.poly: PolyElement = ring.zero if poly is None else poly

    # --- Construction ---

    @property
    def ring(self) -> PolyRing:
        return poly_ring(self.vars)

    @classmethod
    def zero(cls, vars: Sequence[str]) -> MultiPoly:
        return cls(vars)

    @classmethod
    def constant(cls, value: Scalar, vars: Sequence[str]) -> MultiPoly:
        vars = tuple(vars)
        return cls(vars, poly_ring(vars).ground_new(to_qq(value)))

    @classmethod
    def variable(cls, name: str, vars: Sequence[str]) -> MultiPoly:
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatchError(f"{name!r} is not one of {vars}")
        return cls(vars, poly_ring(vars).gens[vars.index(name)])

    @classmethod
    def variables(cls, vars: Sequence[str]) -> tuple[MultiPoly, ...]:
        vars = tuple(vars)
        return tuple(cls(vars, g) for g in poly_ring(vars).gens)

    @classmethod
    def from_terms(
        cls, vars: Sequence[str], terms: Mapping[Monomial, Scalar]
    ) -> MultiPoly:
        vars = tuple(vars)
        for monom in terms:
            if len(monom) != len(vars):
                raise VariableMismatchError(
                    f"monomial {monom} does not match {len(vars)} variables"
                )
        ring = poly_ring(vars)
        return cls(vars, ring.from_dict({m: to_qq(c) for m, c in terms.items()}))

    @classmethod
    def parse(cls, text: str, vars: Sequence[str], **values: Scalar) -> MultiPoly:
        """
        Parse a polynomial written with ``+ - * ^ **`` and parentheses.
        Names passed as keyword arguments are replaced by their rational values.
        """
        vars = tuple(vars)
        local: dict[str, object] = {name: Symbol(name) for name in vars}
        for name, value in values.items():
            value = Fraction(value)
            local[name] = Rational(value.numerator, value.denominator)
        expr = parse_expr(text, local_dict=local, transformations=_PARSE_TRANSFORMATIONS)
        try:
            poly = poly_ring(vars).from_expr(expr)
        except ValueError as err:
            raise VariableMismatchError(
                f"cannot read {text[:40]!r} as a polynomial in {vars}"
            ) from err
        return cls(vars, poly)

    # --- Arithmetic ---

    def _lift(self, other: object) -> PolyElement | None:
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(
                    f"variable lists differ: {self.vars} vs {other.vars}"
                )
            return other.poly
        if isinstance(other, (int, Fraction)):
            return self.ring.ground_new(to_qq(other))
        return None

    def __add__(self, other: MultiPoly | Scalar) -> MultiPoly:
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return MultiPoly(self.vars, self.poly + p)

    __radd__ = __add__

    def __sub__(self, other: MultiPoly | Scalar) -> MultiPoly:
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return MultiPoly(self.vars, self.poly - p)

    def __rsub__(self, other: Scalar) -> MultiPoly:
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return MultiPoly(self.vars, p - self.poly)

    def __mul__(self, other: MultiPoly | Scalar) -> MultiPoly:
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return MultiPoly(self.vars, self.poly * p)

    __rmul__ = __mul__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.vars, -self.poly)

    def __pow__(self, exponent: int) -> MultiPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return MultiPoly(self.vars, self.poly**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.poly == other.poly
        if isinstance(other, (int, Fraction)):
            return self.poly == self.ring.ground_new(to_qq(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms().items())))

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"MultiPoly({self.vars}, {self.poly})"

    # --- Inspection ---

    def terms(self) -> dict[Monomial, Fraction]:
        """Terms in canonical graded lex order, leading term first."""
        return {m: to_fraction(c) for m, c in self.poly.terms()}

    def coefficient(self, **exponents: int) -> Fraction:
        unknown = set(exponents) - set(self.vars)
        if unknown:
            raise VariableMismatchError(f"unknown variables {sorted(unknown)}")
        monom = tuple(exponents.get(v, 0) for v in self.vars)
        return to_fraction(self.poly.get(monom, QQ.zero))

    @property
    def total_degree(self) -> int:
        if not self.poly:
            return -1
        return max(sum(m) for m in self.poly.itermonoms())

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degrees = {sum(m) for m in self.poly.itermonoms()}
        if not degrees:
            return True
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for monom in self.poly.itermonoms():
            for i, e in enumerate(monom):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.poly.itermonoms())

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise FormShapeError(f"{self} is not constant")
        return to_fraction(self.poly.get((0,) * len(self.vars), QQ.zero))

    # --- Evaluation and composition ---

    def evaluate(self, point: Sequence[Scalar] | Mapping[str, Scalar]) -> Fraction:
        if isinstance(point, Mapping):
            missing = [v for v in self.vars if v not in point]
            if missing:
                raise VariableMismatchError(f"no value for {missing}")
            point = [point[v] for v in self.vars]
        if len(point) != len(self.vars):
            raise VariableMismatchError(
                f"point has {len(point)} entries, polynomial has {len(self.vars)} variables"
            )
        values = [to_qq(Fraction(v)) for v in point]
        return to_fraction(self.poly.evaluate(list(zip(self.ring.gens, values))))

    def embed(self, vars: Sequence[str]) -> MultiPoly:
        """Re-express over ``vars``, which must contain every variable of self."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        missing = [v for v in self.used_variables() if v not in vars]
        if missing:
            raise VariableMismatchError(f"cannot embed: {missing} not in {vars}")
        return MultiPoly(vars, self.poly.set_ring(poly_ring(vars)))

    def substitute(
        self,
        assignments: Mapping[str, MultiPoly | Scalar],
        target_vars: Sequence[str] | None = None,
    ) -> MultiPoly:
        """
        Replace variables by polynomials (or constants) over one target
        variable list. Unassigned variables carry over and must belong to the
        target list.
        """
        unknown = [name for name in assignments if name not in self.vars]
        if unknown:
            raise VariableMismatchError(f"unknown variables {unknown}")

        if target_vars is not None:
            target = tuple(target_vars)
        else:
            poly_targets = {
                v.vars for v in assignments.values() if isinstance(v, MultiPoly)
            }
            if len(poly_targets) > 1:
                raise VariableMismatchError(
                    "replacement polynomials use different variable lists"
                )
            if poly_targets:
                target = poly_targets.pop()
            else:
                target = tuple(v for v in self.vars if v not in assignments)

        kept = [(i, v) for i, v in enumerate(self.vars) if v not in assignments]
        stray = [v for _, v in kept if v not in target]
        if stray:
            raise VariableMismatchError(f"variables {stray} missing from {target}")

        ring = poly_ring(target)
        sub_index = [i for i, v in enumerate(self.vars) if v in assignments]
        replacements = []
        for i in sub_index:
            value = assignments[self.vars[i]]
            if isinstance(value, MultiPoly):
                replacements.append(value.embed(target).poly)
            else:
                replacements.append(ring.ground_new(to_qq(value)))
        kept_index = [(i, target.index(v)) for i, v in kept]

        # group terms by the exponents of the substituted variables
        groups: dict[Monomial, dict[Monomial, object]] = {}
        for monom, coeff in self.poly.iterterms():
            beta = tuple(monom[i] for i in sub_index)
            gamma = [0] * len(target)
            for i, j in kept_index:
                gamma[j] = monom[i]
            groups.setdefault(beta, {})[tuple(gamma)] = coeff

        powers = [[ring.one] for _ in replacements]

        def power(k: int, e: int) -> PolyElement:
            row = powers[k]
            while len(row) <= e:
                row.append(row[-1] * replacements[k])
            return row[e]

        result = ring.zero
        for beta, bucket in groups.items():
            factors = [power(k, e) for k, e in enumerate(beta) if e]
            if any(not f for f in factors):
                continue
            product = ring.from_dict(bucket)
            for f in sorted(factors, key=len):
                product = product * f
            result += product
        return MultiPoly(target, result)

    def specialize(self, **values: Scalar) -> MultiPoly:
        """Fix some variables to rationals, keeping the rest in order."""
        rest = tuple(v for v in self.vars if v not in values)
        return self.substitute(values, rest)

    def exact_div(self, divisor: MultiPoly, leading_var: str | None = None) -> MultiPoly:
        """
        Quotient of an exact division by a divisor whose leading term is a
        pure power of ``leading_var`` with coefficient 1.
        """
        if divisor.vars != self.vars:
            divisor = divisor.embed(self.vars)
        if not divisor:
            raise DivisionRemainderError("division by the zero polynomial")
        lead = leading_var or self.vars[0]
        if lead not in self.vars:
            raise VariableMismatchError(f"{lead!r} is not one of {self.vars}")
        index = self.vars.index(lead)
        lm, lc = divisor.poly.LM, divisor.poly.LC
        if lc != QQ.one or any(e for i, e in enumerate(lm) if i != index):
            raise DivisionRemainderError(f"divisor {divisor} is not monic in {lead}")
        quotient, remainder = divmod(self.poly, divisor.poly)
        if remainder:
            raise DivisionRemainderError(
                f"division by {divisor} leaves a remainder with {len(remainder)} terms"
            )
        return MultiPoly(self.vars, quotient)


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_eval(a: MultiPoly, point: Sequence[Scalar]) -> Fraction:
    return a.evaluate(point)


def poly_substitute(
    a: MultiPoly, assignments: Mapping[str, MultiPoly | Scalar]
) -> MultiPoly:
    return a.substitute(assignments)


def poly_exact_div(dividend: MultiPoly, divisor: MultiPoly, leading_var: str) -> MultiPoly:
    return dividend.exact_div(divisor, leading_var)


def collect_binary_quadratic(
    a: MultiPoly, x: str = "x1", y: str = "x2"
) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (phi0, phi1, phi2) of phi0*x^2 + phi1*x*y + phi2*y^2."""
    extra = [v for v in a.used_variables() if v not in (x, y)]
    if extra:
        raise FormShapeError(f"binary quadratic in {x}, {y} also uses {extra}")
    if not a.is_homogeneous(2):
        raise FormShapeError(f"{a} is not homogeneous of degree 2")
    iy = a.vars.index(y)
    coefficients = [Fraction(0)] * 3
    for monom, coeff in a.terms().items():
        coefficients[monom[iy]] = coeff
    return coefficients[0], coefficients[1], coefficients[2]


def binary_quadratic_coefficients(
    a: MultiPoly, x: str = "x1", y: str = "x2"
) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """
    Symbolic counterpart of ``collect_binary_quadratic``: the coefficients of
    x^2, x*y and y^2 as polynomials in the remaining variables.
    """
    rest = tuple(v for v in a.vars if v not in (x, y))
    if not rest:
        return tuple(MultiPoly.constant(c, (x, y)) for c in collect_binary_quadratic(a, x, y))
    ix, iy = a.vars.index(x), a.vars.index(y)
    rest_index = [i for i, v in enumerate(a.vars) if v not in (x, y)]
    slots: list[dict[Monomial, object]] = [{}, {}, {}]
    for monom, coeff in a.poly.iterterms():
        if monom[ix] + monom[iy] != 2:
            raise FormShapeError(f"{a} is not quadratic in {x}, {y}")
        slots[monom[iy]][tuple(monom[i] for i in rest_index)] = coeff
    ring = poly_ring(rest)
    return tuple(MultiPoly(rest, ring.from_dict(s)) for s in slots)


def symbols_of(count: int, prefix: str, start: int = 1) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(start, start + count))
