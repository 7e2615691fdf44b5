from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from loguru import logger

import config
from errors import RCOrbitError
from exactpoly import MultiPoly
from families import curve_pairing
from point import ProjPoint, normalize
from presets import preset, search_curve, surface_preset
from reflection import Reflection
from variety import Op

IntegerTerms = list[tuple[tuple[int, ...], int]]


@dataclass
class SearchReport:
    height_bound: int
    points: list[ProjPoint]
    pairs: list[tuple[ProjPoint, ProjPoint]] = field(default_factory=list)
    unpaired: list[ProjPoint] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def odd(self) -> bool:
        return self.count % 2 == 1


@dataclass(frozen=True)
class CensusEntry:
    preset: str
    seed: ProjPoint
    op: Op
    steps: int
    period: int | None
    max_digits: int
    stopped: str | None = None

    @property
    def finite(self) -> bool:
        return self.period is not None


def _integer_terms(poly: MultiPoly) -> IntegerTerms:
    """Terms scaled to integer coefficients; the zero set is unchanged."""
    terms = poly.terms()
    scale = math.lcm(*(c.denominator for c in terms.values())) if terms else 1
    return [(monom, int(c * scale)) for monom, c in terms.items()]


def _grid_values(terms: IntegerTerms, grid: np.ndarray, height: int) -> np.ndarray:
    """Values of an integer polynomial on each row of ``grid``, in int64 while that cannot overflow."""
    if not terms:
        return np.zeros(len(grid), dtype=np.int64)
    degree = max(sum(monom) for monom, _ in terms)
    bound = sum(abs(c) for _, c in terms) * height**degree
    dtype = np.int64 if bound < 2**63 else object
    columns = grid.astype(dtype)
    total = np.zeros(len(grid), dtype=dtype)
    for monom, coeff in terms:
        term = np.full(len(grid), coeff, dtype=dtype)
        for j, e in enumerate(monom):
            if e:
                term = term * columns[:, j] ** e
        total = total + term
    return total


def _canonical_rows(grid: np.ndarray) -> np.ndarray:
    """Rows that are primitive with a positive first nonzero entry."""
    first = np.argmax(grid != 0, axis=1)
    leading = grid[np.arange(len(grid)), first]
    return (leading > 0) & (np.gcd.reduce(grid, axis=1) == 1)


def height_search(
    forms: Sequence[MultiPoly],
    constraints: Sequence[MultiPoly] = (),
    height: int = config.DEFAULT_SEARCH_HEIGHT,
) -> SearchReport:
    """
    All primitive integer points with max |coordinate| <= height on which
    every form and constraint vanishes, in canonical sorted order.
    """
    if height < 1:
        raise ValueError("height must be at least 1")
    if not forms:
        raise ValueError("height_search needs at least one form")
    vars = forms[0].vars
    exact = [c.embed(vars) for c in constraints] + [f.embed(vars) for f in forms]
    checks = [_integer_terms(poly) for poly in exact]

    # constraints of the shape c * x_j = 0 pin x_j instead of being tested
    pinned = set()
    for c in constraints:
        used = c.used_variables()
        if len(used) == 1 and c.is_homogeneous(1):
            pinned.add(vars.index(used[0]))
    free = [i for i in range(len(vars)) if i not in pinned]
    if not free:
        return SearchReport(height_bound=height, points=[])
    inner = free[-config.SEARCH_GRID_DIMS :]
    outer = free[: len(free) - len(inner)]
    axis = np.arange(-height, height + 1, dtype=np.int64)
    mesh = np.stack(np.meshgrid(*([axis] * len(inner)), indexing="ij"), axis=-1).reshape(-1, len(inner))

    found: list[ProjPoint] = []
    for head in itertools.product(range(-height, height + 1), repeat=len(outer)):
        grid = np.zeros((len(mesh), len(vars)), dtype=np.int64)
        grid[:, inner] = mesh
        if outer:
            grid[:, outer] = head
        grid = grid[_canonical_rows(grid)]
        for terms in checks:
            grid = grid[(_grid_values(terms, grid, height) == 0).astype(bool)]
        for row in grid.tolist():
            if all(poly.evaluate(row) == 0 for poly in exact):
                found.append(ProjPoint(tuple(row)))
    found.sort(key=lambda p: p.coords)
    logger.info(f"height search up to {height} over {vars}: {len(found)} points")
    return SearchReport(height_bound=height, points=found)


def pair_off(
    report: SearchReport,
    pairing: Callable[[ProjPoint], ProjPoint],
    on_curve: Callable[[ProjPoint], bool] | None = None,
) -> SearchReport:
    """
    Match the points of ``report`` under an involution. A partner beyond the
    height bound is added to the points when ``on_curve`` accepts it.
    """
    points = list(report.points)
    known = set(points)
    pairs: list[tuple[ProjPoint, ProjPoint]] = []
    unpaired: list[ProjPoint] = []
    visited: set[ProjPoint] = set()
    for point in report.points:
        if point in visited:
            continue
        visited.add(point)
        partner = pairing(point)
        if partner == point:
            unpaired.append(point)
            continue
        if partner not in known:
            if on_curve is None or not on_curve(partner):
                logger.warning(f"partner {partner} of {point} is not on the curve")
                unpaired.append(point)
                continue
            logger.debug(f"partner {partner} of {point} lies beyond height {report.height_bound}")
            points.append(partner)
            known.add(partner)
        visited.add(partner)
        pairs.append((point, partner))
    points.sort(key=lambda p: p.coords)
    return SearchReport(report.height_bound, points, pairs, unpaired)


def lift_section(report: SearchReport) -> SearchReport:
    """Points of an x1 = 0 section as surface quadruples (0, x2, x3, x4)."""

    def lift(p: ProjPoint) -> ProjPoint:
        return ProjPoint((0, *p.coords))

    return SearchReport(
        height_bound=report.height_bound,
        points=[lift(p) for p in report.points],
        pairs=[(lift(a), lift(b)) for a, b in report.pairs],
        unpaired=[lift(p) for p in report.unpaired],
    )


def search_named_curve(name: str, height: int = config.DEFAULT_SEARCH_HEIGHT) -> SearchReport:
    curve = search_curve(name)
    return lift_section(height_search([curve.form()], curve.constraints(), height))


def invariant_census(name: str, height: int = config.CENSUS_HEIGHT) -> SearchReport:
    """
    Rational points with x1 = 0 on a surface preset, paired under
    (x2, x3, x4) -> (x2, x3 + x4, -x4). Points are reported as quadruples.
    """
    surface = surface_preset(name)
    if surface.reflection != Reflection.negate(0, 4):
        raise RCOrbitError(f"{name}: the census needs the reflection that negates x1")
    curve = surface.spec.form.specialize(x1=0)
    census = lift_section(
        pair_off(
            height_search([curve], (), height),
            curve_pairing,
            on_curve=lambda p: curve.evaluate(p.coords) == 0,
        )
    )
    parity = "odd" if census.odd else "even"
    logger.info(
        f"{name}: {census.count} invariant points up to height {height} ({parity}), "
        f"{len(census.pairs)} pairs, unpaired {[str(p) for p in census.unpaired]}"
    )
    return census


def orbit_census(
    name: str,
    seeds: Sequence[ProjPoint] | None = None,
    max_steps: int = config.MAX_ORBIT_STEPS,
    h: int | Fraction | str | None = None,
    op: Op = Op.RC,
) -> list[CensusEntry]:
    """Classify each seed as finite order (with its period) or still open after max_steps."""
    variety = preset(name, h)
    if seeds is None:
        seeds = [variety.seed]
    entries = []
    for seed in seeds:
        orbit = variety.generate_sequence(seed, op, max_steps)
        entries.append(
            CensusEntry(
                preset=name,
                seed=seed,
                op=op,
                steps=orbit.steps,
                period=orbit.period,
                max_digits=orbit.max_digits,
                stopped=orbit.stopped,
            )
        )
    return entries


def rational_zero_search(
    poly: MultiPoly, bound: int = config.ZERO_SEARCH_DENOMINATOR
) -> list[tuple[Fraction, ...]]:
    """
    Rational zeros (n1/n0, ..., nk/n0) with |ni| <= bound and 1 <= n0 <= bound,
    the origin excluded.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    zeros: set[tuple[Fraction, ...]] = set()
    numerators = range(-bound, bound + 1)
    for n0 in range(1, bound + 1):
        for ns in itertools.product(numerators, repeat=len(poly.vars)):
            if not any(ns):
                continue
            candidate = tuple(Fraction(n, n0) for n in ns)
            if candidate not in zeros and poly.evaluate(candidate) == 0:
                zeros.add(candidate)
    logger.info(f"{len(zeros)} rational zeros with denominators up to {bound}")
    return sorted(zeros)


def self_conjugate_candidates(
    name: str, bound: int = config.ZERO_SEARCH_DENOMINATOR
) -> list[ProjPoint]:
    """Multipliers where the discriminant vanishes, as projective pairs."""
    surface = surface_preset(name)
    zeros = rational_zero_search(surface.discriminant_poly, bound)
    return sorted({normalize(m) for m in zeros}, key=lambda p: p.coords)
