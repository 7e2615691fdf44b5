from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from loguru import logger

import config
from errors import UnknownPresetError
from exactpoly import MultiPoly
from families import (
    QuarticFamilyParams,
    SexticFamilyParams,
    build_degree2d_family,
    build_quartic_family,
    build_sextic_family,
    decic_params,
    invariant_curve,
)
from point import normalize
from surface import M12, Surface, SurfaceSpec
from system import System, SystemSpec
from systems import build_cubic_norm_system, build_quartic_norm_system, octic_system
from variety import Variety


def quartic_ex1(h: Fraction) -> SurfaceSpec:
    a = (1, -2 * h, -h, -h, -h, -h, 4 * h, -h, -h, 1, 3, -1)
    return build_quartic_family(
        QuarticFamilyParams(p=3, q=-1, a=a),
        name="quartic-ex1",
        seed=normalize([1, 1, 1, 1]),
        h=h,
    )


def quartic_ex2(h: Fraction) -> SurfaceSpec:
    a = (6, 6, 0, 1, 6, -3, -105, 12, 6, 3, 3, -3)
    return build_quartic_family(
        QuarticFamilyParams(p=1, q=3, a=a), name="quartic-ex2", seed=normalize([0, 1, 1, 0])
    )


def sextic_ex1(h: Fraction) -> SurfaceSpec:
    a = (3, -1, 5, 44957, 6, 1, 2939, 29654, 13121, 2, -25057, -7856, -8176, 891)
    return build_sextic_family(
        SexticFamilyParams(p=1, q=-1, a=a), name="sextic-ex1", seed=normalize([0, 1, 0, -1])
    )


def sextic_ex2(h: Fraction) -> SurfaceSpec:
    a = (44, -36, 36, 120, -72, 0, 0, 0, -9, -972, -486, 9, 9, 9)
    # the reduced discriminant is 9 Q(m)^2 z^2
    divisor = MultiPoly.parse("3*m1^2 + 3*m1*m2 + 9*m2^2", M12)
    return build_sextic_family(
        SexticFamilyParams(p=1, q=3, a=a),
        name="sextic-ex2",
        seed=normalize([0, 1, 1, 0]),
        witness_divisor=divisor,
    )


def decic(h: Fraction) -> SurfaceSpec:
    return build_degree2d_family(decic_params(h), name="decic", seed=normalize([1, 1, 1, 1]), h=h)


DECIC_SEED = (3, 1, 0, 1, 3, 1, 0, 1)
QUINTIC_SEED = (1, 1, 0, 6, -7, 0)


def octic_x6p2(h: Fraction) -> SystemSpec:
    return octic_system(seed=normalize([1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]))


def decic_10in8(h: Fraction) -> SystemSpec:
    return build_quartic_norm_system(h, name="decic-10in8", seed=normalize(DECIC_SEED))


def decic_ratio_pair(h: Fraction) -> SystemSpec:
    return build_quartic_norm_system(
        h, name="decic-ratio-pair", seed=normalize(DECIC_SEED), ratio_pair=True
    )


def quintic_cubic(h: Fraction) -> SystemSpec:
    return build_cubic_norm_system(h, name="quintic-cubic", seed=normalize(QUINTIC_SEED))


def quintic_ratio_pair(h: Fraction) -> SystemSpec:
    return build_cubic_norm_system(
        h, name="quintic-ratio-pair", seed=normalize(QUINTIC_SEED), ratio_pair=True
    )


@dataclass(frozen=True)
class PresetEntry:
    builder: Callable[[Fraction], SurfaceSpec | SystemSpec]
    takes_h: bool
    default_h: Fraction = Fraction(config.DEFAULT_H)


SURFACE_PRESETS: dict[str, PresetEntry] = {
    "quartic-ex1": PresetEntry(quartic_ex1, takes_h=True, default_h=Fraction(7)),
    "quartic-ex2": PresetEntry(quartic_ex2, takes_h=False),
    "sextic-ex1": PresetEntry(sextic_ex1, takes_h=False),
    "sextic-ex2": PresetEntry(sextic_ex2, takes_h=False),
    "decic": PresetEntry(decic, takes_h=True),
}

SYSTEM_PRESETS: dict[str, PresetEntry] = {
    "octic-x6p2": PresetEntry(octic_x6p2, takes_h=False),
    "decic-10in8": PresetEntry(decic_10in8, takes_h=True),
    "decic-ratio-pair": PresetEntry(decic_ratio_pair, takes_h=True),
    "quintic-cubic": PresetEntry(quintic_cubic, takes_h=True, default_h=Fraction(1)),
    "quintic-ratio-pair": PresetEntry(quintic_ratio_pair, takes_h=True, default_h=Fraction(1)),
}


@dataclass(frozen=True)
class SearchCurve:
    """The x1 = 0 section of a surface preset, optionally cut further by x4 = 0."""

    name: str
    preset: str
    x4_zero: bool = False

    @property
    def vars(self) -> tuple[str, ...]:
        return ("x2", "x3", "x4")

    def form(self) -> MultiPoly:
        return invariant_curve(surface_spec(self.preset), x4_zero=False)

    def constraints(self) -> tuple[MultiPoly, ...]:
        if self.x4_zero:
            return (MultiPoly.variable("x4", self.vars),)
        return ()


SEARCH_CURVES: dict[str, SearchCurve] = {
    curve.name: curve
    for curve in (
        SearchCurve("quartic-ex2-invariant", "quartic-ex2"),
        SearchCurve("quartic-ex2-invariant-x4zero", "quartic-ex2", x4_zero=True),
        SearchCurve("sextic-ex2-invariant", "sextic-ex2"),
        SearchCurve("sextic-ex2-invariant-x4zero", "sextic-ex2", x4_zero=True),
    )
}


def _entry(name: str) -> PresetEntry:
    if name in SURFACE_PRESETS:
        return SURFACE_PRESETS[name]
    if name in SYSTEM_PRESETS:
        return SYSTEM_PRESETS[name]
    raise UnknownPresetError(f"unknown preset {name!r}, expected one of {preset_names()}")


def resolve_h(name: str, h: int | Fraction | str | None = None) -> Fraction | None:
    """The parameter a preset is built at; None for presets without one."""
    entry = _entry(name)
    if not entry.takes_h:
        if h is not None:
            logger.warning(f"{name} has no parameter h, ignoring h={h}")
        return None
    return entry.default_h if h is None else Fraction(h)


@lru_cache(maxsize=None)
def _build_spec(name: str, h: Fraction | None) -> SurfaceSpec | SystemSpec:
    spec = _entry(name).builder(h)
    logger.debug(f"built {name}" + ("" if h is None else f" at h={h}"))
    return spec


@lru_cache(maxsize=None)
def _build_variety(name: str, h: Fraction | None) -> Variety:
    spec = _build_spec(name, h)
    variety = Surface(spec) if isinstance(spec, SurfaceSpec) else System(spec)
    logger.info(f"preset {name} ready" + ("" if h is None else f" (h={h})"))
    return variety


def surface_spec(name: str, h: int | Fraction | str | None = None) -> SurfaceSpec:
    if name not in SURFACE_PRESETS:
        raise UnknownPresetError(
            f"unknown surface preset {name!r}, expected one of {list(SURFACE_PRESETS)}"
        )
    return _build_spec(name, resolve_h(name, h))


def system_spec(name: str, h: int | Fraction | str | None = None) -> SystemSpec:
    if name not in SYSTEM_PRESETS:
        raise UnknownPresetError(
            f"unknown system preset {name!r}, expected one of {list(SYSTEM_PRESETS)}"
        )
    return _build_spec(name, resolve_h(name, h))


def surface_preset(name: str, h: int | Fraction | str | None = None) -> Surface:
    surface_spec(name, h)
    return _build_variety(name, resolve_h(name, h))


def system_preset(name: str, h: int | Fraction | str | None = None) -> System:
    system_spec(name, h)
    return _build_variety(name, resolve_h(name, h))


def preset(name: str, h: int | Fraction | str | None = None) -> Variety:
    """A built, checked surface or system by name."""
    return _build_variety(name, resolve_h(name, h))


def search_curve(name: str) -> SearchCurve:
    try:
        return SEARCH_CURVES[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown search curve {name!r}, expected one of {list(SEARCH_CURVES)}"
        ) from None


def preset_names() -> list[str]:
    return [*SURFACE_PRESETS, *SYSTEM_PRESETS]


def takes_h(name: str) -> bool:
    return _entry(name).takes_h


def preset_spec(name: str, h: int | Fraction | str | None = None) -> SurfaceSpec | SystemSpec:
    """The preset's SurfaceSpec or SystemSpec, built without running the variety's checks."""
    return _build_spec(name, resolve_h(name, h))
