from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

from loguru import logger

import config
from analysis import SearchReport, invariant_census, orbit_census, search_named_curve
from errors import (
    DivisionRemainderError,
    InvariantViolationError,
    NotASquareError,
    ParametricDegeneracyError,
    UnknownPresetError,
)
from point import ProjPoint, normalize, parse_coords
from presets import (
    SEARCH_CURVES,
    SURFACE_PRESETS,
    SYSTEM_PRESETS,
    preset,
    preset_spec,
    resolve_h,
    surface_preset,
)
from surface import Surface
from system import System
from variety import Op, Variety, Witness

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

INTERNAL_ERRORS = (
    InvariantViolationError,
    DivisionRemainderError,
    NotASquareError,
    ParametricDegeneracyError,
)


class Format(Enum):
    JSON = "json"
    TEXT = "text"


def configure_logging(verbose: bool = False) -> None:
    """Route loguru to stderr so stdout carries only the document."""
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else config.LOG_LEVEL)


# --- Serialization ---


def rational(value: Fraction | int) -> str:
    return str(Fraction(value))


def coords_text(coords: Sequence[int | Fraction]) -> str:
    return "(" + ", ".join(rational(c) for c in coords) + ")"


def witness_doc(witness: Witness) -> dict[str, Any]:
    doc: dict[str, Any] = {"m": [rational(v) for v in witness.m], "z": rational(witness.z)}
    if witness.aux:
        doc["aux"] = {k: rational(v) for k, v in witness.aux.items()}
    return doc


def witness_text(witness: Witness) -> str:
    return coords_text([*witness.m, witness.z])


def report_doc(report: SearchReport) -> dict[str, Any]:
    return {
        "height": report.height_bound,
        "count": report.count,
        "points": [[rational(c) for c in p] for p in report.points],
        "pairs": [[[rational(c) for c in p] for p in pair] for pair in report.pairs],
        "unpaired": [[rational(c) for c in p] for p in report.unpaired],
    }


def report_text(report: SearchReport) -> str:
    lines = [f"{report.count} points up to height {report.height_bound}"]
    lines += [str(p) for p in report.points]
    if report.pairs or report.unpaired:
        lines.append(f"pairs: {len(report.pairs)}")
        lines.append("unpaired: " + ", ".join(str(p) for p in report.unpaired))
    return "\n".join(lines)


def emit(args: argparse.Namespace, doc: dict[str, Any], text: str) -> None:
    if Format(args.format) is Format.JSON:
        body = json.dumps(doc, indent=config.JSON_INDENT, sort_keys=True)
    else:
        body = text
    if args.output:
        Path(args.output).write_text(body + "\n")
        logger.info(f"wrote {args.output}")
    else:
        sys.stdout.write(body + "\n")


# --- Helpers ---


def load(args: argparse.Namespace) -> tuple[Variety, Fraction | None]:
    h = resolve_h(args.preset, args.h)
    return preset(args.preset, h), h


def read_point(variety: Variety, text: str | None) -> ProjPoint:
    if text is None:
        if variety.seed is None:
            raise ValueError(f"{variety.name} has no registered seed, pass one")
        return variety.seed
    point = normalize(parse_coords(text))
    if len(point) != variety.reflection.size:
        raise ValueError(
            f"{variety.name} takes {variety.reflection.size} coordinates, got {len(point)}"
        )
    return point


def shown(variety: Variety, point: ProjPoint) -> tuple[int, ...]:
    if isinstance(variety, System):
        return variety.display(point)
    return point.coords


# --- Subcommands ---


def cmd_iterate(args: argparse.Namespace) -> int:
    variety, h = load(args)
    start = read_point(variety, args.seed)
    op = Op(args.op)
    orbit = variety.generate_sequence(start, op, args.steps)
    points, lines = [], []
    for step, point in enumerate(orbit.points):
        entry: dict[str, Any] = {
            "step": step,
            "coords": [rational(c) for c in point],
            "verified": variety.verify(point),
        }
        display = shown(variety, point)
        line = f"{step}: {coords_text(display)}"
        if display != point.coords:
            entry["display"] = [rational(c) for c in display]
        if args.witness:
            witness = variety.witness(point)
            entry["witness"] = witness_doc(witness)
            line += f"  witness {witness_text(witness)}"
        points.append(entry)
        lines.append(line)
    if orbit.period is not None:
        lines.append(f"period {orbit.period}")
    if orbit.stopped is not None:
        lines.append(f"stopped: {orbit.stopped}")
    doc = {
        "preset": args.preset,
        "h": None if h is None else rational(h),
        "op": op.value,
        "points": points,
        "period": orbit.period,
    }
    if orbit.stopped is not None:
        doc["stopped"] = orbit.stopped
    emit(args, doc, "\n".join(lines))
    return EXIT_OK if all(p["verified"] for p in points) else EXIT_UNVERIFIED


def cmd_verify(args: argparse.Namespace) -> int:
    variety, h = load(args)
    point = read_point(variety, args.point)
    ok = variety.verify(point)
    doc = {
        "preset": args.preset,
        "h": None if h is None else rational(h),
        "coords": [rational(c) for c in point],
        "verified": ok,
    }
    emit(args, doc, f"{point} {'verifies' if ok else 'does not verify'} on {variety.name}")
    return EXIT_OK if ok else EXIT_UNVERIFIED


def cmd_witness(args: argparse.Namespace) -> int:
    variety, h = load(args)
    point = read_point(variety, args.point)
    if not variety.verify(point):
        logger.error(f"{point} is not a point of {variety.name}")
        return EXIT_UNVERIFIED
    witness = variety.witness(point)
    doc = {
        "preset": args.preset,
        "h": None if h is None else rational(h),
        "coords": [rational(c) for c in point],
        "witness": witness_doc(witness),
    }
    emit(args, doc, witness_text(witness))
    return EXIT_OK


def cmd_symbolic_disc(args: argparse.Namespace) -> int:
    if args.preset not in SURFACE_PRESETS:
        raise UnknownPresetError(f"symbolic-disc needs a surface preset, got {args.preset!r}")
    h = resolve_h(args.preset, args.h)
    surface: Surface = surface_preset(args.preset, h)
    disc = surface.discriminant_poly
    terms = [
        {"exponents": list(monom), "coefficient": rational(coeff)}
        for monom, coeff in disc.terms().items()
    ]
    doc = {
        "preset": args.preset,
        "h": None if h is None else rational(h),
        "vars": list(disc.vars),
        "terms": terms,
    }
    emit(args, doc, str(disc))
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    report = search_named_curve(args.curve, args.height)
    doc = {"curve": args.curve, **report_doc(report)}
    emit(args, doc, report_text(report))
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    if args.invariant:
        report = invariant_census(args.preset, args.height)
        doc = {"preset": args.preset, "odd": report.odd, **report_doc(report)}
        emit(args, doc, report_text(report))
        return EXIT_OK
    variety, h = load(args)
    seeds = None if args.seed is None else [read_point(variety, args.seed)]
    entries = orbit_census(args.preset, seeds, args.max_steps, h, Op(args.op))
    doc = {
        "preset": args.preset,
        "h": None if h is None else rational(h),
        "op": args.op,
        "seeds": [
            {
                "seed": [rational(c) for c in e.seed],
                "steps": e.steps,
                "period": e.period,
                "max_digits": e.max_digits,
            }
            for e in entries
        ],
    }
    text = "\n".join(
        f"{e.seed}: " + (f"order {e.period}" if e.finite else f"no repeat in {e.steps} steps")
        for e in entries
    )
    emit(args, doc, text)
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    def describe(name: str, takes_h: bool) -> dict[str, Any]:
        spec = preset_spec(name)
        return {
            "name": name,
            "takes_h": takes_h,
            "default_h": None if resolve_h(name) is None else rational(resolve_h(name)),
            "seed": None if spec.seed is None else [rational(c) for c in spec.seed],
        }

    surfaces = [describe(n, e.takes_h) for n, e in SURFACE_PRESETS.items()]
    systems = [describe(n, e.takes_h) for n, e in SYSTEM_PRESETS.items()]
    curves = [
        {"name": c.name, "preset": c.preset, "x4_zero": c.x4_zero}
        for c in SEARCH_CURVES.values()
    ]
    doc = {"surfaces": surfaces, "systems": systems, "curves": curves}

    def row(d: dict[str, Any]) -> str:
        marker = " (h)" if d["takes_h"] else ""
        return f"  {d['name']}{marker}  seed {coords_text(d['seed'])}"

    lines = ["surfaces:", *map(row, surfaces), "systems:", *map(row, systems), "curves:"]
    lines += [f"  {c['name']} ({c['preset']})" for c in curves]
    emit(args, doc, "\n".join(lines))
    return EXIT_OK


# --- Parser ---


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rc-orbits",
        description="Reflection and conjugate orbits on diophantine surfaces and systems.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--format", choices=[f.value for f in Format], default=Format.JSON.value)
    common.add_argument("--output", help="write the document here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_preset(p: argparse.ArgumentParser) -> None:
        p.add_argument("--preset", required=True)
        p.add_argument("--h", type=Fraction, default=None, help="family parameter")

    iterate = sub.add_parser(
        "iterate", parents=[common], help="generate an RC or CR orbit"
    )
    with_preset(iterate)
    iterate.add_argument("--seed", help="start point, defaults to the preset's seed")
    iterate.add_argument("--op", choices=[op.value for op in Op], default=config.DEFAULT_OP)
    iterate.add_argument("--steps", type=int, default=config.DEFAULT_STEPS)
    iterate.add_argument("--witness", action="store_true", help="attach witnesses per point")
    iterate.set_defaults(handler=cmd_iterate)

    verify = sub.add_parser(
        "verify", parents=[common], help="check that a point lies on a preset"
    )
    with_preset(verify)
    verify.add_argument("--point", help="defaults to the preset's seed")
    verify.set_defaults(handler=cmd_verify)

    witness = sub.add_parser(
        "witness", parents=[common], help="multiplier and discriminant root of a point"
    )
    with_preset(witness)
    witness.add_argument("--point", help="defaults to the preset's seed")
    witness.set_defaults(handler=cmd_witness)

    disc = sub.add_parser(
        "symbolic-disc", parents=[common], help="discriminant of the reduced quadratic in m"
    )
    with_preset(disc)
    disc.set_defaults(handler=cmd_symbolic_disc)

    search = sub.add_parser(
        "search", parents=[common], help="height-bounded search on a named curve"
    )
    search.add_argument("--curve", required=True, choices=list(SEARCH_CURVES))
    search.add_argument("--height", type=int, default=config.DEFAULT_SEARCH_HEIGHT)
    search.set_defaults(handler=cmd_search)

    census = sub.add_parser(
        "census", parents=[common], help="orbit orders or the invariant-point census"
    )
    with_preset(census)
    census.add_argument("--seed")
    census.add_argument("--op", choices=[op.value for op in Op], default=config.DEFAULT_OP)
    census.add_argument("--max-steps", type=int, default=config.MAX_ORBIT_STEPS)
    census.add_argument("--invariant", action="store_true", help="pair the x1 = 0 points")
    census.add_argument("--height", type=int, default=config.CENSUS_HEIGHT)
    census.set_defaults(handler=cmd_census)

    listing = sub.add_parser(
        "presets", parents=[common], help="list presets and search curves"
    )
    listing.set_defaults(handler=cmd_presets)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    if getattr(args, "steps", 0) < 0:
        parser.error("--steps must be nonnegative")
    try:
        return args.handler(args)
    except INTERNAL_ERRORS as err:
        logger.error(f"invariant violation: {err}")
        return EXIT_INTERNAL
    except (UnknownPresetError, ValueError) as err:
        logger.error(str(err))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
