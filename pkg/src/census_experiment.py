from loguru import logger

import config
from analysis import CensusEntry, invariant_census, orbit_census
from presets import preset_names, resolve_h
from variety import Op

# Coordinate digits grow geometrically along an open orbit; only the
# finite orbit gets a budget beyond its period.
DEFAULT_BUDGET = 3
STEP_BUDGETS = {"sextic-ex1": 12, "quartic-ex1": 4, "decic": 4}


def run_experiment(census_height: int = config.CENSUS_HEIGHT) -> list[CensusEntry]:
    """
    Run RC and CR from every preset's registered seed and log a summary table.

    A finite period must agree between RC and CR, so a disagreement is logged
    as an error. The invariant-point census of the two surfaces with a curve
    pairing follows the table.
    """
    results: list[CensusEntry] = []

    for name in preset_names():
        steps = STEP_BUDGETS.get(name, DEFAULT_BUDGET)
        logger.info("")
        logger.info(f"--- {name} (h={resolve_h(name)}), {steps} steps ---")
        per_op = {op: orbit_census(name, max_steps=steps, op=op)[0] for op in Op}
        if per_op[Op.RC].period != per_op[Op.CR].period:
            logger.error(
                f"{name}: RC period {per_op[Op.RC].period} differs from CR period {per_op[Op.CR].period}"
            )
        results.extend(per_op.values())

    # Summary table
    logger.info("")
    logger.info("=== Summary ===")
    header = f"{'preset':>18} | {'op':>2} | {'steps':>5} | {'period':>6} | {'max_digits':>10}"
    logger.info(header)
    logger.info("-" * len(header))
    for entry in results:
        period = str(entry.period) if entry.finite else "budget"
        logger.info(
            f"{entry.preset:>18} | {entry.op.value:>2} | {entry.steps:5d} | {period:>6} | "
            f"{entry.max_digits:10d}"
        )

    logger.info("")
    logger.info("=== Invariant points ===")
    for name in ("quartic-ex2", "sextic-ex2"):
        report = invariant_census(name, census_height)
        logger.info(
            f"{name}: {report.count} points, {len(report.pairs)} pairs, "
            f"unpaired {', '.join(str(p) for p in report.unpaired)}"
        )

    return results


if __name__ == "__main__":
    run_experiment()
