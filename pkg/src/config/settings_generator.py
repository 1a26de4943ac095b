# -*- coding: utf-8 -*-

"""
Sweep grid generator.

Enumerates the parameter points of the excluded-minor families that a
sweep verifies, and can persist the full grid as an immutable file.

Output:
    - data/external/sweep_settings.pkl
"""

import itertools
import logging
import os
import pickle

from src.data.families import check_k4_parameters, check_whirl_parameters
from src.models.bitset import MAX_GROUND_SET
from src.models.exceptions import ParameterError


logger = logging.getLogger(__name__)

OUTPUT_PATH = os.path.join("data", "external", "sweep_settings.pkl")


def _valid(check, *args):
    try:
        check(*args)
    except ParameterError:
        return False
    return True


def _point(family, *params):
    return {"family": family, "params": list(params)}


# -------------------------------------------------------------------
# Grids per family
# -------------------------------------------------------------------
def k4_grid(max_size=12):
    """
    Every normalised genK4 vector with at most max_size elements.
    """
    return [
        _point("genK4", *x)
        for x in itertools.product(range(1, max_size - 4), repeat=6)
        if sum(x) <= max_size and _valid(check_k4_parameters, *x)
    ]


def example_grid():
    """The three paving examples at their smallest parameters, with duals."""
    return [
        _point("pavingK", 1, 1, 1, 1),
        _point("pavingKdual", 1, 1, 1, 1),
        _point("sparsePQ", 1, 1, 1),
        _point("sparsePQdual", 1, 1, 1),
        _point("sparsePQST", 1, 1, 1),
        _point("sparsePQSTdual", 1, 1, 1),
    ]


def whirl_grid(ns=(3, 4), max_size=MAX_GROUND_SET):
    """
    Smallest-rank valid whirlFreeExt points for each n.

    For a given n the first rank r that admits any valid (m, x) is
    used, and every valid point of that rank fitting in max_size
    elements (with the free point) is listed.
    """
    points = []
    for n in ns:
        for r in range(3, max_size):
            found = []
            for m in itertools.product(range(3, r + 1), repeat=n):
                for x in itertools.product(range(1, r + 1), repeat=2 * n):
                    if sum(x) + 1 > max_size:
                        continue
                    if _valid(check_whirl_parameters, r, n, list(m),
                              list(x)):
                        found.append(_point("whirlFreeExt", r, n, *m, *x))
            if found:
                logger.info(
                    f"whirlFreeExt n={n}: {len(found)} points at r={r}"
                )
                points.extend(found)
                break
    return points


def whirl_variant_grid(ranks=(3, 4, 5)):
    return [_point("whirlVariant", r) for r in ranks]


def closing_grid(pairs=((3, 3), (4, 3)), variants=(1, 2)):
    return [
        _point("closing", n, k, variant)
        for n, k in pairs for variant in variants
    ]


GRIDS = {
    "genK4": k4_grid,
    "examples": example_grid,
    "whirlFreeExt": whirl_grid,
    "whirlVariant": whirl_variant_grid,
    "closing": closing_grid,
}


def generate_all_settings():
    """
    Every grid, in registry order.

    Returns:
        list[dict]: {"family": name, "params": [...]} per point.
    """
    settings = []
    for name, grid in GRIDS.items():
        points = grid()
        logger.info(f"Grid {name}: {len(points)} points")
        settings.extend(points)
    return settings


def grid(name):
    """
    Points of one grid, or of all of them for "all".

    Raises:
        ParameterError: unknown grid name.
    """
    if name == "all":
        return generate_all_settings()
    try:
        return GRIDS[name]()
    except KeyError:
        raise ParameterError(
            f"unknown sweep {name!r}; choose from {sorted(GRIDS) + ['all']}"
        ) from None


def load_settings(path=OUTPUT_PATH):
    with open(path, "rb") as f:
        return pickle.load(f)


# -------------------------------------------------------------------
# Script entry point
# -------------------------------------------------------------------
def main(output_path=OUTPUT_PATH):
    """
    Generate and persist the sweep grid.

    An existing file is never overwritten.
    """
    os.makedirs(os.path.dirname(output_path), exist_ok=True)

    if os.path.exists(output_path):
        logger.warning(
            f"Sweep settings already exist: {output_path}. "
            "Remove the file to regenerate them."
        )
        return None

    settings = generate_all_settings()
    with open(output_path, "wb") as f:
        pickle.dump(settings, f)

    logger.info(f"Generated {len(settings)} sweep points")
    logger.info(f"Sweep settings saved to: {output_path}")
    return settings


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s"
    )
    main()
