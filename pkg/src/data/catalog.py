# -*- coding: utf-8 -*-

"""
Named matroids with known positroid behaviour.

Single matroids are registered in CATALOG by name; the bonding pairs
come from the *_pair functions and share their labels on purpose.
"""

import logging

from src.data.constructors import (
    CyclicFlatsPresentation,
    cycle_matroid,
    from_cyclic_flats,
    parallel_connection,
    paving,
    truncate,
    uniform,
    wheel,
    whirl,
)
from src.models.exceptions import MatroidInputError


logger = logging.getLogger(__name__)

K4_EDGES = (
    ("A", "B"), ("B", "C"), ("A", "C"),
    ("A", "D"), ("B", "D"), ("C", "D"),
)

# Letter names of the rank-4 truncation: lines A = {a,s,t},
# B = {b,p,q}, C = {c,u,v} and X = {a,b,c}.
FOUR_TRIANGLE_LETTERS = {
    "3": "a", "6": "b", "9": "c",
    "1": "t", "2": "s",
    "4": "p", "5": "q",
    "7": "v", "8": "u",
}


def k4():
    """M(K4); its 3-point lines are 123, 145, 346, 256."""
    return cycle_matroid(K4_EDGES)


def _rank3(labels, lines):
    return paving(labels, 3, [frozenset(line) for line in lines])


def four_triangles():
    """
    Parallel connection of four copies of U_{2,3} on 369, 123, 456 and
    789: a rank-5 positroid, the natural order being a positroid order.
    """
    matroid = uniform(2, 3, ("3", "6", "9"))
    for triangle in (("1", "2", "3"), ("4", "5", "6"), ("7", "8", "9")):
        matroid = parallel_connection(matroid, uniform(2, 3, triangle))
    return matroid.reindexed([str(i) for i in range(1, 10)])


def four_triangles_truncated(rank=4):
    """Rank-3 or rank-4 truncation: excluded minors."""
    if rank not in (3, 4):
        raise MatroidInputError(f"truncation rank must be 3 or 4: {rank}")
    return truncate(four_triangles(), rank)


def four_triangles_letters():
    """The rank-4 truncation with letter labels."""
    matroid = four_triangles_truncated(4).relabel(FOUR_TRIANGLE_LETTERS)
    return matroid.reindexed(
        ["s", "t", "a", "b", "c", "p", "q", "u", "v"]
    )


# -------------------------------------------------------------------
# Bonding pairs
# -------------------------------------------------------------------
def clone_pair():
    """
    Two rank-3 positroids sharing the clones {1, 2}; their free
    amalgam is a rank-4 positroid.
    """
    first = _rank3(
        [str(i) for i in range(1, 8)],
        [("1", "2", "3", "7"), ("3", "4", "5"), ("5", "6", "7")],
    )
    second = _rank3(
        ["1", "2", "8", "9", "10", "11", "12"],
        [("1", "2", "8", "12"), ("8", "9", "10"), ("10", "11", "12")],
    )
    return first, second


def parallel_pair():
    """
    Two rank-3 matroids in which {1, 2} is a parallel class; the
    bonding is four copies of U_{1,2} and two loops.
    """
    def side(x, y, z, w):
        ground = ("1", "2", x, y, z, w)
        flats = [
            (frozenset(), 0),
            (frozenset({"1", "2"}), 1),
            (frozenset({"1", "2", x, y}), 2),
            (frozenset({"1", "2", z, w}), 2),
            (frozenset(ground), 3),
        ]
        return from_cyclic_flats(CyclicFlatsPresentation.of(ground, flats))

    return side("a", "b", "c", "d"), side("e", "f", "g", "h")


def non_clone_pair():
    """
    Rank-3 positroids sharing T = {5, 10}, which are not clones; the
    free amalgam is a positroid, with P = {5}.
    """
    first = _rank3(
        ["1", "2", "3", "4", "5", "10"],
        [("1", "5", "10"), ("3", "4", "5"), ("1", "2", "3")],
    )
    second = _rank3(
        ["5", "6", "7", "8", "9", "10"],
        [("5", "9", "10"), ("7", "8", "9"), ("5", "6", "7")],
    )
    return first, second


def excluded_amalgam_pair():
    """
    Rank-3 positroids sharing {a, e} whose free amalgam is a rank-4
    excluded minor.
    """
    first = _rank3(
        ["a", "b", "c", "d", "e", "f"],
        [("a", "e", "f"), ("c", "d", "e"), ("a", "b", "c")],
    )
    second = _rank3(
        ["a", "e", "g", "h", "i"],
        [("a", "h", "i"), ("e", "g", "h")],
    )
    return first, second


CATALOG = {
    "K4": k4,
    "U24": lambda: uniform(2, 4),
    "U23": lambda: uniform(2, 3),
    "W3": lambda: wheel(3),
    "W4": lambda: wheel(4),
    "whirl3": lambda: whirl(3),
    "whirl4": lambda: whirl(4),
    "fourTriangles": four_triangles,
    "fourTrianglesRank4": lambda: four_triangles_truncated(4),
    "fourTrianglesRank3": lambda: four_triangles_truncated(3),
    "fourTrianglesLetters": four_triangles_letters,
}

PAIRS = {
    "clones": clone_pair,
    "parallel": parallel_pair,
    "nonClones": non_clone_pair,
    "excludedAmalgam": excluded_amalgam_pair,
}


def named(name):
    """
    Raises:
        MatroidInputError: unknown name.
    """
    try:
        return CATALOG[name]()
    except KeyError:
        raise MatroidInputError(
            f"unknown catalog matroid {name!r}; "
            f"choose from {sorted(CATALOG)}"
        ) from None


def named_pair(name):
    """
    Raises:
        MatroidInputError: unknown pair name.
    """
    try:
        return PAIRS[name]()
    except KeyError:
        raise MatroidInputError(
            f"unknown catalog pair {name!r}; choose from {sorted(PAIRS)}"
        ) from None
