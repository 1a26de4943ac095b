# -*- coding: utf-8 -*-

"""
Seeded random matroid generators for property checks and sweeps.

Every generator takes a numpy Generator so runs are reproducible from
one seed.
"""

import logging
from itertools import combinations

import numpy as np

from src.data.constructors import (
    TransversalPresentation,
    default_labels,
    paving,
    transversal,
    truncate,
    uniform,
)
from src.models.exceptions import MatroidInputError
from src.models.matroid import direct_sum


logger = logging.getLogger(__name__)


def random_transversal(rng, n, r, density=0.5):
    """Transversal matroid of r random subsets of 1..n."""
    labels = default_labels(n)
    sets = []
    for _ in range(r):
        chosen = rng.random(n) < density
        if not chosen.any():
            chosen[rng.integers(n)] = True
        sets.append([labels[i] for i in np.flatnonzero(chosen)])
    return transversal(TransversalPresentation.of(labels, sets))


def random_sparse_paving(rng, n, r, attempts=8):
    """
    Sparse paving matroid: up to attempts random r-sets as
    circuit-hyperplanes, kept while they pairwise share <= r - 2
    elements.
    """
    if not 2 <= r <= n - 2:
        raise MatroidInputError(f"sparse paving needs 2 <= r <= n-2: {r}")
    labels = default_labels(n)
    chosen = []
    for _ in range(attempts):
        candidate = frozenset(
            labels[i] for i in rng.choice(n, size=r, replace=False)
        )
        if all(len(candidate & h) <= r - 2 for h in chosen):
            chosen.append(candidate)
    return paving(labels, r, chosen)


def lattice_path_intervals(rng, n, r):
    """
    Intervals [a_i, b_i] (1-based) with a and b strictly increasing,
    a_i <= b_i: the presentation of a lattice path matroid.
    """
    if not 1 <= r <= n:
        raise MatroidInputError(f"lattice path needs 1 <= r <= n: {r}")
    starts = np.sort(rng.choice(np.arange(1, n + 1), size=r, replace=False))
    ends = np.sort(rng.choice(np.arange(1, n + 1), size=r, replace=False))
    ends = np.maximum(ends, starts)
    # keep b strictly increasing after the lift
    for i in range(1, r):
        ends[i] = max(ends[i], ends[i - 1] + 1)
    ends = np.minimum(ends, n - (r - 1 - np.arange(r)))
    return [(int(a), int(b)) for a, b in zip(starts, ends)]


def random_lattice_path(rng, n, r, labels=None):
    """A lattice path matroid; these are positroids in natural order."""
    labels = tuple(labels) if labels is not None else default_labels(n)
    sets = [
        labels[a - 1:b] for a, b in lattice_path_intervals(rng, n, r)
    ]
    return transversal(TransversalPresentation.of(labels, sets))


def random_matroid(rng, n):
    """
    One of: transversal, sparse paving, lattice path, a direct sum of
    two uniform matroids, or a truncated transversal matroid.
    """
    kind = int(rng.integers(5))
    r = int(rng.integers(1, max(2, n)))
    if kind == 0:
        return random_transversal(rng, n, r)
    if kind == 1 and 2 <= r <= n - 2:
        return random_sparse_paving(rng, n, r)
    if kind == 2:
        return random_lattice_path(rng, n, r)
    if kind == 3 and n >= 2:
        split = int(rng.integers(1, n))
        first = uniform(
            int(rng.integers(0, split + 1)), split,
            default_labels(split),
        )
        rest = n - split
        second = uniform(
            int(rng.integers(0, rest + 1)), rest,
            tuple(str(i) for i in range(split + 1, n + 1)),
        )
        return direct_sum(first, second)
    matroid = random_transversal(rng, n, min(n, r + 1))
    return truncate(matroid, min(r, matroid.full_rank))


def _clone_run(matroid, size):
    # An independent subset of one clonal class.
    for block in matroid.clonal_class_masks():
        members = matroid.sorted_labels(block)
        for chosen in combinations(members, size):
            if matroid.is_independent(chosen):
                return list(chosen)
    return None


def clone_planted_pair(rng, n_first, n_second, shared, attempts=50):
    """
    Two loopless lattice path matroids sharing an independent set of
    clones t1..tk, other labels disjoint.

    Returns:
        tuple[Matroid, Matroid] | None: None if no pair turns up.
    """
    targets = [f"t{i}" for i in range(1, shared + 1)]

    def side(prefix, n):
        for _ in range(attempts):
            r = int(rng.integers(shared, n))
            labels = tuple(f"{prefix}{i}" for i in range(1, n + 1))
            matroid = random_lattice_path(rng, n, r, labels)
            if matroid.loops():
                continue
            run = _clone_run(matroid, shared)
            if run is not None:
                return matroid.relabel(dict(zip(run, targets)))
        return None

    first = side("m", n_first)
    second = side("n", n_second)
    if first is None or second is None:
        return None
    return first, second
