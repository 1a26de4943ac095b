# -*- coding: utf-8 -*-

"""
Isomorphism invariants and label-bijection search.

Fingerprints are cheap to compare and reject most non-isomorphic pairs;
the backtracking search only runs when fingerprints agree, and only
pairs elements whose per-element profiles match. Lattices of flats
and of cyclic flats are compared as networkx Hasse diagrams.
"""

import logging

import networkx as nx

from src.models.bitset import bits, mask_of, popcount


logger = logging.getLogger(__name__)


# -------------------------------------------------------------------
# Invariants
# -------------------------------------------------------------------
def element_profiles(matroid):
    """
    Per-element invariant: basis degree and cyclic-flat membership.

    Args:
        matroid (Matroid): input matroid.

    Returns:
        list[tuple]: one hashable profile per storage index.
    """
    def build():
        ranks = matroid.rank_table
        flats = matroid.cyclic_flat_masks()
        profiles = []
        for e in range(matroid.n):
            degree = sum(1 for basis in matroid.bases if (basis >> e) & 1)
            containing = sorted(
                (popcount(flat), int(ranks[flat]))
                for flat in flats if (flat >> e) & 1
            )
            profiles.append((degree, tuple(containing)))
        return profiles
    return matroid.memo("element_profiles", build)


def fingerprint(matroid):
    """
    Relabelling-invariant summary of a matroid.

    Returns:
        tuple: (n, rank, basis count, element profiles, cyclic-flat sizes).
    """
    ranks = matroid.rank_table
    flats = sorted(
        (popcount(flat), int(ranks[flat]))
        for flat in matroid.cyclic_flat_masks()
    )
    return (
        matroid.n,
        matroid.full_rank,
        len(matroid.bases),
        tuple(sorted(element_profiles(matroid))),
        tuple(flats),
    )


# -------------------------------------------------------------------
# Isomorphism search
# -------------------------------------------------------------------
def find_isomorphism(first, second):
    """
    Search a label bijection carrying the bases of first onto second.

    Args:
        first (Matroid): source matroid.
        second (Matroid): target matroid.

    Returns:
        dict[str, str] | None: label map, or None if not isomorphic.
    """
    if fingerprint(first) != fingerprint(second):
        return None

    source_profiles = element_profiles(first)
    target_profiles = element_profiles(second)
    candidates = {
        e: [f for f in range(second.n) if target_profiles[f] == profile]
        for e, profile in enumerate(source_profiles)
    }
    # Most constrained elements first
    sequence = sorted(range(first.n), key=lambda e: (len(candidates[e]), e))

    source_ranks = first.rank_table
    target_ranks = second.rank_table
    target_bases = set(second.bases)
    image = {}
    used = set()

    def consistent(e, f):
        for a, fa in image.items():
            if source_ranks[(1 << a) | (1 << e)] != \
                    target_ranks[(1 << fa) | (1 << f)]:
                return False
            for b, fb in image.items():
                if b <= a:
                    continue
                source = (1 << a) | (1 << b) | (1 << e)
                target = (1 << fa) | (1 << fb) | (1 << f)
                if source_ranks[source] != target_ranks[target]:
                    return False
        return True

    def complete():
        return all(
            mask_of(image[e] for e in bits(basis)) in target_bases
            for basis in first.bases
        )

    def extend(depth):
        if depth == len(sequence):
            return complete()
        e = sequence[depth]
        for f in candidates[e]:
            if f in used or not consistent(e, f):
                continue
            image[e] = f
            used.add(f)
            if extend(depth + 1):
                return True
            del image[e]
            used.discard(f)
        return False

    if not extend(0):
        return None
    return {first.labels[e]: second.labels[f] for e, f in image.items()}


def isomorphic(first, second):
    return find_isomorphism(first, second) is not None


# -------------------------------------------------------------------
# Lattices
# -------------------------------------------------------------------
def _hasse_diagram(matroid, masks):
    ranks = matroid.rank_table
    containment = nx.DiGraph()
    for mask in masks:
        containment.add_node(mask, rank=int(ranks[mask]))
    for lower in masks:
        for upper in masks:
            if lower != upper and lower & ~upper == 0:
                containment.add_edge(lower, upper)
    diagram = nx.transitive_reduction(containment)
    diagram.add_nodes_from(containment.nodes(data=True))
    return diagram


def flat_lattice(matroid):
    """Cover relations of the lattice of flats as a DiGraph on masks."""
    return _hasse_diagram(matroid, matroid.flat_masks())


def cyclic_flat_lattice(matroid):
    """Cover relations of the lattice of cyclic flats."""
    return _hasse_diagram(matroid, matroid.cyclic_flat_masks())


def lattices_isomorphic(first, second):
    """Order isomorphism of two Hasse diagrams; ranks are ignored."""
    return nx.is_isomorphic(first, second)
