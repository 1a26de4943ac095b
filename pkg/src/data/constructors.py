# -*- coding: utf-8 -*-

"""
Matroid constructors.

Builds matroids from bases, from cyclic flats and their ranks, from
transversal presentations and graphs, and by relaxation, truncation,
principal/series extension and parallel/series connection. Every
constructor returns a validated, immutable Matroid.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Tuple

import networkx as nx
import numpy as np

from src.models.bitset import (
    MAX_GROUND_SET,
    bits,
    full_mask,
    mask_of,
    mask_range,
    popcount,
    popcount_table,
    scatter,
)
from src.models.exceptions import (
    CapacityError,
    CyclicFlatAxiomError,
    MatroidInputError,
    PreconditionError,
)
from src.models.matroid import Matroid, direct_sum
from src.models.orders import LinearOrder


logger = logging.getLogger(__name__)


# -------------------------------------------------------------------
# Presentations
# -------------------------------------------------------------------
@dataclass(frozen=True)
class CyclicFlatsPresentation:
    """
    Ground labels plus (set, rank) pairs for the cyclic flats.
    """

    ground: Tuple[str, ...]
    flats: Tuple[Tuple[frozenset, int], ...]

    @classmethod
    def of(cls, ground, flats):
        return cls(
            tuple(ground),
            tuple((frozenset(s), int(r)) for s, r in flats),
        )


@dataclass(frozen=True)
class TransversalPresentation:
    """
    Ground labels plus an indexed family of subsets (repeats allowed).
    """

    ground: Tuple[str, ...]
    sets: Tuple[frozenset, ...]

    @classmethod
    def of(cls, ground, sets):
        return cls(tuple(ground), tuple(frozenset(s) for s in sets))


def default_labels(n):
    return tuple(str(i) for i in range(1, n + 1))


def _index(labels):
    return {label: i for i, label in enumerate(labels)}


def _mask(index, subset, what="set"):
    try:
        return mask_of(index[label] for label in subset)
    except KeyError as error:
        raise MatroidInputError(
            f"{what} uses unknown label {error.args[0]!r}"
        ) from None


def _check_size(n):
    if n > MAX_GROUND_SET:
        raise CapacityError(
            f"ground set has {n} elements; at most {MAX_GROUND_SET} "
            "are supported"
        )


# -------------------------------------------------------------------
# Bases
# -------------------------------------------------------------------
def from_bases(labels, bases):
    """
    Matroid from a family of label sets.

    Args:
        labels (Sequence[str]): ground labels.
        bases (Iterable[Iterable[str]]): the bases.

    Raises:
        BasisExchangeError: exchange fails, with a witness (B, B', a).
    """
    labels = tuple(str(label) for label in labels)
    _check_size(len(labels))
    index = _index(labels)
    masks = [_mask(index, basis, "basis") for basis in bases]
    return Matroid(labels, masks)


def uniform(r, n, labels=None):
    """U_{r,n}; labels default to 1..n."""
    if not 0 <= r <= n:
        raise MatroidInputError(
            f"uniform matroid needs 0 <= r <= n; got {r}, {n}"
        )
    _check_size(n)
    labels = tuple(labels) if labels is not None else default_labels(n)
    if len(labels) != n:
        raise MatroidInputError("uniform matroid needs exactly n labels")
    bases = np.flatnonzero(popcount_table(n) == r).tolist()
    return Matroid(labels, bases, validate=False)


# -------------------------------------------------------------------
# Cyclic flats
# -------------------------------------------------------------------
def _join(family, first, second):
    union = first | second
    uppers = [z for z in family if z & union == union]
    least = [u for u in uppers if all(u & ~v == 0 for v in uppers)]
    return least[0] if least else None


def _meet(family, first, second):
    common = first & second
    lowers = [z for z in family if z & ~common == 0]
    greatest = [w for w in lowers if all(v & ~w == 0 for v in lowers)]
    return greatest[0] if greatest else None


def _check_lattice(family, named):
    for first, second in combinations(family, 2):
        if _join(family, first, second) is None:
            raise CyclicFlatAxiomError(
                "Z0", named(first, second), "no least upper bound"
            )
        if _meet(family, first, second) is None:
            raise CyclicFlatAxiomError(
                "Z0", named(first, second), "no greatest lower bound"
            )
    bottom = [z for z in family if all(z & ~v == 0 for v in family)]
    if not bottom:
        raise CyclicFlatAxiomError("Z0", named(*family[:2]), "no least set")
    return bottom[0]


def _check_incomparable(family, ranked, named, first, second):
    join = _join(family, first, second)
    meet = _meet(family, first, second)
    lhs = ranked[join] + ranked[meet] + popcount((first & second) & ~meet)
    if lhs > ranked[first] + ranked[second]:
        raise CyclicFlatAxiomError(
            "Z3", named(first, second),
            f"{lhs} > {ranked[first] + ranked[second]}",
        )


def _check_chain(ranked, named, lower, upper):
    gap = ranked[upper] - ranked[lower]
    if not 0 < gap < popcount(upper & ~lower):
        raise CyclicFlatAxiomError(
            "Z2", named(lower, upper),
            f"rank gap {gap} for {popcount(upper & ~lower)} new elements",
        )


def check_cyclic_flat_axioms(labels, ranked):
    """
    Validate (Z0)-(Z3) for a family of (mask, rank) pairs.

    Raises:
        CyclicFlatAxiomError: naming the axiom and the violating sets.
    """
    def named(*masks):
        return [
            [labels[i] for i in bits(mask)] for mask in masks
        ]

    family = list(ranked)
    bottom = _check_lattice(family, named)
    if ranked[bottom] != 0:
        raise CyclicFlatAxiomError(
            "Z1", named(bottom), f"least set has rank {ranked[bottom]}"
        )

    for first, second in combinations(family, 2):
        if first & ~second and second & ~first:
            _check_incomparable(family, ranked, named, first, second)
        elif first & ~second == 0:
            _check_chain(ranked, named, first, second)
        else:
            _check_chain(ranked, named, second, first)


def from_cyclic_flats(presentation):
    """
    Matroid with the given cyclic flats and ranks.

    r(X) = min over presented Z of r(Z) + |X - Z|; elements outside
    the greatest presented set are coloops.

    Args:
        presentation (CyclicFlatsPresentation): data satisfying (Z0)-(Z3).

    Returns:
        Matroid
    """
    labels = tuple(presentation.ground)
    _check_size(len(labels))
    if len(set(labels)) != len(labels):
        raise MatroidInputError("ground labels must be distinct")
    if not presentation.flats:
        raise MatroidInputError("cyclic-flats presentation is empty")
    index = _index(labels)
    ranked = {}
    for subset, rank in presentation.flats:
        mask = _mask(index, subset, "cyclic flat")
        if mask in ranked:
            raise MatroidInputError(
                f"cyclic flat {sorted(subset)} listed twice"
            )
        if rank < 0:
            raise MatroidInputError("cyclic flat ranks must be non-negative")
        ranked[mask] = rank
    check_cyclic_flat_axioms(labels, ranked)

    n = len(labels)
    masks = mask_range(n)
    pop = popcount_table(n).astype(np.int16)
    table = np.full(1 << n, np.iinfo(np.int16).max, dtype=np.int16)
    for flat, rank in ranked.items():
        table = np.minimum(table, rank + pop[masks & ~flat])
    return Matroid.from_rank_table(labels, table)


def cyclic_flats_presentation(matroid):
    """The presentation whose reconstruction is matroid."""
    family = matroid.cyclic_flats()
    return CyclicFlatsPresentation.of(
        matroid.labels, zip(family.label_sets(), family.ranks)
    )


def paving(labels, rank, hyperplanes):
    """
    Paving matroid of the given rank with the listed dependent
    hyperplanes.

    Raises:
        MatroidInputError: a hyperplane is too small or too large, or two
            hyperplanes share more than rank - 2 elements.
    """
    labels = tuple(labels)
    n = len(labels)
    if not 1 <= rank < n:
        raise MatroidInputError(
            f"paving rank {rank} must lie in 1..{n - 1}"
        )
    hyperplanes = [frozenset(h) for h in hyperplanes]
    for h in hyperplanes:
        if not rank <= len(h) <= n - 2:
            raise MatroidInputError(
                f"hyperplane {sorted(h)} must have {rank}..{n - 2} elements"
            )
    for h1, h2 in combinations(hyperplanes, 2):
        if len(h1 & h2) > rank - 2:
            raise MatroidInputError(
                f"hyperplanes {sorted(h1)} and {sorted(h2)} share more "
                f"than {rank - 2} elements"
            )
    flats = [(frozenset(), 0), (frozenset(labels), rank)]
    flats.extend((h, rank - 1) for h in hyperplanes)
    return from_cyclic_flats(CyclicFlatsPresentation.of(labels, flats))


# -------------------------------------------------------------------
# Graphs and transversal presentations
# -------------------------------------------------------------------
def cycle_matroid(edges, labels=None):
    """
    Cycle matroid of a multigraph given as an edge list.

    Args:
        edges (Sequence[tuple]): (u, v) pairs; loops and parallels allowed.
        labels (Sequence[str] | None): edge labels, default 1..m.

    Returns:
        Matroid whose bases are the spanning forests.
    """
    edges = [tuple(edge) for edge in edges]
    _check_size(len(edges))
    if labels is None:
        labels = default_labels(len(edges))
    labels = tuple(labels)
    if len(labels) != len(edges):
        raise MatroidInputError("one label per edge is required")

    vertices = {v for edge in edges for v in edge}
    whole = nx.MultiGraph()
    whole.add_nodes_from(vertices)
    whole.add_edges_from(edges)
    rank = len(vertices) - nx.number_connected_components(whole)

    bases = []
    for chosen in combinations(range(len(edges)), rank):
        graph = nx.MultiGraph()
        graph.add_nodes_from(vertices)
        graph.add_edges_from(edges[i] for i in chosen)
        if nx.number_connected_components(graph) == len(vertices) - rank:
            bases.append(mask_of(chosen))
    return Matroid(labels, bases, validate=False)


def _matching_size(graph, elements):
    if not elements:
        return 0
    nodes = [("e", i) for i in elements]
    sub = graph.subgraph(nodes + [v for v in graph if v[0] == "A"])
    matching = nx.bipartite.hopcroft_karp_matching(sub, top_nodes=nodes)
    return len(matching) // 2


def transversal(presentation):
    """
    Transversal matroid: independent sets are the partial transversals.

    Ranks are maximum matchings in the element/set bipartite graph.
    """
    labels = tuple(presentation.ground)
    _check_size(len(labels))
    index = _index(labels)
    graph = nx.Graph()
    graph.add_nodes_from(("e", i) for i in range(len(labels)))
    for j, subset in enumerate(presentation.sets):
        graph.add_node(("A", j))
        for i in bits(_mask(index, subset, "transversal set")):
            graph.add_edge(("e", i), ("A", j))

    rank = _matching_size(graph, list(range(len(labels))))
    bases = [
        mask_of(chosen)
        for chosen in combinations(range(len(labels)), rank)
        if _matching_size(graph, list(chosen)) == rank
    ]
    return Matroid(labels, bases, validate=False)


def nested(subset, order):
    """
    Nested matroid N(I, ≤): the transversal matroid of the filters
    {j : i ≤ j} for i in I. Its bases are the J with I ≤_G J.
    """
    subset = frozenset(subset)
    if not subset <= order.ground:
        raise MatroidInputError(
            "I must be a subset of the ordered ground set"
        )
    sets = [order.sequence[order.position(i):] for i in subset]
    return transversal(TransversalPresentation.of(order.sequence, sets))


# -------------------------------------------------------------------
# Wheels and whirls
# -------------------------------------------------------------------
def wheel_edges(n):
    """
    Edges of the wheel W_n: label 2i-1 is the spoke to rim vertex i,
    label 2i the rim edge from i to i+1, so {2i-1, 2i, 2i+1} is a
    triangle.
    """
    if n < 3:
        raise MatroidInputError(f"wheels need n >= 3; got {n}")
    edges = []
    for i in range(1, n + 1):
        edges.append(("hub", i))
        edges.append((i, i % n + 1))
    return edges


def wheel(n):
    return cycle_matroid(wheel_edges(n))


def whirl(n):
    """Rank-n whirl: the wheel with its rim circuit-hyperplane relaxed."""
    matroid = wheel(n)
    rim = [str(2 * i) for i in range(1, n + 1)]
    return relax(matroid, rim)


# -------------------------------------------------------------------
# Relaxation and truncation
# -------------------------------------------------------------------
def relax(matroid, subset):
    """
    Generalised relaxation: remove X from the cyclic flats, keep ranks.

    Raises:
        PreconditionError: loops/coloops present, X not a proper nonempty
            cyclic flat, or another proper nonempty cyclic flat is
            comparable with X.
    """
    target = matroid.mask(subset)
    if matroid.loops() or matroid.coloops():
        raise PreconditionError(
            "relaxation needs a loopless, coloopless matroid"
        )
    flats = matroid.cyclic_flat_masks()
    if target not in flats or target in (0, matroid.ground):
        raise PreconditionError(
            f"{matroid.sorted_labels(target)} is not a proper nonempty "
            "cyclic flat"
        )
    for flat in flats:
        if flat in (0, matroid.ground, target):
            continue
        if flat & ~target == 0 or target & ~flat == 0:
            raise PreconditionError(
                f"cyclic flat {matroid.sorted_labels(flat)} is comparable "
                f"with {matroid.sorted_labels(target)}"
            )
    ranks = matroid.rank_table
    kept = [
        (matroid.labels_of(flat), int(ranks[flat]))
        for flat in flats if flat != target
    ]
    relaxed = from_cyclic_flats(
        CyclicFlatsPresentation.of(matroid.labels, kept)
    )
    logger.debug(f"relaxed {matroid.sorted_labels(target)}")
    return relaxed


def truncate(matroid, k):
    """Rank function min(r(X), k)."""
    if not 0 <= k <= matroid.full_rank:
        raise MatroidInputError(
            f"truncation rank {k} outside 0..{matroid.full_rank}"
        )
    if k == matroid.full_rank:
        return matroid
    table = np.minimum(matroid.rank_table, k)
    return Matroid.from_rank_table(matroid.labels, table)


# -------------------------------------------------------------------
# Extensions
# -------------------------------------------------------------------
def _fresh(matroid, label):
    label = str(label)
    if label in matroid.labels:
        raise MatroidInputError(f"label {label!r} already in the ground set")
    _check_size(matroid.n + 1)
    return label


def principal_extension(matroid, subset, label):
    """
    M +_X e: e added freely to cl(X).

    r(Y + e) = r(Y) when X ⊆ cl(Y), else r(Y) + 1.
    """
    label = _fresh(matroid, label)
    target = matroid.mask(subset)
    old = matroid.rank_table.astype(np.int16)
    masks = mask_range(matroid.n)
    spans = old[masks | target] == old
    upper = old + (~spans).astype(np.int16)
    table = np.concatenate([old, upper])
    return Matroid.from_rank_table(matroid.labels + (label,), table)


def free_extension(matroid, label):
    return principal_extension(matroid, matroid.ground, label)


def parallel_extension(matroid, element, label):
    return principal_extension(matroid, (element,), label)


def series_extension(matroid, element, label):
    """
    M ×_f e = ((M*) +_f e)*.

    Raises:
        PreconditionError: f is a coloop of M.
    """
    if matroid.coloops() & matroid.mask(element):
        raise PreconditionError(f"{element!r} is a coloop")
    return parallel_extension(matroid.dual(), element, label).dual()


# -------------------------------------------------------------------
# Connections
# -------------------------------------------------------------------
def _shared_point(first, second):
    shared = set(first.labels) & set(second.labels)
    if len(shared) != 1:
        raise MatroidInputError(
            f"connection needs exactly one shared label; got {sorted(shared)}"
        )
    return shared.pop()


def parallel_connection(first, second, point=None):
    """
    P(M, N) at the shared point p.

    When p is a loop of M the result is M ⊕ (N / p); when p is a loop of
    N only, (M / p) ⊕ N.
    """
    shared = _shared_point(first, second)
    if point is not None and str(point) != shared:
        raise MatroidInputError(f"{point!r} is not the shared label")
    if first.rank(shared) == 0:
        return direct_sum(first, second.contract(shared))
    if second.rank(shared) == 0:
        return direct_sum(first.contract(shared), second)

    n_first = first.n
    rest = [i for i in range(second.n) if second.labels[i] != shared]
    labels = first.labels + tuple(second.labels[i] for i in rest)
    _check_size(len(labels))

    p_first = 1 << first.index_of(shared)
    p_second = 1 << second.index_of(shared)
    masks = mask_range(len(labels))
    left = masks & full_mask(n_first)
    right = scatter(rest)[masks >> n_first]
    right = right | np.where(left & p_first, p_second, 0)

    ranks_first = first.rank_table.astype(np.int16)
    ranks_second = second.rank_table.astype(np.int16)
    apart = ranks_first[left] + ranks_second[right]
    glued = ranks_first[left | p_first] + ranks_second[right | p_second] - 1
    return Matroid.from_rank_table(labels, np.minimum(apart, glued))


def series_connection(first, second, point=None):
    """S(M, N) = P(M*, N*)*."""
    return parallel_connection(first.dual(), second.dual(), point).dual()


def relabel(matroid, mapping):
    return matroid.relabel(mapping)


def natural_order(matroid):
    return LinearOrder.natural(matroid.labels)
