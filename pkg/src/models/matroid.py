# -*- coding: utf-8 -*-

"""
Immutable matroid values over small ground sets.

A Matroid stores its element labels and its canonical (sorted) family
of bases as integer masks. Every other query (rank, closure, flats,
cyclic flats, circuits, connectivity, clones) is derived from one
rank table holding r(X) for all 2^n subsets, computed once with numpy
and cached on the instance.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import networkx as nx
import numpy as np

from src.models.bitset import (
    MAX_GROUND_SET,
    bits,
    full_mask,
    mask_of,
    masks_with_bit,
    masks_without_bits,
    natural_key,
    popcount,
    popcount_table,
    scatter,
)
from src.models.exceptions import (
    BasisExchangeError,
    CapacityError,
    MatroidInputError,
)


logger = logging.getLogger(__name__)


def _lowest_bit(mask):
    return mask & -mask


# -------------------------------------------------------------------
# Result containers
# -------------------------------------------------------------------
@dataclass(frozen=True)
class SubsetFamily:
    """
    A family of subsets of a matroid's ground set.

    Attributes:
        labels (tuple[str]): ground labels in storage order.
        sets (tuple[int]): member masks, sorted by size then value.
        ranks (tuple[int] | None): optional rank annotation per set.
    """

    labels: Tuple[str, ...]
    sets: Tuple[int, ...]
    ranks: Optional[Tuple[int, ...]] = None

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.label_sets())

    def __contains__(self, item):
        if isinstance(item, int):
            return item in self.sets
        index = {label: i for i, label in enumerate(self.labels)}
        return mask_of(index[label] for label in item) in self.sets

    def label_sets(self):
        return [
            frozenset(self.labels[i] for i in bits(mask))
            for mask in self.sets
        ]

    def rank_of(self, labels):
        """
        Annotated rank of a member given by labels.
        """
        index = {label: i for i, label in enumerate(self.labels)}
        mask = mask_of(index[label] for label in labels)
        return self.ranks[self.sets.index(mask)]

    def as_records(self):
        """
        JSON-friendly records, labels in natural order.

        Returns:
            list[dict]: {"set": [...]} with "rank" when annotated.
        """
        records = []
        for position, members in enumerate(self.label_sets()):
            record = {"set": sorted(members, key=natural_key)}
            if self.ranks is not None:
                record["rank"] = self.ranks[position]
            records.append(record)
        return records


@dataclass(frozen=True)
class Partition:
    """
    Pairwise-disjoint nonempty blocks covering a ground set.
    """

    blocks: Tuple[frozenset, ...]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    @classmethod
    def from_masks(cls, labels, masks):
        return cls(tuple(
            frozenset(labels[i] for i in bits(mask)) for mask in masks
        ))

    def block_of(self, label):
        for block in self.blocks:
            if label in block:
                return block
        raise MatroidInputError(f"label {label!r} is in no block")

    def as_lists(self):
        return [sorted(block, key=natural_key) for block in self.blocks]


def _sorted_family(masks):
    return tuple(sorted(masks, key=lambda m: (popcount(m), m)))


# -------------------------------------------------------------------
# Rank table
# -------------------------------------------------------------------
def _rank_table(n, bases):
    """
    Rank of every subset, by two subset transforms over the powerset.

    The first pass closes the basis family downward into the independent
    sets; the second takes, for every mask, the largest independent
    submask.
    """
    independent = np.zeros(1 << n, dtype=bool)
    independent[np.asarray(bases, dtype=np.int64)] = True
    for i in range(n):
        with_i = masks_with_bit(n, i)
        independent[with_i ^ (1 << i)] |= independent[with_i]

    ranks = np.where(independent, popcount_table(n), 0).astype(np.int8)
    for i in range(n):
        with_i = masks_with_bit(n, i)
        ranks[with_i] = np.maximum(ranks[with_i], ranks[with_i ^ (1 << i)])
    ranks.setflags(write=False)
    return ranks


# -------------------------------------------------------------------
# Matroid value
# -------------------------------------------------------------------
class Matroid:
    """
    A matroid on at most 16 labelled elements, given by its bases.

    Args:
        labels (Iterable[str]): distinct element labels; their order is
            the storage order and carries no meaning.
        bases (Iterable[int]): basis masks over the storage order.
        validate (bool): check the basis-exchange axiom.

    Raises:
        CapacityError: more than 16 elements.
        MatroidInputError: malformed labels or bases.
        BasisExchangeError: the family is not a basis family.
    """

    __slots__ = ("_labels", "_index", "_bases", "_rank", "_cache")

    def __init__(self, labels, bases, validate=True):
        labels = tuple(str(label) for label in labels)
        if len(labels) > MAX_GROUND_SET:
            raise CapacityError(
                f"ground set has {len(labels)} elements; "
                f"at most {MAX_GROUND_SET} are supported"
            )
        if len(set(labels)) != len(labels):
            raise MatroidInputError("element labels must be distinct")

        family = sorted({int(basis) for basis in bases})
        if not family:
            raise MatroidInputError("basis family must be non-empty")
        ground = full_mask(len(labels))
        if family[0] < 0 or family[-1] & ~ground:
            raise MatroidInputError("basis mask outside the ground set")
        sizes = {popcount(basis) for basis in family}
        if len(sizes) != 1:
            raise MatroidInputError(
                f"bases must be equicardinal; found sizes {sorted(sizes)}"
            )

        self._labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        self._bases = tuple(family)
        self._rank = sizes.pop()
        self._cache = {}

        if validate:
            self._check_exchange()

    @classmethod
    def from_rank_table(cls, labels, ranks):
        """
        Build a matroid from the rank of every subset.

        The table is trusted: callers derive it from valid rank functions.

        Args:
            labels (Sequence[str]): element labels.
            ranks (np.ndarray): r(X) indexed by mask.

        Returns:
            Matroid
        """
        labels = tuple(labels)
        if len(labels) > MAX_GROUND_SET:
            raise CapacityError(
                f"ground set has {len(labels)} elements; "
                f"at most {MAX_GROUND_SET} are supported"
            )
        ranks = np.asarray(ranks).astype(np.int8)
        full = int(ranks[-1])
        pop = popcount_table(len(labels))
        bases = np.flatnonzero((pop == full) & (ranks == full))
        matroid = cls(labels, bases.tolist(), validate=False)
        ranks.setflags(write=False)
        matroid._cache["rank_table"] = ranks
        return matroid

    # ---------------------------------------------------------------
    # Basic accessors
    # ---------------------------------------------------------------
    @property
    def labels(self):
        return self._labels

    @property
    def n(self):
        return len(self._labels)

    @property
    def full_rank(self):
        return self._rank

    @property
    def bases(self):
        return self._bases

    @property
    def ground(self):
        return full_mask(self.n)

    def index_of(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise MatroidInputError(f"unknown element {label!r}") from None

    def mask(self, subset):
        """
        Normalise a subset given as a mask or as an iterable of labels.

        Args:
            subset (int | str | Iterable[str]): the subset.

        Returns:
            int: subset mask.

        Raises:
            MatroidInputError: unknown label or mask out of range.
        """
        if isinstance(subset, (int, np.integer)):
            mask = int(subset)
            if mask < 0 or mask & ~self.ground:
                raise MatroidInputError(
                    f"subset mask {mask} out of range for n={self.n}"
                )
            return mask
        if isinstance(subset, str):
            subset = (subset,)
        mask = 0
        for label in subset:
            mask |= 1 << self.index_of(label)
        return mask

    def labels_of(self, mask):
        return frozenset(self._labels[i] for i in bits(mask))

    def sorted_labels(self, mask):
        return sorted(self.labels_of(mask), key=natural_key)

    def basis_sets(self):
        return [self.labels_of(basis) for basis in self._bases]

    def memo(self, key, factory):
        """
        Cache a derived value on this immutable instance.

        Args:
            key (str): cache slot name.
            factory (Callable[[], Any]): computes the value once.
        """
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    @property
    def rank_table(self):
        return self.memo(
            "rank_table", lambda: _rank_table(self.n, self._bases)
        )

    @property
    def key(self):
        """Label-free encoding (n, bases) used for memoisation."""
        return (self.n, self._bases)

    # ---------------------------------------------------------------
    # Validation
    # ---------------------------------------------------------------
    def _check_exchange(self):
        # The family is a basis family iff the induced rank function is
        # locally submodular: r(X+e) + r(X+f) >= r(X+e+f) + r(X).
        n = self.n
        ranks = self.rank_table.astype(np.int16)
        for i in range(n):
            for j in range(i + 1, n):
                base = masks_without_bits(n, i, j)
                lhs = ranks[base | (1 << i)] + ranks[base | (1 << j)]
                rhs = ranks[base | (1 << i) | (1 << j)] + ranks[base]
                if np.any(lhs < rhs):
                    self._raise_exchange_failure()

    def _raise_exchange_failure(self):
        family = set(self._bases)
        for first in self._bases:
            for second in self._bases:
                for a in bits(first & ~second):
                    reduced = first ^ (1 << a)
                    if not any(
                        (reduced | (1 << b)) in family
                        for b in bits(second & ~first)
                    ):
                        raise BasisExchangeError(
                            self.sorted_labels(first),
                            self.sorted_labels(second),
                            self._labels[a],
                        )
        raise MatroidInputError("family is not a basis family")

    # ---------------------------------------------------------------
    # Rank and closure
    # ---------------------------------------------------------------
    def rank(self, subset=None):
        """
        Rank of a subset, or of the whole matroid when omitted.
        """
        if subset is None:
            return self._rank
        return int(self.rank_table[self.mask(subset)])

    def closure(self, subset):
        """
        cl(X) = X together with every e for which r(X + e) = r(X).

        Returns:
            int: closure mask.
        """
        mask = self.mask(subset)
        ranks = self.rank_table
        base = ranks[mask]
        closed = mask
        for e in bits(self.ground & ~mask):
            if ranks[mask | (1 << e)] == base:
                closed |= 1 << e
        return closed

    def is_independent(self, subset):
        mask = self.mask(subset)
        return int(self.rank_table[mask]) == popcount(mask)

    def is_basis(self, subset):
        return self.mask(subset) in self._bases_set()

    def _bases_set(self):
        return self.memo("bases_set", lambda: frozenset(self._bases))

    def is_flat(self, subset):
        return bool(self._flat_table()[self.mask(subset)])

    def is_cyclic(self, subset):
        return bool(self._cyclic_table()[self.mask(subset)])

    def loops(self):
        return self.closure(0)

    def coloops(self):
        """Elements lying in every basis."""
        common = self.ground
        for basis in self._bases:
            common &= basis
        return common

    # ---------------------------------------------------------------
    # Powerset tables
    # ---------------------------------------------------------------
    def _flat_table(self):
        def build():
            n, ranks = self.n, self.rank_table
            flat = np.ones(1 << n, dtype=bool)
            for i in range(n):
                with_i = masks_with_bit(n, i)
                without = with_i ^ (1 << i)
                flat[without] &= ranks[with_i] > ranks[without]
            flat.setflags(write=False)
            return flat
        return self.memo("flat_table", build)

    def _cyclic_table(self):
        def build():
            n, ranks = self.n, self.rank_table
            cyclic = np.ones(1 << n, dtype=bool)
            for i in range(n):
                with_i = masks_with_bit(n, i)
                cyclic[with_i] &= ranks[with_i ^ (1 << i)] == ranks[with_i]
            cyclic.setflags(write=False)
            return cyclic
        return self.memo("cyclic_table", build)

    def flat_masks(self):
        return self.memo("flat_masks", lambda: _sorted_family(
            np.flatnonzero(self._flat_table()).tolist()
        ))

    def cyclic_flat_masks(self):
        return self.memo("cyclic_flat_masks", lambda: _sorted_family(
            np.flatnonzero(
                self._flat_table() & self._cyclic_table()
            ).tolist()
        ))

    def circuit_masks(self):
        def build():
            n, ranks = self.n, self.rank_table
            pop = popcount_table(n)
            circuit = ranks == pop - 1
            for i in range(n):
                with_i = masks_with_bit(n, i)
                without = with_i ^ (1 << i)
                circuit[with_i] &= ranks[without] == pop[without]
            return _sorted_family(np.flatnonzero(circuit).tolist())
        return self.memo("circuit_masks", build)

    # ---------------------------------------------------------------
    # Families
    # ---------------------------------------------------------------
    def _family(self, masks, with_ranks=False):
        ranks = None
        if with_ranks:
            ranks = tuple(int(self.rank_table[m]) for m in masks)
        return SubsetFamily(self._labels, tuple(masks), ranks)

    def circuits(self):
        """All minimal dependent sets."""
        return self._family(self.circuit_masks())

    def cocircuits(self):
        return self.dual().circuits()

    def flats(self):
        return self._family(self.flat_masks(), with_ranks=True)

    def cyclic_flats(self):
        """Flats whose restriction has no coloops, annotated with rank."""
        return self._family(self.cyclic_flat_masks(), with_ranks=True)

    def connected_flat_masks(self):
        def build():
            found = [
                mask for mask in self.flat_masks() if popcount(mask) == 1
            ]
            found.extend(
                mask for mask in self.cyclic_flat_masks()
                if popcount(mask) >= 2 and self.is_connected_set(mask)
            )
            return _sorted_family(found)
        return self.memo("connected_flat_masks", build)

    def connected_flats(self):
        """Flats F with M|F connected (the empty set excluded)."""
        return self._family(self.connected_flat_masks(), with_ranks=True)

    # ---------------------------------------------------------------
    # Connectivity
    # ---------------------------------------------------------------
    def components_of(self, subset, contract=0):
        """
        Connected components of (M / C) | X.

        Uses fundamental circuits with respect to one basis of X: the
        components are the connected pieces of the graph joining each
        non-basis element to the basis elements of its fundamental
        circuit.

        Args:
            subset: X, disjoint from the contraction set.
            contract: C.

        Returns:
            list[int]: component masks ordered by least element.
        """
        contracted = self.mask(contract)
        region = self.mask(subset) & ~contracted
        ranks = self.rank_table
        offset = int(ranks[contracted])

        basis, size = 0, 0
        for e in bits(region):
            if int(ranks[basis | (1 << e) | contracted]) - offset > size:
                basis |= 1 << e
                size += 1

        graph = nx.Graph()
        graph.add_nodes_from(bits(region))
        for e in bits(region & ~basis):
            single = 1 << e
            if int(ranks[single | contracted]) == offset:
                continue  # loop of M/C
            for b in bits(basis):
                swapped = (basis ^ (1 << b)) | single | contracted
                if int(ranks[swapped]) - offset == size:
                    graph.add_edge(e, b)

        blocks = [mask_of(c) for c in nx.connected_components(graph)]
        return sorted(blocks, key=_lowest_bit)

    def is_connected_set(self, subset, contract=0):
        return len(self.components_of(subset, contract)) == 1

    def component_masks(self):
        return self.memo(
            "component_masks", lambda: self.components_of(self.ground)
        )

    def components(self):
        """Connected components; loops and coloops are singletons."""
        return Partition.from_masks(self._labels, self.component_masks())

    def is_connected(self):
        return len(self.component_masks()) == 1

    # ---------------------------------------------------------------
    # Clones
    # ---------------------------------------------------------------
    def clonal_class_masks(self):
        def build():
            flats = self.cyclic_flat_masks()
            groups = {}
            for e in range(self.n):
                signature = tuple((flat >> e) & 1 for flat in flats)
                groups[signature] = groups.get(signature, 0) | (1 << e)
            return sorted(groups.values(), key=_lowest_bit)
        return self.memo("clonal_class_masks", build)

    def clonal_classes(self):
        """Elements grouped by the cyclic flats that contain them."""
        return Partition.from_masks(self._labels, self.clonal_class_masks())

    def are_clones(self, subset):
        mask = self.mask(subset)
        return any(
            mask & ~block == 0 for block in self.clonal_class_masks()
        )

    # ---------------------------------------------------------------
    # Derived matroids
    # ---------------------------------------------------------------
    def dual(self):
        ground = self.ground
        return self.memo("dual", lambda: Matroid(
            self._labels, [ground ^ basis for basis in self._bases],
            validate=False,
        ))

    def minor(self, delete=0, contract=0):
        """
        M \\ D / C on E - D - C.

        Raises:
            MatroidInputError: D and C overlap.
        """
        deleted = self.mask(delete)
        contracted = self.mask(contract)
        if deleted & contracted:
            overlap = self.sorted_labels(deleted & contracted)
            raise MatroidInputError(
                f"deletion and contraction sets overlap in {overlap}"
            )
        if not deleted and not contracted:
            return self
        removed = deleted | contracted
        keep = [i for i in range(self.n) if not (removed >> i) & 1]
        old = scatter(keep)
        ranks = self.rank_table
        table = ranks[old | contracted].astype(np.int16) - ranks[contracted]
        return Matroid.from_rank_table([self._labels[i] for i in keep], table)

    def delete(self, subset):
        return self.minor(delete=subset)

    def contract(self, subset):
        return self.minor(contract=subset)

    def restrict(self, subset):
        return self.minor(delete=self.ground & ~self.mask(subset))

    def relabel(self, mapping):
        """
        Rename elements; labels missing from mapping are kept.
        """
        labels = [mapping.get(label, label) for label in self._labels]
        relabelled = Matroid(labels, self._bases, validate=False)
        if "rank_table" in self._cache:
            relabelled._cache["rank_table"] = self._cache["rank_table"]
        return relabelled

    def reindexed(self, labels):
        """
        Same matroid with the storage order given by labels.
        """
        labels = tuple(labels)
        if sorted(labels) != sorted(self._labels):
            raise MatroidInputError(
                "reindexing needs a permutation of the ground set"
            )
        target = [labels.index(label) for label in self._labels]
        bases = [
            mask_of(target[i] for i in bits(basis)) for basis in self._bases
        ]
        return Matroid(labels, bases, validate=False)

    # ---------------------------------------------------------------
    # Equality
    # ---------------------------------------------------------------
    def _canonical(self):
        def build():
            labels = tuple(sorted(self._labels))
            position = [labels.index(label) for label in self._labels]
            bases = sorted(
                mask_of(position[i] for i in bits(basis))
                for basis in self._bases
            )
            return labels, tuple(bases)
        return self.memo("canonical", build)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        return (
            f"Matroid(n={self.n}, rank={self._rank}, "
            f"bases={len(self._bases)})"
        )


def equal(first, second):
    """Label-aligned comparison of basis families."""
    return first == second


def direct_sum(first, second):
    """
    M ⊕ N on the disjoint union of the label sets.

    Raises:
        MatroidInputError: the label sets intersect.
    """
    shared = set(first.labels) & set(second.labels)
    if shared:
        raise MatroidInputError(
            f"direct sum needs disjoint labels; shared {sorted(shared)}"
        )
    labels = first.labels + second.labels
    if len(labels) > MAX_GROUND_SET:
        raise CapacityError(
            f"direct sum has {len(labels)} elements; "
            f"at most {MAX_GROUND_SET} are supported"
        )
    shift = first.n
    bases = [
        left | (right << shift)
        for left in first.bases
        for right in second.bases
    ]
    return Matroid(labels, bases, validate=False)
