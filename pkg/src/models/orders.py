# -*- coding: utf-8 -*-

"""
Linear orders on ground sets.

Orders are label sequences. Shifts are 1-based: shift(ord, i) makes the
i-th element least. The mask-level helpers at the end work on index
sequences of a concrete Matroid and back the positroid tests.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Tuple

from src.models.bitset import bits, natural_key
from src.models.exceptions import MatroidInputError


logger = logging.getLogger(__name__)


# -------------------------------------------------------------------
# LinearOrder value
# -------------------------------------------------------------------
@dataclass(frozen=True)
class LinearOrder:
    """
    A permutation of element labels, least first.

    Attributes:
        sequence (tuple[str]): the labels in increasing order.
    """

    sequence: Tuple[str, ...]

    def __post_init__(self):
        sequence = tuple(str(label) for label in self.sequence)
        if len(set(sequence)) != len(sequence):
            raise MatroidInputError("order repeats a label")
        object.__setattr__(self, "sequence", sequence)

    @classmethod
    def natural(cls, labels):
        """Numeric labels in numeric order, then the rest."""
        return cls(tuple(sorted(labels, key=natural_key)))

    @classmethod
    def parse(cls, text):
        """Order from a comma-separated label list."""
        labels = [part.strip() for part in text.split(",") if part.strip()]
        if not labels:
            raise MatroidInputError("empty order")
        return cls(tuple(labels))

    def __len__(self):
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def __str__(self):
        return "<".join(self.sequence)

    @property
    def ground(self):
        return frozenset(self.sequence)

    def position(self, label):
        try:
            return self._positions()[label]
        except KeyError:
            raise MatroidInputError(f"{label!r} is not ordered") from None

    def _positions(self):
        return {label: i for i, label in enumerate(self.sequence)}

    def shift(self, i):
        return shift(self, i)

    def reverse(self):
        return reverse(self)

    def restricted(self, labels):
        """Induced order on a subset."""
        keep = set(labels)
        return LinearOrder(tuple(x for x in self.sequence if x in keep))

    def indices_for(self, matroid):
        """
        The order as a sequence of storage indices of matroid.

        Raises:
            MatroidInputError: the order is not a permutation of E(M).
        """
        if self.ground != frozenset(matroid.labels) or \
                len(self.sequence) != matroid.n:
            raise MatroidInputError(
                "order must be a permutation of the ground set"
            )
        return tuple(matroid.index_of(label) for label in self.sequence)


def shift(order, i):
    """
    The cyclic shift in which the i-th element (1-based) is least.
    """
    n = len(order)
    if not 1 <= i <= max(n, 1):
        raise MatroidInputError(f"shift index {i} outside 1..{n}")
    return LinearOrder(order.sequence[i - 1:] + order.sequence[:i - 1])


def reverse(order):
    return LinearOrder(tuple(reversed(order.sequence)))


# -------------------------------------------------------------------
# Intervals
# -------------------------------------------------------------------
def _check_subset(order, subset):
    subset = frozenset(subset)
    unknown = subset - order.ground
    if unknown:
        raise MatroidInputError(
            f"labels not in the order: {sorted(unknown, key=natural_key)}"
        )
    return subset


def is_interval(order, subset):
    subset = _check_subset(order, subset)
    if not subset:
        return True
    positions = sorted(order.position(x) for x in subset)
    return positions[-1] - positions[0] + 1 == len(positions)


def is_cyclic_interval(order, subset):
    """
    True iff the subset or its complement is an interval.
    """
    subset = _check_subset(order, subset)
    return is_interval(order, subset) or \
        is_interval(order, order.ground - subset)


# -------------------------------------------------------------------
# Gale and lexicographic comparison
# -------------------------------------------------------------------
def _sorted_positions(order, subset):
    return sorted(order.position(x) for x in _check_subset(order, subset))


def _same_size(first, second):
    if len(first) != len(second):
        raise MatroidInputError(
            f"sets must have equal size ({len(first)} vs {len(second)})"
        )


def gale_leq(order, first, second):
    """X ≤_G Y: the i-th least of X is at most the i-th least of Y."""
    left = _sorted_positions(order, first)
    right = _sorted_positions(order, second)
    _same_size(left, right)
    return all(x <= y for x, y in zip(left, right))


def lex_leq(order, first, second):
    """X ≤_L Y: equal, or smaller at the first differing position."""
    left = _sorted_positions(order, first)
    right = _sorted_positions(order, second)
    _same_size(left, right)
    return left <= right


def gale_basis(matroid, order):
    """
    The lexicographically least basis, picked greedily along order.

    Returns:
        frozenset[str]: basis labels.
    """
    sequence = order.indices_for(matroid)
    return matroid.labels_of(gale_basis_mask(matroid, sequence))


# -------------------------------------------------------------------
# Base sorting
# -------------------------------------------------------------------
def sort_pair(order, first, second):
    """
    Merge two equal-size sets as a multiset and split by parity.

    Returns:
        tuple[frozenset, frozenset]: elements at odd and at even
        positions (1-based) of the merged list.
    """
    left = _sorted_positions(order, first)
    right = _sorted_positions(order, second)
    _same_size(left, right)
    merged = sorted(left + right)
    odd = frozenset(order.sequence[p] for p in merged[0::2])
    even = frozenset(order.sequence[p] for p in merged[1::2])
    return odd, even


# -------------------------------------------------------------------
# Non-crossing partitions
# -------------------------------------------------------------------
def _check_partition(order, blocks):
    blocks = [frozenset(block) for block in blocks]
    seen = set()
    for block in blocks:
        if not block:
            raise MatroidInputError("partition blocks must be non-empty")
        if seen & block:
            raise MatroidInputError("partition blocks must be disjoint")
        seen |= block
    if seen != set(order.ground):
        raise MatroidInputError("blocks must cover the ordered ground set")
    return blocks


def _crosses(labels_in_order, first, second):
    # Runs of first/second along the order; four runs means a<b<c<d with
    # a, c in one block and b, d in the other.
    runs, last = 0, None
    for label in labels_in_order:
        side = 1 if label in first else 2 if label in second else None
        if side is not None and side != last:
            runs += 1
            last = side
            if runs >= 4:
                return True
    return False


def is_noncrossing(order, partition):
    """
    Four-point crossing test over every pair of blocks.

    Args:
        order (LinearOrder): order on the ground set.
        partition (Iterable[Iterable[str]]): the blocks.

    Returns:
        bool
    """
    blocks = _check_partition(order, partition)
    return not any(
        _crosses(order.sequence, first, second)
        for first, second in combinations(blocks, 2)
    )


def is_noncrossing_by_definition(order, partition):
    """
    Oracle: for each pair of blocks there is a set A containing one and
    avoiding the other with A or E - A an interval.
    """
    blocks = _check_partition(order, partition)
    n = len(order)
    intervals = [
        frozenset(order.sequence[i:j])
        for i in range(n) for j in range(i, n + 1)
    ]
    ground = order.ground

    def separated(first, second):
        for interval in intervals:
            for side in (interval, ground - interval):
                if first <= side and not (second & side):
                    return True
        return False

    return all(
        separated(first, second)
        for first, second in combinations(blocks, 2)
    )


# -------------------------------------------------------------------
# Mask-level helpers over index sequences
# -------------------------------------------------------------------
def gale_basis_mask(matroid, sequence):
    ranks = matroid.rank_table
    basis, size = 0, 0
    for e in sequence:
        if ranks[basis | (1 << e)] > size:
            basis |= 1 << e
            size += 1
    return basis


def shifted(sequence, i):
    """0-based rotation of an index sequence."""
    return sequence[i:] + sequence[:i]


def arc_labels(sequence, barrier):
    """
    Split the cyclic sequence at the elements of barrier.

    Args:
        sequence (tuple[int]): index order.
        barrier (int): nonempty mask.

    Returns:
        dict[int, int]: arc number of every element outside barrier;
        two elements share an arc iff some cyclic interval disjoint
        from barrier contains both.
    """
    n = len(sequence)
    start = next(p for p, e in enumerate(sequence) if (barrier >> e) & 1)
    arcs, arc = {}, 0
    for step in range(1, n + 1):
        e = sequence[(start + step) % n]
        if (barrier >> e) & 1:
            arc += 1
        else:
            arcs[e] = arc
    return arcs


def maximal_cyclic_intervals(sequence, subset):
    """
    Maximal cyclic intervals contained in subset, as masks.
    """
    n = len(sequence)
    if subset == 0:
        return []
    if all((subset >> e) & 1 for e in sequence):
        return [subset]
    start = next(p for p, e in enumerate(sequence) if not (subset >> e) & 1)
    pieces, current = [], 0
    for step in range(1, n + 1):
        e = sequence[(start + step) % n]
        if (subset >> e) & 1:
            current |= 1 << e
        elif current:
            pieces.append(current)
            current = 0
    if current:
        pieces.append(current)
    return pieces


def cyclic_interval_mask_test(sequence, subset):
    """Mask form of is_cyclic_interval."""
    return len(maximal_cyclic_intervals(sequence, subset)) <= 1


def interleaved(sequence, first, second):
    """Cyclic four-point crossing test between two disjoint masks."""
    runs, last = 0, None
    for e in sequence:
        side = 1 if (first >> e) & 1 else 2 if (second >> e) & 1 else None
        if side is not None and side != last:
            runs += 1
            last = side
    return runs >= 4


def mask_positions(sequence, mask):
    position = {e: p for p, e in enumerate(sequence)}
    return sorted(position[e] for e in bits(mask))
