# -*- coding: utf-8 -*-

"""
Subset-as-integer helpers.

A subset of a ground set {0, ..., n-1} is an int whose bit i is set
when element i belongs to it. Whole-powerset computations use numpy
arrays indexed by mask; the index tables below are cached per n.
"""

from functools import lru_cache

import numpy as np


MAX_GROUND_SET = 16


def natural_key(label):
    """
    Sort key placing numeric labels first in numeric order.

    Args:
        label (str): element label.

    Returns:
        tuple: comparable key.
    """
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


def popcount(mask):
    return bin(mask).count("1")


def bits(mask):
    """
    Yield the element indices of a mask in increasing order.

    Args:
        mask (int): subset mask.

    Yields:
        int: element index.
    """
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def mask_of(indices):
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def full_mask(n):
    return (1 << n) - 1


def submasks(mask):
    """
    Yield every submask of mask, the mask itself first and 0 last.
    """
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# -------------------------------------------------------------------
# Cached numpy tables
# -------------------------------------------------------------------
@lru_cache(maxsize=None)
def mask_range(n):
    """All masks 0 .. 2^n - 1 as an int64 array."""
    masks = np.arange(1 << n, dtype=np.int64)
    masks.setflags(write=False)
    return masks


@lru_cache(maxsize=None)
def popcount_table(n):
    """Popcount of every mask over n elements."""
    masks = mask_range(n)
    counts = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        counts += ((masks >> i) & 1).astype(np.int8)
    counts.setflags(write=False)
    return counts


@lru_cache(maxsize=None)
def masks_with_bit(n, i):
    """Masks over n elements containing element i."""
    masks = mask_range(n)
    selected = masks[(masks >> i) & 1 == 1]
    selected.setflags(write=False)
    return selected


@lru_cache(maxsize=None)
def masks_without_bits(n, i, j):
    """Masks over n elements avoiding both elements i and j."""
    masks = mask_range(n)
    forbidden = (1 << i) | (1 << j)
    selected = masks[(masks & forbidden) == 0]
    selected.setflags(write=False)
    return selected


def scatter(positions):
    """
    Embed the powerset of a smaller ground set into a larger one.

    Args:
        positions (Sequence[int]): old index of each new element.

    Returns:
        np.ndarray: for every new mask, the corresponding old mask.
    """
    k = len(positions)
    masks = mask_range(k)
    out = np.zeros(1 << k, dtype=np.int64)
    for j, position in enumerate(positions):
        out |= ((masks >> j) & 1) << position
    return out
