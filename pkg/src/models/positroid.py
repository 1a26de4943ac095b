# -*- coding: utf-8 -*-

"""
Positroid-order tests.

Every test takes a matroid and a LinearOrder and returns a CheckReport
whose certificate names a witness: a non-basis in the necklace
intersection, a basis pair that fails to sort, a connected flat and a
component of its contraction, a forbidden four-element minor, or a
crossing flag. Loops never affect a verdict, so they are deleted first
and listed under "deleted_loops".
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Tuple

import numpy as np

from src.models.bitset import (
    bits,
    mask_of,
    popcount,
    popcount_table,
    submasks,
)
from src.models.exceptions import (
    InternalConsistencyError,
    NecklaceError,
    PreconditionError,
)
from src.models.matroid import Matroid
from src.models.orders import (
    LinearOrder,
    arc_labels,
    cyclic_interval_mask_test,
    gale_basis_mask,
    interleaved,
    maximal_cyclic_intervals,
    shifted,
)


logger = logging.getLogger(__name__)


# -------------------------------------------------------------------
# Reports
# -------------------------------------------------------------------
@dataclass
class CheckReport:
    """
    Verdict of a check plus a JSON-ready certificate.

    Attributes:
        method (str): name of the test that produced the report.
        verdict (bool | None): None when no verdict could be reached.
        status (str): "true", "false", "budget_exhausted",
            "hypotheses_failed" or "undetermined".
        certificate (dict): witness data, labels in natural order.
    """

    method: str
    verdict: Optional[bool]
    status: str
    certificate: dict = field(default_factory=dict)

    @classmethod
    def passed(cls, method, **certificate):
        return cls(method, True, "true", certificate)

    @classmethod
    def failed(cls, method, **certificate):
        return cls(method, False, "false", certificate)

    @classmethod
    def inconclusive(cls, method, status, **certificate):
        return cls(method, None, status, certificate)

    def to_dict(self):
        return {
            "method": self.method,
            "verdict": self.verdict,
            "status": self.status,
            "certificate": self.certificate,
        }


# -------------------------------------------------------------------
# Shared preparation
# -------------------------------------------------------------------
def strip_loops(matroid, order):
    """
    Delete the loops of matroid and restrict order accordingly.

    Returns:
        tuple: (loopless matroid, induced order, sorted loop labels).
    """
    order.indices_for(matroid)
    loops = matroid.loops()
    if not loops:
        return matroid, order, []
    stripped = matroid.delete(loops)
    return (
        stripped,
        order.restricted(stripped.labels),
        matroid.sorted_labels(loops),
    )


def _prepare(matroid, order, strip=True):
    if not strip and matroid.loops():
        raise PreconditionError(
            f"loops present: {matroid.sorted_labels(matroid.loops())}"
        )
    stripped, induced, loops = strip_loops(matroid, order)
    return stripped, induced.indices_for(stripped), loops


def _extra(loops):
    return {"deleted_loops": loops} if loops else {}


def cip_pairs(matroid):
    """
    Every (F, K) with F a connected flat, 2 <= |F| <= n - 2, and K a
    component of M / F with at least two elements.

    Returns:
        tuple[tuple[int, int]]: mask pairs, cached on the matroid.
    """
    def build():
        pairs = []
        for flat in matroid.connected_flat_masks():
            if not 2 <= popcount(flat) <= matroid.n - 2:
                continue
            blocks = matroid.components_of(
                matroid.ground & ~flat, contract=flat
            )
            pairs.extend(
                (flat, block) for block in blocks if popcount(block) >= 2
            )
        return tuple(pairs)
    return matroid.memo("cip_pairs", build)


def forced_intervals(matroid):
    """
    Flats F with M|F and M/F connected, 2 <= |F| <= n - 2: each must be
    a cyclic interval in every positroid order.
    """
    def build():
        return tuple(
            flat for flat in matroid.connected_flat_masks()
            if 2 <= popcount(flat) <= matroid.n - 2
            and matroid.is_connected_set(
                matroid.ground & ~flat, contract=flat
            )
        )
    return matroid.memo("forced_intervals", build)


# -------------------------------------------------------------------
# Grassmann necklaces
# -------------------------------------------------------------------
@dataclass(frozen=True)
class GrassmannNecklace:
    """
    The Gale bases of every shift of an order.

    Attributes:
        order (LinearOrder): the underlying order.
        entries (tuple[frozenset]): entry i is the Gale basis of the
            (i+1)-shift.

    Raises:
        NecklaceError: wrong length, unequal sizes or a broken exchange
            step.
    """

    order: LinearOrder
    entries: Tuple[frozenset, ...]

    def __post_init__(self):
        entries = tuple(frozenset(entry) for entry in self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(self.order)
        if len(entries) != n:
            raise NecklaceError(f"necklace needs {n} entries")
        if len({len(entry) for entry in entries}) > 1:
            raise NecklaceError("necklace entries must have equal size")
        for i, current in enumerate(entries):
            element = self.order.sequence[i]
            following = entries[(i + 1) % n]
            if not current <= self.order.ground:
                raise NecklaceError(f"entry {i + 1} leaves the ground set")
            if element in current:
                if not current - {element} <= following:
                    raise NecklaceError(
                        f"entry {i + 2 if i + 1 < n else 1} does not "
                        f"exchange {element!r} only"
                    )
            elif following != current:
                raise NecklaceError(
                    f"entries {i + 1} and {(i + 1) % n + 1} must agree"
                )

    @property
    def rank(self):
        return len(self.entries[0]) if self.entries else 0


def grassmann_necklace(matroid, order):
    """
    Entry i is the Gale basis of matroid in the i-shift of order.
    """
    sequence = order.indices_for(matroid)
    entries = tuple(
        matroid.labels_of(gale_basis_mask(matroid, shifted(sequence, i)))
        for i in range(matroid.n)
    )
    return GrassmannNecklace(order, entries)


def necklace_matroid(necklace):
    """
    The positroid whose bases are the r-sets J with I_i ≤_G J in the
    i-shift for every i.

    Returns:
        Matroid on necklace.order.sequence (storage order = the order).

    Raises:
        InternalConsistencyError: empty intersection.
    """
    labels = necklace.order.sequence
    n, r = len(labels), necklace.rank
    position = {label: p for p, label in enumerate(labels)}
    pop = popcount_table(n)
    candidates = np.flatnonzero(pop == r)
    keep = np.ones(len(candidates), dtype=bool)
    for i, entry in enumerate(necklace.entries):
        gale = mask_of(position[label] for label in entry)
        prefix = 0
        for step in range(n - 1):
            prefix |= 1 << ((i + step) % n)
            keep &= pop[candidates & prefix] <= popcount(gale & prefix)
    bases = candidates[keep]
    if len(bases) == 0:
        raise InternalConsistencyError("necklace intersection is empty")
    return Matroid(labels, bases.tolist(), validate=False)


def is_positroid_order_necklace(matroid, order):
    """
    Compare the bases with the intersection of the nested matroids of
    the necklace.
    """
    method = "necklace"
    stripped, induced, loops = strip_loops(matroid, order)
    necklace = grassmann_necklace(stripped, induced)
    candidate = necklace_matroid(necklace)
    if candidate == stripped:
        return CheckReport.passed(method, **_extra(loops))
    present = set(stripped.basis_sets())
    extra = next(b for b in candidate.basis_sets() if b not in present)
    return CheckReport.failed(
        method,
        non_basis=candidate.sorted_labels(candidate.mask(extra)),
        **_extra(loops),
    )


# -------------------------------------------------------------------
# Base sorting
# -------------------------------------------------------------------
def is_positroid_order_sorting(matroid, order):
    """
    Every pair of bases must sort, along order, into two bases.
    """
    method = "sorting"
    stripped, sequence, loops = _prepare(matroid, order)
    r = stripped.full_rank
    if r == 0:
        return CheckReport.passed(method, **_extra(loops))

    n = stripped.n
    position_of = np.empty(n, dtype=np.int64)
    position_of[list(sequence)] = np.arange(n)
    bit_at = np.array([1 << e for e in sequence], dtype=np.int64)
    bases = stripped.bases
    rows = np.sort(np.array(
        [[position_of[e] for e in bits(basis)] for basis in bases],
        dtype=np.int64,
    ), axis=1)
    is_basis = np.zeros(1 << n, dtype=bool)
    is_basis[np.asarray(bases, dtype=np.int64)] = True

    for a in range(len(bases)):
        block = rows[a:]
        merged = np.sort(np.concatenate(
            [np.broadcast_to(rows[a], block.shape), block], axis=1
        ), axis=1)
        odd = np.bitwise_or.reduce(bit_at[merged[:, 0::2]], axis=1)
        even = np.bitwise_or.reduce(bit_at[merged[:, 1::2]], axis=1)
        bad = ~(is_basis[odd] & is_basis[even])
        if bad.any():
            offset = int(np.argmax(bad))
            return CheckReport.failed(
                method,
                pair=[
                    stripped.sorted_labels(bases[a]),
                    stripped.sorted_labels(bases[a + offset]),
                ],
                sorted=[
                    stripped.sorted_labels(int(odd[offset])),
                    stripped.sorted_labels(int(even[offset])),
                ],
                **_extra(loops),
            )
    return CheckReport.passed(method, **_extra(loops))


# -------------------------------------------------------------------
# Cyclic interval property
# -------------------------------------------------------------------
def cip_violation(matroid, sequence):
    """
    First (F, K) whose component K is split by F, or None.
    """
    for flat, block in cip_pairs(matroid):
        arcs = arc_labels(sequence, flat)
        if len({arcs[e] for e in bits(block)}) > 1:
            return flat, block
    return None


def is_positroid_order_cip(matroid, order, strip=True):
    """
    Cyclic interval property: each component K of M / F (|K| >= 2) of
    each connected flat F (2 <= |F| <= n - 2) lies in a cyclic interval
    disjoint from F.

    Args:
        strip (bool): delete loops first; when False, loops raise.
    """
    method = "cip"
    stripped, sequence, loops = _prepare(matroid, order, strip)
    violation = cip_violation(stripped, sequence)
    if violation is None:
        return CheckReport.passed(method, **_extra(loops))
    flat, block = violation
    return CheckReport.failed(
        method,
        flat=stripped.sorted_labels(flat),
        component=stripped.sorted_labels(block),
        **_extra(loops),
    )


def is_positroid_order_dual_cyclic(matroid, order):
    """
    Dual form: for each cyclic flat A, 2 <= |A| <= n - 2, with M / A
    connected, M|A is the direct sum of its restrictions to the maximal
    cyclic intervals inside A.

    Raises:
        PreconditionError: coloops present.
    """
    method = "dual_cyclic"
    coloops = matroid.coloops()
    if coloops:
        raise PreconditionError(
            f"coloops present: {matroid.sorted_labels(coloops)}"
        )
    stripped, sequence, loops = _prepare(matroid, order)
    n = stripped.n
    for cyclic in stripped.cyclic_flat_masks():
        if not 2 <= popcount(cyclic) <= n - 2:
            continue
        if not stripped.is_connected_set(
            stripped.ground & ~cyclic, contract=cyclic
        ):
            continue
        pieces = maximal_cyclic_intervals(sequence, cyclic)
        if sum(stripped.rank(piece) for piece in pieces) != \
                stripped.rank(cyclic):
            return CheckReport.failed(
                method,
                cyclic_set=stripped.sorted_labels(cyclic),
                intervals=[stripped.sorted_labels(p) for p in pieces],
                **_extra(loops),
            )
    return CheckReport.passed(method, **_extra(loops))


# -------------------------------------------------------------------
# Four-element minors
# -------------------------------------------------------------------
def is_forbidden_minor(matroid, contracted, a, b, e, f):
    """
    Whether (M / Z)|{a, b, e, f} has {a, b} as a circuit and {e, f} as
    a cocircuit; that minor then has rank two.
    """
    ranks = matroid.rank_table
    base = int(ranks[contracted])

    def r(*elements):
        return int(ranks[contracted | mask_of(elements)]) - base

    return (
        r(a) == 1 and r(b) == 1 and r(a, b) == 1
        and r(a, b, e) == 2 and r(a, b, f) == 2 and r(a, b, e, f) == 2
    )


def _independent_submasks(matroid, region):
    ranks = matroid.rank_table
    for sub in submasks(region):
        if int(ranks[sub]) == popcount(sub):
            yield sub


def _minor_certificate(matroid, contracted, a, b, e, f):
    labels = matroid.labels
    return {
        "circuit": sorted([labels[a], labels[b]]),
        "cocircuit": sorted([labels[e], labels[f]]),
        "contracted": matroid.sorted_labels(contracted),
    }


def scan_rank2_minors(matroid, order):
    """
    Exhaustive oracle: every independent Z and every four elements
    outside it, looking for a forbidden minor whose circuit is not a
    cyclic interval of the induced order.
    """
    method = "rank2_scan"
    stripped, sequence, loops = _prepare(matroid, order)
    ground = stripped.ground
    for contracted in _independent_submasks(stripped, ground):
        free = [x for x in bits(ground & ~contracted)]
        for quad in combinations(free, 4):
            for a, b in combinations(quad, 2):
                e, f = [x for x in quad if x not in (a, b)]
                if not interleaved(sequence, mask_of((a, b)),
                                   mask_of((e, f))):
                    continue
                if is_forbidden_minor(stripped, contracted, a, b, e, f):
                    return CheckReport.failed(
                        method,
                        minor=_minor_certificate(
                            stripped, contracted, a, b, e, f
                        ),
                        **_extra(loops),
                    )
    return CheckReport.passed(method, **_extra(loops))


def _separating_quadruple(sequence, flat, block):
    arcs = arc_labels(sequence, flat)
    members = [x for x in sequence if (block >> x) & 1]
    e = members[0]
    f = next(x for x in members if arcs[x] != arcs[e])
    n = len(sequence)
    position = {x: p for p, x in enumerate(sequence)}

    def next_in_flat(start):
        for step in range(1, n):
            x = sequence[(position[start] + step) % n]
            if (flat >> x) & 1:
                return x
        raise InternalConsistencyError("flat is empty")

    return next_in_flat(e), next_in_flat(f), e, f


def _rank2_witness(matroid, flat, a, b, e, f):
    # Circuit through a, b inside F; cocircuit through e, f of the
    # contraction by the rest of the circuit; contract a basis of the
    # complement of that cocircuit extending C - a, less b.
    ranks = matroid.rank_table
    pair = mask_of((a, b))
    for circuit in matroid.circuit_masks():
        if circuit & ~flat or circuit & pair != pair:
            continue
        rest = circuit & ~pair
        minor = matroid.contract(rest)
        for cocircuit in minor.dual().circuit_masks():
            co = matroid.mask(minor.labels_of(cocircuit))
            if not ((co >> e) & 1 and (co >> f) & 1) or co & pair:
                continue
            basis = circuit & ~(1 << a)
            for x in bits(matroid.ground & ~co & ~basis):
                if ranks[basis | (1 << x)] > ranks[basis]:
                    basis |= 1 << x
            contracted = basis & ~(1 << b)
            if is_forbidden_minor(matroid, contracted, a, b, e, f):
                return contracted
    region = matroid.ground & ~mask_of((a, b, e, f))
    for contracted in _independent_submasks(matroid, region):
        if is_forbidden_minor(matroid, contracted, a, b, e, f):
            return contracted
    return None


def is_positroid_order_rank2(matroid, order):
    """
    No four-element minor that is a 2-circuit plus a 2-cocircuit has
    its circuit failing to be a cyclic interval of the induced order.

    A minor is built from each cyclic-interval violation.
    """
    method = "rank2"
    stripped, sequence, loops = _prepare(matroid, order)
    violation = cip_violation(stripped, sequence)
    if violation is None:
        return CheckReport.passed(method, **_extra(loops))
    flat, block = violation
    a, b, e, f = _separating_quadruple(sequence, flat, block)
    contracted = _rank2_witness(stripped, flat, a, b, e, f)
    if contracted is None:
        raise InternalConsistencyError(
            "no forbidden minor found for a cyclic-interval violation"
        )
    return CheckReport.failed(
        method,
        minor=_minor_certificate(stripped, contracted, a, b, e, f),
        flat=stripped.sorted_labels(flat),
        component=stripped.sorted_labels(block),
        **_extra(loops),
    )


# -------------------------------------------------------------------
# Connected matroids: flats and flags
# -------------------------------------------------------------------
def _require_connected(matroid, minimum_rank):
    if not matroid.is_connected():
        raise PreconditionError("matroid must be connected")
    if matroid.full_rank < minimum_rank:
        raise PreconditionError(
            f"matroid must have rank at least {minimum_rank}"
        )


def check_connected_flat_order(matroid, order):
    """
    For connected M of rank >= 2: every flat F with M|F and M/F
    connected is a cyclic interval.
    """
    method = "arw2"
    _require_connected(matroid, 2)
    sequence = order.indices_for(matroid)
    for flat in matroid.connected_flat_masks():
        if flat == matroid.ground:
            continue
        if not matroid.is_connected_set(
            matroid.ground & ~flat, contract=flat
        ):
            continue
        if not cyclic_interval_mask_test(sequence, flat):
            return CheckReport.failed(
                method, flat=matroid.sorted_labels(flat)
            )
    return CheckReport.passed(method)


def connected_flags(matroid, k):
    """
    Yield chains of flats 0 = F_0 < ... < F_k = E with every
    (M|F_i) / F_{i-1} connected.
    """
    flats = [f for f in matroid.flat_masks() if f != matroid.ground]
    ground = matroid.ground

    def step_ok(lower, upper):
        return matroid.is_connected_set(upper & ~lower, contract=lower)

    def extend(chain):
        last = chain[-1]
        if len(chain) == k:
            if step_ok(last, ground):
                yield chain + [ground]
            return
        for flat in flats:
            if flat != last and last & ~flat == 0 and step_ok(last, flat):
                yield from extend(chain + [flat])

    if matroid.flat_masks()[0] != 0:
        return
    yield from extend([0])


def check_flag_partitions(matroid, order, k=2):
    """
    Every flag of flats with connected steps gives a non-crossing
    partition {F_i - F_{i-1}}.
    """
    method = "flags"
    _require_connected(matroid, 2)
    if not 1 < k <= matroid.full_rank:
        raise PreconditionError(
            f"flag length k={k} must satisfy 1 < k <= {matroid.full_rank}"
        )
    sequence = order.indices_for(matroid)
    for chain in connected_flags(matroid, k):
        blocks = [upper & ~lower for lower, upper in zip(chain, chain[1:])]
        for first, second in combinations(blocks, 2):
            if interleaved(sequence, first, second):
                return CheckReport.failed(
                    method,
                    k=k,
                    flag=[matroid.sorted_labels(f) for f in chain[1:-1]],
                    crossing=[
                        matroid.sorted_labels(first),
                        matroid.sorted_labels(second),
                    ],
                )
    return CheckReport.passed(method, k=k)


ORDER_TESTS = {
    "necklace": is_positroid_order_necklace,
    "sorting": is_positroid_order_sorting,
    "cip": is_positroid_order_cip,
    "dual_cyclic": is_positroid_order_dual_cyclic,
    "rank2": is_positroid_order_rank2,
    "arw2": check_connected_flat_order,
    "flags": check_flag_partitions,
}
