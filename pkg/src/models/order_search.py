# -*- coding: utf-8 -*-

"""
Positroid-order search and order assembly.

The search places elements left to right. For every connected flat F
and every component K of M / F with |K| >= 2 it tracks how many
alternating runs of F- and K-elements the prefix has; four runs mean
K and F interleave, which no extension can repair, and a complete order
with at most three runs everywhere has the cyclic interval property.
The least label is fixed in first place and an order is kept only if
its second element precedes its last, so each dihedral class of orders
is met once.
"""

import logging

from src.config.settings import get_settings
from src.models.bitset import bits, natural_key, popcount
from src.models.exceptions import (
    BudgetExhausted,
    InternalConsistencyError,
    MatroidInputError,
    PreconditionError,
)
from src.models.orders import (
    LinearOrder,
    interleaved,
)
from src.models.positroid import (
    CheckReport,
    cip_pairs,
    forced_intervals,
    is_positroid_order_cip,
)


logger = logging.getLogger(__name__)


# -------------------------------------------------------------------
# Depth-first search
# -------------------------------------------------------------------
class OrderSearch:
    """
    Enumerate positroid orders of a loopless matroid, one per dihedral
    class, lexicographically in natural label order.

    Args:
        matroid (Matroid): loopless matroid.
        budget (int): maximum number of visited partial orders.

    Raises:
        PreconditionError: matroid has loops.
    """

    def __init__(self, matroid, budget):
        if matroid.loops():
            raise PreconditionError("order search needs a loopless matroid")
        self.matroid = matroid
        self.budget = budget
        self.visited = 0

        pairs = cip_pairs(matroid)
        self._sides = [[] for _ in range(matroid.n)]
        for p, (flat, block) in enumerate(pairs):
            for e in bits(flat):
                self._sides[e].append((p, 1))
            for e in bits(block):
                self._sides[e].append((p, 2))
        self._runs = [0] * len(pairs)
        self._last = [0] * len(pairs)
        self._candidates = sorted(
            range(matroid.n), key=lambda e: natural_key(matroid.labels[e])
        )
        self._rank = {e: i for i, e in enumerate(self._candidates)}

    def _push(self, e):
        changed, ok = [], True
        for p, side in self._sides[e]:
            if self._last[p] != side:
                changed.append((p, self._runs[p], self._last[p]))
                self._runs[p] += 1
                self._last[p] = side
                if self._runs[p] >= 4:
                    ok = False
        return ok, changed

    def _pop(self, changed):
        for p, runs, last in changed:
            self._runs[p] = runs
            self._last[p] = last

    def _tick(self):
        self.visited += 1
        if self.visited > self.budget:
            raise BudgetExhausted(self.visited)

    def index_orders(self):
        """
        Yield orders as tuples of storage indices.

        Raises:
            BudgetExhausted: more than budget partial orders visited.
        """
        n = self.matroid.n
        if n <= 2:
            self._tick()
            yield tuple(self._candidates)
            return
        first = self._candidates[0]
        _, changed = self._push(first)
        yield from self._extend([first], {first})
        self._pop(changed)

    def _extend(self, sequence, used):
        self._tick()
        n = self.matroid.n
        if len(sequence) == n:
            if self._rank[sequence[1]] < self._rank[sequence[-1]]:
                yield tuple(sequence)
            return
        remaining = [e for e in self._candidates if e not in used]
        for e in remaining:
            # The second element must precede some later element.
            if len(sequence) == 1 and e == remaining[-1]:
                continue
            ok, changed = self._push(e)
            if ok:
                sequence.append(e)
                used.add(e)
                yield from self._extend(sequence, used)
                sequence.pop()
                used.discard(e)
            self._pop(changed)

    def orders(self):
        labels = self.matroid.labels
        for found in self.index_orders():
            yield LinearOrder(tuple(labels[e] for e in found))


def _budget(budget):
    return get_settings().search_budget if budget is None else budget


def iter_positroid_orders(matroid, budget=None):
    """
    Every positroid order of a loopless matroid up to cyclic shift and
    reversal, in lexicographic order.

    Raises:
        PreconditionError: loops present.
        BudgetExhausted: search budget exceeded.
    """
    return OrderSearch(matroid, _budget(budget)).orders()


# -------------------------------------------------------------------
# Components
# -------------------------------------------------------------------
def assemble_component_order(matroid, orders):
    """
    Concatenate per-component orders.

    Args:
        matroid (Matroid): input matroid.
        orders (Iterable[LinearOrder]): one order per component.

    Returns:
        LinearOrder

    Raises:
        MatroidInputError: the orders do not match the components.
    """
    orders = list(orders)
    expected = {
        matroid.labels_of(block) for block in matroid.component_masks()
    }
    given = [order.ground for order in orders]
    if len(set(given)) != len(given) or set(given) != expected:
        raise MatroidInputError(
            "orders must cover the components of the matroid exactly"
        )
    return LinearOrder(
        tuple(label for order in orders for label in order.sequence)
    )


def validate_component_order(matroid, order):
    """
    An order whose component partition is non-crossing and which
    induces a positroid order on every component.
    """
    method = "components"
    order.indices_for(matroid)
    loops = matroid.loops()
    stripped = matroid.delete(loops) if loops else matroid
    induced = order.restricted(stripped.labels)
    sequence = induced.indices_for(stripped)
    blocks = stripped.component_masks()
    for i, first in enumerate(blocks):
        for second in blocks[i + 1:]:
            if interleaved(sequence, first, second):
                return CheckReport.failed(
                    method,
                    crossing=[
                        stripped.sorted_labels(first),
                        stripped.sorted_labels(second),
                    ],
                )
    for block in blocks:
        component = stripped.restrict(block)
        report = is_positroid_order_cip(
            component, induced.restricted(component.labels)
        )
        if not report.verdict:
            return CheckReport.failed(
                method,
                component=stripped.sorted_labels(block),
                detail=report.certificate,
            )
    return CheckReport.passed(method)


# -------------------------------------------------------------------
# Search front ends
# -------------------------------------------------------------------
def find_positroid_order(matroid, budget=None):
    """
    Search a positroid order component by component.

    Loops are appended at the end; they never affect the verdict.

    Args:
        matroid (Matroid): input matroid.
        budget (int | None): per-component budget, from settings if None.

    Returns:
        tuple[LinearOrder | None, CheckReport]: the order (None when
        there is none or the budget ran out) and the report. A negative
        report names the component that failed together with its flats
        that every positroid order must make cyclic intervals.
    """
    method = "search"
    budget = _budget(budget)
    loops = matroid.loops()
    stripped = matroid.delete(loops) if loops else matroid
    extra = {"deleted_loops": matroid.sorted_labels(loops)} if loops else {}

    pieces, visited = [], 0
    for block in stripped.component_masks():
        component = stripped.restrict(block)
        search = OrderSearch(component, budget)
        logger.debug(f"Searching component of size {component.n}")
        try:
            found = next(search.orders(), None)
        except BudgetExhausted as error:
            logger.info(f"Budget exhausted after {error.visited} nodes")
            return None, CheckReport.inconclusive(
                method,
                "budget_exhausted",
                component=component.sorted_labels(component.ground),
                visited=error.visited,
                **extra,
            )
        visited += search.visited
        if found is None:
            return None, CheckReport.failed(
                method,
                component=component.sorted_labels(component.ground),
                forced_intervals=[
                    component.sorted_labels(flat)
                    for flat in forced_intervals(component)
                ],
                visited=visited,
                **extra,
            )
        pieces.append(found)

    order = assemble_component_order(stripped, pieces)
    full = LinearOrder(order.sequence + tuple(matroid.sorted_labels(loops)))
    if not is_positroid_order_cip(matroid, full).verdict:
        raise InternalConsistencyError(
            f"search produced a rejected order {full}"
        )
    logger.info(f"Found positroid order {full}")
    return full, CheckReport.passed(
        method, order=list(full.sequence), visited=visited, **extra
    )


def is_positroid(matroid, budget=None):
    """Report whether some positroid order exists."""
    return find_positroid_order(matroid, budget)[1]


def has_interval_positroid_order(matroid, budget=None):
    """
    A positroid order in which every proper connected flat is an
    interval, or None. Such an order exists exactly when the free
    extension of the loopless matroid is a positroid.

    Raises:
        PreconditionError: loops present.
        BudgetExhausted: search budget exceeded.
    """
    flats = [
        flat for flat in matroid.connected_flat_masks()
        if flat != matroid.ground and popcount(flat) >= 2
    ]
    for order in iter_positroid_orders(matroid, budget):
        for candidate in (order, order.reverse()):
            sequence = candidate.indices_for(matroid)
            for i in range(matroid.n):
                rotated = sequence[i:] + sequence[:i]
                if all(_is_interval(rotated, flat) for flat in flats):
                    return LinearOrder(
                        tuple(matroid.labels[e] for e in rotated)
                    )
    return None


def _is_interval(sequence, mask):
    positions = [p for p, e in enumerate(sequence) if (mask >> e) & 1]
    return positions[-1] - positions[0] + 1 == len(positions)


# -------------------------------------------------------------------
# Constructed orders
# -------------------------------------------------------------------
def _gather(sequence, members):
    return [x for x in sequence if x in members] + \
        [x for x in sequence if x not in members]


def _rotate_to(sequence, label):
    i = sequence.index(label)
    return sequence[i:] + sequence[:i]


def _check_clone_classes(matroid, order, classes):
    seen = set()
    for i, members in enumerate(classes):
        name = sorted(members, key=natural_key)
        if not members <= order.ground:
            raise PreconditionError(f"set {i + 1} {name} leaves the ground")
        if seen & members:
            raise PreconditionError(f"set {i + 1} {name} overlaps another")
        if not matroid.are_clones(members):
            raise PreconditionError(f"set {i + 1} {name} is not clones")
        seen |= members
    if not is_positroid_order_cip(matroid, order).verdict:
        raise PreconditionError(f"{order} is not a positroid order")


def _step_into(sequence, before, after):
    # A cyclically adjacent pair (y, x) with y in before and x in after.
    n = len(sequence)
    return next((
        (sequence[p], sequence[(p + 1) % n]) for p in range(n)
        if sequence[p] in before and sequence[(p + 1) % n] in after
    ), None)


def _gather_pair(sequence, first, second):
    pair = _step_into(sequence, second, first)
    if pair is None:
        sequence = sequence[::-1]
        pair = _step_into(sequence, second, first)
    if pair is None:
        raise PreconditionError(
            "sets 1 and 2 have no cyclically adjacent elements"
        )
    y, x = pair
    # x first and y last, then gather the first set at the front.
    sequence = _gather(_rotate_to(sequence, x), first)
    # Reversed, y leads; gathering the second set keeps the first
    # set at the far end.
    return _gather(list(reversed(sequence)), second)


def clone_interval_order(matroid, order, classes):
    """
    Rework a positroid order so that each given set of clones is a
    cyclic interval, and so is the union of the first two.

    Each set in turn is pulled to the front of a suitable rotation;
    the relative order inside and outside the set is kept.

    Args:
        matroid (Matroid): a positroid.
        order (LinearOrder): a positroid order for it.
        classes (Sequence[Iterable[str]]): pairwise disjoint clone sets;
            some element of the first is cyclically adjacent to some
            element of the second.

    Returns:
        LinearOrder

    Raises:
        PreconditionError: naming the set that breaks a hypothesis.
    """
    order.indices_for(matroid)
    classes = [frozenset(str(x) for x in c) for c in classes]
    _check_clone_classes(matroid, order, classes)

    sequence = list(order.sequence)
    rest = classes
    if len(classes) >= 2:
        sequence = _gather_pair(sequence, classes[0], classes[1])
        rest = classes[2:]

    for members in rest:
        if not members:
            continue
        lead = next(x for x in sequence if x in members)
        sequence = _gather(_rotate_to(sequence, lead), members)

    result = LinearOrder(tuple(sequence))
    if not is_positroid_order_cip(matroid, result).verdict:
        raise InternalConsistencyError(
            f"clone gathering produced a rejected order {result}"
        )
    return result


def three_cyclic_flat_order(matroid):
    """
    Positroid order for a matroid whose three proper nonempty cyclic
    flats Z1, Z2, Z3 cover the ground set and have empty common
    intersection: Z1∩Z3, Z1 only, Z1∩Z2, Z2 only, Z2∩Z3, Z3 only.

    Raises:
        PreconditionError: the cyclic flats are not of that shape.
    """
    ground = matroid.ground
    proper = [
        z for z in matroid.cyclic_flat_masks() if z and z != ground
    ]
    if len(proper) != 3:
        raise PreconditionError(
            f"expected three proper nonempty cyclic flats, "
            f"found {len(proper)}"
        )
    z1, z2, z3 = proper
    if z1 | z2 | z3 != ground or z1 & z2 & z3:
        raise PreconditionError(
            "cyclic flats must cover the ground set and have empty "
            "common intersection"
        )
    segments = [
        z1 & z3,
        z1 & ~(z2 | z3),
        z1 & z2,
        z2 & ~(z1 | z3),
        z2 & z3,
        z3 & ~(z1 | z2),
    ]
    return LinearOrder(tuple(
        label for segment in segments
        for label in matroid.sorted_labels(segment)
    ))
