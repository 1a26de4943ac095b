# -*- coding: utf-8 -*-

"""
Bonding of two matroids along their shared elements.

For T = E(M) ∩ E(N), N' renames each t_i to s_i, and the auxiliary
matroid H is M ⊕ N' with a point q_i added freely to cl({t_i, s_i})
for every i. The bonding is H / Q \\ S on E(M) ∪ E(N). When T is
independent in both matroids it is their free amalgam.
"""

import logging

from src.data.constructors import principal_extension
from src.models.bitset import MAX_GROUND_SET, natural_key, popcount
from src.models.exceptions import (
    BudgetExhausted,
    CapacityError,
    MatroidInputError,
    PreconditionError,
)
from src.models.matroid import direct_sum
from src.models.order_search import (
    find_positroid_order,
    iter_positroid_orders,
)
from src.models.positroid import CheckReport


logger = logging.getLogger(__name__)

SEPARATOR = "#"


# -------------------------------------------------------------------
# Construction
# -------------------------------------------------------------------
class BondingInstance:
    """
    The pair (M, N) with its shared set and auxiliary labels.

    Args:
        first (Matroid): M.
        second (Matroid): N.

    Raises:
        MatroidInputError: no shared labels, or a label uses the
            reserved separator.
        CapacityError: H would exceed the supported ground-set size.
    """

    def __init__(self, first, second):
        for label in first.labels + second.labels:
            if SEPARATOR in label:
                raise MatroidInputError(
                    f"label {label!r} contains the reserved {SEPARATOR!r}"
                )
        shared = sorted(
            set(first.labels) & set(second.labels), key=natural_key
        )
        if not shared:
            raise MatroidInputError("bonding needs shared labels")
        size = first.n + second.n + len(shared)
        if size > MAX_GROUND_SET:
            raise CapacityError(
                f"bonding needs {size} auxiliary-inclusive elements; "
                f"at most {MAX_GROUND_SET} are supported"
            )
        self.first = first
        self.second = second
        self.shared = tuple(shared)
        self.s_labels = tuple(t + SEPARATOR + "s" for t in shared)
        self.q_labels = tuple(t + SEPARATOR + "q" for t in shared)
        self._auxiliary = None

    @property
    def auxiliary(self):
        """H, built once."""
        if self._auxiliary is None:
            renamed = self.second.relabel(
                dict(zip(self.shared, self.s_labels))
            )
            h = direct_sum(self.first, renamed)
            for t, s, q in zip(self.shared, self.s_labels, self.q_labels):
                h = principal_extension(h, (t, s), q)
            self._auxiliary = h
        return self._auxiliary

    def result(self):
        """H / Q \\ S."""
        return self.auxiliary.minor(
            delete=self.s_labels, contract=self.q_labels
        )


def bond(first, second):
    """
    The bonding B_T(M, N) for T the shared labels.

    Returns:
        Matroid on E(M) ∪ E(N), labels of M first.
    """
    instance = BondingInstance(first, second)
    bonded = instance.result()
    logger.debug(
        f"bonded along {list(instance.shared)}: rank {bonded.full_rank}"
    )
    return bonded


def free_amalgam(first, second):
    """
    The bonding when T is independent in both matroids.

    Raises:
        PreconditionError: T is dependent in either matroid.
    """
    shared = BondingInstance(first, second).shared
    for name, matroid in (("first", first), ("second", second)):
        if not matroid.is_independent(shared):
            raise PreconditionError(
                f"shared set {list(shared)} is dependent in the {name} "
                "matroid"
            )
    return bond(first, second)


# -------------------------------------------------------------------
# Positroid criteria
# -------------------------------------------------------------------
def _outcome(method, hypotheses, bonded, budget):
    failed = [name for name, value in hypotheses.items() if value is False]
    open_ = [name for name, value in hypotheses.items() if value is None]
    if failed or open_:
        status = "hypotheses_failed" if failed else "undetermined"
        observed = find_positroid_order(bonded, budget)[1]
        return CheckReport.inconclusive(
            method,
            status,
            hypotheses=hypotheses,
            failed=failed,
            undetermined=open_,
            observed=observed.to_dict(),
        )
    order, report = find_positroid_order(bonded, budget)
    if report.status == "budget_exhausted":
        return CheckReport.inconclusive(
            method, "budget_exhausted", hypotheses=hypotheses,
            search=report.certificate,
        )
    if order is None:
        logger.warning("Bonding under verified hypotheses is no positroid")
        return CheckReport.failed(
            method, hypotheses=hypotheses, search=report.certificate
        )
    return CheckReport.passed(
        method, hypotheses=hypotheses, order=list(order.sequence)
    )


def _common_hypotheses(first, second, shared, budget):
    return {
        "first_loopless": not first.loops(),
        "second_loopless": not second.loops(),
        "first_positroid": find_positroid_order(first, budget)[1].verdict,
        "second_positroid": find_positroid_order(second, budget)[1].verdict,
        "shared_independent_first": first.is_independent(shared),
        "shared_independent_second": second.is_independent(shared),
    }


def bond_theorem_check_1(first, second, budget=None):
    """
    Positroids sharing an independent set of clones have a positroid
    free amalgam.

    Every hypothesis is checked and reported; the bonding is only
    asserted to be a positroid when all of them hold.

    Returns:
        CheckReport: status "true"/"false" when the hypotheses hold,
        otherwise "hypotheses_failed" with the observed outcome.
    """
    method = "bond_check_1"
    instance = BondingInstance(first, second)
    shared = instance.shared
    hypotheses = _common_hypotheses(first, second, shared, budget)
    hypotheses["shared_clones_first"] = first.are_clones(shared)
    hypotheses["shared_clones_second"] = second.are_clones(shared)
    return _outcome(method, hypotheses, instance.result(), budget)


def _has_adjacent_pair(matroid, inner, outer, budget):
    # None when the budget runs out before a witness turns up.
    try:
        for order in iter_positroid_orders(matroid, budget):
            sequence = order.sequence
            n = len(sequence)
            for p in range(n):
                pair = {sequence[p], sequence[(p + 1) % n]}
                if pair & inner and pair & outer:
                    return True
    except BudgetExhausted:
        return None
    return False


def _connected_flats_contain(matroid, outer, shared):
    outer_mask = matroid.mask(outer)
    shared_mask = matroid.mask(shared)
    for flat in matroid.connected_flat_masks():
        if popcount(flat) < 2 or not flat & outer_mask:
            continue
        if shared_mask & ~flat:
            return False
    return True


def bond_theorem_check_2(first, second, subset, budget=None):
    """
    Free-amalgam criterion with a distinguished part P of T.

    Hypotheses: T independent in both; M|cl(T) and N|cl(T) connected;
    P clones in both; every non-singleton connected flat meeting T - P
    contains T; and, in each matroid, some positroid order puts an
    element of P next to an element of T - P. The last clause is
    searched within budget and reported as undetermined if the budget
    runs out.

    Raises:
        PreconditionError: P is empty, not proper, or not inside T.
    """
    method = "bond_check_2"
    instance = BondingInstance(first, second)
    shared = frozenset(instance.shared)
    inner = frozenset(str(x) for x in subset)
    if not inner or not inner < shared:
        raise PreconditionError(
            f"P={sorted(inner, key=natural_key)} must be a nonempty proper "
            f"subset of {sorted(shared, key=natural_key)}"
        )
    outer = shared - inner
    hypotheses = _common_hypotheses(first, second, shared, budget)
    for side, matroid in (("first", first), ("second", second)):
        hypotheses[f"closure_connected_{side}"] = matroid.is_connected_set(
            matroid.closure(shared)
        )
        hypotheses[f"subset_clones_{side}"] = matroid.are_clones(inner)
        hypotheses[f"flats_contain_shared_{side}"] = \
            _connected_flats_contain(matroid, outer, shared)
    # Orders are only searched once every structural clause holds.
    if all(value is True for value in hypotheses.values()):
        for side, matroid in (("first", first), ("second", second)):
            hypotheses[f"adjacent_order_{side}"] = _has_adjacent_pair(
                matroid, inner, outer, budget
            )
    return _outcome(method, hypotheses, instance.result(), budget)
