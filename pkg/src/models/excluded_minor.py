# -*- coding: utf-8 -*-

"""
Excluded-minor verification for the class of positroids.

M is an excluded minor when it is not a positroid while every M \\ e
and M / e is one; the class is minor-closed, so single-element minors
suffice. Positroid verdicts for minors are cached by basis family since
sweeps meet the same minors again and again.
"""

import logging

from src.models.order_search import find_positroid_order
from src.models.positroid import CheckReport


logger = logging.getLogger(__name__)


class ExcludedMinorVerifier:
    """
    Verifier with a verdict cache shared across calls.

    Args:
        budget (int | None): search budget per component.
    """

    def __init__(self, budget=None):
        self.budget = budget
        self.hits = 0
        self._verdicts = {}

    def positroid_status(self, matroid):
        """
        Returns:
            tuple[str, tuple[str] | None]: the search status and a
            positroid order in the labels of matroid, if any.
        """
        key = matroid.key
        if key in self._verdicts:
            self.hits += 1
            status, indices = self._verdicts[key]
        else:
            order, report = find_positroid_order(matroid, self.budget)
            indices = None if order is None else tuple(
                matroid.index_of(label) for label in order.sequence
            )
            status = report.status
            self._verdicts[key] = (status, indices)
        if indices is None:
            return status, None
        return status, tuple(matroid.labels[i] for i in indices)

    def verify(self, matroid):
        """
        Report whether matroid is an excluded minor.

        The certificate carries the search outcome for the matroid and
        a positroid order for every single-element deletion and
        contraction; a negative report names the minor that fails.
        """
        method = "excluded_minor"
        order, report = find_positroid_order(matroid, self.budget)
        if report.status == "budget_exhausted":
            return CheckReport.inconclusive(
                method, "budget_exhausted", search=report.certificate
            )
        if order is not None:
            return CheckReport.failed(
                method, reason="positroid", order=list(order.sequence)
            )

        minors = []
        for label in matroid.sorted_labels(matroid.ground):
            for operation in ("delete", "contract"):
                minor = getattr(matroid, operation)(label)
                status, found = self.positroid_status(minor)
                if status == "budget_exhausted":
                    return CheckReport.inconclusive(
                        method, "budget_exhausted",
                        minor={"operation": operation, "element": label},
                    )
                if found is None:
                    return CheckReport.failed(
                        method,
                        reason="non-positroid minor",
                        minor={"operation": operation, "element": label},
                    )
                minors.append({
                    "element": label,
                    "operation": operation,
                    "order": list(found),
                })
        logger.debug(f"verified excluded minor; cache hits {self.hits}")
        return CheckReport.passed(
            method, witness=report.certificate, minors=minors
        )


def verify_excluded_minor(matroid, budget=None, verifier=None):
    """
    Args:
        matroid (Matroid): candidate.
        budget (int | None): search budget, from settings if None.
        verifier (ExcludedMinorVerifier | None): reuse a verdict cache.

    Returns:
        CheckReport
    """
    verifier = verifier or ExcludedMinorVerifier(budget)
    return verifier.verify(matroid)
