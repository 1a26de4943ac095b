# -*- coding: utf-8 -*-

"""
Error hierarchy shared by the library and the command-line front end.

The CLI maps these onto exit codes, so every failure a user can cause
must surface as one of the classes below.
"""

from src.models.bitset import natural_key


class MatroidError(Exception):
    """Root of every error raised by the package."""


class MatroidInputError(MatroidError, ValueError):
    """Malformed input: labels, subsets, orders, documents."""


class BasisExchangeError(MatroidInputError):
    """
    A family of sets violates the basis-exchange axiom.

    Attributes:
        witness (tuple): (B, B', a) as label sets and a label.
    """

    def __init__(self, first, second, element):
        self.witness = (first, second, element)
        super().__init__(
            "basis exchange fails for "
            f"B={_fmt(first)}, B'={_fmt(second)}, a={element}"
        )


class CyclicFlatAxiomError(MatroidInputError):
    """
    A cyclic-flats presentation fails one of the axioms (Z0)-(Z3).

    Attributes:
        axiom (str): "Z0", "Z1", "Z2" or "Z3".
        sets (tuple): the violating pair (or single set for Z1).
    """

    def __init__(self, axiom, sets, detail=""):
        self.axiom = axiom
        self.sets = tuple(sets)
        shown = ", ".join(_fmt(s) for s in self.sets)
        message = f"axiom {axiom} fails for {shown}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class NecklaceError(MatroidInputError):
    """Entries do not satisfy the necklace exchange rule."""


class ParameterError(MatroidInputError):
    """Family parameters violate a stated constraint."""


class PreconditionError(MatroidError):
    """Hypotheses of an operation do not hold for the given input."""


class CapacityError(MatroidError):
    """Ground set larger than the supported bound."""


class BudgetExhausted(MatroidError):
    """Order search visited more partial orders than allowed."""

    def __init__(self, visited):
        self.visited = visited
        super().__init__(f"search budget exhausted after {visited} nodes")


class InternalConsistencyError(MatroidError):
    """An invariant guaranteed by theory failed to hold."""


def _fmt(labels):
    if isinstance(labels, str):
        return labels
    return "{" + ",".join(sorted(labels, key=natural_key)) + "}"
