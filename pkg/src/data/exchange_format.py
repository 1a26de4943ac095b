# -*- coding: utf-8 -*-

"""
Matroid exchange documents.

One UTF-8 JSON object per file:

    {
      "format_version": 1,
      "name": "U24",
      "ground": ["1", "2", "3", "4"],
      "bases": [["1", "2"], ...],
      "orders": {"natural": ["1", "2", "3", "4"]}
    }

Exactly one of "bases", "cyclic_flats" (a list of {"set", "rank"}),
"transversal" (a list of label lists) or "family" ({"family",
"params"}) is present. "#" is reserved for derived labels and may not
appear in a label.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from src.data.constructors import (
    CyclicFlatsPresentation,
    TransversalPresentation,
    from_bases,
    from_cyclic_flats,
    transversal,
)
from src.data.families import FamilyParams
from src.models.bitset import natural_key
from src.models.exceptions import MatroidInputError
from src.models.orders import LinearOrder


logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
RESERVED = "#"
REPRESENTATIONS = ("bases", "cyclic_flats", "transversal", "family")


def _sorted_sets(sets):
    listed = [sorted(s, key=natural_key) for s in sets]
    return sorted(
        listed, key=lambda s: [natural_key(x) for x in s]
    )


def _decode(text, source):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise MatroidInputError(
            f"{source}:{error.lineno}:{error.colno}: {error.msg}"
        ) from None
    if not isinstance(data, dict):
        raise MatroidInputError(f"{source}: top level must be an object")
    return data


@dataclass
class MatroidDocument:
    """
    Parsed exchange document.

    Attributes:
        name (str): document name.
        ground (tuple[str] | None): ground labels; optional for family
            documents.
        kind (str): one of REPRESENTATIONS.
        payload: the representation's data, as read.
        orders (dict[str, list[str]]): named orders for reuse.
        source (str): where the document was read from; prefixes errors.
    """

    name: str
    ground: Optional[Tuple[str, ...]]
    kind: str
    payload: object
    orders: Dict[str, list] = field(default_factory=dict)
    source: str = "<document>"

    # ---------------------------------------------------------------
    # Reading
    # ---------------------------------------------------------------
    @classmethod
    def parse(cls, text, source="<document>"):
        """
        Raises:
            MatroidInputError: JSON syntax (with line and column) or
                structural problems.
        """
        data = _decode(text, source)
        version = data.get("format_version", FORMAT_VERSION)
        if version != FORMAT_VERSION:
            raise MatroidInputError(
                f"{source}: 'format_version': unsupported value {version!r}"
            )
        present = [kind for kind in REPRESENTATIONS if kind in data]
        if len(present) != 1:
            raise MatroidInputError(
                f"{source}: exactly one of {list(REPRESENTATIONS)} is "
                f"required; found {present}"
            )
        kind = present[0]

        ground = data.get("ground")
        if ground is None and kind != "family":
            raise MatroidInputError(f"{source}: 'ground' is required")
        if ground is not None:
            if not isinstance(ground, list):
                raise MatroidInputError(
                    f"{source}: 'ground' must be a label list"
                )
            ground = tuple(str(label) for label in ground)
            cls._check_labels(ground, source)

        orders = data.get("orders", {})
        if not isinstance(orders, dict):
            raise MatroidInputError(f"{source}: 'orders' must be an object")
        for key, value in orders.items():
            if not isinstance(value, list):
                raise MatroidInputError(
                    f"{source}: 'orders': {key!r} must be a label list"
                )
        document = cls(
            name=str(data.get("name", os.path.basename(source))),
            ground=ground,
            kind=kind,
            payload=data[kind],
            orders={
                str(k): [str(x) for x in v] for k, v in orders.items()
            },
            source=source,
        )
        logger.debug(f"parsed {source} as {kind}")
        return document

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as f:
            return cls.parse(f.read(), source=path)

    @staticmethod
    def _check_labels(labels, source):
        if len(set(labels)) != len(labels):
            raise MatroidInputError(f"{source}: 'ground': labels repeat")
        for label in labels:
            if not label:
                raise MatroidInputError(f"{source}: 'ground': empty label")
            if RESERVED in label:
                raise MatroidInputError(
                    f"{source}: 'ground': label {label!r} uses reserved "
                    f"{RESERVED!r}"
                )

    # ---------------------------------------------------------------
    # Conversion
    # ---------------------------------------------------------------
    def to_matroid(self):
        """
        Raises:
            MatroidInputError: the representation does not describe a
                matroid on the ground set. The message starts with the
                source and the representation key.
        """
        try:
            return self._build()
        except MatroidInputError as error:
            error.args = (f"{self.source}: '{self.kind}': {error}",)
            raise

    def _build(self):
        if self.kind == "bases":
            return from_bases(self.ground, self.payload)
        if self.kind == "cyclic_flats":
            return from_cyclic_flats(
                CyclicFlatsPresentation.of(self.ground, self._flat_entries())
            )
        if self.kind == "transversal":
            return transversal(
                TransversalPresentation.of(self.ground, self.payload)
            )
        try:
            params = FamilyParams(
                self.payload["family"], tuple(self.payload["params"])
            )
        except (KeyError, TypeError):
            raise MatroidInputError(
                "family needs 'family' and 'params'"
            ) from None
        matroid = params.build()
        if self.ground is not None and \
                set(self.ground) != set(matroid.labels):
            raise MatroidInputError(
                f"ground does not match the labels of {params}"
            )
        return matroid

    def _flat_entries(self):
        flats = []
        for i, entry in enumerate(self.payload):
            try:
                flats.append((entry["set"], int(entry["rank"])))
            except (KeyError, TypeError, ValueError):
                raise MatroidInputError(
                    f"entry {i} needs 'set' and integer 'rank'"
                ) from None
        return flats

    def order(self, name):
        try:
            return LinearOrder(tuple(self.orders[name]))
        except KeyError:
            raise MatroidInputError(
                f"{self.source}: document has no order {name!r}"
            ) from None

    # ---------------------------------------------------------------
    # Writing
    # ---------------------------------------------------------------
    @classmethod
    def from_matroid(cls, matroid, name, orders=None):
        """Bases document with labels in natural order."""
        return cls(
            name=name,
            ground=tuple(sorted(matroid.labels, key=natural_key)),
            kind="bases",
            payload=_sorted_sets(matroid.basis_sets()),
            orders={
                k: list(v.sequence) for k, v in (orders or {}).items()
            },
        )

    def as_dict(self):
        data = {"format_version": FORMAT_VERSION, "name": self.name}
        if self.ground is not None:
            data["ground"] = list(self.ground)
        data[self.kind] = self.payload
        if self.orders:
            data["orders"] = self.orders
        return data

    def dumps(self):
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.dumps())
        logger.info(f"Document written to {path}")


def load_matroid(path):
    """Matroid and document from a file."""
    document = MatroidDocument.load(path)
    return document.to_matroid(), document
