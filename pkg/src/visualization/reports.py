# -*- coding: utf-8 -*-

"""
Report documents for the command line.

A report document is the JSON object a command prints:

    {
      "command": "check-order",
      "arguments": {"file": "...", "order": [...], "method": "cip"},
      "method": "cip",
      "verdict": false,
      "status": "false",
      "certificate": {...}
    }

plus "timing" when requested. replay_certificate feeds a stored
document back through the library and checks that its witness still
supports the verdict.
"""

import json
import logging
from itertools import combinations

import pandas as pd

from src.models.bitset import natural_key
from src.models.exceptions import MatroidInputError
from src.models.order_search import find_positroid_order
from src.models.orders import LinearOrder, interleaved, sort_pair
from src.models.positroid import (
    ORDER_TESTS,
    CheckReport,
    grassmann_necklace,
    is_forbidden_minor,
    is_positroid_order_cip,
    necklace_matroid,
    strip_loops,
)


logger = logging.getLogger(__name__)


# -------------------------------------------------------------------
# Building and writing
# -------------------------------------------------------------------
def build_report(command, arguments, report, timing=None):
    """
    Args:
        command (str): CLI command name.
        arguments (dict): the arguments worth echoing.
        report (CheckReport | dict): the outcome.
        timing (float | None): wall seconds, omitted when None.

    Returns:
        dict
    """
    outcome = report.to_dict() if isinstance(report, CheckReport) else report
    document = {"command": command, "arguments": arguments}
    document.update(outcome)
    if timing is not None:
        document["timing"] = round(timing, 6)
    return document


def dumps(document):
    """Stable JSON text: sorted keys, two-space indent."""
    return json.dumps(
        document, indent=2, sort_keys=True, ensure_ascii=False
    ) + "\n"


def load_report(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as error:
        raise MatroidInputError(
            f"{path}:{error.lineno}:{error.colno}: {error.msg}"
        ) from None


# -------------------------------------------------------------------
# Matroid summaries
# -------------------------------------------------------------------
def _label_list(labels):
    return sorted(labels, key=natural_key)


def cyclic_flat_table(matroid):
    """
    Cyclic flats as a DataFrame with columns set, size and rank,
    sorted by rank then natural label order.
    """
    family = matroid.cyclic_flats()
    frame = pd.DataFrame(family.as_records())
    if frame.empty:
        return pd.DataFrame(columns=["set", "size", "rank"])
    frame["size"] = frame["set"].apply(len)
    frame["key"] = frame["set"].apply(
        lambda s: tuple(natural_key(x) for x in s)
    )
    frame = frame.sort_values(["rank", "size", "key"], kind="mergesort")
    return frame[["set", "size", "rank"]].reset_index(drop=True)


def info_report(matroid, name):
    """
    Summary of a matroid: size, rank, basis count, components, cyclic
    flats with ranks and clonal classes.
    """
    components = sorted(
        matroid.components().as_lists(),
        key=lambda block: [natural_key(x) for x in block],
    )
    clonal = sorted(
        matroid.clonal_classes().as_lists(),
        key=lambda block: [natural_key(x) for x in block],
    )
    table = cyclic_flat_table(matroid)
    certificate = {
        "name": name,
        "n": matroid.n,
        "rank": matroid.full_rank,
        "bases": len(matroid.bases),
        "loops": _label_list(matroid.labels_of(matroid.loops())),
        "coloops": _label_list(matroid.labels_of(matroid.coloops())),
        "components": components,
        "cyclic_flats": [
            {"set": row.set, "rank": int(row.rank)}
            for row in table.itertuples(index=False)
        ],
        "clonal_classes": clonal,
    }
    return CheckReport("info", True, "true", certificate)


def render_text(document):
    """
    Human-readable rendering of a report document.
    """
    lines = [
        f"command:  {document.get('command')}",
        f"method:   {document.get('method')}",
        f"status:   {document.get('status')}",
    ]
    certificate = document.get("certificate", {})
    flats = certificate.get("cyclic_flats")
    for key in sorted(certificate):
        if key == "cyclic_flats":
            continue
        lines.append(f"{key}: {json.dumps(certificate[key])}")
    if flats:
        frame = pd.DataFrame(flats)
        frame["set"] = frame["set"].apply(
            lambda s: "{" + ",".join(s) + "}"
        )
        lines.append("cyclic flats:")
        lines.append(frame.to_string(index=False))
    if "timing" in document:
        lines.append(f"timing:   {document['timing']:.3f}s")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------
# Certificate replay
# -------------------------------------------------------------------
def _necklace_problems(stripped, induced, certificate):
    candidate = certificate["non_basis"]
    problems = []
    if stripped.is_basis(candidate):
        problems.append("non_basis is a basis")
    intersection = necklace_matroid(grassmann_necklace(stripped, induced))
    if not intersection.is_basis(candidate):
        problems.append("non_basis lies outside the intersection")
    return problems


def _sorting_problems(stripped, induced, certificate):
    first, second = certificate["pair"]
    problems = []
    if not (stripped.is_basis(first) and stripped.is_basis(second)):
        problems.append("pair members are not bases")
    odd, even = sort_pair(induced, first, second)
    if stripped.is_basis(odd) and stripped.is_basis(even):
        problems.append("pair sorts into two bases")
    return problems


def _cip_problems(stripped, sequence, certificate):
    flat = stripped.mask(certificate["flat"])
    block = stripped.mask(certificate["component"])
    problems = []
    if flat not in stripped.connected_flat_masks():
        problems.append("flat is not a connected flat")
    if block not in stripped.components_of(
        stripped.ground & ~flat, contract=flat
    ):
        problems.append("component is not a component of M / F")
    if not interleaved(sequence, flat, block):
        problems.append("flat does not split the component")
    return problems


def _minor_problems(stripped, sequence, certificate):
    minor = certificate["minor"]
    a, b = (stripped.index_of(x) for x in minor["circuit"])
    e, f = (stripped.index_of(x) for x in minor["cocircuit"])
    contracted = stripped.mask(minor["contracted"])
    problems = []
    if not stripped.is_independent(minor["contracted"]):
        problems.append("contracted set is dependent")
    if not is_forbidden_minor(stripped, contracted, a, b, e, f):
        problems.append("minor is not a 2-circuit plus a 2-cocircuit")
    if not interleaved(sequence, (1 << a) | (1 << b), (1 << e) | (1 << f)):
        problems.append("circuit is a cyclic interval")
    return problems


def _flag_problems(stripped, sequence, certificate):
    first, second = (stripped.mask(c) for c in certificate["crossing"])
    if not interleaved(sequence, first, second):
        return ["flag blocks do not cross"]
    return []


def _witness_problems(matroid, order, method, certificate):
    # Independent checks of the witness a negative order test names.
    stripped, induced, _ = strip_loops(matroid, order)
    sequence = induced.indices_for(stripped)
    problems = []
    if method == "necklace" and "non_basis" in certificate:
        problems += _necklace_problems(stripped, induced, certificate)
    if method == "sorting" and "pair" in certificate:
        problems += _sorting_problems(stripped, induced, certificate)
    if "flat" in certificate and "component" in certificate:
        problems += _cip_problems(stripped, sequence, certificate)
    if "minor" in certificate:
        problems += _minor_problems(stripped, sequence, certificate)
    if method == "flags" and "crossing" in certificate:
        problems += _flag_problems(stripped, sequence, certificate)
    return problems


def _replay_search(matroid, certificate, verdict):
    problems = []
    if verdict:
        order = LinearOrder(tuple(certificate["order"]))
        if not is_positroid_order_cip(matroid, order).verdict:
            problems.append("stored order is not a positroid order")
        return problems
    if find_positroid_order(matroid)[0] is not None:
        problems.append("matroid has a positroid order")
    return problems


def _replay_exmin(matroid, certificate, verdict):
    problems = []
    if not verdict:
        return problems
    if find_positroid_order(matroid)[0] is not None:
        problems.append("matroid is a positroid")
    for entry in certificate.get("minors", []):
        minor = getattr(matroid, entry["operation"])(entry["element"])
        order = LinearOrder(tuple(entry["order"]))
        if not is_positroid_order_cip(minor, order).verdict:
            problems.append(
                f"{entry['operation']} {entry['element']}: stored order "
                "fails"
            )
    expected = {
        (label, operation)
        for label in matroid.labels
        for operation in ("delete", "contract")
    }
    seen = {
        (entry["element"], entry["operation"])
        for entry in certificate.get("minors", [])
    }
    if seen != expected:
        problems.append("minor list does not cover every element")
    return problems


def replay_certificate(matroid, document):
    """
    Re-run the check behind a report document.

    The verdict is recomputed and the witness is checked on its own
    terms: a stored order must pass, a stored flat must split its
    component, a stored minor must be forbidden, and so on.

    Returns:
        CheckReport: method "replay", true when the document holds.
    """
    method = document.get("method")
    verdict = document.get("verdict")
    certificate = document.get("certificate", {})
    arguments = document.get("arguments", {})
    if verdict is None:
        return CheckReport.inconclusive(
            "replay", "undetermined", reason="stored report has no verdict"
        )

    if method in ORDER_TESTS:
        order = LinearOrder(tuple(arguments["order"]))
        kwargs = {"k": arguments["k"]} if method == "flags" else {}
        again = ORDER_TESTS[method](matroid, order, **kwargs)
        problems = []
        if again.verdict != verdict:
            problems.append(f"verdict is now {again.verdict}")
        if verdict is False:
            problems.extend(
                _witness_problems(matroid, order, method, certificate)
            )
    elif method == "search":
        problems = _replay_search(matroid, certificate, verdict)
    elif method == "excluded_minor":
        problems = _replay_exmin(matroid, certificate, verdict)
    else:
        raise MatroidInputError(f"cannot replay method {method!r}")

    if problems:
        logger.warning(f"Replay of {method} failed: {problems}")
        return CheckReport.failed("replay", replayed=method,
                                  problems=problems)
    return CheckReport.passed("replay", replayed=method)


def agreement(reports):
    """
    Check that every report reaches the same verdict.

    Returns:
        CheckReport: method "all", with each method's report.
    """
    verdicts = {name: report.verdict for name, report in reports.items()}
    disagreeing = [
        (x, y) for x, y in combinations(sorted(verdicts), 2)
        if verdicts[x] != verdicts[y]
    ]
    details = {name: report.to_dict() for name, report in reports.items()}
    if disagreeing:
        logger.error(f"Order tests disagree: {verdicts}")
        return CheckReport.inconclusive(
            "all", "undetermined", verdicts=verdicts, reports=details
        )
    verdict = next(iter(verdicts.values()))
    status = "true" if verdict else "false"
    return CheckReport("all", verdict, status, {"reports": details})
