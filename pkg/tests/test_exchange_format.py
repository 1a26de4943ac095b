# -*- coding: utf-8 -*-

import json

import pytest

from src.data.constructors import uniform
from src.data.exchange_format import MatroidDocument, load_matroid
from src.models.exceptions import (
    BasisExchangeError,
    CyclicFlatAxiomError,
    MatroidInputError,
    ParameterError,
)
from src.models.orders import LinearOrder


def _document(**fields):
    return json.dumps({"format_version": 1, "name": "t", **fields})


def test_syntax_error_has_position():
    with pytest.raises(MatroidInputError, match=r"^doc\.json:2:"):
        MatroidDocument.parse('{\n  "ground": [,]\n}', source="doc.json")


def test_exactly_one_representation():
    text = _document(ground=["1", "2"], bases=[["1"]],
                     transversal=[["1", "2"]])
    with pytest.raises(MatroidInputError, match="exactly one"):
        MatroidDocument.parse(text)
    with pytest.raises(MatroidInputError, match="exactly one"):
        MatroidDocument.parse(_document(ground=["1"]))


def test_label_rules():
    with pytest.raises(MatroidInputError, match="reserved"):
        MatroidDocument.parse(_document(ground=["a#1"], bases=[[]]))
    with pytest.raises(MatroidInputError, match="repeat"):
        MatroidDocument.parse(_document(ground=["a", "a"], bases=[[]]))
    with pytest.raises(MatroidInputError, match="ground"):
        MatroidDocument.parse(_document(bases=[[]]))
    with pytest.raises(MatroidInputError, match="format_version"):
        MatroidDocument.parse(json.dumps({"format_version": 2}))


def test_every_representation_builds(u24):
    bases = MatroidDocument.parse(_document(
        ground=["1", "2", "3", "4"],
        bases=[[a, b] for a in "1234" for b in "1234" if a < b],
    ))
    flats = MatroidDocument.parse(_document(
        ground=["1", "2", "3", "4"],
        cyclic_flats=[{"set": [], "rank": 0},
                      {"set": ["1", "2", "3", "4"], "rank": 2}],
    ))
    presented = MatroidDocument.parse(_document(
        ground=["1", "2", "3", "4"],
        transversal=[["1", "2", "3", "4"], ["1", "2", "3", "4"]],
    ))
    for document in (bases, flats, presented):
        assert document.to_matroid() == u24


def test_family_document():
    document = MatroidDocument.parse(_document(
        family={"family": "closing", "params": [3, 3, 1]}
    ))
    assert document.ground is None
    assert document.to_matroid().n == 7
    broken = MatroidDocument.parse(_document(
        family={"family": "closing", "params": [3, 3]}
    ))
    with pytest.raises(ParameterError):
        broken.to_matroid()


def test_semantic_errors_surface():
    exchange = MatroidDocument.parse(_document(
        ground=["1", "2", "3", "4"], bases=[["1", "2"], ["3", "4"]]
    ))
    with pytest.raises(BasisExchangeError):
        exchange.to_matroid()
    axioms = MatroidDocument.parse(_document(
        ground=["1", "2"], cyclic_flats=[{"set": [], "rank": 1}]
    ))
    with pytest.raises(CyclicFlatAxiomError):
        axioms.to_matroid()


def test_save_and_load(tmp_path, u24):
    order = LinearOrder.parse("2,1,3,4")
    document = MatroidDocument.from_matroid(u24, "U24", {"natural": order})
    path = tmp_path / "u24.json"
    document.save(str(path))
    matroid, loaded = load_matroid(str(path))
    assert matroid == u24
    assert loaded.name == "U24"
    assert loaded.order("natural") == order
    with pytest.raises(MatroidInputError, match="no order"):
        loaded.order("missing")
    assert path.read_text(encoding="utf-8") == document.dumps()


def test_written_bases_are_sorted():
    matroid = uniform(1, 3, ("10", "2", "1"))
    payload = MatroidDocument.from_matroid(matroid, "m").as_dict()
    assert payload["ground"] == ["1", "2", "10"]
    assert payload["bases"] == [["1"], ["2"], ["10"]]


def test_semantic_errors_name_source_and_key(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(_document(
        ground=["1", "2", "3", "4"], bases=[["1", "2"], ["3", "4"]]
    ), encoding="utf-8")
    document = MatroidDocument.load(str(path))
    with pytest.raises(BasisExchangeError) as caught:
        document.to_matroid()
    assert str(caught.value).startswith(f"{path}: 'bases': ")
    assert caught.value.witness[2] in {"1", "2", "3", "4"}

    entries = MatroidDocument.parse(_document(
        ground=["1", "2"],
        cyclic_flats=[{"set": [], "rank": 0}, {"set": ["1", "2"]}],
    ), source="flats.json")
    with pytest.raises(MatroidInputError,
                       match=r"^flats\.json: 'cyclic_flats': entry 1 "):
        entries.to_matroid()


def test_structural_errors_name_the_key():
    with pytest.raises(MatroidInputError, match=r"^d\.json: 'ground': "):
        MatroidDocument.parse(_document(ground=["a", "a"], bases=[[]]),
                              source="d.json")
    with pytest.raises(MatroidInputError, match=r"'orders': 'x' must"):
        MatroidDocument.parse(_document(ground=["a"], bases=[["a"]],
                                        orders={"x": "a"}))
    with pytest.raises(MatroidInputError, match=r"'ground' must be"):
        MatroidDocument.parse(_document(ground="ab", bases=[[]]))
