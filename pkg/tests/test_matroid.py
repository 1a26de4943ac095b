# -*- coding: utf-8 -*-

import pytest

from src.data.constructors import parallel_extension, uniform
from src.data.families import gen_k4_family
from src.features.invariants import (
    cyclic_flat_lattice,
    find_isomorphism,
    fingerprint,
    flat_lattice,
    isomorphic,
    lattices_isomorphic,
)
from src.models.exceptions import (
    BasisExchangeError,
    CapacityError,
    MatroidInputError,
)
from src.models.matroid import Matroid, direct_sum, equal
from src.models.order_search import find_positroid_order


def test_uniform_rank_and_bases(u24):
    assert u24.full_rank == 2
    assert len(u24.bases) == 6
    assert u24.rank(["1", "2", "3"]) == 2
    assert u24.rank(["4"]) == 1
    assert u24.rank() == 2


def test_closure_and_flats(u24):
    assert u24.closure(["1"]) == u24.mask(["1"])
    assert u24.closure(["1", "2"]) == u24.ground
    assert len(u24.flats()) == 6
    assert u24.is_flat(["3"])
    assert not u24.is_flat(["1", "2"])


def test_circuits_and_cocircuits(u24):
    circuits = u24.circuits().label_sets()
    assert len(circuits) == 4
    assert all(len(c) == 3 for c in circuits)
    assert all(len(c) == 3 for c in u24.cocircuits())


def test_cyclic_flats_carry_ranks(u24):
    family = u24.cyclic_flats()
    assert family.as_records() == [
        {"set": [], "rank": 0},
        {"set": ["1", "2", "3", "4"], "rank": 2},
    ]
    assert family.rank_of(["1", "2", "3", "4"]) == 2


def test_dual_of_uniform(u24):
    assert u24.dual() == u24
    assert uniform(1, 3).dual() == uniform(2, 3)


def test_loops_and_coloops():
    assert uniform(0, 2).loops() == 0b11
    assert uniform(2, 2).coloops() == 0b11
    assert uniform(1, 2).loops() == 0


def test_minor_operations(u24):
    assert u24.contract("1") == uniform(1, 3, ("2", "3", "4"))
    assert u24.delete("1") == uniform(2, 3, ("2", "3", "4"))
    assert u24.restrict(["1", "2"]) == uniform(2, 2, ("1", "2"))
    assert u24.minor() is u24


def test_minor_rejects_overlap(u24):
    with pytest.raises(MatroidInputError, match="overlap"):
        u24.minor(delete=["1"], contract=["1", "2"])


def test_exchange_failure_carries_witness():
    with pytest.raises(BasisExchangeError) as info:
        Matroid(("1", "2", "3", "4"), [0b0011, 0b1100])
    first, second, element = info.value.witness
    assert element in first and element not in second


def test_unequal_bases_rejected():
    with pytest.raises(MatroidInputError, match="equicardinal"):
        Matroid(("1", "2"), [0b01, 0b11])


def test_capacity_limit():
    with pytest.raises(CapacityError):
        Matroid([str(i) for i in range(17)], [0])


def test_unknown_label(u24):
    with pytest.raises(MatroidInputError, match="unknown element"):
        u24.rank(["9"])


def test_direct_sum_components():
    first = uniform(1, 2, ("a", "b"))
    second = uniform(1, 2, ("c", "d"))
    total = direct_sum(first, second)
    assert total.full_rank == 2
    assert len(total.bases) == 4
    assert not total.is_connected()
    assert total.components().as_lists() == [["a", "b"], ["c", "d"]]
    with pytest.raises(MatroidInputError):
        direct_sum(first, first)


def test_clonal_classes(u24, m_k4):
    assert u24.clonal_classes().as_lists() == [["1", "2", "3", "4"]]
    assert len(m_k4.clonal_classes()) == 6
    assert u24.are_clones(["1", "3"])
    assert not m_k4.are_clones(["1", "2"])


def test_connected_flats_of_k4(m_k4):
    sizes = sorted(len(f) for f in m_k4.connected_flats())
    # six points, four 3-point lines and E
    assert sizes == [1] * 6 + [3] * 4 + [6]


def test_relabel_keeps_structure(u24):
    renamed = u24.relabel({"1": "a", "2": "b", "3": "c", "4": "d"})
    assert not equal(renamed, u24)
    assert isomorphic(renamed, u24)
    assert renamed.reindexed(["d", "c", "b", "a"]) == renamed


def test_whirl_is_not_k4(whirl3, m_k4):
    assert fingerprint(whirl3) != fingerprint(m_k4)
    assert not isomorphic(whirl3, m_k4)


def test_all_ones_k4_family_is_k4(m_k4):
    mapping = find_isomorphism(gen_k4_family(1, 1, 1, 1, 1, 1), m_k4)
    assert mapping is not None
    assert sorted(mapping.values()) == sorted(m_k4.labels)


def test_flat_lattice_of_k4(m_k4):
    lattice = flat_lattice(m_k4)
    assert lattice.number_of_nodes() == 15
    # 1 is covered by the lines 123, 145 and 16
    point = m_k4.mask("1")
    assert lattice.out_degree(point) == 3


@pytest.mark.slow
def test_k4_lattice_obstruction(m_k4):
    doubled = m_k4
    for label in m_k4.labels:
        doubled = parallel_extension(doubled, label, f"{label}'")
    assert not doubled.loops()
    assert lattices_isomorphic(
        cyclic_flat_lattice(doubled), flat_lattice(m_k4)
    )
    order, report = find_positroid_order(doubled)
    assert order is None
    assert report.status == "false"
