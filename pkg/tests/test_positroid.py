# -*- coding: utf-8 -*-

from itertools import permutations

import pytest

from src.data.catalog import clone_pair, excluded_amalgam_pair, non_clone_pair
from src.data.constructors import relax, uniform
from src.data.random_matroids import random_lattice_path, random_matroid
from src.models.exceptions import NecklaceError, PreconditionError
from src.models.matroid import direct_sum
from src.models.order_search import find_positroid_order, is_positroid
from src.models.orders import LinearOrder, is_cyclic_interval
from src.models.positroid import (
    ORDER_TESTS,
    CheckReport,
    GrassmannNecklace,
    check_connected_flat_order,
    check_flag_partitions,
    connected_flags,
    grassmann_necklace,
    is_forbidden_minor,
    is_positroid_order_cip,
    is_positroid_order_dual_cyclic,
    is_positroid_order_necklace,
    is_positroid_order_rank2,
    is_positroid_order_sorting,
    necklace_matroid,
    scan_rank2_minors,
)


@pytest.fixture
def two_pairs():
    return direct_sum(
        uniform(1, 2, ("a", "b")), uniform(1, 2, ("e", "f"))
    )


def test_check_report_dict():
    report = CheckReport.inconclusive("search", "budget_exhausted",
                                      visited=7)
    assert report.to_dict() == {
        "method": "search",
        "verdict": None,
        "status": "budget_exhausted",
        "certificate": {"visited": 7},
    }


def test_necklace_of_four_triangles(triangles, natural9):
    necklace = grassmann_necklace(triangles, natural9)
    assert necklace.rank == 5
    assert len(necklace.entries) == 9
    assert necklace.entries[0] == frozenset({"1", "2", "4", "5", "7"})
    assert necklace.entries[2] == frozenset({"1", "3", "4", "5", "7"})
    assert necklace_matroid(necklace) == triangles


def test_necklace_validation():
    order = LinearOrder.parse("1,2,3")
    with pytest.raises(NecklaceError, match="entries"):
        GrassmannNecklace(order, [{"1"}, {"2"}])
    with pytest.raises(NecklaceError, match="equal size"):
        GrassmannNecklace(order, [{"1"}, {"2", "3"}, {"3"}])
    with pytest.raises(NecklaceError, match="agree"):
        GrassmannNecklace(order, [{"2"}, {"3"}, {"3"}])


@pytest.mark.parametrize("method", sorted(ORDER_TESTS))
def test_every_method_accepts_natural_order(method, triangles, natural9):
    report = ORDER_TESTS[method](triangles, natural9)
    assert report.verdict is True
    assert report.status == "true"


def test_truncation_fails_at_triangle_flat(triangles_rank4, natural9):
    report = is_positroid_order_cip(triangles_rank4, natural9)
    assert report.verdict is False
    assert report.certificate == {
        "flat": ["3", "6", "9"],
        "component": ["1", "2", "4", "5", "7", "8"],
    }


def test_truncation_fails_every_order_test(triangles_rank4, natural9):
    necklace = is_positroid_order_necklace(triangles_rank4, natural9)
    assert necklace.verdict is False
    assert not triangles_rank4.is_basis(necklace.certificate["non_basis"])

    sorting = is_positroid_order_sorting(triangles_rank4, natural9)
    assert sorting.verdict is False
    first, second = sorting.certificate["pair"]
    assert triangles_rank4.is_basis(first)
    assert triangles_rank4.is_basis(second)

    rank2 = is_positroid_order_rank2(triangles_rank4, natural9)
    assert rank2.verdict is False
    assert scan_rank2_minors(triangles_rank4, natural9).verdict is False


def test_k4_natural_order(m_k4):
    report = is_positroid_order_cip(m_k4, LinearOrder.natural(m_k4.labels))
    assert report.verdict is False
    assert report.certificate["flat"] == ["1", "4", "5"]
    assert report.certificate["component"] == ["2", "3", "6"]


def test_interleaved_pairs(two_pairs):
    crossed = LinearOrder.parse("a,e,b,f")
    assert is_positroid_order_cip(two_pairs, crossed).verdict is False
    report = is_positroid_order_rank2(two_pairs, crossed)
    assert report.verdict is False
    minor = report.certificate["minor"]
    assert minor == {
        "circuit": ["a", "b"], "cocircuit": ["e", "f"], "contracted": [],
    }
    apart = LinearOrder.parse("a,b,e,f")
    assert is_positroid_order_cip(two_pairs, apart).verdict is True


def test_forbidden_minor_masks(two_pairs):
    a, b, e, f = (two_pairs.index_of(x) for x in "abef")
    assert is_forbidden_minor(two_pairs, 0, a, b, e, f)
    assert not is_forbidden_minor(two_pairs, 0, a, e, b, f)


def test_loops_are_deleted(u24):
    with_loop = direct_sum(u24, uniform(0, 1, ("z",)))
    order = LinearOrder.parse("1,z,2,3,4")
    report = is_positroid_order_cip(with_loop, order)
    assert report.verdict is True
    assert report.certificate["deleted_loops"] == ["z"]
    with pytest.raises(PreconditionError, match="loops"):
        is_positroid_order_cip(with_loop, order, strip=False)


def test_dual_cyclic_needs_no_coloops():
    with pytest.raises(PreconditionError, match="coloops"):
        is_positroid_order_dual_cyclic(
            uniform(2, 2), LinearOrder.parse("1,2")
        )


def test_connected_checks_preconditions(two_pairs):
    order = LinearOrder.parse("a,b,e,f")
    with pytest.raises(PreconditionError, match="connected"):
        check_connected_flat_order(two_pairs, order)
    with pytest.raises(PreconditionError, match="rank"):
        check_connected_flat_order(uniform(1, 3), LinearOrder.parse("1,2,3"))


def test_arw2_on_whirl(whirl3):
    order = LinearOrder.natural(whirl3.labels)
    assert check_connected_flat_order(whirl3, order).verdict is True


def test_flags_of_k4(m_k4):
    chains = list(connected_flags(m_k4, 2))
    # six points and four lines; a non-line pair is disconnected
    assert len(chains) == 10
    crossed = check_flag_partitions(m_k4, LinearOrder.natural(m_k4.labels))
    assert crossed.verdict is False
    first, second = crossed.certificate["crossing"]
    assert set(first) | set(second) == set(m_k4.labels)
    with pytest.raises(PreconditionError):
        check_flag_partitions(m_k4, LinearOrder.natural(m_k4.labels), k=4)


def test_order_tests_agree_on_random_matroids(rng):
    methods = ("necklace", "sorting", "cip", "rank2")
    for _ in range(25):
        matroid = random_matroid(rng, 6)
        order = LinearOrder(tuple(rng.permutation(matroid.labels)))
        verdicts = {
            method: ORDER_TESTS[method](matroid, order).verdict
            for method in methods
        }
        verdicts["rank2_scan"] = scan_rank2_minors(matroid, order).verdict
        assert len(set(verdicts.values())) == 1, verdicts


AGREEING = ("necklace", "sorting", "cip", "rank2")


def _random_order(rng, matroid):
    return LinearOrder(tuple(rng.permutation(matroid.labels)))


def _dihedral_orders(labels):
    # least label first, and each reversal counted once
    first, *rest = sorted(labels)
    for tail in permutations(rest):
        if tail[0] < tail[-1]:
            yield LinearOrder((first,) + tail)


def test_verdicts_survive_shift_and_reversal(rng):
    for _ in range(15):
        matroid = random_matroid(rng, 6)
        order = _random_order(rng, matroid)
        verdict = is_positroid_order_cip(matroid, order).verdict
        moved = [order.shift(i) for i in range(1, 7)] + [order.reverse()]
        for candidate in moved:
            assert is_positroid_order_necklace(matroid, candidate).verdict \
                is verdict


@pytest.mark.parametrize("method", ["necklace", "cip"])
def test_dual_shares_positroid_orders(rng, method):
    for _ in range(15):
        matroid = random_matroid(rng, 6)
        order = _random_order(rng, matroid)
        assert ORDER_TESTS[method](matroid.dual(), order).verdict is \
            ORDER_TESTS[method](matroid, order).verdict


def test_lattice_path_minors_keep_the_natural_order(rng):
    for _ in range(10):
        matroid = random_lattice_path(rng, 6, int(rng.integers(1, 6)))
        order = LinearOrder.natural(matroid.labels)
        assert is_positroid_order_cip(matroid, order).verdict is True
        assert is_positroid_order_cip(matroid.dual(), order).verdict is True
        for label in matroid.labels:
            for minor in (matroid.delete(label), matroid.contract(label)):
                induced = order.restricted(minor.labels)
                assert is_positroid_order_necklace(minor, induced).verdict \
                    is True


def test_connected_flats_as_cyclic_intervals_give_positroid_order(
        rng, whirl3):
    cases = [(whirl3, LinearOrder.natural(whirl3.labels))]
    for _ in range(30):
        matroid = random_matroid(rng, 6)
        if not matroid.loops():
            cases.append((matroid, _random_order(rng, matroid)))
    hits = 0
    for matroid, order in cases:
        if all(is_cyclic_interval(order, flat)
               for flat in matroid.connected_flats()):
            assert is_positroid_order_cip(matroid, order).verdict is True
            hits += 1
    assert hits


@pytest.mark.parametrize("pair", [clone_pair, non_clone_pair,
                                  excluded_amalgam_pair])
def test_relaxation_keeps_positroid_orders(pair):
    for matroid in pair():
        order, _ = find_positroid_order(matroid)
        ground = frozenset(matroid.labels)
        for flat in matroid.cyclic_flats():
            if not flat or flat == ground:
                continue
            relaxed = relax(matroid, flat)
            assert relaxed.rank(flat) > matroid.rank(flat)
            assert is_positroid_order_cip(relaxed, order).verdict is True


@pytest.mark.slow
def test_order_tests_agree_on_every_order(rng, m_k4, whirl3):
    matroids = [m_k4, whirl3, uniform(3, 6)]
    matroids += [random_matroid(rng, n) for n in (5, 6) for _ in range(4)]
    for matroid in matroids:
        found = False
        for order in _dihedral_orders(matroid.labels):
            verdicts = {
                method: ORDER_TESTS[method](matroid, order).verdict
                for method in AGREEING
            }
            assert len(set(verdicts.values())) == 1, (order, verdicts)
            verdict = verdicts["cip"]
            for candidate in (order.shift(2), order.reverse()):
                assert is_positroid_order_cip(matroid, candidate).verdict \
                    is verdict
            found = found or verdict
        assert is_positroid(matroid).verdict is found
