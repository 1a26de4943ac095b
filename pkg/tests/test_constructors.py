# -*- coding: utf-8 -*-

from itertools import combinations
from math import comb

import pytest

from src.data.constructors import (
    CyclicFlatsPresentation,
    TransversalPresentation,
    cycle_matroid,
    cyclic_flats_presentation,
    free_extension,
    from_bases,
    from_cyclic_flats,
    nested,
    parallel_connection,
    parallel_extension,
    paving,
    principal_extension,
    relax,
    series_connection,
    series_extension,
    transversal,
    truncate,
    uniform,
    wheel,
    whirl,
)
from src.models.exceptions import (
    CyclicFlatAxiomError,
    MatroidInputError,
    PreconditionError,
)
from src.models.matroid import direct_sum
from src.models.orders import LinearOrder, gale_leq


@pytest.mark.parametrize("r, n", [(0, 3), (2, 4), (3, 5), (4, 4)])
def test_uniform_basis_count(r, n):
    assert len(uniform(r, n).bases) == comb(n, r)


def test_uniform_rejects_bad_rank():
    with pytest.raises(MatroidInputError):
        uniform(3, 2)


def test_from_bases_labels():
    matroid = from_bases(["a", "b", "c"], [["a", "b"], ["a", "c"]])
    assert matroid.coloops() == matroid.mask("a")
    assert matroid.is_basis(["a", "c"])
    with pytest.raises(MatroidInputError, match="unknown label"):
        from_bases(["a", "b"], [["a", "z"]])


def test_cyclic_flats_round_trip(whirl3, m_k4, triangles):
    for matroid in (whirl3, m_k4, triangles):
        rebuilt = from_cyclic_flats(cyclic_flats_presentation(matroid))
        assert rebuilt == matroid


def test_elements_outside_greatest_flat_are_coloops():
    presentation = CyclicFlatsPresentation.of(
        ["1", "2", "3", "4", "5"], [(set(), 0), ({"1", "2", "3"}, 2)]
    )
    matroid = from_cyclic_flats(presentation)
    assert matroid.coloops() == matroid.mask(["4", "5"])
    assert matroid.full_rank == 4
    assert matroid == direct_sum(uniform(2, 3), uniform(2, 2, ("4", "5")))
    assert set(matroid.cyclic_flats().label_sets()) == {
        frozenset(), frozenset({"1", "2", "3"})
    }
    assert from_cyclic_flats(cyclic_flats_presentation(matroid)) == matroid


def test_cyclic_flats_least_set_rank():
    presentation = CyclicFlatsPresentation.of(
        ["1", "2", "3"], [(set(), 1), ({"1", "2", "3"}, 2)]
    )
    with pytest.raises(CyclicFlatAxiomError) as info:
        from_cyclic_flats(presentation)
    assert info.value.axiom == "Z1"


def test_cyclic_flats_rank_gap():
    presentation = CyclicFlatsPresentation.of(
        ["1", "2", "3"], [(set(), 0), ({"1", "2", "3"}, 3)]
    )
    with pytest.raises(CyclicFlatAxiomError) as info:
        from_cyclic_flats(presentation)
    assert info.value.axiom == "Z2"


def test_cyclic_flats_missing_join():
    presentation = CyclicFlatsPresentation.of(
        ["1", "2", "3", "4"],
        [(set(), 0), ({"1", "2"}, 1), ({"3", "4"}, 1)],
    )
    with pytest.raises(CyclicFlatAxiomError) as info:
        from_cyclic_flats(presentation)
    assert info.value.axiom == "Z0"


def test_elements_outside_top_flat_are_coloops():
    presentation = CyclicFlatsPresentation.of(
        ["1", "2", "3", "4"], [(set(), 0), ({"1", "2", "3"}, 2)]
    )
    matroid = from_cyclic_flats(presentation)
    assert matroid.full_rank == 3
    assert matroid.coloops() == matroid.mask("4")


def test_paving_checks_hyperplanes():
    matroid = paving(["1", "2", "3", "4", "5"], 3, [{"1", "2", "3"}])
    assert not matroid.is_basis(["1", "2", "3"])
    assert len(matroid.bases) == comb(5, 3) - 1
    with pytest.raises(MatroidInputError):
        paving(["1", "2", "3", "4", "5"], 3,
               [{"1", "2", "3"}, {"1", "2", "4"}])


def test_cycle_matroid_of_k4(m_k4):
    # Cayley: 4^2 spanning trees
    assert len(m_k4.bases) == 16
    assert m_k4.full_rank == 3
    lines = sorted(
        sorted(c) for c in m_k4.circuits() if len(c) == 3
    )
    assert lines == [
        ["1", "2", "3"], ["1", "4", "5"], ["2", "5", "6"], ["3", "4", "6"]
    ]


def test_cycle_matroid_with_loop_edge():
    matroid = cycle_matroid([("a", "a"), ("a", "b")], labels=["x", "y"])
    assert matroid.loops() == matroid.mask("x")


def test_transversal_rank_is_matching():
    presentation = TransversalPresentation.of(
        ["1", "2", "3", "4"], [{"1", "2"}, {"1", "2"}, {"3", "4"}]
    )
    matroid = transversal(presentation)
    assert matroid.full_rank == 3
    assert not matroid.is_independent(["3", "4"])
    assert matroid.is_basis(["1", "2", "4"])


def test_nested_matroid_bases_are_gale_upper_set():
    order = LinearOrder.natural([str(i) for i in range(1, 7)])
    subset = frozenset({"2", "3", "5"})
    matroid = nested(subset, order)
    expected = {
        frozenset(c) for c in combinations(order.sequence, 3)
        if gale_leq(order, subset, c)
    }
    assert set(matroid.basis_sets()) == expected


def test_wheel_and_whirl(m_k4, whirl3):
    assert len(wheel(3).bases) == 16
    assert len(whirl3.bases) == 17
    assert whirl3.is_basis(["2", "4", "6"])
    assert len(whirl(4).bases) == len(wheel(4).bases) + 1


def test_relax_requires_incomparable_flat(m_k4):
    relaxed = relax(m_k4, ["1", "2", "3"])
    assert relaxed.is_basis(["1", "2", "3"])
    with pytest.raises(PreconditionError):
        relax(m_k4, ["1", "2"])
    with pytest.raises(PreconditionError):
        relax(uniform(1, 2), ["1", "2"])


def test_truncate(u24, triangles):
    assert truncate(u24, 1) == uniform(1, 4)
    assert truncate(triangles, 4).full_rank == 4
    assert truncate(u24, 2) is u24
    with pytest.raises(MatroidInputError):
        truncate(u24, 3)


def test_principal_extension_places_point_on_flat(u24):
    extended = principal_extension(u24, ["1"], "p")
    assert extended.rank(["1", "p"]) == 1
    free = free_extension(u24, "f")
    assert free == uniform(2, 5, ("1", "2", "3", "4", "f"))
    parallel = parallel_extension(u24, "2", "q")
    assert parallel.circuits().label_sets().count(frozenset({"2", "q"}))


def test_extension_rejects_existing_label(u24):
    with pytest.raises(MatroidInputError):
        free_extension(u24, "1")


def test_series_extension():
    extended = series_extension(uniform(1, 2), "1", "s")
    # series copies of a two-element circuit form a triangle
    assert extended == uniform(2, 3, ("1", "2", "s"))
    with pytest.raises(PreconditionError):
        series_extension(uniform(2, 2), "1", "s")


def test_parallel_connection_of_triangles():
    first = uniform(2, 3, ("1", "2", "p"))
    second = uniform(2, 3, ("p", "3", "4"))
    glued = parallel_connection(first, second, "p")
    assert glued.n == 5
    assert glued.full_rank == 3
    assert not glued.is_independent(["1", "2", "p"])
    assert glued.is_independent(["1", "2", "3"])


def test_series_connection_is_dual_of_parallel():
    first = uniform(2, 3, ("1", "2", "p"))
    second = uniform(2, 3, ("p", "3", "4"))
    expected = parallel_connection(first.dual(), second.dual()).dual()
    assert series_connection(first, second) == expected
    assert series_connection(first, second).full_rank == 4


def test_connection_needs_one_shared_label(u24):
    with pytest.raises(MatroidInputError):
        parallel_connection(u24, uniform(1, 2, ("a", "b")))
