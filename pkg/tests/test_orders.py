# -*- coding: utf-8 -*-

import pytest

from src.models.exceptions import MatroidInputError
from src.models.orders import (
    LinearOrder,
    gale_basis,
    gale_leq,
    interleaved,
    is_cyclic_interval,
    is_interval,
    is_noncrossing,
    is_noncrossing_by_definition,
    lex_leq,
    maximal_cyclic_intervals,
    reverse,
    shift,
    sort_pair,
)


@pytest.fixture
def abcd():
    return LinearOrder.parse("a, b, c, d")


def test_parse_and_natural():
    assert LinearOrder.parse("3,1,2").sequence == ("3", "1", "2")
    assert LinearOrder.natural(["10", "2", "1"]).sequence == \
        ("1", "2", "10")
    assert str(LinearOrder.parse("a,b")) == "a<b"
    with pytest.raises(MatroidInputError):
        LinearOrder.parse(" , ")
    with pytest.raises(MatroidInputError, match="repeats"):
        LinearOrder(("a", "a"))


def test_shift_is_one_based(abcd):
    assert shift(abcd, 1) == abcd
    assert shift(abcd, 3).sequence == ("c", "d", "a", "b")
    assert abcd.shift(4).reverse().sequence == ("c", "b", "a", "d")
    with pytest.raises(MatroidInputError):
        shift(abcd, 5)


def test_reverse_twice(abcd):
    assert reverse(reverse(abcd)) == abcd


def test_intervals(abcd):
    assert is_interval(abcd, {"b", "c"})
    assert is_interval(abcd, set())
    assert not is_interval(abcd, {"a", "d"})
    assert is_cyclic_interval(abcd, {"a", "d"})
    assert not is_cyclic_interval(abcd, {"a", "c"})
    with pytest.raises(MatroidInputError, match="not in the order"):
        is_interval(abcd, {"z"})


def test_gale_and_lex(abcd):
    assert gale_leq(abcd, {"a", "c"}, {"b", "c"})
    assert not gale_leq(abcd, {"a", "d"}, {"b", "c"})
    assert lex_leq(abcd, {"a", "d"}, {"b", "c"})
    with pytest.raises(MatroidInputError, match="equal size"):
        gale_leq(abcd, {"a"}, {"b", "c"})


def test_gale_basis_of_uniform(u24):
    order = LinearOrder.parse("3,1,4,2")
    assert gale_basis(u24, order) == frozenset({"3", "1"})


def test_sort_pair_splits_by_parity(abcd):
    odd, even = sort_pair(abcd, {"a", "b"}, {"c", "d"})
    assert odd == frozenset({"a", "c"})
    assert even == frozenset({"b", "d"})
    odd, even = sort_pair(abcd, {"a", "c"}, {"a", "d"})
    assert odd == frozenset({"a", "c"})
    assert even == frozenset({"a", "d"})


def test_crossing_partition(abcd):
    assert not is_noncrossing(abcd, [{"a", "c"}, {"b", "d"}])
    assert is_noncrossing(abcd, [{"a", "d"}, {"b", "c"}])
    with pytest.raises(MatroidInputError, match="cover"):
        is_noncrossing(abcd, [{"a"}])


def test_noncrossing_matches_definition(rng):
    labels = [str(i) for i in range(1, 8)]
    for _ in range(60):
        order = LinearOrder(tuple(rng.permutation(labels)))
        colours = rng.integers(0, 3, size=len(labels))
        blocks = [
            {label for label, c in zip(labels, colours) if c == colour}
            for colour in set(colours.tolist())
        ]
        assert is_noncrossing(order, blocks) == \
            is_noncrossing_by_definition(order, blocks)


def test_mask_helpers():
    sequence = (0, 1, 2, 3, 4)
    assert maximal_cyclic_intervals(sequence, 0b10011) == [0b10011]
    assert sorted(maximal_cyclic_intervals(sequence, 0b00101)) == \
        [0b00001, 0b00100]
    assert interleaved(sequence, 0b00101, 0b01010)
    assert not interleaved(sequence, 0b00011, 0b01100)
