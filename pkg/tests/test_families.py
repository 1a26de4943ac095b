# -*- coding: utf-8 -*-

import pytest

from src.data.families import (
    FAMILIES,
    FamilyParams,
    check_k4_parameters,
    gen_closing_families,
    gen_k4_family,
    gen_whirl_freeext,
    gen_whirl_variant,
)
from src.models.exceptions import CapacityError, ParameterError


@pytest.mark.parametrize("family, params, size", [
    ("pavingK", (1, 1, 1, 1), 10),
    ("sparsePQ", (1, 1, 1), 9),
    ("sparsePQST", (1, 1, 1), 10),
    ("closing", (3, 3, 2), 9),
    ("closing", (3, 3, 1), 7),
    ("whirlVariant", (3,), 7),
])
def test_family_sizes(family, params, size):
    assert FamilyParams(family, params).build().n == size


def test_duals_share_the_ground_set():
    primal = FamilyParams("sparsePQ", (1, 1, 1)).build()
    dual = FamilyParams("sparsePQdual", (1, 1, 1)).build()
    assert dual.n == primal.n
    assert dual.full_rank == primal.n - primal.full_rank


def test_generalised_k4():
    matroid = gen_k4_family(1, 1, 2, 1, 2, 1)
    assert (matroid.n, matroid.full_rank) == (8, 4)
    with pytest.raises(ParameterError, match="x1\\+x2\\+x3"):
        gen_k4_family(1, 1, 2, 1, 1, 1)
    with pytest.raises(ParameterError, match="x2\\+x6"):
        check_k4_parameters(2, 1, 1, 1, 1, 1)
    with pytest.raises(ParameterError, match="positive"):
        check_k4_parameters(0, 1, 1, 1, 1, 1)


def test_normalisation_is_checked_first():
    with pytest.raises(ParameterError, match="x4\\+x6"):
        check_k4_parameters(2, 2, 1, 1, 1, 1)
    with pytest.raises(ParameterError, match="x1\\+x2\\+x3"):
        check_k4_parameters(2, 2, 1, 1, 1, 1, normalized=False)


def test_whirl_free_extension():
    matroid = gen_whirl_freeext(3, 3, [3, 3, 3], [1] * 6)
    assert (matroid.n, matroid.full_rank) == (7, 3)
    assert matroid.labels[-1] == "f"
    with pytest.raises(ParameterError, match="every m_i"):
        gen_whirl_freeext(4, 3, [4, 4, 3], [1] * 6)


def test_whirl_variant_and_closing_errors():
    assert gen_whirl_variant(4).full_rank == 4
    with pytest.raises(ParameterError):
        gen_whirl_variant(2)
    with pytest.raises(ParameterError, match="variant"):
        gen_closing_families(3, 3, 3)
    with pytest.raises(ParameterError, match="n >= k"):
        gen_closing_families(3, 4)
    with pytest.raises(CapacityError):
        gen_closing_families(8, 8, 1)


def test_registry_parsing():
    params = FamilyParams.parse("closing", "4, 3, 2")
    assert params.params == (4, 3, 2)
    assert str(params) == "closing(4,3,2)"
    assert params.as_dict() == {"family": "closing", "params": [4, 3, 2]}
    with pytest.raises(ParameterError, match="unknown family"):
        FamilyParams("nope", ())
    with pytest.raises(ParameterError, match="takes 3"):
        FamilyParams("closing", (3, 3))
    with pytest.raises(ParameterError, match="integers"):
        FamilyParams.parse("closing", "3,x,1")
    assert FAMILIES["whirlFreeExt"].arity is None
