# -*- coding: utf-8 -*-

"""
Parametrised families of excluded minors for the class of positroids.

Blocks X_1, X_2, ... get consecutive numeric labels in that order;
extra points keep letter names (p, q, s, t, f, ...). Every generator
validates its arithmetic conditions and raises ParameterError naming
the failing one.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from src.data.constructors import (
    CyclicFlatsPresentation,
    free_extension,
    from_cyclic_flats,
    parallel_connection,
    paving,
    principal_extension,
    series_extension,
    truncate,
    uniform,
    whirl,
)
from src.models.bitset import MAX_GROUND_SET
from src.models.exceptions import CapacityError, ParameterError


logger = logging.getLogger(__name__)

# 3-point lines of M(K4) with edges labelled 1..6
K4_LINES = ((1, 2, 3), (1, 4, 5), (3, 4, 6), (2, 5, 6))


# -------------------------------------------------------------------
# Helpers
# -------------------------------------------------------------------
def _require(condition, message):
    if not condition:
        raise ParameterError(message)


def _positive(**values):
    for name, value in values.items():
        _require(
            isinstance(value, int) and value >= 1,
            f"{name} must be a positive integer; got {value!r}",
        )


def _capacity(size):
    if size > MAX_GROUND_SET:
        raise CapacityError(
            f"family needs {size} elements; at most {MAX_GROUND_SET} "
            "are supported"
        )


def _blocks(sizes):
    """Consecutive numeric label blocks of the given sizes."""
    blocks, start = [], 1
    for size in sizes:
        blocks.append(tuple(str(i) for i in range(start, start + size)))
        start += size
    return blocks


def _union(blocks, *indices):
    return frozenset(label for i in indices for label in blocks[i - 1])


def _ground(blocks, *extra):
    return tuple(label for block in blocks for label in block) + extra


def _renumber(matroid, groups, extra=()):
    """
    Relabel groups of labels to consecutive numbers, group by group,
    and store the result in that order followed by extra.
    """
    mapping, counter = {}, 1
    for group in groups:
        for label in group:
            mapping[label] = str(counter)
            counter += 1
    relabelled = matroid.relabel(mapping)
    order = [mapping[label] for group in groups for label in group]
    return relabelled.reindexed(order + list(extra))


# -------------------------------------------------------------------
# Generalised M(K4)
# -------------------------------------------------------------------
def check_k4_parameters(x1, x2, x3, x4, x5, x6, normalized=True):
    """
    Raises:
        ParameterError: the first condition on x1..x6 that fails.
    """
    _positive(x1=x1, x2=x2, x3=x3, x4=x4, x5=x5, x6=x6)
    _require(x1 + x4 == x2 + x6, "x1+x4 must equal x2+x6")
    if normalized:
        _require(x1 + x2 <= x4 + x6, "x1+x2 <= x4+x6 fails")
    r = x1 + x4 + x5
    _require(x1 + x2 + x3 <= r, "x1+x2+x3 <= r fails")
    _require(r <= x4 + x6 + x3, "r <= x4+x6+x3 fails")


def gen_k4_family(x1, x2, x3, x4, x5, x6, normalized=True):
    """
    Cyclic flats: the unions of blocks along the 3-point lines of
    M(K4), X1∪X2∪X3 at rank x1+x2+x3-1, the other three at r-1, and E
    at r = x1+x4+x5.

    Args:
        normalized (bool): enforce x1+x2 <= x4+x6; the mirrored choice
            gives an isomorphic matroid.
    """
    check_k4_parameters(x1, x2, x3, x4, x5, x6, normalized)
    r = x1 + x4 + x5
    sizes = (x1, x2, x3, x4, x5, x6)
    _capacity(sum(sizes))

    blocks = _blocks(sizes)
    ranks = {(1, 2, 3): x1 + x2 + x3 - 1}
    flats = [(frozenset(), 0), (frozenset(_ground(blocks)), r)]
    flats.extend(
        (_union(blocks, *line), ranks.get(line, r - 1)) for line in K4_LINES
    )
    return from_cyclic_flats(
        CyclicFlatsPresentation.of(_ground(blocks), flats)
    )


def gen_k4_var1(a, b, c, s, r):
    """
    Block sizes |X3|=c, |X4|=a, |X6|=b, the rest fixed by r; the line
    X3∪X4∪X6 sits at rank s, the other three lines at r-1.
    """
    _positive(a=a, b=b, c=c, s=s, r=r)
    _require(max(a, b, c) < s < a + b + c, "max(a,b,c) < s < a+b+c fails")
    _require((r - (a + b + c)) % 2 == 0, "r and a+b+c differ in parity")
    _require(
        max(s, a + b - c, a + c - b, b + c - a) < r,
        "max(s, a+b-c, a+c-b, b+c-a) < r fails",
    )
    x1 = (r - a + b - c) // 2
    x2 = (r + a - b - c) // 2
    x5 = (r - a - b + c) // 2
    sizes = (x1, x2, c, a, x5, b)
    _capacity(sum(sizes))

    blocks = _blocks(sizes)
    ranks = {(3, 4, 6): s}
    flats = [(frozenset(), 0), (frozenset(_ground(blocks)), r)]
    flats.extend(
        (_union(blocks, *line), ranks.get(line, r - 1)) for line in K4_LINES
    )
    return from_cyclic_flats(
        CyclicFlatsPresentation.of(_ground(blocks), flats)
    )


# -------------------------------------------------------------------
# Paving variations
# -------------------------------------------------------------------
def gen_paving_k(a, b, c, k):
    """
    Paving matroid of rank a+b+c+k+1 with three circuit-hyperplanes
    through p and the hyperplane X2∪X5∪X6 of nullity 2k.

    Returns:
        tuple[Matroid, Matroid]: the matroid and its dual.
    """
    _positive(a=a, b=b, c=c, k=k)
    sizes = (a, b + k, c, b, c + k, a + k)
    _capacity(sum(sizes) + 1)
    blocks = _blocks(sizes)
    p = ("p",)
    hyperplanes = [
        _union(blocks, 1, 2, 3) | set(p),
        _union(blocks, 1, 4, 5) | set(p),
        _union(blocks, 3, 4, 6) | set(p),
        _union(blocks, 2, 5, 6),
    ]
    matroid = paving(_ground(blocks, *p), a + b + c + k + 1, hyperplanes)
    return matroid, matroid.dual()


def gen_sparse_pq(a, b, c):
    """Sparse paving, rank a+b+c+2, four circuit-hyperplanes."""
    _positive(a=a, b=b, c=c)
    sizes = (a, b + 1, c, b, c, a)
    _capacity(sum(sizes) + 2)
    blocks = _blocks(sizes)
    hyperplanes = [
        _union(blocks, 1, 2, 3) | {"p"},
        _union(blocks, 1, 4, 5) | {"p", "q"},
        _union(blocks, 3, 4, 6) | {"p", "q"},
        _union(blocks, 2, 5, 6) | {"q"},
    ]
    return paving(_ground(blocks, "p", "q"), a + b + c + 2, hyperplanes)


def gen_sparse_pqst(a, b, c):
    """Sparse paving, rank a+b+c+3, four circuit-hyperplanes."""
    _positive(a=a, b=b, c=c)
    sizes = (a, b, c, b, c, a)
    _capacity(sum(sizes) + 4)
    blocks = _blocks(sizes)
    hyperplanes = [
        _union(blocks, 1, 2, 3) | {"q", "s", "t"},
        _union(blocks, 1, 4, 5) | {"p", "s", "t"},
        _union(blocks, 3, 4, 6) | {"p", "q", "t"},
        _union(blocks, 2, 5, 6) | {"p", "q", "s"},
    ]
    return paving(
        _ground(blocks, "p", "q", "s", "t"), a + b + c + 3, hyperplanes
    )


# -------------------------------------------------------------------
# Whirl variations
# -------------------------------------------------------------------
def check_whirl_parameters(r, n, m, x):
    _require(isinstance(r, int) and r >= 3, f"r >= 3 fails; got {r!r}")
    _require(isinstance(n, int) and n >= 3, f"n >= 3 fails; got {n!r}")
    _require(len(m) == n, f"expected {n} values m_i; got {len(m)}")
    _require(len(x) == 2 * n, f"expected {2 * n} values x_i; got {len(x)}")
    for i, value in enumerate(x, start=1):
        _positive(**{f"x{i}": value})
    for i, value in enumerate(m, start=1):
        _require(3 <= value <= r, f"3 <= m{i} <= r fails")
    full = [i for i in range(n) if m[i] == r]
    if n == 3:
        _require(len(full) == 3, "n = 3 needs every m_i = r")
    else:
        _require(
            any((j - i) % n not in (1, n - 1)
                for i in full for j in full if i != j),
            "two non-consecutive indices with m_i = r are needed",
        )
    for i in range(1, n + 1):
        odd_next = x[(2 * i) % (2 * n)]
        _require(
            x[2 * i - 2] + x[2 * i - 1] + odd_next == m[i - 1],
            f"x{2 * i - 1}+x{2 * i}+x{2 * i + 1} = m{i} fails at i={i}",
        )
        _require(
            odd_next <= m[i - 1] + m[i % n] - r - 2,
            f"x{2 * i + 1} <= m{i}+m{i + 1}-r-2 fails at i={i}",
        )


def gen_whirl_freeext(r, n, m, x):
    """
    Series-extend the n-whirl so its triangles become m_i-circuits,
    add a free point f and truncate to rank r.

    Element e_i of the whirl and its x_i - 1 series copies form block
    X_i.
    """
    m, x = list(m), list(x)
    check_whirl_parameters(r, n, m, x)
    _capacity(sum(x) + 1)

    matroid = whirl(n)
    groups = []
    for i in range(1, 2 * n + 1):
        group = [str(i)]
        for j in range(1, x[i - 1]):
            label = f"{i}.{j}"
            matroid = series_extension(matroid, str(i), label)
            group.append(label)
        groups.append(group)
    matroid = free_extension(matroid, "f")
    _require(
        matroid.full_rank >= r,
        f"extended whirl has rank {matroid.full_rank} < r={r}",
    )
    return _renumber(truncate(matroid, r), groups, extra=("f",))


def gen_whirl_variant(r):
    """
    Two r-circuits A, B glued at e, truncated to rank r, with p1 added
    to the line a1b1 and p2 to the line a2b2.
    """
    _require(isinstance(r, int) and r >= 3, f"r >= 3 fails; got {r!r}")
    _capacity(2 * r + 1)
    first = uniform(
        r - 1, r, ("e",) + tuple(f"a{i}" for i in range(1, r))
    )
    second = uniform(
        r - 1, r, ("e",) + tuple(f"b{i}" for i in range(1, r))
    )
    matroid = truncate(parallel_connection(first, second, "e"), r)
    matroid = principal_extension(matroid, ("a1", "b1"), "p1")
    return principal_extension(matroid, ("a2", "b2"), "p2")


def gen_closing_families(n, k, variant=1):
    """
    Variant 1: two n-circuits and a k-circuit glued at one point p.
    Variant 2: the same circuits glued to three points l1, l2, l3 of a
    3-point line. Both are truncated to rank n.
    """
    _require(isinstance(k, int) and k >= 3, f"k >= 3 fails; got {k!r}")
    _require(isinstance(n, int) and n >= k, f"n >= k fails; got {n!r}")
    _require(variant in (1, 2), f"variant must be 1 or 2; got {variant!r}")
    sizes = (n - 1, n - 1, k - 1)
    _capacity(sum(sizes) + (1 if variant == 1 else 3))
    blocks = _blocks(sizes)
    points = ("p", "p", "p") if variant == 1 else ("l1", "l2", "l3")

    circuits = [
        uniform(len(block), len(block) + 1, block + (point,))
        for block, point in zip(blocks, points)
    ]
    if variant == 1:
        matroid = circuits[0]
        for circuit in circuits[1:]:
            matroid = parallel_connection(matroid, circuit, "p")
    else:
        matroid = uniform(2, 3, points)
        for circuit, point in zip(circuits, points):
            matroid = parallel_connection(matroid, circuit, point)
    return truncate(matroid, n)


# -------------------------------------------------------------------
# Registry
# -------------------------------------------------------------------
def _whirl_freeext_from_flat(params):
    _require(len(params) >= 2, "whirlFreeExt needs r, n, m..., x...")
    r, n = params[0], params[1]
    _require(
        len(params) == 2 + 3 * n,
        f"whirlFreeExt with n={n} needs {2 + 3 * n} parameters",
    )
    return gen_whirl_freeext(r, n, params[2:2 + n], params[2 + n:])


@dataclass(frozen=True)
class Family:
    name: str
    arity: Optional[int]
    build: Callable
    description: str


FAMILIES = {
    family.name: family for family in (
        Family("genK4", 6, lambda p: gen_k4_family(*p),
               "generalised M(K4) by block sizes x1..x6"),
        Family("genK4var1", 5, lambda p: gen_k4_var1(*p),
               "M(K4) variant with parameters a,b,c,s,r"),
        Family("pavingK", 4, lambda p: gen_paving_k(*p)[0],
               "paving matroid with a nullity-2k hyperplane, a,b,c,k"),
        Family("pavingKdual", 4, lambda p: gen_paving_k(*p)[1],
               "dual of pavingK"),
        Family("sparsePQ", 3, lambda p: gen_sparse_pq(*p),
               "sparse paving with extra points p, q; a,b,c"),
        Family("sparsePQdual", 3, lambda p: gen_sparse_pq(*p).dual(),
               "dual of sparsePQ"),
        Family("sparsePQST", 3, lambda p: gen_sparse_pqst(*p),
               "sparse paving with extra points p, q, s, t; a,b,c"),
        Family("sparsePQSTdual", 3, lambda p: gen_sparse_pqst(*p).dual(),
               "dual of sparsePQST"),
        Family("whirlFreeExt", None, _whirl_freeext_from_flat,
               "truncated free extension of a series-extended whirl; "
               "r,n,m1..mn,x1..x2n"),
        Family("whirlVariant", 1, lambda p: gen_whirl_variant(*p),
               "two r-circuits plus two 3-point lines; r"),
        Family("closing", 3, lambda p: gen_closing_families(*p),
               "three circuits glued at a point or a line; n,k,variant"),
    )
}


@dataclass(frozen=True)
class FamilyParams:
    """
    A family name with its integer parameters.

    Raises:
        ParameterError: unknown family or wrong number of parameters.
    """

    family: str
    params: Tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(
                f"unknown family {self.family!r}; "
                f"choose from {sorted(FAMILIES)}"
            )
        params = tuple(int(p) for p in self.params)
        arity = FAMILIES[self.family].arity
        if arity is not None and len(params) != arity:
            raise ParameterError(
                f"{self.family} takes {arity} parameters; got {len(params)}"
            )
        object.__setattr__(self, "params", params)

    @classmethod
    def parse(cls, family, text):
        """Parameters from a comma-separated integer list."""
        try:
            params = tuple(
                int(part) for part in str(text).split(",") if part.strip()
            )
        except ValueError:
            raise ParameterError(
                f"parameters must be integers; got {text!r}"
            ) from None
        return cls(family, params)

    def build(self):
        matroid = FAMILIES[self.family].build(self.params)
        logger.debug(f"built {self}: {matroid!r}")
        return matroid

    def __str__(self):
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    def as_dict(self):
        return {"family": self.family, "params": list(self.params)}
