import random

import pytest
from hypothesis import given, settings, strategies as st

from gpaley.perm import (
    GroupBoundError,
    as_perm,
    compose,
    enumerate_group,
    group_closure_order,
    inverse,
    orbit,
    schreier_sims,
)
from gpaley.numtheory import factorize


def random_perm(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return p


def test_closure_examples():
    assert group_closure_order([]) == 1
    assert group_closure_order([[1, 2, 0]]) == 3
    assert group_closure_order([[1, 0, 2, 3], [1, 2, 3, 0]]) == 24
    assert enumerate_group([[1, 0, 2, 3], [1, 2, 3, 0]]) == 24


def test_compose_convention():
    a, b = as_perm([1, 2, 0]), as_perm([0, 2, 1])
    # apply a first, then b
    assert list(compose(a, b)) == [b[a[i]] for i in range(3)]
    assert list(compose(a, inverse(a))) == [0, 1, 2]


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.integers(2, 7), st.integers(1, 3))
def test_schreier_sims_matches_enumeration(seed, n, m):
    rng = random.Random(seed)
    gens = [random_perm(rng, n) for _ in range(m)]
    chain = schreier_sims(gens)
    assert chain.order == enumerate_group(gens)
    for g in gens:
        assert chain.contains(g)


def test_chain_membership_rejects_outsiders():
    chain = schreier_sims([[1, 2, 3, 4, 0]])
    assert chain.order == 5
    assert not chain.contains([1, 0, 2, 3, 4])


def test_larger_groups():
    # S_10 and A_10 from standard generators
    n = 10
    cyc = list(range(1, n)) + [0]
    tr = [1, 0] + list(range(2, n))
    assert group_closure_order([cyc, tr]) == 3628800
    three = [1, 2, 0] + list(range(3, n))
    odd_cyc = [0] + list(range(2, n)) + [1]
    assert group_closure_order([three, odd_cyc]) == 3628800 // 2


def test_bound():
    with pytest.raises(GroupBoundError):
        group_closure_order([list(range(1, 9)) + [0], [1, 0] + list(range(2, 9))], bound=1000)
    with pytest.raises(GroupBoundError):
        enumerate_group([list(range(1, 9)) + [0], [1, 0] + list(range(2, 9))], bound=1000)


def test_orbits():
    gens = [[1, 0, 2, 3], [0, 1, 3, 2]]
    assert orbit(0, gens) == {0, 1}
    assert orbit((0, 2), gens) == {(0, 2), (1, 2), (0, 3), (1, 3)}


def test_chain_order_is_product_of_orbits():
    rng = random.Random(7)
    gens = [random_perm(rng, 12) for _ in range(2)]
    chain = schreier_sims(gens)
    prod = 1
    for s in chain.orbit_sizes:
        prod *= s
    assert prod == chain.order
    assert factorize(chain.order).recompose() == chain.order
