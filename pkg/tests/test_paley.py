from collections import deque

import pytest

from gpaley.paley import (
    NotADivisorError,
    NotPrimeError,
    OddValencyError,
    OrderBoundError,
    affine_generators,
    affine_order,
    build,
    connectivity_consistency,
    gpaley,
    valid_triples,
    validate_params,
)
from gpaley.perm import enumerate_group, orbit


def bfs_connected(g):
    seen = {0}
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for v in g.neighbors(u):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == g.n


def test_validation_errors():
    with pytest.raises(NotPrimeError):
        validate_params(4, 1, 1)
    with pytest.raises(NotADivisorError):
        validate_params(3, 2, 3)
    with pytest.raises(OddValencyError):
        validate_params(3, 4, 5)
    with pytest.raises(OrderBoundError):
        validate_params(2, 64, 1)


def test_params_fields():
    prm = validate_params(3, 4, 20)
    assert (prm.d, prm.q, prm.connected) == (4, 81, True)
    assert prm.k * prm.d == prm.q - 1
    assert len(prm.S) == 20
    assert not validate_params(3, 4, 8).connected


@pytest.mark.parametrize("p, n, k, name", [
    (2, 2, 3, "K4"),
    (5, 1, 2, "C5"),
    (13, 1, 6, "Paley13"),
])
def test_small_instances(p, n, k, name):
    g = gpaley(p, n, k)
    prm = validate_params(p, n, k)
    assert g.is_regular(k) and len(g.edges()) == prm.q * k // 2
    if name == "K4":
        assert len(g.edges()) == 6
    if name == "C5":
        assert sorted(g.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    if name == "Paley13":
        squares = {x * x % 13 for x in range(1, 13)}
        assert set(g.edges()) == {(u, v) for u in range(13) for v in range(u + 1, 13) if (v - u) % 13 in squares}


def test_connection_set_is_symmetric():
    for p, n, k in valid_triples(243):
        prm = validate_params(p, n, k)
        S = set(prm.S)
        assert {prm.field.neg(s) for s in S} == S


@pytest.mark.slow
def test_connectivity_sweep():
    triples = valid_triples(729)
    disconnected = 0
    for p, n, k in triples:
        prm = validate_params(p, n, k)
        g = build(prm)
        assert g.is_regular(k) and len(g.edges()) == prm.q * k // 2
        assert bfs_connected(g) == prm.connected, (p, n, k)
        assert connectivity_consistency(prm)
        disconnected += not prm.connected
    assert (3, 4, 8) in triples and disconnected > 0


@pytest.mark.parametrize("p, n, k, expected", [
    (2, 2, 3, 24),
    (13, 1, 6, 78),
    (7, 2, 4, 392),
    (3, 4, 20, 6480),
])
def test_affine_order_examples(p, n, k, expected):
    assert affine_order(validate_params(p, n, k)) == expected


def test_affine_order_matches_enumeration_oracle():
    for p, n, k in [(2, 2, 3), (3, 2, 4), (7, 2, 4), (3, 4, 20), (2, 4, 5)]:
        prm = validate_params(p, n, k)
        assert affine_order(prm) == enumerate_group(affine_generators(prm))


@pytest.mark.slow
def test_affine_order_formula_sweep():
    for p, n, k in valid_triples(729, connected_only=True):
        prm = validate_params(p, n, k)
        assert affine_order(prm) == n * k * prm.q, (p, n, k)


@pytest.mark.slow
def test_arc_transitivity_sweep():
    for p, n, k in valid_triples(128, connected_only=True):
        prm = validate_params(p, n, k)
        g = build(prm)
        arcs = {(u, v) for u, v in g.edges()} | {(v, u) for u, v in g.edges()}
        base = (0, prm.field.xi_pow(prm.d))
        assert base in arcs
        assert orbit(base, affine_generators(prm)) == arcs, (p, n, k)
