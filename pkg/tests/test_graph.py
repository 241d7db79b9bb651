import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gpaley.graph import (
    BoundExceededError,
    Graph,
    are_isomorphic,
    automorphism_count,
    automorphism_count_brute,
    cartesian_power,
    cartesian_product,
    complete_graph,
    cycle_graph,
    from_edges,
    is_automorphism,
    is_connected,
    is_isomorphism,
    parse_edge_list,
    path_graph,
)
from gpaley.paley import gpaley


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def random_graph(rng, n, p):
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


graphs = st.builds(
    lambda seed, n, p: random_graph(random.Random(seed), n, p),
    st.integers(0, 2**32), st.integers(1, 9), st.floats(0.1, 0.9),
)


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        from_edges(3, [(0, 3)])


def test_basic_invariants():
    g = from_edges(5, [(0, 1), (1, 0), (3, 4)])
    assert g.edges() == [(0, 1), (3, 4)]
    assert int(g.degrees().sum()) == 2 * len(g.edges())
    assert g.has_edge(1, 0) and not g.has_edge(0, 2)
    assert not is_connected(g)
    assert is_connected(cycle_graph(6))


def test_edge_list_and_dot_formats():
    k4 = complete_graph(4)
    text = k4.to_edge_list()
    lines = text.strip().split("\n")
    assert lines[0] == "4 6" and len(lines) == 7
    assert lines[1:] == ["0 1", "0 2", "0 3", "1 2", "1 3", "2 3"]
    assert parse_edge_list(text) == k4
    dot = k4.to_dot()
    assert dot.startswith("graph G {") and dot.rstrip().endswith("}")
    assert dot.count(" -- ") == 6


@given(graphs)
def test_connectivity_matches_networkx(g):
    assert is_connected(g) == nx.is_connected(to_nx(g))


@settings(max_examples=60)
@given(graphs, st.integers(0, 2**32))
def test_isomorphism_on_relabelled_copies(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    h = g.relabel(perm)
    iso = are_isomorphic(g, h)
    assert iso is not None and is_isomorphism(g, h, iso)


@settings(max_examples=80)
@given(graphs, graphs)
def test_isomorphism_matches_networkx(g, h):
    iso = are_isomorphic(g, h)
    assert (iso is not None) == nx.is_isomorphic(to_nx(g), to_nx(h))
    if iso is not None:
        assert is_isomorphism(g, h, iso)


def test_nonisomorphic_regular_pairs():
    # two 3-regular graphs on 6 vertices: prism and K_{3,3}
    prism = cartesian_product([complete_graph(3), complete_graph(2)])[0]
    k33 = from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])
    assert are_isomorphic(prism, k33) is None
    # C_4 + C_4 versus C_8, both 2-regular
    two_c4 = from_edges(8, cycle_graph(4).edges() + [(u + 4, v + 4) for u, v in cycle_graph(4).edges()])
    assert are_isomorphic(two_c4, cycle_graph(8)) is None


@pytest.mark.parametrize("g, expected", [
    (complete_graph(4), 24),
    (cycle_graph(5), 10),
    (cycle_graph(4), 8),
    (path_graph(4), 2),
    (cartesian_power(complete_graph(3), 2), 72),
])
def test_automorphism_count_examples(g, expected):
    assert automorphism_count(g) == expected


@settings(max_examples=60)
@given(graphs)
def test_automorphism_count_matches_brute_force(g):
    if g.n <= 8:
        assert automorphism_count(g) == automorphism_count_brute(g)


def test_automorphism_count_matches_networkx_on_petersen():
    pet = nx.petersen_graph()
    g = from_edges(10, pet.edges())
    vf2 = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(pet, pet).isomorphisms_iter())
    assert automorphism_count(g) == vf2 == 120


def test_automorphism_count_bound():
    with pytest.raises(BoundExceededError):
        automorphism_count(cycle_graph(40), max_vertices=30)


@pytest.mark.parametrize("base, b, aut_base", [
    (complete_graph(2), 2, 2),
    (complete_graph(3), 2, 6),
    (cycle_graph(7), 2, 14),
    (complete_graph(2), 3, 2),
])
def test_simple_product_automorphism_formula(base, b, aut_base):
    from math import factorial

    assert automorphism_count(cartesian_power(base, b)) == aut_base**b * factorial(b)


def test_paley_automorphisms():
    assert automorphism_count(gpaley(3, 4, 20)) == 233280
    assert automorphism_count(gpaley(7, 2, 4)) == 392


def test_product_labels_and_partition():
    f1, f2 = path_graph(3), complete_graph(2)
    g, part = cartesian_product([f1, f2])
    assert g.n == 6
    # vertex (a1, a2) has label a1 * 2 + a2
    assert g.has_edge(0, 2) and g.has_edge(0, 1) and not g.has_edge(0, 3)
    edges = g.edge_array
    seen = set()
    for tag, ctx, eids in part.parts():
        sub = [tuple(edges[e]) for e in eids]
        assert not seen & set(sub)
        seen |= set(sub)
        verts = sorted({x for e in sub for x in e})
        h = g.induced(verts)
        assert are_isomorphic(h, [f1, f2][tag]) is not None
    assert seen == set(g.edges())


@settings(max_examples=30)
@given(graphs, graphs, graphs)
def test_product_commutative_and_associative(a, b, c):
    ab = cartesian_product([a, b])[0]
    ba = cartesian_product([b, a])[0]
    assert are_isomorphic(ab, ba) is not None
    left = cartesian_product([ab, c])[0]
    right = cartesian_product([a, cartesian_product([b, c])[0]])[0]
    flat = cartesian_product([a, b, c])[0]
    assert left == flat
    assert are_isomorphic(left, right) is not None


def test_automorphism_checks():
    c5 = cycle_graph(5)
    assert is_automorphism(c5, [1, 2, 3, 4, 0])
    assert not is_automorphism(c5, [0, 2, 1, 3, 4])
    assert not is_automorphism(c5, [0, 0, 1, 2, 3])
