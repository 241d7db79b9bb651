import itertools

import pytest

from gpaley.gf import (
    field_arith,
    find_irreducible,
    find_primitive,
    frobenius,
    get_field,
    is_irreducible,
    power_subgroup,
    subfield_elements,
)
from gpaley.numtheory import divisors, prime_powers


def brute_irreducible(f, p):
    """No root and no monic factor of degree 2..deg/2, by enumeration."""
    from gpaley.gf import poly_divmod

    n = len(f) - 1
    for deg in range(1, n // 2 + 1):
        for enc in range(p**deg):
            g = [(enc // p**i) % p for i in range(deg)] + [1]
            if not poly_divmod(f, g, p)[1]:
                return False
    return True


@pytest.mark.parametrize("p, n, expected", [
    (2, 2, (1, 1, 1)),
    (3, 2, (1, 0, 1)),
    (2, 4, (1, 1, 0, 0, 1)),
    (7, 1, (0, 1)),
])
def test_find_irreducible_examples(p, n, expected):
    assert find_irreducible(p, n) == expected


@pytest.mark.parametrize("p, n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)])
def test_irreducible_is_smallest(p, n):
    f = find_irreducible(p, n)
    enc = sum(c * p**i for i, c in enumerate(f[:-1]))
    for smaller in range(enc):
        cand = [(smaller // p**i) % p for i in range(n)] + [1]
        assert not brute_irreducible(cand, p)
    assert brute_irreducible(list(f), p)


@pytest.mark.parametrize("p, n", [(2, 3), (3, 3), (5, 2), (2, 5)])
def test_ben_or_matches_enumeration(p, n):
    for enc in range(p**n):
        cand = [(enc // p**i) % p for i in range(n)] + [1]
        assert is_irreducible(cand, p) == brute_irreducible(cand, p)


def test_field_arith_examples():
    F4 = get_field(2, 2)
    assert field_arith(F4, "mul", 2, 2) == 3
    F9 = get_field(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert field_arith(F9, "mul", 4, 4) == 6
    for e in range(9):
        assert field_arith(F9, "add", e, 0) == e
    assert field_arith(F9, "pow", 4, 8) == 1
    assert field_arith(F9, "sub", 4, 4) == 0
    with pytest.raises(ZeroDivisionError):
        field_arith(F9, "inv", 0)
    with pytest.raises(ValueError):
        field_arith(F9, "add", 9, 0)


@pytest.mark.parametrize("p, n, xi", [(2, 2, 2), (3, 2, 4), (7, 1, 3)])
def test_primitive_examples(p, n, xi):
    F = get_field(p, n)
    assert find_primitive(F) == xi
    # nothing smaller generates
    for e in range(1, xi):
        powers = {F.pow(e, i) for i in range(F.q - 1)}
        assert len(powers) < F.q - 1


def test_gf9_small_element_orders():
    F = get_field(3, 2)
    order = lambda a: next(i for i in range(1, 9) if F.pow(a, i) == 1)  # noqa: E731
    assert (order(2), order(3), order(4)) == (2, 4, 8)


def _fields(bound):
    return [get_field(p, n) for p, n in prime_powers(bound)]


@pytest.mark.slow
@pytest.mark.parametrize("F", _fields(256), ids=repr)
def test_field_axioms_exhaustive(F):
    import numpy as np

    q = F.q
    a = np.arange(q)
    A, B = np.meshgrid(a, a, indexing="ij")
    add = F.add_arrays(A, B)
    mul = F.mul_arrays(A, B)
    assert (add == add.T).all() and (mul == mul.T).all()
    # associativity and distributivity, row by row
    for x in range(q):
        assert (add[add[x], :] == add[x][add]).all()
        assert (mul[mul[x], :] == mul[x][mul]).all()
        assert (mul[x][add] == add[mul[x], :][:, mul[x]]).all()
    assert (add[:, 0] == a).all() and (mul[:, 1] == a).all()
    assert all(F.mul(x, F.inv(x)) == 1 for x in range(1, q))
    assert all(F.add(x, F.neg(x)) == 0 for x in range(q))
    # scalar and vector paths agree
    for x, y in itertools.islice(itertools.product(range(q), repeat=2), 0, None, max(1, q * q // 500)):
        assert F.add(x, y) == add[x, y] and F.mul(x, y) == mul[x, y]


@pytest.mark.parametrize("F", _fields(256), ids=repr)
def test_frobenius_is_ring_automorphism(F):
    for i in range(F.n):
        images = [frobenius(F, e, i) for e in range(F.q)]
        assert sorted(images) == list(range(F.q))
        for x in range(0, F.q, max(1, F.q // 16)):
            for y in range(F.q):
                assert frobenius(F, F.add(x, y), i) == F.add(images[x], images[y])
                assert frobenius(F, F.mul(x, y), i) == F.mul(images[x], images[y])


def test_frobenius_examples():
    F4 = get_field(2, 2)
    assert frobenius(F4, 2, 1) == 3
    assert frobenius(F4, 3, 0) == 3
    F9 = get_field(3, 2)
    assert all(F9.frobenius(F9.frobenius(e, 1), 1) == e for e in range(9))


def test_subfield_examples():
    F9 = get_field(3, 2)
    assert subfield_elements(F9, 2) == list(range(9))
    assert subfield_elements(F9, 1) == [0, 1, 2]
    F16 = get_field(2, 4)
    sub = subfield_elements(F16, 2)
    assert len(sub) == 4 and {0, 1} <= set(sub)
    for x in sub:
        for y in sub:
            assert F16.add(x, y) in sub and F16.mul(x, y) in sub
    with pytest.raises(ValueError):
        subfield_elements(F16, 3)


@pytest.mark.parametrize("p, n", [(2, 6), (3, 4), (2, 4), (5, 2)])
def test_subfield_fixed_points_by_definition(p, n):
    F = get_field(p, n)
    for m in divisors(n):
        fixed = [a for a in range(F.q) if F._pow_slow(a, p**m) == a]
        assert subfield_elements(F, m) == fixed
        assert len(fixed) == p**m


def test_power_subgroup_examples():
    assert power_subgroup(get_field(3, 2), 4) == [6, 2, 3, 1]
    assert power_subgroup(get_field(7, 1), 2) == [6, 1]
    F = get_field(2, 4)
    assert sorted(power_subgroup(F, 15)) == list(range(1, 16))
    with pytest.raises(ValueError):
        power_subgroup(F, 4)


@pytest.mark.parametrize("F", _fields(243), ids=repr)
def test_power_subgroups_closed_and_frobenius_stable(F):
    for k in divisors(F.q - 1):
        S = power_subgroup(F, k)
        assert len(set(S)) == k and S[-1] == 1
        Sset = set(S)
        assert all(F.mul(x, y) in Sset for x in S for y in S[:4])
        for i in range(F.n):
            assert {F.frobenius(s, i) for s in S} == Sset


def test_large_field_without_tables():
    F = get_field(2, 23)
    assert not F.has_tables
    x = F.xi
    assert F.mul(x, F.inv(x)) == 1
    assert F.pow(x, F.q - 1) == 1
    assert F.pow(x, (F.q - 1) // 47) != 1


def _closure_by_sums(F, S):
    """Additive closure by repeated pairwise sums, independent of the span routine."""
    span = {0}
    frontier = set(S)
    while frontier:
        span |= frontier
        frontier = {F.add(a, b) for a in frontier for b in S} - span
    return span


def test_additive_closure_matches_pairwise_sums():
    F = get_field(2, 4)
    for k in divisors(15):
        S = F.power_subgroup(k)
        assert set(F.additive_closure(S)) == _closure_by_sums(F, S)


@pytest.mark.slow
@pytest.mark.parametrize("F", _fields(729), ids=repr)
def test_additive_closure_of_subgroup_is_subfield(F):
    subfields = {m: set(subfield_elements(F, m)) for m in divisors(F.n)}
    for k in divisors(F.q - 1):
        U = set(F.additive_closure(F.power_subgroup(k)))
        m = next((m for m, sub in subfields.items() if len(sub) == len(U)), None)
        assert m is not None, (F, k, len(U))
        assert U == subfields[m]
        nonzero = sorted(U - {0})
        assert all(F.mul(a, b) in U for a in nonzero for b in nonzero[:8])
