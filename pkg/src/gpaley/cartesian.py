"""Cartesian decompositions of generalised Paley graphs.

Two independent routes are kept side by side:

* the parameter route: (b, c) pairs with k = b*c, b | n, b > 1 and c a
  primitive divisor of p^(n/b) - 1, each turned into an explicit map from
  the b-th Cartesian power of GPaley(p^(n/b), c) onto the graph;
* the graph route: a square-relation prime factorization that knows
  nothing about fields, checked by recomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import (
    BoundExceededError,
    Graph,
    are_isomorphic,
    cartesian_power,
    cartesian_product,
    cayley,
    is_connected,
    is_isomorphism,
    mixed_radix,
)
from .numtheory import divisors, is_primitive_divisor
from .paley import GPaleyParams, ParameterError, build, gpaley, validate_params

DEFAULT_ORACLE_BOUND = 256


class DisconnectedError(ValueError):
    """Operation needs a connected graph (k a primitive divisor of p^n - 1)."""


class InvalidPairError(ValueError):
    pass


class OddFactorValencyError(ParameterError):
    """The factor GPaley(p^(n/b), c) would need c even but c is odd."""


class WitnessVerificationError(AssertionError):
    pass


class FactorizationError(AssertionError):
    """The square-relation classes did not recompose to the input graph."""


@dataclass(frozen=True, order=True)
class DecompPair:
    b: int
    c: int

    def __iter__(self):
        return iter((self.b, self.c))


def _require_connected(params: GPaleyParams) -> None:
    if not params.connected:
        raise DisconnectedError(
            f"{params!r} is disconnected: {params.k} is not a primitive divisor of "
            f"{params.p}^{params.n} - 1"
        )


def decomposable_params(params: GPaleyParams) -> list[DecompPair]:
    """All (b, c) with b > 1, b | n, k = b*c, c primitive for p^(n/b) - 1."""
    _require_connected(params)
    p, n, k = params.triple
    return [
        DecompPair(b, k // b)
        for b in divisors(n)
        if b > 1 and k % b == 0 and is_primitive_divisor(k // b, p, n // b)
    ]


def is_hamming(params: GPaleyParams, pair: DecompPair) -> bool:
    return pair.c == params.p ** (params.n // pair.b) - 1


def factor_params(params: GPaleyParams, pair: DecompPair) -> GPaleyParams:
    """Parameters of the factor GPaley(p^(n/b), c)."""
    p = params.p
    if p % 2 and pair.c % 2:
        raise OddFactorValencyError(
            f"factor valency c = {pair.c} is odd for odd p = {p} ({params!r}, b = {pair.b})"
        )
    return validate_params(p, params.n // pair.b, pair.c)


@dataclass
class DecompositionWitness:
    """Explicit isomorphism from the b-th power of the factor onto the graph.

    ``phi[t]`` is the field element (= vertex of the graph) assigned to the
    product vertex t, whose mixed-radix digits (a_1, ..., a_b) index
    ``subfield``; phi sends it to sum_i subfield[a_i] * basis[i].
    """

    pair: DecompPair
    C: list[int]
    cosets: list[list[int]]
    basis: list[int]
    subfield: list[int]
    factor: Graph
    phi: list[int] = field(repr=False)

    def to_json(self) -> dict:
        return {
            "b": self.pair.b,
            "c": self.pair.c,
            "C": list(self.C),
            "cosets": [list(s) for s in self.cosets],
            "basis": list(self.basis),
            "subfield": list(self.subfield),
            "factor": {
                "vertices": self.factor.n,
                "edges": [list(e) for e in self.factor.edges()],
            },
            "phi": list(self.phi),
        }


def _edge_keys(edges: np.ndarray, n: int) -> np.ndarray:
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return np.minimum(e[:, 0], e[:, 1]) * n + np.maximum(e[:, 0], e[:, 1])


def _maps_exactly(src: Graph, dst: Graph, phi: np.ndarray) -> bool:
    """phi: V(src) -> V(dst) bijective with edges <-> edges, both directions."""
    n = dst.n
    if src.n != n or len(phi) != n:
        return False
    if not np.array_equal(np.sort(phi), np.arange(n)):
        return False
    forward = _edge_keys(phi[src.edge_array], n)
    if not np.isin(forward, _edge_keys(dst.edge_array, n)).all():
        return False
    back = _edge_keys(np.argsort(phi)[dst.edge_array], n)
    return bool(np.isin(back, _edge_keys(src.edge_array, n)).all())


def construct_decomposition(params: GPaleyParams, pair: DecompPair) -> DecompositionWitness:
    """Build and check the witness for GPaley(p^n, k) = box^b GPaley(p^(n/b), c).

    C is the order-c subgroup <xi^((q-1)/c)>, the cosets are
    S_i = C * xi^(d i) for i = 1..b (so S_b = C), and the basis is
    xi^d, xi^(2d), ..., xi^(bd) over the subfield of order p^(n/b).
    """
    pair = DecompPair(*pair)
    if pair not in decomposable_params(params):
        raise InvalidPairError(f"{tuple(pair)} is not a decomposition pair for {params!r}")
    F = params.field
    b, c = pair.b, pair.c
    if params.p % 2 and c % 2:
        raise OddFactorValencyError(f"factor valency c = {c} is odd for odd p")
    C = F.power_subgroup(c)
    basis = [F.xi_pow(params.d * i) for i in range(1, b + 1)]
    cosets = [[F.mul(x, s) for x in C] for s in basis]
    subfield = F.subfield_elements(params.n // b)
    if not set(C) <= set(subfield):
        raise WitnessVerificationError("C is not inside the subfield")
    factor = cayley(F, C, subfield)

    # phi over all digit tuples, first digit most significant
    sub = np.array(subfield, dtype=np.int64)
    scaled = F.mul_arrays(sub[:, None], np.array(basis, dtype=np.int64)[None, :])
    r = len(subfield)
    idx = np.arange(r**b, dtype=np.int64)
    phi = np.zeros(r**b, dtype=np.int64)
    for i, stride in enumerate(mixed_radix([r] * b)):
        phi = F.add_arrays(phi, scaled[(idx // stride) % r, i])

    witness = DecompositionWitness(pair, C, cosets, basis, subfield, factor, phi.tolist())
    if not _maps_exactly(cartesian_power(factor, b), build(params), phi):
        raise WitnessVerificationError(f"phi is not an isomorphism for {params!r}, pair {tuple(pair)}")
    return witness


def verify_decomposition(params: GPaleyParams, witness: DecompositionWitness) -> bool:
    """Independent re-check of a witness; never raises."""
    try:
        b, c = witness.pair.b, witness.pair.c
        F = params.field
        if b * c != params.k or params.n % b or len(witness.C) != c:
            return False
        # the cosets partition S
        flat = [x for s in witness.cosets for x in s]
        if len(witness.cosets) != b or len(flat) != len(set(flat)) or set(flat) != set(params.S):
            return False
        if sorted(witness.subfield) != F.subfield_elements(params.n // b):
            return False
        product, _ = cartesian_product([witness.factor] * b)
        if not _maps_exactly(product, build(params), np.asarray(witness.phi, dtype=np.int64)):
            return False
        canonical = gpaley(params.p, params.n // b, c)
        return are_isomorphic(witness.factor, canonical) is not None
    except Exception:
        return False


def canonical_decomposition(params: GPaleyParams) -> tuple[DecompPair, DecompositionWitness] | None:
    """Decomposition with the largest b, or None when the graph is prime."""
    pairs = decomposable_params(params)
    if not pairs:
        return None
    pair = max(pairs, key=lambda pr: pr.b)
    return pair, construct_decomposition(params, pair)


# -- graph-level factorization ----------------------------------------------------

@dataclass
class FactorizationResult:
    """Prime factors read off the square-relation edge classes.

    ``reconstruction[t]`` is the input vertex matching vertex t of the
    product of ``factors`` (mixed radix, first factor most significant);
    ``layers[i]`` lists the input vertices of the copy of factor i through
    vertex 0, in the order used to label that factor.
    """

    edge_coloring: dict[tuple[int, int], int]
    factors: list[Graph]
    reconstruction: list[int]
    layers: list[list[int]]

    def __len__(self) -> int:
        return len(self.factors)


def _components(n: int, edges: np.ndarray) -> list[int]:
    return Graph._from_pair_array(n, edges).components()


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs BFS distances (-1 when unreachable)."""
    n = g.n
    dist = np.full((n, n), -1, dtype=np.int32)
    np.fill_diagonal(dist, 0)
    adj = g.adj_matrix.astype(np.int32)
    reach = np.eye(n, dtype=np.int32)
    step = 0
    while True:
        step += 1
        reach = ((reach @ adj) > 0).astype(np.int32)
        fresh = (reach > 0) & (dist < 0)
        if not fresh.any():
            return dist
        dist[fresh] = step


def _theta_merge(g: Graph, classes: np.ndarray) -> np.ndarray:
    """Coarsen edge classes by the Djokovic-Winkler relation.

    xy theta uv iff d(x,u) + d(y,v) != d(x,v) + d(y,u). Edges of different
    Cartesian factors are never theta-related, so merging keeps the
    classes inside the product relation; together with the square
    relation it generates that relation (Feder).
    """
    count = int(classes.max()) + 1
    if count == 1:
        return classes
    dist = distance_matrix(g).astype(np.int64)
    edges = g.edge_array.astype(np.int64)
    u, v = edges[:, 0], edges[:, 1]
    parent = list(range(count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, y in edges.tolist():
        w = dist[x] - dist[y]
        related = np.unique(classes[w[u] != w[v]])
        roots = {find(int(c)) for c in related}
        if len(roots) > 1:
            top = min(roots)
            for r in roots:
                parent[r] = top
            count -= len(roots) - 1
            if count == 1:
                break
    merged = np.array([find(c) for c in range(len(parent))], dtype=np.int64)[classes]
    _, labels = np.unique(merged, return_inverse=True)
    # renumber by first edge so labels stay canonical
    order = {}
    return np.array([order.setdefault(int(c), len(order)) for c in labels], dtype=np.int64)


def _factor_once(g: Graph) -> FactorizationResult:
    n = g.n
    if n == 1:
        return FactorizationResult({}, [], [0], [])
    classes = np.array(kernels.square_classes(g), dtype=np.int64)
    classes = _theta_merge(g, classes)
    edges = g.edge_array.astype(np.int64)
    count = int(classes.max()) + 1
    factors, layers, coords = [], [], []
    for i in range(count):
        mine = edges[classes == i]
        fiber = _components(n, mine)
        layer = [v for v in range(n) if fiber[v] == fiber[0]]
        cofiber = _components(n, edges[classes != i])
        where = {cofiber[v]: j for j, v in enumerate(layer)}
        if len(where) != len(layer) or len(set(cofiber)) != len(layer):
            raise FactorizationError("edge classes do not form a product structure")
        coords.append([where[cofiber[v]] for v in range(n)])
        pos = {v: j for j, v in enumerate(layer)}
        inside = [(pos[u], pos[v]) for u, v in mine.tolist() if u in pos and v in pos]
        factors.append(Graph.from_edges(len(layer), inside))
        layers.append(layer)
    strides = mixed_radix([f.n for f in factors])
    index = [sum(c[v] * s for c, s in zip(coords, strides)) for v in range(n)]
    if sorted(index) != list(range(n)):
        raise FactorizationError("coordinates are not a bijection")
    recon = [0] * n
    for v, t in enumerate(index):
        recon[t] = v
    product, _ = cartesian_product(factors)
    if not is_isomorphism(product, g, recon):
        raise FactorizationError("recomposed factors are not isomorphic to the input")
    coloring = {(int(u), int(v)): int(c) for (u, v), c in zip(edges.tolist(), classes.tolist())}
    return FactorizationResult(coloring, factors, recon, layers)


def prime_factorize(g: Graph, max_vertices: int = DEFAULT_ORACLE_BOUND) -> FactorizationResult:
    """Cartesian prime factorization of a connected graph.

    The output is verified before it is returned: the product of the
    factors maps onto ``g`` edge for edge through ``reconstruction``, and
    every factor is re-run through the relation and must stay in one piece.
    """
    if g.n > max_vertices:
        raise BoundExceededError(f"{g.n} vertices exceeds factorization bound {max_vertices}")
    if not is_connected(g):
        raise DisconnectedError("prime factorization needs a connected graph")
    result = _factor_once(g)
    for f in result.factors:
        if len(_factor_once(f).factors) != 1:
            raise FactorizationError("a returned factor is not Cartesian-prime")
    return result


def is_cartesian_prime(g: Graph, max_vertices: int = DEFAULT_ORACLE_BOUND) -> bool:
    return g.n > 1 and len(prime_factorize(g, max_vertices).factors) == 1


def oracle_decomposable(params: GPaleyParams, max_vertices: int = DEFAULT_ORACLE_BOUND) -> bool:
    """Graph-level answer: more than one prime factor."""
    return len(prime_factorize(build(params), max_vertices).factors) > 1
