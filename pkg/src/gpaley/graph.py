"""Finite simple undirected graphs on vertices ``0..n-1``.

Adjacency is held as CSR arrays (sorted neighbour lists) with lazily built
bit rows and a dense 0/1 matrix for O(1) pair queries. On top of that sit
Cayley graphs over field additive groups, Cartesian products with their
induced edge partition, and the refinement/backtracking searches used as
isomorphism and automorphism oracles.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels

DEFAULT_AUT_BOUND = 2048


class BoundExceededError(ValueError):
    """Input is larger than the configured search bound."""


class Graph:
    """Immutable simple graph with canonical integer labels."""

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int32)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.m = len(self.indices) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        pairs = np.array([tuple(e) for e in edges], dtype=np.int64).reshape(-1, 2)
        if len(pairs):
            if (pairs < 0).any() or (pairs >= n).any():
                raise ValueError("edge endpoint out of range")
            if (pairs[:, 0] == pairs[:, 1]).any():
                raise ValueError("loops are not allowed")
        return cls._from_pair_array(n, pairs)

    @classmethod
    def _from_pair_array(cls, n: int, pairs: np.ndarray) -> "Graph":
        if len(pairs):
            lo = np.minimum(pairs[:, 0], pairs[:, 1])
            hi = np.maximum(pairs[:, 0], pairs[:, 1])
            key = np.unique(lo * n + hi)
            lo, hi = np.divmod(key, n)
            src = np.concatenate([lo, hi])
            dst = np.concatenate([hi, lo])
        else:
            src = dst = np.zeros(0, dtype=np.int64)
        return cls._from_arcs(n, src, dst)

    @classmethod
    def _from_arcs(cls, n: int, src: np.ndarray, dst: np.ndarray) -> "Graph":
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst)

    @classmethod
    def from_neighbor_array(cls, nbrs: np.ndarray) -> "Graph":
        """Graph from an (n, k) array listing every vertex's neighbours.

        The relation must already be symmetric and loop-free.
        """
        n, k = nbrs.shape
        src = np.repeat(np.arange(n, dtype=np.int64), k)
        dst = np.asarray(nbrs, dtype=np.int64).ravel()
        if (src == dst).any():
            raise ValueError("loops are not allowed")
        g = cls._from_arcs(n, src, dst)
        if len(np.unique(src * n + dst)) != len(src):
            raise ValueError("repeated neighbour")
        if not g._is_symmetric():
            raise ValueError("neighbour relation is not symmetric")
        return g

    def _is_symmetric(self) -> bool:
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        fwd = np.sort(src * self.n + self.indices)
        back = np.sort(self.indices.astype(np.int64) * self.n + src)
        return np.array_equal(fwd, back)

    # -- queries
    @cached_property
    def adj(self) -> list[list[int]]:
        ip = self.indptr.tolist()
        idx = self.indices.tolist()
        return [idx[ip[v]:ip[v + 1]] for v in range(self.n)]

    @cached_property
    def rows(self) -> list[int]:
        """Neighbourhoods as int bitsets."""
        out = []
        for nb in self.adj:
            r = 0
            for w in nb:
                r |= 1 << w
            out.append(r)
        return out

    @cached_property
    def adj_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=np.uint8)
        src = np.repeat(np.arange(self.n), np.diff(self.indptr))
        mat[src, self.indices] = 1
        return mat

    @cached_property
    def edge_array(self) -> np.ndarray:
        """(m, 2) array of edges u < v in lexicographic order."""
        src = np.repeat(np.arange(self.n, dtype=np.int32), np.diff(self.indptr))
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    @cached_property
    def arc_edge_id(self) -> np.ndarray:
        """Edge index (into :attr:`edge_array`) for every CSR arc."""
        n = self.n
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(self.indptr))
        dst = self.indices.astype(np.int64)
        key = np.minimum(src, dst) * n + np.maximum(src, dst)
        ekeys = self.edge_array[:, 0].astype(np.int64) * n + self.edge_array[:, 1]
        return np.searchsorted(ekeys, key).astype(np.int32)

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self.edge_array.tolist()]

    def is_regular(self, k: int | None = None) -> bool:
        deg = self.degrees()
        if not len(deg):
            return True
        return bool((deg == (deg[0] if k is None else k)).all())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs
    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed to perm[v]."""
        perm = np.asarray(perm, dtype=np.int64)
        return Graph._from_pair_array(self.n, perm[self.edge_array])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled by ascending position in ``vertices``."""
        verts = sorted(vertices)
        pos = {v: i for i, v in enumerate(verts)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return Graph.from_edges(len(verts), edges)

    def components(self) -> list[int]:
        """Component label per vertex (labels in order of smallest member)."""
        label = [-1] * self.n
        adj = self.adj
        count = 0
        for s in range(self.n):
            if label[s] >= 0:
                continue
            label[s] = count
            stack = [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if label[w] < 0:
                        label[w] = count
                        stack.append(w)
            count += 1
        return label

    # -- text formats
    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines.extend(f"  {v};" for v in range(self.n))
        lines.extend(f"  {u} -- {v};" for u, v in self.edges())
        lines.append("}")
        return "\n".join(lines) + "\n"


def from_edges(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph.from_edges(vertex_count, edges)


def parse_edge_list(text: str) -> Graph:
    """Inverse of :meth:`Graph.to_edge_list`."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with a 'V E' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise ValueError(f"bad edge line: {' '.join(r)}")
        edges.append((int(r[0]), int(r[1])))
    if len(edges) != m:
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    if g.m != m:
        raise ValueError("duplicate edges in edge list")
    return g


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


# -- Cayley graphs over (F, +) ------------------------------------------------

def cayley(field, connection_set: Sequence[int], elements: Sequence[int] | None = None) -> Graph:
    """Cayley graph on an additive subgroup of ``field``.

    Vertices are ``elements`` (all of the field by default) in ascending
    order; x ~ y iff x - y lies in ``connection_set``.
    """
    S = sorted(set(connection_set))
    if 0 in S:
        raise ValueError("connection set contains 0")
    if sorted(field.neg(s) for s in S) != S:
        raise ValueError("connection set is not closed under negation")
    if elements is None:
        verts = np.arange(field.q, dtype=np.int64)
    else:
        verts = np.array(sorted(elements), dtype=np.int64)
    n = len(verts)
    if not S:
        return Graph.from_edges(n, [])
    if field.q <= 4 * 10**6:
        targets = field.add_arrays(verts[:, None], np.array(S, dtype=np.int64)[None, :])
    else:
        targets = np.array([[field.add(int(x), s) for s in S] for x in verts], dtype=np.int64)
    pos = np.searchsorted(verts, targets)
    pos = np.minimum(pos, n - 1)
    if not (verts[pos] == targets).all():
        raise ValueError("vertex set is not closed under the connection set")
    return Graph.from_neighbor_array(pos)


# -- Cartesian products -------------------------------------------------------

@dataclass(frozen=True)
class CartesianEdgePartition:
    """Parts E(i, ctx): edges moving only coordinate i, other coordinates = ctx.

    ``part_of_edge`` indexes into the product's :attr:`Graph.edge_array`.
    """

    orders: tuple[int, ...]
    part_factor: tuple[int, ...]
    part_context: tuple[tuple[int, ...], ...]
    part_of_edge: np.ndarray

    def __len__(self) -> int:
        return len(self.part_factor)

    def edges_of(self, part: int) -> np.ndarray:
        return np.flatnonzero(self.part_of_edge == part)

    def parts(self):
        """Yield (factor index, context tuple, edge indices)."""
        order = np.argsort(self.part_of_edge, kind="stable")
        bounds = np.searchsorted(self.part_of_edge[order], np.arange(len(self) + 1))
        for j in range(len(self)):
            yield self.part_factor[j], self.part_context[j], order[bounds[j]:bounds[j + 1]]


def mixed_radix(orders: Sequence[int]) -> list[int]:
    """Place values for product vertex encoding, first factor most significant."""
    strides = [1] * len(orders)
    for i in range(len(orders) - 2, -1, -1):
        strides[i] = strides[i + 1] * orders[i + 1]
    return strides


def cartesian_product(factors: Sequence[Graph]) -> tuple[Graph, CartesianEdgePartition]:
    if not factors:
        raise ValueError("need at least one factor")
    orders = [f.n for f in factors]
    if min(orders) < 1:
        raise ValueError("factors must be nonempty")
    total = int(np.prod(orders))
    strides = mixed_radix(orders)
    verts = np.arange(total, dtype=np.int64)
    pairs, tags = [], []
    part_factor, part_context = [], []
    n_parts = 0
    for i, f in enumerate(factors):
        digit = (verts // strides[i]) % orders[i]
        base = verts[digit == 0]
        if f.m:
            e = f.edge_array.astype(np.int64)
            a = base[:, None] + e[None, :, 0] * strides[i]
            b = base[:, None] + e[None, :, 1] * strides[i]
            pairs.append(np.stack([a.ravel(), b.ravel()], axis=1))
            tags.append(np.repeat(np.arange(n_parts, n_parts + len(base)), f.m))
        for x in base.tolist():
            ctx = tuple((x // strides[j]) % orders[j] for j in range(len(orders)) if j != i)
            part_factor.append(i)
            part_context.append(ctx)
        n_parts += len(base)
    if pairs:
        allpairs = np.concatenate(pairs)
        alltags = np.concatenate(tags)
    else:
        allpairs = np.zeros((0, 2), dtype=np.int64)
        alltags = np.zeros(0, dtype=np.int64)
    g = Graph._from_pair_array(total, allpairs)
    # product pairs are already u < v and distinct; align tags with edge_array order
    key = allpairs[:, 0] * total + allpairs[:, 1]
    order = np.argsort(key)
    part = CartesianEdgePartition(
        orders=tuple(orders),
        part_factor=tuple(part_factor),
        part_context=tuple(part_context),
        part_of_edge=alltags[order],
    )
    return g, part


def cartesian_power(g: Graph, b: int) -> Graph:
    return cartesian_product([g] * b)[0]


# -- connectivity ---------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = 1
    adj = g.adj
    visited = bytearray(g.n)
    visited[0] = 1
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if not visited[w]:
                    visited[w] = 1
                    nxt.append(w)
        seen += len(nxt)
        frontier = nxt
    return seen == g.n


# -- maps -------------------------------------------------------------------

def is_bijection(perm: Sequence[int], n: int) -> bool:
    return len(perm) == n and sorted(perm) == list(range(n))


def is_isomorphism(g: Graph, h: Graph, perm: Sequence[int]) -> bool:
    """Edge-exact check that v -> perm[v] is an isomorphism g -> h."""
    if g.n != h.n or g.m != h.m or not is_bijection(list(perm), g.n):
        return False
    # injective on vertices + edges into edges + equal edge counts => onto
    return kernels.maps_edges(g, h, np.asarray(perm, dtype=np.int32))


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    return is_isomorphism(g, g, perm)


# -- refinement search -------------------------------------------------------

def _initial_colors(g: Graph) -> tuple[list[int], int]:
    return kernels.refine(g, kernels.distance_profile_colors(g))


def _individualize(colors: list[int], v: int) -> list[int]:
    out = list(colors)
    out[v] = max(colors) + 1
    return out


def _target_cell(colors: list[int]) -> list[int] | None:
    """Vertices of the lowest-coloured non-singleton cell, ascending."""
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    for c in sorted(cells):
        if len(cells[c]) > 1:
            return cells[c]
    return None


def _extend(g: Graph, h: Graph, cg: list[int], ch: list[int]) -> list[int] | None:
    """Find an isomorphism g -> h respecting equitable colourings cg, ch."""
    cell = _target_cell(cg)
    if cell is None:
        where = {c: w for w, c in enumerate(ch)}
        perm = [where[c] for c in cg]
        return perm if is_isomorphism(g, h, perm) else None
    color = cg[cell[0]]
    left, ltrace = kernels.refine(g, _individualize(cg, cell[0]))
    for w in (u for u, c in enumerate(ch) if c == color):
        right, rtrace = kernels.refine(h, _individualize(ch, w))
        if rtrace != ltrace:
            continue
        found = _extend(g, h, left, right)
        if found is not None:
            return found
    return None


def _with_recursion_room(n: int):
    limit = sys.getrecursionlimit()
    if limit < 4 * n + 100:
        sys.setrecursionlimit(4 * n + 100)


def are_isomorphic(g: Graph, h: Graph) -> list[int] | None:
    """An isomorphism g -> h as an image list, or None.

    Deterministic: refinement by neighbour-colour multisets from a
    distance-profile start, then backtracking on the lowest-coloured
    non-singleton cell. Any returned map has been checked edge by edge.
    """
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(g.degrees().tolist()) != sorted(h.degrees().tolist()):
        return None
    if g.n == 0:
        return []
    cg, tg = _initial_colors(g)
    ch, th = _initial_colors(h)
    if tg != th:
        return None
    _with_recursion_room(g.n)
    return _extend(g, h, cg, ch)


def _orbit(v: int, gens: list[list[int]]) -> set[int]:
    orbit = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for gen in gens:
                w = gen[u]
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    return orbit


@dataclass
class AutomorphismSearch:
    """Result of :func:`automorphism_group`: stabilizer chain data."""

    order: int
    base: list[int]
    orbit_sizes: list[int]
    generators: list[list[int]]


def automorphism_group(g: Graph, max_vertices: int = DEFAULT_AUT_BOUND) -> AutomorphismSearch:
    """Order of Aut(g) via orbit-stabilizer down a refinement chain.

    At each level the first vertex v of the target cell is fixed; the orbit
    of v under the current pointwise stabilizer is grown from automorphisms
    found by search, skipping candidates already reached by those found.
    """
    if g.n > max_vertices:
        raise BoundExceededError(f"{g.n} vertices exceeds automorphism bound {max_vertices}")
    if g.n == 0:
        return AutomorphismSearch(1, [], [], [])
    _with_recursion_room(g.n)
    colors, _ = _initial_colors(g)
    order = 1
    base, sizes, gens_all = [], [], []
    while True:
        cell = _target_cell(colors)
        if cell is None:
            break
        v = cell[0]
        fixed, vtrace = kernels.refine(g, _individualize(colors, v))
        gens: list[list[int]] = []
        orbit = {v}
        for w in cell[1:]:
            if w in orbit:
                continue
            moved, wtrace = kernels.refine(g, _individualize(colors, w))
            if wtrace != vtrace:
                continue
            perm = _extend(g, g, fixed, moved)
            if perm is not None:
                gens.append(perm)
                orbit = _orbit(v, gens)
        order *= len(orbit)
        base.append(v)
        sizes.append(len(orbit))
        gens_all.extend(gens)
        colors = fixed
    return AutomorphismSearch(order, base, sizes, gens_all)


def automorphism_count(g: Graph, max_vertices: int = DEFAULT_AUT_BOUND) -> int:
    return automorphism_group(g, max_vertices).order


def automorphism_count_brute(g: Graph) -> int:
    """Count automorphisms by trying every permutation (tiny graphs only)."""
    from itertools import permutations

    if g.n > 8:
        raise BoundExceededError("brute-force count limited to 8 vertices")
    return sum(1 for perm in permutations(range(g.n)) if is_automorphism(g, perm))


__all__ = [
    "AutomorphismSearch",
    "BoundExceededError",
    "CartesianEdgePartition",
    "Graph",
    "are_isomorphic",
    "automorphism_count",
    "automorphism_count_brute",
    "automorphism_group",
    "cartesian_power",
    "cartesian_product",
    "cayley",
    "complete_graph",
    "cycle_graph",
    "from_edges",
    "is_automorphism",
    "is_connected",
    "is_isomorphism",
    "mixed_radix",
    "parse_edge_list",
    "path_graph",
]
