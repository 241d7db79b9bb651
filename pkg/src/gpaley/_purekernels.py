"""Reference (pure Python) versions of the hot graph kernels.

``_ckernels.pyx`` mirrors these function for function and must return
identical values; the test suite compares the two whenever the compiled
module is importable.
"""

from __future__ import annotations

MASK = (1 << 64) - 1
_SALT_COLOR = 0x243F6A8885A308D3
_SALT_PROFILE = 0x13198A2E03707344


def mix(x: int) -> int:
    """splitmix64 finalizer on a 64-bit word."""
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


def _rank(sig: list[int]) -> tuple[list[int], list[int], dict[int, int]]:
    uniq = sorted(set(sig))
    rank = {h: i for i, h in enumerate(uniq)}
    counts = dict.fromkeys(uniq, 0)
    for h in sig:
        counts[h] += 1
    return [rank[h] for h in sig], uniq, counts


def refine(g, colors) -> tuple[list[int], int]:
    """Iterate colour <- hash(colour, multiset of neighbour colours) to a
    fixpoint. Returns canonical colour ranks and a trace word that two
    colourings must share to be isomorphic.
    """
    adj = g.adj
    colors = list(colors)
    ncolors = len(set(colors))
    trace = mix(ncolors)
    while True:
        tok = [mix(c) for c in range(max(colors) + 1)] if colors else []
        sig = []
        for v in range(len(colors)):
            s = sum([tok[colors[w]] for w in adj[v]]) & MASK
            sig.append(mix(mix(colors[v] ^ _SALT_COLOR) ^ s))
        new, uniq, counts = _rank(sig)
        for h in uniq:
            trace = mix(trace ^ h)
            trace = mix(trace ^ counts[h])
        colors = new
        if len(uniq) == ncolors:
            return colors, trace
        ncolors = len(uniq)


def distance_profile_colors(g) -> list[int]:
    """Rank of each vertex's distance profile (vertex counts per BFS layer)."""
    adj = g.adj
    n = len(adj)
    sig = []
    seen = [-1] * n
    for s in range(n):
        seen[s] = s
        frontier = [s]
        h = _SALT_PROFILE
        while frontier:
            h = mix(h ^ len(frontier))
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if seen[w] != s:
                        seen[w] = s
                        nxt.append(w)
            frontier = nxt
        sig.append(h)
    return _rank(sig)[0]


def maps_edges(g, h, perm) -> bool:
    """Every edge {u, v} of g goes to an edge {perm[u], perm[v]} of h."""
    rows = h.rows
    perm = perm.tolist() if hasattr(perm, "tolist") else list(perm)
    for u, v in g.edge_array.tolist():
        if not rows[perm[u]] >> perm[v] & 1:
            return False
    return True


def square_classes(g) -> list[int]:
    """Union-find roots of the square relation on edges.

    Two edges at a common vertex are joined unless they span exactly one
    4-cycle and that 4-cycle is chordless; opposite edges of every such
    lone chordless square are joined as well.
    """
    adj = g.adj
    rows = g.rows
    eid_flat = g.arc_edge_id.tolist()
    ip = g.indptr.tolist()
    eids = [eid_flat[ip[v]:ip[v + 1]] for v in range(g.n)]
    lookup = {}
    for u in range(g.n):
        for w, e in zip(adj[u], eids[u]):
            lookup[u, w] = e
    parent = list(range(g.m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for u in range(g.n):
        nb = adj[u]
        ue = eids[u]
        ru = rows[u]
        notu = ~(1 << u)
        for a in range(len(nb)):
            v = nb[a]
            e1 = ue[a]
            rv = rows[v] & notu
            for b in range(a + 1, len(nb)):
                w = nb[b]
                e2 = ue[b]
                if rv >> w & 1:
                    union(e1, e2)
                    continue
                common = rv & rows[w]
                if common == 0 or common & (common - 1):
                    union(e1, e2)
                    continue
                x = common.bit_length() - 1
                if ru >> x & 1:
                    union(e1, e2)
                    continue
                union(e1, lookup[w, x])
                union(e2, lookup[v, x])
    return [find(e) for e in range(g.m)]
