# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_purekernels``; same outputs."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t, int64_t, uint8_t
from libc.stdlib cimport malloc, free, qsort

cnp.import_array()

cdef uint64_t _SALT_COLOR = 0x243F6A8885A308D3ULL
cdef uint64_t _SALT_PROFILE = 0x13198A2E03707344ULL


cdef inline uint64_t _mix(uint64_t x) noexcept nogil:
    x = x + 0x9E3779B97F4A7C15ULL
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    return x ^ (x >> 31)


def mix(x):
    return _mix(<uint64_t>x)


cdef int _cmp_u64(const void *a, const void *b) noexcept nogil:
    cdef uint64_t x = (<uint64_t *>a)[0]
    cdef uint64_t y = (<uint64_t *>b)[0]
    return (x > y) - (x < y)


cdef Py_ssize_t _rank(uint64_t *sig, uint64_t *scratch, int64_t *out, int64_t *counts,
                      Py_ssize_t n) noexcept nogil:
    """Rank sig values among their sorted distinct values; returns #distinct.
    scratch receives the distinct values, counts their multiplicities."""
    cdef Py_ssize_t i, k = 0, lo, hi, mid
    for i in range(n):
        scratch[i] = sig[i]
    qsort(scratch, n, sizeof(uint64_t), _cmp_u64)
    for i in range(n):
        if k == 0 or scratch[k - 1] != scratch[i]:
            scratch[k] = scratch[i]
            counts[k] = 0
            k += 1
    for i in range(n):
        lo = 0
        hi = k - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if scratch[mid] < sig[i]:
                lo = mid + 1
            else:
                hi = mid
        out[i] = lo
        counts[lo] += 1
    return k


def refine(g, colors):
    cdef Py_ssize_t n = g.n
    cdef int32_t[::1] indptr = g.indptr
    cdef int32_t[::1] indices = g.indices
    cdef int64_t[::1] col = np.array(colors, dtype=np.int64).reshape(-1)
    if n == 0:
        return [], _mix(0)
    cdef Py_ssize_t ncolors = len(np.unique(col))
    cdef uint64_t trace = _mix(<uint64_t>ncolors)
    cdef uint64_t *sig = <uint64_t *>malloc(n * sizeof(uint64_t))
    cdef uint64_t *uniq = <uint64_t *>malloc(n * sizeof(uint64_t))
    cdef uint64_t *tok = <uint64_t *>malloc((n + 1) * sizeof(uint64_t))
    cdef int64_t *counts = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *cur = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t maxc = 0
    cdef Py_ssize_t v, j, k, c
    cdef uint64_t s
    try:
        for v in range(n):
            cur[v] = col[v]
        with nogil:
            while True:
                maxc = 0
                for v in range(n):
                    if cur[v] > maxc:
                        maxc = cur[v]
                for c in range(maxc + 1):
                    tok[c] = _mix(<uint64_t>c)
                for v in range(n):
                    s = 0
                    for j in range(indptr[v], indptr[v + 1]):
                        s += tok[cur[indices[j]]]
                    sig[v] = _mix(_mix((<uint64_t>cur[v]) ^ _SALT_COLOR) ^ s)
                k = _rank(sig, uniq, cur, counts, n)
                for j in range(k):
                    trace = _mix(trace ^ uniq[j])
                    trace = _mix(trace ^ <uint64_t>counts[j])
                if k == ncolors:
                    break
                ncolors = k
        out = [cur[v] for v in range(n)]
    finally:
        free(sig); free(uniq); free(tok); free(counts); free(cur)
    return out, trace


def distance_profile_colors(g):
    cdef Py_ssize_t n = g.n
    cdef int32_t[::1] indptr = g.indptr
    cdef int32_t[::1] indices = g.indices
    if n == 0:
        return []
    cdef int64_t *seen = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int32_t *queue = <int32_t *>malloc(n * sizeof(int32_t))
    cdef uint64_t *sig = <uint64_t *>malloc(n * sizeof(uint64_t))
    cdef uint64_t *uniq = <uint64_t *>malloc(n * sizeof(uint64_t))
    cdef int64_t *counts = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *ranks = <int64_t *>malloc(n * sizeof(int64_t))
    cdef Py_ssize_t s, head, tail, layer_end, u, j, w
    cdef uint64_t h
    try:
        with nogil:
            for s in range(n):
                seen[s] = -1
            for s in range(n):
                seen[s] = s
                queue[0] = <int32_t>s
                head = 0
                tail = 1
                h = _SALT_PROFILE
                while head < tail:
                    layer_end = tail
                    h = _mix(h ^ <uint64_t>(layer_end - head))
                    while head < layer_end:
                        u = queue[head]
                        head += 1
                        for j in range(indptr[u], indptr[u + 1]):
                            w = indices[j]
                            if seen[w] != s:
                                seen[w] = s
                                queue[tail] = <int32_t>w
                                tail += 1
                sig[s] = h
            _rank(sig, uniq, ranks, counts, n)
        out = [ranks[s] for s in range(n)]
    finally:
        free(seen); free(queue); free(sig); free(uniq); free(counts); free(ranks)
    return out


def maps_edges(g, h, perm):
    cdef int32_t[:, ::1] edges = np.ascontiguousarray(g.edge_array, dtype=np.int32)
    cdef uint8_t[:, ::1] mat = h.adj_matrix
    cdef int32_t[::1] pm = np.ascontiguousarray(perm, dtype=np.int32)
    cdef Py_ssize_t i
    for i in range(edges.shape[0]):
        if not mat[pm[edges[i, 0]], pm[edges[i, 1]]]:
            return False
    return True


cdef inline int64_t _find(int64_t *parent, int64_t a) noexcept nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


cdef inline void _union(int64_t *parent, int64_t a, int64_t b) noexcept nogil:
    a = _find(parent, a)
    b = _find(parent, b)
    if a < b:
        parent[b] = a
    elif b < a:
        parent[a] = b


def square_classes(g):
    cdef Py_ssize_t n = g.n
    cdef Py_ssize_t m = g.m
    cdef int32_t[::1] indptr = g.indptr
    cdef int32_t[::1] indices = g.indices
    cdef int32_t[::1] arc_eid = g.arc_edge_id
    cdef uint8_t[:, ::1] mat = g.adj_matrix
    eid_np = np.full((n, n), -1, dtype=np.int32)
    cdef int32_t[:, ::1] eid = eid_np
    cdef Py_ssize_t u, a, b, v, w, x, i, j, cnt
    cdef int64_t e1, e2
    for u in range(n):
        for j in range(indptr[u], indptr[u + 1]):
            eid[u, indices[j]] = arc_eid[j]
    cdef int64_t *parent = <int64_t *>malloc((m + 1) * sizeof(int64_t))
    try:
        with nogil:
            for i in range(m):
                parent[i] = i
            for u in range(n):
                for a in range(indptr[u], indptr[u + 1]):
                    v = indices[a]
                    e1 = arc_eid[a]
                    for b in range(a + 1, indptr[u + 1]):
                        w = indices[b]
                        e2 = arc_eid[b]
                        if mat[v, w]:
                            _union(parent, e1, e2)
                            continue
                        # common neighbours of v and w other than u
                        cnt = 0
                        x = -1
                        i = indptr[v]
                        j = indptr[w]
                        while i < indptr[v + 1] and j < indptr[w + 1] and cnt < 2:
                            if indices[i] < indices[j]:
                                i += 1
                            elif indices[i] > indices[j]:
                                j += 1
                            else:
                                if indices[i] != u:
                                    cnt += 1
                                    x = indices[i]
                                i += 1
                                j += 1
                        if cnt != 1 or mat[u, x]:
                            _union(parent, e1, e2)
                            continue
                        _union(parent, e1, eid[w, x])
                        _union(parent, e2, eid[v, x])
            for i in range(m):
                _find(parent, i)
        out = [_find(parent, i) for i in range(m)]
    finally:
        free(parent)
    return out
