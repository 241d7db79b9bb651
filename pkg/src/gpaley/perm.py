"""Permutation groups given by generators.

Permutations are image arrays: ``g[i]`` is the image of point i, and
``compose(a, b)`` applies a first, then b. Group orders come from a
deterministic Schreier-Sims stabilizer chain; ``enumerate_group`` is the
brute-force breadth-first closure kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_CLOSURE_BOUND = 10**7


class GroupBoundError(ValueError):
    """Group is larger than the configured bound."""


def as_perm(images: Sequence[int]) -> np.ndarray:
    arr = np.asarray(images, dtype=np.int64)
    if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(len(arr))):
        raise ValueError("not a permutation")
    return arr


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a then b."""
    return b[a]


def inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def _prepare(gens: Sequence[Sequence[int]]) -> tuple[list[np.ndarray], int]:
    perms = [as_perm(g) for g in gens]
    degrees = {len(g) for g in perms}
    if len(degrees) > 1:
        raise ValueError("generators act on different point sets")
    return perms, degrees.pop() if degrees else 0


@dataclass
class _Level:
    base: int
    gens: list[np.ndarray] = field(default_factory=list)
    trans: dict[int, np.ndarray] = field(default_factory=dict)
    trans_inv: dict[int, np.ndarray] = field(default_factory=dict)
    checked: set[tuple[int, int]] = field(default_factory=set)

    def grow_orbit(self) -> None:
        frontier = list(self.trans)
        while frontier:
            nxt = []
            for x in frontier:
                ux = self.trans[x]
                for s in self.gens:
                    y = int(s[x])
                    if y not in self.trans:
                        uy = s[ux]
                        self.trans[y] = uy
                        self.trans_inv[y] = inverse(uy)
                        nxt.append(y)
            frontier = nxt


@dataclass
class StabilizerChain:
    degree: int
    levels: list[_Level]

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(lv.trans) for lv in self.levels]

    @property
    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.trans)
        return out

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = int(g[lv.base])
            if x not in lv.trans:
                return g, i
            g = lv.trans_inv[x][g]
        return g, len(self.levels)

    def contains(self, g: Sequence[int]) -> bool:
        h, _ = self.sift(as_perm(g))
        return bool((h == np.arange(self.degree)).all())


def schreier_sims(gens: Sequence[Sequence[int]]) -> StabilizerChain:
    perms, n = _prepare(gens)
    ident = np.arange(n, dtype=np.int64)
    chain = StabilizerChain(n, [])

    def new_level(g: np.ndarray) -> None:
        moved = np.flatnonzero(g != ident)
        lv = _Level(base=int(moved[0]))
        lv.trans[lv.base] = ident
        lv.trans_inv[lv.base] = ident
        chain.levels.append(lv)

    def add(g: np.ndarray, lo: int, hi: int) -> None:
        # g fixes the base points of levels < hi
        if hi == len(chain.levels):
            new_level(g)
        for lv in chain.levels[lo:hi + 1]:
            lv.gens.append(g)
            lv.grow_orbit()

    for g in perms:
        h, j = chain.sift(g)
        if not (h == ident).all():
            add(h, 0, j)

    i = len(chain.levels) - 1
    while i >= 0:
        lv = chain.levels[i]
        restart = None
        for x in list(lv.trans):
            for si, s in enumerate(lv.gens):
                if (x, si) in lv.checked:
                    continue
                lv.checked.add((x, si))
                y = int(s[x])
                schreier = lv.trans_inv[y][s[lv.trans[x]]]
                h, j = chain.sift(schreier, i + 1)
                if not (h == ident).all():
                    add(h, i + 1, j)
                    restart = j
                    break
            if restart is not None:
                break
        if restart is not None:
            i = restart
        else:
            i -= 1
    return chain


def group_closure_order(gens: Sequence[Sequence[int]], bound: int = DEFAULT_CLOSURE_BOUND) -> int:
    """Exact order of <gens>; raises GroupBoundError above ``bound``."""
    order = schreier_sims(gens).order
    if order > bound:
        raise GroupBoundError(f"group order {order} exceeds bound {bound}")
    return order


def enumerate_group(gens: Sequence[Sequence[int]], bound: int = DEFAULT_CLOSURE_BOUND) -> int:
    """Order of <gens> by listing every element breadth first."""
    perms, n = _prepare(gens)
    perms = [p.astype(np.int32) for p in perms]
    ident = np.arange(n, dtype=np.int32)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in perms:
                c = g[e]
                key = c.tobytes()
                if key not in seen:
                    seen.add(key)
                    if len(seen) > bound:
                        raise GroupBoundError(f"closure exceeds bound {bound}")
                    nxt.append(c)
        frontier = nxt
    return len(seen)


def orbit(start, gens: Sequence[Sequence[int]]) -> set:
    """Orbit of a point, or of a tuple of points acting coordinatewise."""
    perms = [list(map(int, g)) for g in gens]
    if isinstance(start, tuple):
        act = lambda g, t: tuple(g[x] for x in t)  # noqa: E731
    else:
        act = lambda g, x: g[x]  # noqa: E731
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for t in frontier:
            for g in perms:
                u = act(g, t)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen
