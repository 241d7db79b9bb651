"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload runs under both backends; the table reports the best of
``repeat`` runs and the speedup of the compiled path.
"""

from __future__ import annotations

import argparse
import json
import sys
import timeit

import numpy as np

from gpaley import kernels
from gpaley.cartesian import oracle_decomposable
from gpaley.graph import are_isomorphic, automorphism_count
from gpaley.paley import build, gpaley, valid_triples, validate_params


def _relabelled(g, seed=1):
    perm = np.random.default_rng(seed).permutation(g.n).tolist()
    return g.relabel(perm)


def workloads():
    g81 = gpaley(3, 4, 20)
    g169 = gpaley(13, 2, 12)
    g64 = gpaley(2, 6, 9)
    g343 = gpaley(7, 3, 18)
    h169 = _relabelled(g169)
    colors81 = [0] + [1] * (g81.n - 1)
    identity343 = list(range(g343.n))
    sweep = [validate_params(*t) for t in valid_triples(64, connected_only=True)]
    return {
        "refine GPaley(81,20)": lambda: kernels.refine(g81, colors81),
        "distance profile GPaley(343,18)": lambda: kernels.distance_profile_colors(g343),
        "edge check GPaley(343,18)": lambda: kernels.maps_edges(g343, g343, identity343),
        "square classes GPaley(64,9)": lambda: kernels.square_classes(g64),
        "aut count GPaley(81,20)": lambda: automorphism_count(g81),
        "isomorphism GPaley(169,12)": lambda: are_isomorphic(g169, h169),
        "oracle sweep p^n <= 64": lambda: [oracle_decomposable(prm) for prm in sweep],
    }


def run(repeat: int) -> list[dict]:
    if kernels.BACKEND != "cython":
        sys.exit("compiled kernels are not available; build the extension first")
    rows = []
    for name, fn in workloads().items():
        times = {}
        for backend in ("cython", "python"):
            kernels.use_backend(backend)
            fn()  # warm caches
            times[backend] = min(timeit.repeat(fn, number=1, repeat=repeat))
        kernels.use_backend("cython")
        rows.append({
            "workload": name,
            "cython_s": times["cython"],
            "python_s": times["python"],
            "speedup": times["python"] / times["cython"],
        })
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':<{width}}  {'cython':>10}  {'python':>10}  {'speedup':>8}")
    for r in rows:
        print(f"{r['workload']:<{width}}  {r['cython_s'] * 1e3:>8.2f}ms  {r['python_s'] * 1e3:>8.2f}ms  {r['speedup']:>7.1f}x")


if __name__ == "__main__":
    main()
