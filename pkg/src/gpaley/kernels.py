"""Kernel dispatch: compiled ``_ckernels`` when importable, else the pure
Python reference. Set ``GPALEY_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _purekernels

BACKEND = "python"
_impl = _purekernels

if os.environ.get("GPALEY_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _purekernels


def use_backend(name: str) -> None:
    """Switch backend at runtime ("cython" or "python")."""
    global _impl, BACKEND
    if name == "python":
        _impl = _purekernels
    elif name == "cython":
        from . import _ckernels

        _impl = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


def refine(g, colors):
    return _impl.refine(g, colors)


def distance_profile_colors(g):
    return _impl.distance_profile_colors(g)


def maps_edges(g, h, perm):
    return _impl.maps_edges(g, h, perm)


def square_classes(g) -> list[int]:
    """Edge class labels 0, 1, ... numbered by first edge of each class."""
    roots = _impl.square_classes(g)
    relabel: dict[int, int] = {}
    return [relabel.setdefault(r, len(relabel)) for r in roots]
