"""Generalised Paley graphs GPaley(p^n, k).

Vertices are the elements of GF(p^n) by encoding; x ~ y when x - y lies in
the order-k subgroup S = <xi^d>, d = (p^n - 1)/k. The affine subgroup is
generated by translations, multiplication by xi^d and the Frobenius map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .gf import Field, get_field
from .graph import Graph, cayley, is_automorphism, is_connected
from .numtheory import INT_BOUND, is_prime, is_primitive_divisor
from .perm import DEFAULT_CLOSURE_BOUND, group_closure_order


class ParameterError(ValueError):
    """Invalid (p, n, k)."""


class NotPrimeError(ParameterError):
    pass


class NotADivisorError(ParameterError):
    pass


class OddValencyError(ParameterError):
    """p is odd but k is odd, so the adjacency would not be symmetric."""


class OrderBoundError(ParameterError):
    pass


class AffineGeneratorError(AssertionError):
    """An affine generator failed to preserve the edge set."""


@dataclass(frozen=True)
class GPaleyParams:
    """Validated (p, n, k); the field and connection set are built on first use."""

    p: int
    n: int
    k: int
    d: int
    connected: bool

    @cached_property
    def field(self) -> Field:
        return get_field(self.p, self.n)

    @cached_property
    def S(self) -> tuple[int, ...]:
        return tuple(self.field.power_subgroup(self.k))

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.p, self.n, self.k)

    def __repr__(self) -> str:
        return f"GPaley({self.p}^{self.n}, {self.k})"


def check_params(p: int, n: int, k: int) -> None:
    """Raise the matching ParameterError subclass if (p, n, k) is invalid."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    if n < 1:
        raise ParameterError(f"n = {n} must be positive")
    if p**n > INT_BOUND:
        raise OrderBoundError(f"{p}^{n} exceeds the 2**63 bound")
    if k < 1 or (p**n - 1) % k:
        raise NotADivisorError(f"k = {k} does not divide {p}^{n} - 1 = {p**n - 1}")
    if p % 2 and k % 2:
        raise OddValencyError(f"k = {k} must be even when p = {p} is odd")


@lru_cache(maxsize=256)
def validate_params(p: int, n: int, k: int) -> GPaleyParams:
    check_params(p, n, k)
    return GPaleyParams(p=p, n=n, k=k, d=(p**n - 1) // k, connected=is_primitive_divisor(k, p, n))


def valid_triples(max_order: int, connected_only: bool = False) -> list[tuple[int, int, int]]:
    """Every valid (p, n, k) with p^n <= max_order, sorted by (p^n, p, k)."""
    from .numtheory import divisors, prime_powers

    out = []
    for p, n in prime_powers(max_order):
        for k in divisors(p**n - 1):
            if p % 2 and k % 2:
                continue
            if connected_only and not is_primitive_divisor(k, p, n):
                continue
            out.append((p, n, k))
    return out


@lru_cache(maxsize=64)
def _build_cached(p: int, n: int, k: int) -> Graph:
    params = validate_params(p, n, k)
    return cayley(params.field, params.S)


def build(params: GPaleyParams) -> Graph:
    """The graph on GF(p^n) with x ~ y iff x - y in S."""
    return _build_cached(params.p, params.n, params.k)


def gpaley(p: int, n: int, k: int) -> Graph:
    return build(validate_params(p, n, k))


def connectivity_consistency(params: GPaleyParams) -> bool:
    return is_connected(build(params)) == params.connected


def affine_generators(params: GPaleyParams, verify: bool = True) -> list[np.ndarray]:
    """Translations by 1, xi, ..., xi^(n-1), x -> x*xi^d, and x -> x^p.

    Each is returned as an image array on vertex indices and, unless
    ``verify`` is off, checked to be an automorphism of build(params).
    """
    F = params.field
    pts = np.arange(F.q, dtype=np.int64)
    gens = [F.add_arrays(pts, F.xi_pow(j)) for j in range(params.n)]
    gens.append(F.mul_arrays(pts, F.xi_pow(params.d)))
    gens.append(np.array([F.frobenius(int(x), 1) for x in pts], dtype=np.int64))
    if verify:
        g = build(params)
        for perm in gens:
            if not is_automorphism(g, perm):
                raise AffineGeneratorError(f"affine generator is not an automorphism of {params!r}")
    return gens


def affine_order(params: GPaleyParams, bound: int = DEFAULT_CLOSURE_BOUND) -> int:
    return group_closure_order(affine_generators(params), bound)
