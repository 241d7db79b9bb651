"""Integer helpers: factorization, divisors, multiplicative order and
primitive divisors of p^n - 1.

Everything here works on plain Python ints bounded by 2**63.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

INT_BOUND = 2**63


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def recompose(self) -> int:
        out = 1
        for q, e in self.factors:
            out *= q**e
        return out


def _check_range(m: int) -> None:
    if m < 1:
        raise ValueError(f"expected a positive integer, got {m}")
    if m > INT_BOUND:
        raise ValueError(f"{m} exceeds the 2**63 bound")


@lru_cache(maxsize=4096)
def factorize(m: int) -> Factorization:
    """Prime factorization of ``m`` by trial division."""
    _check_range(m)
    factors = []
    rest = m
    for q in (2, 3):
        e = 0
        while rest % q == 0:
            rest //= q
            e += 1
        if e:
            factors.append((q, e))
    # 6k +- 1 wheel
    q = 5
    step = 2
    while q * q <= rest:
        e = 0
        while rest % q == 0:
            rest //= q
            e += 1
        if e:
            factors.append((q, e))
        q += step
        step = 6 - step
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(m, tuple(factors))


@lru_cache(maxsize=1 << 16)
def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0 or m % 3 == 0:
        return False
    return factorize(m).factors == ((m, 1),)


@lru_cache(maxsize=4096)
def divisors(m: int) -> tuple[int, ...]:
    """All positive divisors of ``m`` in ascending order."""
    divs = [1]
    for q, e in factorize(m).factors:
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def multiplicative_order(g: int, m: int) -> int:
    """Least e >= 1 with g**e == 1 (mod m)."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    g %= m
    if gcd(g, m) != 1:
        raise ValueError(f"{g} is not a unit modulo {m}")
    # the order divides Carmichael's lambda, which divides phi(m)
    phi = m
    for q, _ in factorize(m).factors:
        phi = phi // q * (q - 1)
    order = phi
    for q, _ in factorize(phi).factors:
        while order % q == 0 and pow(g, order // q, m) == 1:
            order //= q
    return order


def is_primitive_divisor(k: int, p: int, n: int) -> bool:
    """True when k divides p**n - 1 but no p**a - 1 with a < n.

    Only proper divisors a of n are tried: gcd(p**a - 1, p**n - 1) is
    p**gcd(a, n) - 1, so any a < n is dominated by gcd(a, n).
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    if (p**n - 1) % k:
        return False
    return all((p**a - 1) % k for a in divisors(n) if a < n)


def is_primitive_divisor_naive(k: int, p: int, n: int) -> bool:
    """Definitional check over every a in 1..n-1."""
    return (p**n - 1) % k == 0 and all((p**a - 1) % k for a in range(1, n))


def prime_powers(bound: int) -> list[tuple[int, int]]:
    """All (p, n) with p prime and 2 <= p**n <= bound, sorted by p**n then p."""
    out = []
    for p in range(2, bound + 1):
        if not is_prime(p):
            continue
        q, n = p, 1
        while q <= bound:
            out.append((p, n))
            q *= p
            n += 1
    out.sort(key=lambda t: (t[0] ** t[1], t[0]))
    return out


__all__ = [
    "Factorization",
    "INT_BOUND",
    "divisors",
    "factorize",
    "is_prime",
    "is_primitive_divisor",
    "is_primitive_divisor_naive",
    "multiplicative_order",
    "prime_powers",
]
