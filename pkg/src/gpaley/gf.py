"""Exact arithmetic in GF(p^n).

Elements are ints in ``[0, p**n)``: the base-p packing of the coefficient
vector of a polynomial in x, constant term in the least significant digit.
The modulus is the monic irreducible of degree n whose non-leading
coefficients have the smallest such packing, and the distinguished
primitive element ``xi`` is the smallest-encoded generator of the
multiplicative group. Both choices are deterministic so every labeling
derived from a field is reproducible.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .numtheory import INT_BOUND, divisors, factorize, is_prime

# fields up to this order get log/exp tables and vectorized arithmetic
TABLE_LIMIT = 2**21

Poly = tuple[int, ...]


# -- polynomials over GF(p), lowest degree first ---------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead % p
        quot[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _trim(a)
    return _trim(quot), a


def poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                prod[i + j] += ac * bc
    prod = [c % p for c in prod]
    # mod is monic
    n = len(mod) - 1
    for top in range(len(prod) - 1, n - 1, -1):
        coef = prod[top]
        if coef:
            base = top - n
            for i in range(n + 1):
                prod[base + i] = (prod[base + i] - coef * mod[i]) % p
    return _trim(prod[:n])


def poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, mod, p)
    return result


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    h = [0, 1]
    for _ in range(n // 2):
        h = poly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(poly_gcd(f, diff, p)) != 1:
            return False
    return True


def _digits(value: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        value, r = divmod(value, p)
        out.append(r)
    return out


@lru_cache(maxsize=None)
def find_irreducible(p: int, n: int) -> Poly:
    """Smallest-encoded monic irreducible polynomial of degree n over GF(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("degree must be positive")
    if p**n > INT_BOUND:
        raise ValueError(f"{p}^{n} exceeds the 2**63 bound")
    for enc in range(p**n):
        cand = _digits(enc, p, n) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) or "0"


# -- the field -------------------------------------------------------------

class Field:
    """GF(p^n) with canonical modulus and primitive element.

    Use :func:`get_field` rather than constructing directly; instances are
    cached and treated as immutable.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus: Poly = find_irreducible(p, n)
        self.xi = self._find_primitive()
        self._exp = self._log = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n}) mod {format_poly(self.modulus)}, xi={self.xi}"

    # encoding <-> coefficients
    def coeffs(self, a: int) -> list[int]:
        return _trim(_digits(a, self.p, self.n))

    def encode(self, coeffs: Sequence[int]) -> int:
        out = 0
        for c in reversed(list(coeffs)):
            out = out * self.p + c % self.p
        return out

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of GF({self.q})")

    # arithmetic without tables
    def _mul_slow(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        return self.encode(poly_mulmod(self.coeffs(a), self.coeffs(b), self.modulus, self.p))

    def _pow_slow(self, a: int, e: int) -> int:
        if self.n == 1:
            return pow(a, e, self.p)
        return self.encode(poly_powmod(self.coeffs(a), e, self.modulus, self.p))

    def _find_primitive(self) -> int:
        order = self.q - 1
        if order == 1:
            return 1
        cofactors = [order // r for r in factorize(order).primes()]
        for e in range(2, self.q):
            if all(self._pow_slow(e, c) != 1 for c in cofactors):
                return e
        raise AssertionError("multiplicative group is not cyclic?")  # unreachable

    def _mul_by_matrix(self, b: int) -> np.ndarray:
        """Matrix of a -> a*b on coefficient rows: row j holds x^j * b."""
        rows = np.zeros((self.n, self.n), dtype=np.int64)
        for j in range(self.n):
            rows[j] = _digits(self._mul_slow(self.p**j, b), self.p, self.n)
        return rows

    def _build_tables(self) -> None:
        # exp[L:2L] = exp[:L] * xi^L, one matrix product per doubling
        q, p = self.q, self.p
        weights = p ** np.arange(self.n, dtype=np.int64)
        exp = np.ones(1, dtype=np.int64)
        while len(exp) < q - 1:
            step = self._mul_by_matrix(self._pow_slow(self.xi, len(exp)))
            digits = (exp[:, None] // weights) % p
            exp = np.concatenate([exp, ((digits @ step) % p) @ weights])
        exp = exp[: max(q - 1, 1)]
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(len(exp))
        if self._mul_slow(int(exp[-1]), self.xi) != 1 or (log[1:] < 0).any():
            raise AssertionError("xi is not primitive")
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out, scale = 0, 1
        while a:
            a, r = divmod(a, p)
            out += (-r % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, a: int, c: int) -> int:
        """Multiply ``a`` by the prime-field scalar ``c``."""
        p = self.p
        c %= p
        out, s = 0, 1
        while a:
            a, r = divmod(a, p)
            out += (r * c % p) * s
            s *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp_list[(self._log_list[a] + self._log_list[b]) % (self.q - 1)]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a field")
        if self._exp is not None:
            return self._exp_list[-self._log_list[a] % (self.q - 1)]
        return self._pow_slow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp_list[self._log_list[a] * e % (self.q - 1)]
        return self._pow_slow(a, e % (self.q - 1))

    def xi_pow(self, e: int) -> int:
        return self.pow(self.xi, e)

    def frobenius(self, a: int, i: int = 1) -> int:
        """a ** (p ** i)."""
        if i < 0:
            raise ValueError("Frobenius exponent must be non-negative")
        return self.pow(a, self.p ** (i % self.n))

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        if self._log is not None:
            return self._log_list[a]
        raise NotImplementedError("discrete log needs tables")

    # vectorized helpers (table-backed fields only)
    @cached_property
    def digits(self) -> np.ndarray:
        """(q, n) array of base-p digits of every element."""
        vals = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.n), dtype=np.int64)
        for j in range(self.n):
            vals, out[:, j] = np.divmod(vals, self.p)
        return out

    @cached_property
    def _place(self) -> np.ndarray:
        return self.p ** np.arange(self.n, dtype=np.int64)

    def add_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        s = (self.digits[a] + self.digits[b]) % self.p
        return s @ self._place

    def neg_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return ((-self.digits[a]) % self.p) @ self._place

    def mul_arrays(self, a, b) -> np.ndarray:
        if self._exp is None:
            raise NotImplementedError("vectorized multiplication needs tables")
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self._exp[(self._log[a[nz]] + self._log[b[nz]]) % (self.q - 1)]
        return out

    # structure
    def elements(self) -> range:
        return range(self.q)

    def subfield_elements(self, m: int) -> list[int]:
        """Elements fixed by x -> x^(p^m), ascending; requires m | n."""
        if m < 1 or self.n % m:
            raise ValueError(f"{m} does not divide {self.n}")
        e = self.p**m
        if self._exp is not None:
            vals = np.arange(self.q, dtype=np.int64)
            img = np.zeros(self.q, dtype=np.int64)
            img[1:] = self._exp[(self._log[1:] * e) % (self.q - 1)]
            return np.flatnonzero(img == vals).tolist()
        return [a for a in range(self.q) if self.pow(a, e) == a]

    def power_subgroup(self, k: int) -> list[int]:
        """[g, g^2, ..., g^k = 1] for g = xi^((q-1)/k), the order-k subgroup."""
        if k < 1 or (self.q - 1) % k:
            raise ValueError(f"{k} does not divide {self.q - 1}")
        d = (self.q - 1) // k
        if self._exp is not None:
            return self._exp_list[d::d] + [1]
        g = self.xi_pow(d)
        out = [g]
        for _ in range(k - 1):
            out.append(self.mul(out[-1], g))
        return out

    def additive_closure(self, elements: Iterable[int]) -> list[int]:
        """The additive subgroup generated by ``elements``, ascending.

        Built as the prime-field span: each generator not yet inside the
        current subgroup multiplies its size by p.
        """
        span = {0}
        for g in elements:
            if g in span:
                continue
            layer = list(span)
            mult = g
            for _ in range(self.p - 1):
                span.update(self.add(x, mult) for x in layer)
                mult = self.add(mult, g)
        return sorted(span)


@lru_cache(maxsize=64)
def get_field(p: int, n: int) -> Field:
    return Field(p, n)


FieldSpec = Field


def find_primitive(field: Field) -> int:
    return field.xi


def field_arith(field: Field, op: str, *operands: int) -> int:
    """Dispatch one of add/sub/mul/inv/pow on encoded elements."""
    # the pow exponent is an integer, not an element
    for a in operands[:1] if op == "pow" else operands:
        field._check(a)
    if op == "add":
        return field.add(*operands)
    if op == "sub":
        return field.sub(*operands)
    if op == "mul":
        return field.mul(*operands)
    if op == "inv":
        return field.inv(*operands)
    if op == "pow":
        return field.pow(*operands)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(field: Field, e: int, i: int) -> int:
    return field.frobenius(e, i)


def subfield_elements(field: Field, m: int) -> list[int]:
    return field.subfield_elements(m)


def power_subgroup(field: Field, k: int) -> list[int]:
    return field.power_subgroup(k)


def subgroup_orders(field: Field) -> tuple[int, ...]:
    return divisors(field.q - 1)
