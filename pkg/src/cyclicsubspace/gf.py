"""Arithmetic in a single finite field F_{p^e} = F_p[x]/(f).

Elements are plain ints.  The base-p digits of an element, least significant
first, are its coordinates in the power basis 1, x, ..., x^{e-1}.  This makes
the encoding of an element identical to its int value, so comparisons and
sorting follow the canonical coordinate order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

# Log/antilog tables are built for fields up to this many elements.
TABLE_LIMIT = 1 << 16
# Odd-characteristic fields up to this size also get an addition table.
ADD_TABLE_LIMIT = 256


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of ``n`` in increasing order."""
    if n <= 1:
        return ()
    from sympy import factorint

    return tuple(sorted(factorint(n)))


def is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return p, m


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def to_digits(a: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        a, r = divmod(a, p)
        out.append(r)
    return out


def from_digits(digits: Iterable[int], p: int) -> int:
    a = 0
    for c in reversed(list(digits)):
        a = a * p + c
    return a


class GF:
    """The field F_p[x]/(modulus).

    ``modulus`` is a little-endian tuple of F_p coefficients of a monic
    polynomial of degree ``e``.  Irreducibility is the caller's
    responsibility (:func:`cyclicsubspace.field_tower.build_tower` checks it).
    """

    def __init__(self, p: int, modulus: Sequence[int]):
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.p = p
        self.e = len(modulus) - 1
        self.modulus = modulus
        self.order = p**self.e
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add_table: list[list[int]] | None = None
        self._primitive: int | None = None
        if p == 2:
            self._red = from_digits(modulus, 2)
            self.add = self.sub = _xor
            self.neg = _identity
        if self.order <= ADD_TABLE_LIMIT and p != 2:
            self._add_table = [
                [self._add_slow(a, b) for b in range(self.order)] for a in range(self.order)
            ]
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    # -- identity -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e}, modulus={self.modulus})"

    # -- additive structure --------------------------------------------
    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((p - x) % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scalar(self, c: int, a: int) -> int:
        """Multiply ``a`` by the prime-field integer ``c``."""
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return a
        p = self.p
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((c * x) % p) * scale
            scale *= p
        return out

    # -- multiplicative structure --------------------------------------
    def _mul_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            e, red = self.e, self._red
            top = 1 << e
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= red
            return r
        p, e = self.p, self.e
        da, db = to_digits(a, p, e), to_digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        mod = self.modulus
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(e + 1):
                    prod[i - e + j] -= c * mod[j]
        return from_digits((c % p for c in prod[:e]), p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        n %= self.order - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        result = 1
        while n:
            if n & 1:
                result = self._mul_slow(result, a)
            n >>= 1
            if n:
                a = self._mul_slow(a, a)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._exp is not None:
            return self._exp[(self.order - 1) - self._log[a]]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- orders and primitive elements ---------------------------------
    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        order = self.order - 1
        for r in prime_factors(self.order - 1):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def is_primitive(self, a: int) -> bool:
        if a == 0:
            return False
        n = self.order - 1
        return all(self.pow(a, n // r) != 1 for r in prime_factors(n))

    def primitive_element(self) -> int:
        """Smallest (in int order) element of multiplicative order ``order - 1``."""
        if self._primitive is None:
            if self.order == 2:
                self._primitive = 1
            else:
                self._primitive = next(a for a in range(2, self.order) if self.is_primitive(a))
        return self._primitive

    def _build_tables(self) -> None:
        n = self.order - 1
        g = self.primitive_element()
        exp = [0] * (2 * n)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log

    def log(self, a: int) -> int:
        """Discrete log to the base :meth:`primitive_element` (table fields only)."""
        if self._log is None:
            raise ValueError("discrete log needs a table-backed field")
        if a == 0:
            raise ValueError("log of 0")
        return self._log[a]

    # -- polynomial helpers over F_p -----------------------------------
    def eval_prime_poly(self, coeffs: Sequence[int], a: int) -> int:
        """Evaluate a polynomial with F_p coefficients (little-endian) at ``a``."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), c % self.p)
        return acc

    def elements(self) -> range:
        return range(self.order)


def _xor(a: int, b: int) -> int:
    return a ^ b


def _identity(a: int) -> int:
    return a
