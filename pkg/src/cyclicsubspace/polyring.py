"""Univariate polynomials over a finite field.

Polynomials are little-endian lists of field elements with no trailing
zeros; the zero polynomial is ``[]``.  Only what the factorisation and gcd
routines need is provided.  Over F_2 the same algorithms run on int bitmasks
(bit i is the coefficient of x^i), which keeps degree-32767 trinomials
tractable.
"""

from __future__ import annotations

from math import lcm

from .gf import GF, prime_factors

Poly = list[int]


def trim(f: Poly) -> Poly:
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Poly) -> int:
    return len(f) - 1


def add(F: GF, f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F: GF, f: Poly, g: Poly) -> Poly:
    return add(F, f, [F.neg(c) for c in g])


def scale(F: GF, c: int, f: Poly) -> Poly:
    if c == 0:
        return []
    return [F.mul(c, a) for a in f]


def mul(F: GF, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(F: GF, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return [], r
    quo = [0] * (len(r) - dg)
    lead_inv = F.inv(g[-1])
    for s in range(len(r) - 1 - dg, -1, -1):
        c = r[s + dg]
        if c == 0:
            continue
        c = F.mul(c, lead_inv)
        quo[s] = c
        for j, b in enumerate(g):
            if b:
                r[s + j] = F.sub(r[s + j], F.mul(c, b))
    return trim(quo), trim(r[:dg])


def mod(F: GF, f: Poly, g: Poly) -> Poly:
    return divmod_(F, f, g)[1]


def monic(F: GF, f: Poly) -> Poly:
    if not f:
        return []
    if f[-1] == 1:
        return list(f)
    return scale(F, F.inv(f[-1]), f)


def gcd(F: GF, f: Poly, g: Poly) -> Poly:
    """Monic gcd (``[]`` only when both inputs are zero)."""
    f, g = list(f), list(g)
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def derivative(F: GF, f: Poly) -> Poly:
    return trim([F.scalar(i, c) for i, c in enumerate(f)][1:])


def powmod(F: GF, base: Poly, e: int, f: Poly) -> Poly:
    result: Poly = [1]
    base = mod(F, base, f)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), f)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), f)
    return result


def evaluate(F: GF, f: Poly, a: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, a), c)
    return acc


def _pth_root(F: GF, f: Poly) -> Poly:
    """For f = g(x^p) with coefficients raised to p, recover g."""
    p = F.p
    # a -> a^(1/p) is a -> a^(order/p) in F.
    root = F.order // p
    return trim([F.pow(f[i], root) for i in range(0, len(f), p)])


def squarefree_decomposition(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(g, e)`` of monic squarefree coprime polys with f = lc * prod g^e."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    out: list[tuple[Poly, int]] = []
    df = derivative(F, f)
    if not df:
        return [(g, e * F.p) for g, e in squarefree_decomposition(F, _pth_root(F, f))]
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if len(z) > 1:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if len(c) > 1:
        out.extend((g, e * F.p) for g, e in squarefree_decomposition(F, _pth_root(F, c)))
    return out


def distinct_degree(F: GF, f: Poly) -> list[tuple[int, Poly]]:
    """Distinct-degree factorisation of a monic squarefree ``f``.

    Returns ``(d, g_d)`` where g_d is the product of all irreducible factors
    of degree d.
    """
    out = []
    Q = F.order
    h = [0, 1]
    rest = monic(F, f)
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, Q, rest)
        g = gcd(F, rest, sub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((d, g))
            rest = divmod_(F, rest, g)[0]
            h = mod(F, h, rest)
    if len(rest) > 1:
        out.append((len(rest) - 1, rest))
    return out


# -- GF(2) bitmask polynomials ------------------------------------------

_SPREAD = [0] * 256
for _b in range(256):
    _s = 0
    for _i in range(8):
        if _b >> _i & 1:
            _s |= 1 << (2 * _i)
    _SPREAD[_b] = _s
_SPREAD_BYTES = [s.to_bytes(2, "little") for s in _SPREAD]


def g2_from_coeffs(coeffs: list[int]) -> int:
    a = 0
    for i, c in enumerate(coeffs):
        if c & 1:
            a |= 1 << i
    return a


def g2_to_coeffs(a: int) -> Poly:
    return [(a >> i) & 1 for i in range(a.bit_length())]


def g2_mul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    i = 0
    while b:
        if b & 1:
            r ^= a << i
        b >>= 1
        i += 1
    return r


def g2_sqr(a: int) -> int:
    nbytes = (a.bit_length() + 7) // 8
    raw = a.to_bytes(nbytes, "little")
    return int.from_bytes(b"".join(_SPREAD_BYTES[x] for x in raw), "little")


def g2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= db:
        s = a.bit_length() - 1 - db
        q |= 1 << s
        a ^= b << s
    return q, a


class _G2Reducer:
    """Reduction modulo a fixed GF(2) polynomial; folds when it is sparse."""

    def __init__(self, f: int):
        self.f = f
        self.n = f.bit_length() - 1
        self.mask = (1 << self.n) - 1
        rest = f ^ (1 << self.n)
        self.terms = [i for i in range(rest.bit_length()) if rest >> i & 1]
        self.sparse = len(self.terms) <= 8 and (rest.bit_length() - 1) < self.n // 2

    def __call__(self, a: int) -> int:
        if self.sparse:
            n, mask, terms = self.n, self.mask, self.terms
            while a >> n:
                hi = a >> n
                a &= mask
                for t in terms:
                    a ^= hi << t
            return a
        return g2_divmod(a, self.f)[1]


def g2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, g2_divmod(a, b)[1]
    return a


def g2_derivative(a: int) -> int:
    # odd-degree terms survive: d/dx x^i = i x^{i-1}
    odd = a & int("10" * ((a.bit_length() + 1) // 2 + 1), 2)
    return odd >> 1


def g2_sqrt(a: int) -> int:
    """Square root of a polynomial that is a square (only even exponents)."""
    out = 0
    i = 0
    while a:
        if a & 1:
            out |= 1 << i
        a >>= 2
        i += 1
    return out


def g2_squarefree(f: int) -> list[tuple[int, int]]:
    if f.bit_length() <= 1:
        return []
    out = []
    df = g2_derivative(f)
    if df == 0:
        return [(g, 2 * e) for g, e in g2_squarefree(g2_sqrt(f))]
    c = g2_gcd(f, df)
    w = g2_divmod(f, c)[0]
    i = 1
    while w.bit_length() > 1:
        y = g2_gcd(w, c)
        z = g2_divmod(w, y)[0]
        if z.bit_length() > 1:
            out.append((z, i))
        i += 1
        w = y
        c = g2_divmod(c, y)[0]
    if c.bit_length() > 1:
        out.extend((g, 2 * e) for g, e in g2_squarefree(g2_sqrt(c)))
    return out


def g2_distinct_degree(f: int) -> list[tuple[int, int]]:
    out = []
    rest = f
    red = _G2Reducer(rest)
    h = 2  # x
    d = 0
    while rest.bit_length() - 1 >= 2 * (d + 1):
        d += 1
        h = red(g2_sqr(h))
        g = g2_gcd(rest, h ^ 2)
        if g.bit_length() > 1:
            out.append((d, g))
            rest = g2_divmod(rest, g)[0]
            red = _G2Reducer(rest)
            h = red(h)
    if rest.bit_length() > 1:
        out.append((rest.bit_length() - 1, rest))
    return out


def g2_is_irreducible(f: int) -> bool:
    """Rabin's test; only squarings and gcds are needed over F_2."""
    n = f.bit_length() - 1
    if n < 1:
        raise ValueError("constant polynomial")
    if n == 1:
        return True
    if not f & 1:
        return False
    red = _G2Reducer(f)
    checkpoints = {n // r for r in prime_factors(n)}
    h = 2
    for i in range(1, n + 1):
        h = red(g2_sqr(h))
        if i in checkpoints and g2_gcd(f, h ^ 2) != 1:
            return False
    return h == 2


# -- dispatching entry points -------------------------------------------


def factor_degree_parts(F: GF, f: Poly) -> list[tuple[int, int, Poly]]:
    """Triples ``(d, e, g)``: g is a product of degree-d irreducibles, each
    occurring with multiplicity e in ``f``."""
    f = trim(list(f))
    if len(f) < 2:
        raise ValueError("factorisation needs a polynomial of degree >= 1")
    parts = []
    if F.order == 2:
        for g, e in g2_squarefree(g2_from_coeffs(f)):
            for d, part in g2_distinct_degree(g):
                parts.append((d, e, g2_to_coeffs(part)))
    else:
        for g, e in squarefree_decomposition(F, f):
            for d, part in distinct_degree(F, g):
                parts.append((d, e, part))
    return parts


def factor_degrees(F: GF, f: Poly) -> dict[int, int]:
    counts: dict[int, int] = {}
    for d, e, part in factor_degree_parts(F, f):
        counts[d] = counts.get(d, 0) + e * ((len(part) - 1) // d)
    return dict(sorted(counts.items()))


def is_irreducible(F: GF, f: Poly) -> bool:
    f = trim(list(f))
    if len(f) < 2:
        raise ValueError("irreducibility needs a polynomial of degree >= 1")
    if F.order == 2:
        return g2_is_irreducible(g2_from_coeffs(f))
    n = len(f) - 1
    if n == 1:
        return True
    f = monic(F, f)
    if len(gcd(F, f, derivative(F, f))) > 1:
        return False
    Q = F.order
    x = [0, 1]
    for r in prime_factors(n):
        h = x
        for _ in range(n // r):
            h = powmod(F, h, Q, f)
        if len(gcd(F, f, sub(F, h, x))) > 1:
            return False
    h = x
    for _ in range(n):
        h = powmod(F, h, Q, f)
    return h == x


def splitting_degree(F: GF, f: Poly) -> int:
    return lcm(*factor_degrees(F, f))
