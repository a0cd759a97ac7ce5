"""The tower F_p ⊆ F_q ⊆ F_{q^n} and polynomials over its middle field.

A :class:`FieldTower` owns three :class:`~cyclicsubspace.gf.GF` objects: the
prime field, the middle field F_q (q = p^m) and the top field F_{q^n}, the
latter two given by monic irreducible moduli over F_p.  The middle field is
placed inside the top field by sending its generator to the smallest root of
the middle modulus there.  Top elements are ints; F_q-coordinates are taken
with respect to the basis 1, x, ..., x^{n-1} of the top field over F_q, where
x is the class of the indeterminate modulo the top modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import polyring
from .gf import GF, divisors, from_digits, is_prime, prime_power, to_digits


class TowerError(ValueError):
    """Invalid tower parameters or moduli."""


@dataclass(frozen=True)
class BasePoly:
    """A polynomial with coefficients in ``field`` (little-endian, trimmed)."""

    field: GF
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        polyring.trim(c)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_terms(cls, field: GF, terms: dict[int, int]) -> "BasePoly":
        """``terms`` maps exponent -> coefficient."""
        deg = max(terms, default=-1)
        coeffs = [0] * (deg + 1)
        for e, c in terms.items():
            coeffs[e] = field.add(coeffs[e], c)
        return cls(field, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self) -> None:
        if self.degree < 1:
            raise ValueError("need a polynomial of degree >= 1")


def is_irreducible(f: BasePoly) -> bool:
    """True iff ``f`` is irreducible over its coefficient field."""
    f._check()
    return polyring.is_irreducible(f.field, list(f.coeffs))


def factor_degrees(f: BasePoly) -> dict[int, int]:
    """Degrees of the irreducible factors of ``f`` with multiplicity.

    ``{1: 2, 7: 1}`` means two linear factors (counted with multiplicity) and
    one of degree 7.  ``sum(d * c)`` equals ``f.degree``.
    """
    f._check()
    return polyring.factor_degrees(f.field, list(f.coeffs))


def splitting_field_degree(f: BasePoly) -> int:
    """Degree over the coefficient field of the splitting field of ``f``:
    the lcm of the irreducible factor degrees."""
    f._check()
    return polyring.splitting_degree(f.field, list(f.coeffs))


def prime_field(p: int) -> GF:
    return _gf(p, (0, 1))


@lru_cache(maxsize=None)
def _gf(p: int, modulus: tuple[int, ...]) -> GF:
    return GF(p, modulus)


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``e`` over F_p, ordered by the
    int whose base-p digits are the coefficients."""
    if e == 1:
        return (0, 1)
    Fp = prime_field(p)
    for r in range(p**e):
        coeffs = to_digits(r, p, e) + [1]
        if coeffs[0] == 0:
            continue
        if polyring.is_irreducible(Fp, coeffs):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def embedding_images(small: GF, big: GF) -> tuple[int, ...]:
    """Images in ``big`` of 1, y, ..., y^{e-1} where y generates ``small``.

    y is sent to the smallest root (int order) of small's modulus in big.
    """
    if big.e % small.e:
        raise TowerError(f"F_{{p^{small.e}}} does not embed in F_{{p^{big.e}}}")
    if small.e == 1:
        return (1,)
    # roots lie in the unique subfield of size small.order
    beta = big.pow(big.primitive_element(), (big.order - 1) // (small.order - 1))
    root = None
    x = 1
    for _ in range(small.order - 1):
        if big.eval_prime_poly(small.modulus, x) == 0 and (root is None or x < root):
            root = x
        x = big.mul(x, beta)
    assert root is not None
    images = [1]
    for _ in range(small.e - 1):
        images.append(big.mul(images[-1], root))
    return tuple(images)


def map_element(images: Sequence[int], small_p: int, big: GF, a: int) -> int:
    out = 0
    i = 0
    while a:
        a, c = divmod(a, small_p)
        if c:
            out = big.add(out, big.scalar(c, images[i]))
        i += 1
    return out


def _solve_mod_p(p: int, columns: list[list[int]]) -> list[list[int]]:
    """Inverse of the square F_p matrix whose columns are ``columns``."""
    size = len(columns)
    a = [[columns[j][i] for j in range(size)] + [int(i == j) for j in range(size)] for i in range(size)]
    for col in range(size):
        piv = next(r for r in range(col, size) if a[r][col] % p)
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [(v * inv) % p for v in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [(v - c * w) % p for v, w in zip(a[r], a[col])]
    return [row[size:] for row in a]


class FieldTower:
    """F_p ⊆ F_q ⊆ F_{q^n}; immutable after construction.

    Use :func:`build_tower` to create one.
    """

    def __init__(self, p: int, m: int, n: int, middle_modulus: tuple[int, ...], top_modulus: tuple[int, ...]):
        self.p, self.m, self.n = p, m, n
        self.q = p**m
        self.middle_modulus = middle_modulus
        self.top_modulus = top_modulus
        self.base = prime_field(p)
        self.mid = _gf(p, middle_modulus)
        self.top = _gf(p, top_modulus)
        self.order = self.top.order  # q^n
        self.gamma = self.top.primitive_element()
        self.fast2 = p == 2 and m == 1
        self._mid_images = embedding_images(self.mid, self.top)
        self._spec = (
            f"p={p};m={m};n={n};mid={','.join(map(str, middle_modulus))};"
            f"top={','.join(map(str, top_modulus))}"
        )
        # F_q-coordinates w.r.t. 1, x, ..., x^{n-1}
        self._coord_matrix = None
        if m > 1:
            cols = []
            xj = 1
            for _ in range(n):
                for img in self._mid_images:
                    cols.append(to_digits(self.top.mul(img, xj), p, m * n))
                xj = self.top.mul(xj, p)  # int p encodes the element x
            self._coord_matrix = _solve_mod_p(p, cols)
        top = self.top
        self.add, self.sub, self.neg = top.add, top.sub, top.neg
        self.mul, self.inv, self.pow, self.div = top.mul, top.inv, top.pow, top.div

    # -- identity -------------------------------------------------------
    def spec_string(self) -> str:
        return self._spec

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, FieldTower) and self._spec == other._spec)

    def __hash__(self) -> int:
        return hash(self._spec)

    def __repr__(self) -> str:
        return f"FieldTower({self._spec})"

    # -- elements -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree of the top field over F_p."""
        return self.m * self.n

    @property
    def x(self) -> int:
        """The class of the indeterminate in the top field."""
        return self.p if self.degree > 1 else 0

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def coords(self, a: int) -> list[int]:
        """Base-p coordinate vector of a top element, little-endian."""
        return to_digits(a, self.p, self.degree)

    def from_coords(self, digits: Iterable[int]) -> int:
        return from_digits(digits, self.p)

    def embed_mid(self, c: int) -> int:
        """Image of a middle-field element in the top field."""
        if self.m == 1:
            return c
        return map_element(self._mid_images, self.p, self.top, c)

    def fq_elements(self) -> list[int]:
        """The canonical copy of F_q inside the top field, in middle-field order."""
        return [self.embed_mid(c) for c in range(self.q)]

    def fq_coords(self, a: int) -> list[int]:
        """Coordinates of ``a`` over F_q (middle-field ints) in the basis x^j."""
        if self.m == 1:
            return to_digits(a, self.p, self.n)
        d = to_digits(a, self.p, self.degree)
        p, m = self.p, self.m
        sol = [sum(row[i] * d[i] for i in range(len(d))) % p for row in self._coord_matrix]
        return [from_digits(sol[j * m:(j + 1) * m], p) for j in range(self.n)]

    def from_fq_coords(self, cs: Sequence[int]) -> int:
        if self.m == 1:
            return from_digits(cs, self.p)
        out = 0
        xj = 1
        for c in cs:
            if c:
                out = self.add(out, self.mul(self.embed_mid(c), xj))
            xj = self.mul(xj, self.p)
        return out

    # -- maps ----------------------------------------------------------
    def frobenius(self, a: int, i: int = 1) -> int:
        """a -> a^{q^i}; ``i`` is taken mod n."""
        i %= self.n
        if i == 0 or a == 0:
            return a
        return self.pow(a, pow(self.q, i, self.order - 1))

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        return self.top.element_order(a)

    def subfield_membership(self, a: int, d: int) -> bool:
        """True iff ``a`` lies in F_{q^d}; ``d`` must divide n."""
        if d < 1 or self.n % d:
            raise ValueError(f"{d} does not divide n={self.n}")
        if a == 0:
            return True
        return self.pow(a, pow(self.q, d, self.order - 1)) == a

    def subfield_generator(self, d: int) -> int:
        """gamma^{(q^n-1)/(q^d-1)}: a primitive element of F_{q^d}."""
        if d < 1 or self.n % d:
            raise ValueError(f"{d} does not divide n={self.n}")
        return self.pow(self.gamma, (self.order - 1) // (self.q**d - 1))

    def subfield_elements(self, d: int) -> list[int]:
        w = self.subfield_generator(d)
        out = [0]
        x = 1
        for _ in range(self.q**d - 1):
            out.append(x)
            x = self.mul(x, w)
        return sorted(out)

    # -- serialisation -------------------------------------------------
    def encode(self, a: int) -> str:
        return ",".join(map(str, self.coords(a)))

    def decode(self, text: str) -> int:
        digits = [int(t) for t in text.split(",")]
        if len(digits) != self.degree or any(not 0 <= c < self.p for c in digits):
            raise ValueError(f"bad element encoding {text!r} for {self}")
        return from_digits(digits, self.p)


def _check_modulus(p: int, coeffs: Sequence[int], deg: int, what: str) -> tuple[int, ...]:
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != deg + 1 or coeffs[-1] != 1 or any(not 0 <= c < p for c in coeffs):
        raise TowerError(f"{what} modulus must be monic of degree {deg} with digits in [0,{p})")
    if not polyring.is_irreducible(prime_field(p), list(coeffs)):
        raise TowerError(f"{what} modulus {coeffs} is reducible over F_{p}")
    return coeffs


@lru_cache(maxsize=64)
def _build(p: int, m: int, n: int, mid: tuple[int, ...] | None, top: tuple[int, ...] | None) -> FieldTower:
    if not is_prime(p):
        raise TowerError(f"p={p} is not prime")
    if m < 1 or n < 1:
        raise TowerError("m and n must be >= 1")
    mid = _check_modulus(p, mid, m, "middle") if mid is not None else smallest_irreducible(p, m)
    top = _check_modulus(p, top, m * n, "top") if top is not None else smallest_irreducible(p, m * n)
    return FieldTower(p, m, n, mid, top)


def build_tower(
    p: int,
    m: int,
    n: int,
    middle_modulus: Sequence[int] | None = None,
    top_modulus: Sequence[int] | None = None,
) -> FieldTower:
    """Build F_p ⊆ F_{p^m} ⊆ F_{p^{mn}}.

    Omitted moduli default to the smallest irreducible monic polynomial of
    the required degree, so two builds with the same arguments agree
    bit-for-bit.
    """
    return _build(
        p,
        m,
        n,
        tuple(middle_modulus) if middle_modulus is not None else None,
        tuple(top_modulus) if top_modulus is not None else None,
    )


def tower_for(q: int, n: int) -> FieldTower:
    p, m = prime_power(q)
    return build_tower(p, m, n)


def parse_spec(spec: str) -> FieldTower:
    """Inverse of :meth:`FieldTower.spec_string`."""
    try:
        fields = dict(part.split("=", 1) for part in spec.strip().split(";"))
        p, m, n = int(fields["p"]), int(fields["m"]), int(fields["n"])
        mid = [int(c) for c in fields["mid"].split(",")]
        top = [int(c) for c in fields["top"].split(",")]
    except (KeyError, ValueError) as exc:
        raise TowerError(f"malformed field spec {spec!r}") from exc
    return build_tower(p, m, n, mid, top)


def gcd_identity_holds(q: int, r: int, s: int) -> bool:
    """gcd(q^r - 1, q^s - 1) == q^gcd(r,s) - 1."""
    from math import gcd

    return gcd(q**r - 1, q**s - 1) == q ** gcd(r, s) - 1


__all__ = [
    "BasePoly",
    "FieldTower",
    "TowerError",
    "build_tower",
    "divisors",
    "embedding_images",
    "factor_degrees",
    "is_irreducible",
    "parse_spec",
    "smallest_irreducible",
    "splitting_field_degree",
    "tower_for",
]
