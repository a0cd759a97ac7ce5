"""Orbits of subspaces under multiplication by F_{q^n}^*."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .field_tower import FieldTower
from .gf import divisors
from .linearized import LinearizedPoly
from .subspace import Subspace, _rref2, cyclic_shift, frobenius_shift, from_generators


def orbit_size_for(tower: FieldTower, t: int) -> int:
    return (tower.order - 1) // (tower.q**t - 1)


def stabilizer_degree(V: Subspace) -> int:
    """The t with {a : aV = V} ∪ {0} = F_{q^t}.

    Tries divisors of gcd(n, dim V) from the largest down; d = 1 always
    succeeds because F_q-scalars fix every subspace.
    """
    if V.dim == 0:
        raise ValueError("stabilizer of the zero subspace is undefined")
    t = V.tower
    for d in sorted(divisors(gcd(t.n, V.dim)), reverse=True):
        if cyclic_shift(V, t.subfield_generator(d)) == V:
            return d
    raise AssertionError("unreachable: d = 1 always stabilises")


def _step(tower: FieldTower):
    """Return a function W -> gamma·W on row tuples (fast path for p=2, m=1)."""
    g = tower.gamma
    mul = tower.mul
    if tower.fast2:
        return lambda rows: _rref2([mul(g, r) for r in rows])
    return lambda rows: from_generators(tower, [mul(g, r) for r in rows]).rows


@dataclass(frozen=True)
class Orbit:
    representative: Subspace
    stab_degree: int
    size: int

    @property
    def tower(self) -> FieldTower:
        return self.representative.tower

    def members(self, start: int = 0, stop: int | None = None) -> Iterator[Subspace]:
        """gamma^j·rep for start <= j < stop (default: the whole orbit)."""
        stop = self.size if stop is None else stop
        t = self.tower
        rows = cyclic_shift(self.representative, t.pow(t.gamma, start)).rows if start else self.representative.rows
        step = _step(t)
        for _ in range(start, stop):
            yield Subspace(t, rows)
            rows = step(rows)

    def canonical_key(self) -> tuple[int, ...]:
        """Row tuple of the smallest member; identifies the orbit."""
        return min(W.rows for W in self.members())

    def to_record(self) -> dict:
        return {"rep": self.representative.serialize(), "t": self.stab_degree, "size": self.size}

    @classmethod
    def from_record(cls, tower: FieldTower, rec: dict) -> "Orbit":
        rep = Subspace.deserialize(tower, rec["rep"])
        return cls(rep, int(rec["t"]), int(rec["size"]))


def enumerate_orbit(V: Subspace) -> Orbit:
    t = stabilizer_degree(V)
    return Orbit(V, t, orbit_size_for(V.tower, t))


def orbit_period(V: Subspace) -> int:
    """Brute force: smallest j > 0 with gamma^j V = V, found by walking the orbit.

    Every member before the return is distinct, so this is also the number of
    distinct cyclic shifts.
    """
    t = V.tower
    step = _step(t)
    rows = step(V.rows)
    j = 1
    while rows != V.rows:
        rows = step(rows)
        j += 1
    return j


def shift_between(U: Subspace, W: Subspace) -> int | None:
    """Some alpha with alpha·U = W, or None.

    alpha must send the first basis row of U into W, so only the ratios
    w / u_1 (w in W nonzero) need testing.
    """
    if U.dim != W.dim or U.tower != W.tower:
        return None
    if U.dim == 0:
        return 1
    t = U.tower
    u_inv = t.inv(U.rows[0])
    for w in W.elements():
        if w:
            alpha = t.mul(w, u_inv)
            if cyclic_shift(U, alpha) == W:
                return alpha
    return None


def distinct_shift_bound(P: LinearizedPoly) -> int:
    """Largest (q^n-1)/(q^gcd(s,n)-1) over nonzero interior coefficients c_s, 1 <= s < k."""
    t = P.tower
    k = P.qdegree
    best = 1
    for s in range(1, k):
        if P.coeffs[s]:
            best = max(best, orbit_size_for(t, gcd(s, t.n)))
    return best


def sim_t(tower: FieldTower, alpha: int, beta: int, t: int) -> bool:
    """alpha ~_t beta  iff  alpha/beta in F_{q^t}."""
    if alpha == 0 or beta == 0:
        raise ValueError("~_t is defined on nonzero elements")
    return tower.subfield_membership(tower.div(alpha, beta), t)


def sim_classes(tower: FieldTower, t: int) -> list[list[int]]:
    """Partition of F^* into ~_t classes, by direct pairwise testing."""
    classes: list[list[int]] = []
    for a in tower.nonzero():
        for cls in classes:
            if sim_t(tower, a, cls[0], t):
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes


def trinomial_coefficients(P: LinearizedPoly) -> tuple[int, int, int] | None:
    """(k, alpha1, alpha0) if P = x^{q^k} + alpha1 x^q + alpha0 x with k >= 2."""
    k = P.qdegree
    if k < 2 or not P.is_monic or any(P.coeffs[2:k]):
        return None
    return k, P.coeffs[1], P.coeffs[0]


def witness_ratio(tower: FieldTower, k: int, alpha1: int, alpha0: int) -> int:
    """z = alpha0^{(q^k-q)/(q-1)} / alpha1^{(q^k-1)/(q-1)}."""
    q = tower.q
    num = tower.pow(alpha0, (q**k - q) // (q - 1))
    den = tower.pow(alpha1, (q**k - 1) // (q - 1))
    return tower.div(num, den)


def frobenius_cyclic_witness(P: LinearizedPoly, i: int) -> int | None:
    """For a trinomial subspace polynomial, alpha with F^i(V) = alpha·V, or None.

    The condition z^{q^i - 1} = 1 decides existence; the witness is
    (alpha0/alpha1)^{(q^i-1)/(q-1)}.
    """
    shape = trinomial_coefficients(P)
    if shape is None:
        raise ValueError("not of the form x^{q^k} + a1 x^q + a0 x")
    k, a1, a0 = shape
    t = P.tower
    if a1 == 0:
        raise ValueError("coefficient of x^q must be nonzero")
    if a0 == 0:
        raise ValueError("coefficient of x must be nonzero")
    i %= t.n
    q = t.q
    z = witness_ratio(t, k, a1, a0)
    if t.pow(z, q**i - 1) != 1:
        return None
    return t.pow(t.div(a0, a1), (q**i - 1) // (q - 1))


def frobenius_cyclic_search(V: Subspace, i: int) -> int | None:
    """Brute force over all of F^*: gamma^j with F^i(V) = gamma^j V, or None."""
    t = V.tower
    target = frobenius_shift(V, i)
    step = _step(t)
    rows = V.rows
    alpha = 1
    for _ in range(t.order - 1):
        if rows == target.rows:
            return alpha
        rows = step(rows)
        alpha = t.mul(alpha, t.gamma)
    return None
