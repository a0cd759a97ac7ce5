"""F_q-subspaces of F_{q^n} in canonical reduced row-echelon form.

A subspace is stored as the tuple of its canonical basis rows, each row a
top-field element.  Rows are reduced over F_q on F_q-coordinates (see
:meth:`FieldTower.fq_coords`): the pivot of a row is its highest nonzero
coordinate, pivots are normalised to 1, every pivot column is zero in the
other rows, and rows are sorted by decreasing pivot.  Equal subspaces
therefore have equal row tuples regardless of the generators used.

When p = 2 and m = 1 the F_q-coordinates are the bits of the element and all
row operations are XORs on ints.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .field_tower import FieldTower


class Subspace:
    __slots__ = ("tower", "rows", "_hash")

    def __init__(self, tower: FieldTower, rows: tuple[int, ...]):
        # trusted constructor: rows must already be canonical
        self.tower = tower
        self.rows = rows
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.tower.q ** len(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows == other.rows and self.tower == other.tower

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, rows={self.rows})"

    def key(self) -> tuple[int, ...]:
        """Total-order key (orbits use the minimal member's key)."""
        return self.rows

    def __contains__(self, a: int) -> bool:
        return _reduce_against(self.tower, self.rows, a) == 0

    def elements(self) -> Iterator[int]:
        """All q^dim elements (F_q-combinations of the basis rows)."""
        t = self.tower
        if t.fast2:
            for bits in range(1 << self.dim):
                v = 0
                for i, r in enumerate(self.rows):
                    if bits >> i & 1:
                        v ^= r
                yield v
            return
        scalars = t.fq_elements()
        for combo in itertools.product(scalars, repeat=self.dim):
            v = 0
            for c, r in zip(combo, self.rows):
                if c:
                    v = t.add(v, t.mul(c, r))
            yield v

    # -- serialisation -------------------------------------------------
    def serialize(self) -> str:
        rows = "|".join(self.tower.encode(r) for r in self.rows)
        return f"k={self.dim};rows={rows}"

    @classmethod
    def deserialize(cls, tower: FieldTower, text: str) -> "Subspace":
        try:
            head, rows = text.strip().split(";", 1)
            k = int(head.removeprefix("k="))
            body = rows.removeprefix("rows=")
            elems = [tower.decode(r) for r in body.split("|")] if body else []
        except ValueError as exc:
            raise ValueError(f"malformed subspace {text!r}") from exc
        V = from_generators(tower, elems)
        if V.dim != k or len(elems) != k:
            raise ValueError(f"subspace record claims k={k} but rows span dimension {V.dim}")
        return V


# -- row reduction ------------------------------------------------------


def _rref2(vecs: Iterable[int]) -> tuple[int, ...]:
    rows: list[int] = []
    pivots: list[int] = []
    for v in vecs:
        for r, pb in zip(rows, pivots):
            if v >> pb & 1:
                v ^= r
        if v:
            pb = v.bit_length() - 1
            rows = [r ^ v if r >> pb & 1 else r for r in rows]
            rows.append(v)
            pivots.append(pb)
    return tuple(sorted(rows, reverse=True))


def _lead(cs: Sequence[int]) -> int:
    for j in range(len(cs) - 1, -1, -1):
        if cs[j]:
            return j
    return -1


def rref_coords(F, vecs: Iterable[Sequence[int]]) -> list[list[int]]:
    """Canonical RREF over the field ``F`` of coordinate vectors."""
    rows: list[list[int]] = []
    pivots: list[int] = []
    for v in vecs:
        v = list(v)
        for r, pb in zip(rows, pivots):
            c = v[pb]
            if c:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, r)]
        pb = _lead(v)
        if pb < 0:
            continue
        inv = F.inv(v[pb])
        v = [F.mul(inv, a) for a in v]
        for idx, r in enumerate(rows):
            c = r[pb]
            if c:
                rows[idx] = [F.sub(a, F.mul(c, b)) for a, b in zip(r, v)]
        rows.append(v)
        pivots.append(pb)
    order = sorted(range(len(rows)), key=lambda i: -pivots[i])
    return [rows[i] for i in order]


def canonical_rows(tower: FieldTower, elems: Iterable[int]) -> tuple[int, ...]:
    if tower.fast2:
        return _rref2(elems)
    rows = rref_coords(tower.mid, (tower.fq_coords(a) for a in elems))
    return tuple(tower.from_fq_coords(r) for r in rows)


def _reduce_against(tower: FieldTower, rows: tuple[int, ...], a: int) -> int:
    if tower.fast2:
        for r in rows:
            if a >> (r.bit_length() - 1) & 1:
                a ^= r
        return a
    F = tower.mid
    v = tower.fq_coords(a)
    for r in rows:
        rc = tower.fq_coords(r)
        pb = _lead(rc)
        c = v[pb]
        if c:
            v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, rc)]
    return tower.from_fq_coords(v)


def rank(tower: FieldTower, elems: Iterable[int]) -> int:
    if tower.fast2:
        basis: dict[int, int] = {}
        for v in elems:
            while v:
                pb = v.bit_length() - 1
                if pb in basis:
                    v ^= basis[pb]
                else:
                    basis[pb] = v
                    break
        return len(basis)
    return len(canonical_rows(tower, elems))


# -- operations ---------------------------------------------------------


def from_generators(tower: FieldTower, gens: Iterable[int]) -> Subspace:
    """F_q-span of ``gens`` in canonical form (dependent generators are dropped)."""
    return Subspace(tower, canonical_rows(tower, gens))


def zero_subspace(tower: FieldTower) -> Subspace:
    return Subspace(tower, ())


def _same_tower(U: Subspace, V: Subspace) -> None:
    if U.tower != V.tower:
        raise ValueError("subspaces live in different towers")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _same_tower(U, V)
    return from_generators(U.tower, U.rows + V.rows)


def intersect_dim(U: Subspace, V: Subspace) -> int:
    """dim(U ∩ V) = dim U + dim V - rank of the stacked bases."""
    _same_tower(U, V)
    return U.dim + V.dim - rank(U.tower, U.rows + V.rows)


def intersection(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V via the Zassenhaus stacked-basis reduction."""
    _same_tower(U, V)
    t = U.tower
    n = t.n
    if t.fast2:
        # rows (u|u) and (v|0) with the left block in the high bits
        stacked = [(u << n) | u for u in U.rows] + [v << n for v in V.rows]
        reduced = _rref2(stacked)
        mask = (1 << n) - 1
        return from_generators(t, [r & mask for r in reduced if r >> n == 0])
    F = t.mid
    stacked = [t.fq_coords(u) + t.fq_coords(u) for u in U.rows]
    stacked += [[0] * n + t.fq_coords(v) for v in V.rows]
    reduced = rref_coords(F, stacked)
    # pivots are highest indices, so the n high coordinates hold the sum part
    gens = [t.from_fq_coords(r[:n]) for r in reduced if not any(r[n:])]
    return from_generators(t, gens)


def distance(U: Subspace, V: Subspace) -> int:
    """Subspace distance dim U + dim V - 2 dim(U ∩ V)."""
    return U.dim + V.dim - 2 * intersect_dim(U, V)


def cyclic_shift(V: Subspace, alpha: int) -> Subspace:
    """alpha·V for nonzero alpha."""
    if alpha == 0:
        raise ValueError("cyclic shift by 0")
    mul = V.tower.mul
    return from_generators(V.tower, [mul(alpha, r) for r in V.rows])


def frobenius_shift(V: Subspace, i: int) -> Subspace:
    """{v^{q^i} : v in V}."""
    frob = V.tower.frobenius
    return from_generators(V.tower, [frob(r, i) for r in V.rows])


def subfield_subspace(tower: FieldTower, d: int) -> Subspace:
    """F_{q^d} as an F_q-subspace of the top field."""
    w = tower.subfield_generator(d)
    gens = [tower.pow(w, i) for i in range(d)]
    V = from_generators(tower, gens)
    assert V.dim == d
    return V


def rref_enumerate(n: int, k: int, values: Sequence[int]) -> Iterator[list[list[int]]]:
    """All k x n canonical RREF matrices with entries from ``values``.

    ``values`` lists the field elements with 0 and 1 encoded as ints 0 and 1;
    the matrices have the layout produced by :func:`rref_coords`.
    """
    for piv in itertools.combinations(range(n - 1, -1, -1), k):
        pset = set(piv)
        free = [(r, j) for r, c in enumerate(piv) for j in range(c) if j not in pset]
        for fill in itertools.product(values, repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, c in enumerate(piv):
                rows[r][c] = 1
            for (r, j), val in zip(free, fill):
                rows[r][j] = val
            yield rows


def grassmannian(tower: FieldTower, k: int) -> Iterator[Subspace]:
    """Every k-dimensional F_q-subspace of the top field, each exactly once."""
    if not 0 <= k <= tower.n:
        raise ValueError(f"k={k} outside [0, {tower.n}]")
    values = list(range(tower.q))
    for rows in rref_enumerate(tower.n, k, values):
        yield Subspace(tower, tuple(tower.from_fq_coords(r) for r in rows))


def random_subspace(tower: FieldTower, k: int, rng) -> Subspace:
    """Uniform-ish random subspace of dimension exactly k (rejection on rank)."""
    while True:
        V = from_generators(tower, [rng.randrange(1, tower.order) for _ in range(k)])
        if V.dim == k:
            return V
