"""Cyclic subspace code constructions and subfield-code algebra."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .field_tower import (
    BasePoly,
    FieldTower,
    _gf,
    build_tower,
    embedding_images,
    is_irreducible,
    map_element,
    parse_spec,
    smallest_irreducible,
    splitting_field_degree,
    tower_for,
)
from .gf import divisors, is_prime, prime_power
from .linearized import LinearizedPoly, kernel, subspace_poly
from .orbit import Orbit, _step, enumerate_orbit, orbit_size_for, sim_t
from .subspace import Subspace, from_generators, grassmannian, rref_enumerate
from .subspace import frobenius_shift

# Upper bound on codewords materialised by subfield/union constructions.
MATERIALIZE_CAP = 200_000
# Upper bound on |G_q(n,k)| for the census.
CENSUS_CAP = 2_000_000
DEFAULT_NMAX = 30


class ConstructionError(ValueError):
    """A construction was refused (hypothesis fails or a cap is exceeded)."""


def gaussian(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient [n choose k]_q."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass
class CyclicCode:
    tower: FieldTower
    k: int
    orbits: list[Orbit]
    claimed_size: int
    claimed_min_distance: int
    construction: str
    parameters: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        """Sum of the recorded orbit sizes."""
        return sum(o.size for o in self.orbits)

    def members(self) -> Iterator[Subspace]:
        for o in self.orbits:
            yield from o.members()

    # -- code files ------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "field": self.tower.spec_string(),
            "k": self.k,
            "construction": self.construction,
            "parameters": self.parameters,
            "claimed_size": self.claimed_size,
            "claimed_min_distance": self.claimed_min_distance,
            "orbits": [o.to_record() for o in self.orbits],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "CyclicCode":
        try:
            tower = parse_spec(data["field"])
            orbits = [Orbit.from_record(tower, rec) for rec in data["orbits"]]
            code = cls(
                tower=tower,
                k=int(data["k"]),
                orbits=orbits,
                claimed_size=int(data["claimed_size"]),
                claimed_min_distance=int(data["claimed_min_distance"]),
                construction=str(data["construction"]),
                parameters=dict(data.get("parameters", {})),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed code file: missing or bad field {exc}") from exc
        if any(o.representative.dim != code.k for o in orbits):
            raise ValueError("orbit representative dimension differs from k")
        return code

    @classmethod
    def loads(cls, text: str) -> "CyclicCode":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"code file is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def _single_orbit_code(tower, V, k, construction, parameters, distance) -> CyclicCode:
    orbit = enumerate_orbit(V)
    return CyclicCode(
        tower=tower,
        k=k,
        orbits=[orbit],
        claimed_size=(tower.order - 1) // (tower.q - 1),
        claimed_min_distance=distance,
        construction=construction,
        parameters=parameters,
    )


def _middle_field(q: int):
    p, m = prime_power(q)
    return p, m, _gf(p, smallest_irreducible(p, m))


def trinomial_poly(q: int, k: int) -> BasePoly:
    """x^{q^k} + x^q + x over F_q."""
    _, _, Fq = _middle_field(q)
    return BasePoly.from_terms(Fq, {q**k: 1, q: 1, 1: 1})


def irreducibility_trinomial(q: int, k: int) -> BasePoly:
    """x^{q^k - 1} + x^{q-1} + 1 over F_q."""
    _, _, Fq = _middle_field(q)
    return BasePoly.from_terms(Fq, {q**k - 1: 1, q - 1: 1, 0: 1})


def _trinomial_subspace(tower: FieldTower, k: int) -> Subspace:
    coeffs = [0] * (k + 1)
    coeffs[0] = coeffs[1] = coeffs[k] = 1
    V = kernel(LinearizedPoly(tower, tuple(coeffs)))
    if V.dim != k:
        raise ConstructionError(f"x^(q^{k}) + x^q + x does not split in {tower}")
    return V


def trinomial_code(q: int, k: int) -> CyclicCode:
    """Single full-length orbit of the kernel of x^{q^k} + x^q + x.

    n is the splitting-field degree of the trinomial over F_q.
    """
    if k < 2:
        raise ConstructionError("k must be at least 2")
    p, m, _ = _middle_field(q)
    n = splitting_field_degree(trinomial_poly(q, k))
    tower = build_tower(p, m, n)
    V = _trinomial_subspace(tower, k)
    return _single_orbit_code(tower, V, k, "trinomial", {"q": q, "k": k, "n": n}, 2 * k - 2)


def irreducible_trinomial_code(q: int, k: int, t: int = 1) -> CyclicCode:
    """Same subspace as :func:`trinomial_code`, in F_{q^n} with n = t(q^k - 1).

    Refused unless x^{q^k-1} + x^{q-1} + 1 is irreducible over F_q.
    """
    if k < 2 or t < 1:
        raise ConstructionError("need k >= 2 and t >= 1")
    if not is_irreducible(irreducibility_trinomial(q, k)):
        raise ConstructionError(f"x^{q**k - 1} + x^{q - 1} + 1 is reducible over F_{q}")
    p, m, _ = _middle_field(q)
    n = t * (q**k - 1)
    tower = build_tower(p, m, n)
    V = _trinomial_subspace(tower, k)
    return _single_orbit_code(tower, V, k, "irreducible", {"q": q, "k": k, "t": t, "n": n}, 2 * k - 2)


def primality_condition(tower: FieldTower, k: int, alpha1: int, alpha0: int) -> bool:
    """alpha1^{(q^k-1)/(q-1)} is not ~_1 alpha0^{(q^k-q)/(q-1)}."""
    q = tower.q
    a = tower.pow(alpha1, (q**k - 1) // (q - 1))
    b = tower.pow(alpha0, (q**k - q) // (q - 1))
    return not sim_t(tower, a, b, 1)


def multi_orbit_splitting_degree(q: int, n: int, k: int) -> tuple[FieldTower, int]:
    """(F_{q^n} tower, N) for P = x^{q^k} + gamma^q x^q + gamma x, gamma primitive in F_{q^n}."""
    p, m, _ = _middle_field(q)
    small = build_tower(p, m, n)
    g = small.gamma
    P = BasePoly.from_terms(small.top, {q**k: 1, q: small.pow(g, q), 1: g})
    return small, n * splitting_field_degree(P)


def multi_orbit_code(q: int, n: int, k: int, nmax: int = DEFAULT_NMAX) -> CyclicCode:
    """n Frobenius images of one trinomial kernel, each a full-length orbit in F_{q^N}."""
    if not is_prime(n):
        raise ConstructionError(f"n={n} must be prime")
    if k < 2:
        raise ConstructionError("k must be at least 2")
    small, N = multi_orbit_splitting_degree(q, n, k)
    if N > nmax:
        raise ConstructionError(f"splitting field degree N={N} exceeds the cap {nmax}")
    p, m = small.p, small.m
    big = build_tower(p, m, N)
    images = embedding_images(small.top, big.top)
    g = map_element(images, p, big.top, small.gamma)
    coeffs = [0] * (k + 1)
    coeffs[0], coeffs[1], coeffs[k] = g, big.pow(g, q), 1
    V = kernel(LinearizedPoly(big, tuple(coeffs)))
    if V.dim != k:
        raise ConstructionError("trinomial does not split in the computed field")
    orbits = [enumerate_orbit(frobenius_shift(V, i)) for i in range(n)]
    return CyclicCode(
        tower=big,
        k=k,
        orbits=orbits,
        claimed_size=n * (big.order - 1) // (q - 1),
        claimed_min_distance=2 * k - 2,
        construction="multiorbit",
        parameters={"q": q, "n": n, "k": k, "N": N},
    )


# -- subfield codes -----------------------------------------------------


def _check_divisor(n: int, k: int, d: int) -> None:
    if d < 1 or gcd(n, k) % d:
        raise ConstructionError(f"d={d} does not divide gcd(n={n}, k={k})")


def subfield_members(tower: FieldTower, k: int, d: int) -> Iterator[Subspace]:
    """C_d through the embedding: every (k/d)-subspace of F_{q^d}^{n/d}, mapped
    by (c_j) -> sum c_j x^j into the top field."""
    n = tower.n
    _check_divisor(n, k, d)
    sub = tower.subfield_elements(d)  # 0 and 1 come first
    omega = tower.subfield_generator(d)
    fq_basis = [tower.pow(omega, i) for i in range(d)]
    xs = [tower.pow(tower.x, j) if tower.degree > 1 else 1 for j in range(n // d)]
    add, mul = tower.add, tower.mul
    for rows in rref_enumerate(n // d, k // d, sub):
        gens = []
        for row in rows:
            g = 0
            for c, xj in zip(row, xs):
                if c:
                    g = add(g, mul(c, xj))
            gens.extend(mul(g, b) for b in fq_basis)
        V = from_generators(tower, gens)
        assert V.dim == k
        yield V


def cd_membership(V: Subspace, d: int) -> bool:
    """V in C_d iff its subspace polynomial only uses q-degrees divisible by d."""
    _check_divisor(V.tower.n, V.dim, d)
    return all(j % d == 0 for j in subspace_poly(V).support())


def degree_for_size(tower: FieldTower, size: int) -> int:
    for t in divisors(tower.n):
        if orbit_size_for(tower, t) == size:
            return t
    raise AssertionError(f"orbit size {size} is not (q^n-1)/(q^t-1)")


def group_orbits(members: Iterable[Subspace]) -> list[Orbit]:
    """Partition a shift-closed family into orbits; each orbit is represented
    by its smallest member."""
    seen: set[tuple[int, ...]] = set()
    orbits = []
    for V in members:
        if V.rows in seen:
            continue
        t = V.tower
        step = _step(t)
        rows = V.rows
        found = []
        while True:
            found.append(rows)
            rows = step(rows)
            if rows == V.rows:
                break
        seen.update(found)
        rep = Subspace(t, min(found))
        orbits.append(Orbit(rep, degree_for_size(t, len(found)), len(found)))
    return sorted(orbits, key=lambda o: o.representative.rows)


def subfield_code(q: int, n: int, k: int, d: int) -> CyclicCode:
    """C_d: all k-subspaces of F_{q^n} that are F_{q^d}-subspaces."""
    _check_divisor(n, k, d)
    size = gaussian(n // d, k // d, q**d)
    if size > MATERIALIZE_CAP:
        raise ConstructionError(f"|C_{d}| = {size} exceeds the materialisation cap {MATERIALIZE_CAP}")
    tower = tower_for(q, n)
    orbits = group_orbits(subfield_members(tower, k, d))
    return CyclicCode(
        tower=tower,
        k=k,
        orbits=orbits,
        claimed_size=size,
        claimed_min_distance=2 * d,
        construction="subfield",
        parameters={"q": q, "n": n, "k": k, "d": d},
    )


def union_size(q: int, n: int, k: int, ds: Sequence[int]) -> int:
    """|C_{d_1} ∪ ... ∪ C_{d_t}| by inclusion-exclusion over lcms."""
    ds = sorted(set(ds))
    for d in ds:
        _check_divisor(n, k, d)
    g = gcd(n, k)
    total = 0
    for r in range(1, len(ds) + 1):
        for subset in itertools.combinations(ds, r):
            L = lcm(*subset)
            if g % L:
                continue
            total += (-1) ** (r + 1) * gaussian(n // L, k // L, q**L)
    return total


def union_subfield_code(q: int, n: int, k: int, ds: Sequence[int]) -> CyclicCode:
    ds = sorted(set(ds))
    if not ds:
        raise ConstructionError("need at least one divisor")
    for d in ds:
        _check_divisor(n, k, d)
    bulk = sum(gaussian(n // d, k // d, q**d) for d in ds)
    if bulk > MATERIALIZE_CAP:
        raise ConstructionError(f"union would enumerate {bulk} subspaces, over the cap {MATERIALIZE_CAP}")
    tower = tower_for(q, n)
    orbits = group_orbits(itertools.chain.from_iterable(subfield_members(tower, k, d) for d in ds))
    return CyclicCode(
        tower=tower,
        k=k,
        orbits=orbits,
        claimed_size=union_size(q, n, k, ds),
        claimed_min_distance=2 * min(ds),
        construction="union",
        parameters={"q": q, "n": n, "k": k, "divisors": ds},
    )


# -- embedding ----------------------------------------------------------


class Embedding:
    """Field isomorphism from the source top field F_{(q^d)^{n/d}} onto the
    target F_{q^n}; maps F_{q^d}-subspaces to F_q-subspaces of dimension d times larger."""

    def __init__(self, source: FieldTower, d: int):
        if d < 1 or source.m % d:
            raise ConstructionError(f"source middle degree m={source.m} is not divisible by d={d}")
        self.source = source
        self.d = d
        self.target = build_tower(source.p, source.m // d, source.n * d)
        self._images = embedding_images(source.top, self.target.top)

    def element(self, a: int) -> int:
        return map_element(self._images, self.source.p, self.target.top, a)

    def subspace(self, V: Subspace) -> Subspace:
        s = self.source
        # F_p-basis of the source's F_{q^d}, placed in the source top field
        scalars = [s.embed_mid(s.p**i) for i in range(s.m)]
        gens = [self.element(s.mul(r, c)) for r in V.rows for c in scalars]
        W = from_generators(self.target, gens)
        assert W.dim == V.dim * self.d
        return W

    def poly(self, P: LinearizedPoly) -> LinearizedPoly:
        """Rewrite a q^d-linearized polynomial as a q-linearized one over the target."""
        coeffs = [0] * (P.qdegree * self.d + 1)
        for i, c in enumerate(P.coeffs):
            coeffs[i * self.d] = self.element(c)
        return LinearizedPoly(self.target, tuple(coeffs))


def embed_code(code: CyclicCode, d: int) -> CyclicCode:
    """Image of a cyclic code in G_{q^d}(n/d, k/d) inside G_q(n, k)."""
    emb = Embedding(code.tower, d)
    orbits = []
    for o in code.orbits:
        if o.size != orbit_size_for(code.tower, o.stab_degree):
            raise ConstructionError("input orbit record is not a full cyclic orbit")
        orbits.append(Orbit(emb.subspace(o.representative), o.stab_degree * d, o.size))
    return CyclicCode(
        tower=emb.target,
        k=code.k * d,
        orbits=orbits,
        claimed_size=code.claimed_size,
        claimed_min_distance=code.claimed_min_distance * d,
        construction="embedded",
        parameters={"d": d, "source": {"construction": code.construction, **code.parameters}},
    )


# -- direct sums and the census -------------------------------------------


def direct_sum_decompose(V: Subspace, d: int) -> list[int] | None:
    """Leaders b_1..b_{k/d} with V = b_1 F_{q^d} ⊕ ... ⊕ b_{k/d} F_{q^d}, or None.

    Greedy: repeatedly add v·F_{q^d} for the smallest v in V not yet covered.
    Fails as soon as some v·F_{q^d} leaves V or overlaps the covered part.
    """
    t = V.tower
    _check_divisor(t.n, V.dim, d)
    omega = t.subfield_generator(d)
    fq_basis = [t.pow(omega, i) for i in range(d)]
    covered = Subspace(t, ())
    leaders = []
    while covered.dim < V.dim:
        v = min(a for a in V.elements() if a not in covered)
        block = [t.mul(v, b) for b in fq_basis]
        if any(b not in V for b in block):
            return None
        grown = from_generators(t, covered.rows + tuple(block))
        if grown.dim != covered.dim + d:
            return None
        covered = grown
        leaders.append(v)
    return leaders


@dataclass
class CensusResult:
    q: int
    n: int
    k: int
    orbit_counts: dict[int, int]  # stabilizer degree d -> number of orbits
    orbit_sizes: dict[int, int]  # d -> (q^n-1)/(q^d-1)
    full_orbit_counts: dict[int, int]  # d -> M_{q^d}(n/d, k/d) from its own census
    total: int
    gaussian: int
    degenerate_images_ok: bool

    @property
    def identity_ok(self) -> bool:
        rhs = sum(self.orbit_sizes[d] * self.full_orbit_counts[d] for d in self.full_orbit_counts)
        return self.total == self.gaussian == rhs and self.orbit_counts == self.full_orbit_counts

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "total": self.total,
            "gaussian": self.gaussian,
            "orbit_counts": {str(d): c for d, c in self.orbit_counts.items()},
            "orbit_sizes": {str(d): s for d, s in self.orbit_sizes.items()},
            "full_orbit_counts": {str(d): c for d, c in self.full_orbit_counts.items()},
            "degenerate_images_ok": self.degenerate_images_ok,
            "identity_ok": self.identity_ok,
        }


def _census_counts(tower: FieldTower, k: int) -> tuple[dict[int, int], int, bool]:
    """Walk every orbit of G_q(n,k): counts per stabilizer degree, total, and
    whether each degenerate orbit lies in the matching C_d."""
    counts = {d: 0 for d in divisors(gcd(tower.n, k))}
    seen: set[tuple[int, ...]] = set()
    images_ok = True
    step = _step(tower)
    for V in grassmannian(tower, k):
        if V.rows in seen:
            continue
        rows = V.rows
        size = 0
        while True:
            seen.add(rows)
            size += 1
            rows = step(rows)
            if rows == V.rows:
                break
        t = degree_for_size(tower, size)
        counts[t] += 1
        if t >= 2 and not cd_membership(V, t):
            images_ok = False
    return counts, len(seen), images_ok


def orbit_census(q: int, n: int, k: int, cap: int = CENSUS_CAP) -> CensusResult:
    """Enumerate G_q(n,k) and tally orbits by stabilizer degree.

    For each d | gcd(n,k) the count M_{q^d}(n/d, k/d) of full-length orbits is
    also obtained by a separate census of G_{q^d}(n/d, k/d).
    """
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    g = gaussian(n, k, q)
    if g > cap:
        raise ConstructionError(f"|G_{q}({n},{k})| = {g} exceeds the census cap {cap}")
    p, m = prime_power(q)
    tower = build_tower(p, m, n)
    counts, total, images_ok = _census_counts(tower, k)
    full = {}
    for d in counts:
        if d == 1:
            full[d] = counts[1]
        elif k == n:
            full[d] = 0
        else:
            sub_counts, _, _ = _census_counts(build_tower(p, m * d, n // d), k // d)
            full[d] = sub_counts[1]
    return CensusResult(
        q=q,
        n=n,
        k=k,
        orbit_counts=counts,
        orbit_sizes={d: (q**n - 1) // (q**d - 1) for d in counts},
        full_orbit_counts=full,
        total=total,
        gaussian=g,
        degenerate_images_ok=images_ok,
    )


def search_trinomials(q: int, kmax: int, kmin: int = 2) -> dict[int, bool]:
    """Irreducibility of x^{q^k-1} + x^{q-1} + 1 over F_q for kmin <= k <= kmax."""
    return {k: is_irreducible(irreducibility_trinomial(q, k)) for k in range(kmin, kmax + 1)}
