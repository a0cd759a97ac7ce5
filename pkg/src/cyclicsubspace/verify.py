"""Brute-force verification of claimed code parameters.

Distance tiers, tried in order under ``mode="auto"``:

* exhaustive: every unordered pair of codewords.  When q^n is small each
  codeword becomes a bitmask of its nonzero elements and |U ∩ V| - 1 is the
  popcount of the AND; otherwise ranks are used.
* orbit-reduced: pairs (rep_i, alpha·rep_j) with i <= j.  Since
  d(bU, bW) = d(U, W) this covers every pair.  ``shifts="all"`` walks every
  gamma-power of orbit j.  ``shifts="ratio"`` only tries alpha = u/v with
  u in rep_i and v in rep_j, the only shifts that can meet rep_i nontrivially;
  the rest are at full distance 2k.  Both are exact.
* sampled: random pairs, giving an upper bound that is flagged as inexact.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd

from .construct import CyclicCode, cd_membership
from .field_tower import parse_spec
from .orbit import _step, orbit_period, orbit_size_for, shift_between, stabilizer_degree
from .subspace import Subspace, cyclic_shift, intersect_dim

WORKERS_ENV = "CSC_WORKERS"
MASK_LIMIT = 1 << 16  # largest q^n for the bitmask pair scan


@dataclass
class VerifyConfig:
    pair_budget: int = 10**7
    shift_budget: int = 10**7
    sample_pairs: int = 20_000
    closure_samples: int = 64
    membership_cap: int = 200_000
    seed: int = 0
    workers: int | None = None

    @classmethod
    def from_file(cls, path: str) -> "VerifyConfig":
        with open(path) as fh:
            data = json.load(fh)
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)

    def n_workers(self) -> int:
        if self.workers is not None:
            return max(1, self.workers)
        try:
            return max(1, int(os.environ.get(WORKERS_ENV, "1")))
        except ValueError:
            return 1


@dataclass
class DistanceResult:
    value: int | None  # None: fewer than two codewords
    exact: bool
    method: str
    shifts: str | None = None
    witness: tuple[Subspace, Subspace] | None = None
    pairs_examined: int = 0


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    code: str
    claimed_size: int
    claimed_min_distance: int
    verified_size: int
    size_method: str
    distance: DistanceResult
    checks: list[Check] = field(default_factory=list)
    orbits: int = 0
    duration_ms: float = 0.0

    @property
    def size_ok(self) -> bool:
        return self.verified_size == self.claimed_size

    @property
    def distance_ok(self) -> bool:
        # a sampled value is only an upper bound, so it cannot certify the claim
        if self.distance.value is None:
            return self.distance.exact
        return self.distance.exact and self.distance.value >= self.claimed_min_distance

    @property
    def passed(self) -> bool:
        return self.size_ok and self.distance_ok and all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        d = self.distance
        return {
            "code": self.code,
            "size_ok": self.size_ok,
            "distance_ok": self.distance_ok,
            "distance_value": d.value,
            "distance_exact": d.exact,
            "method": d.method,
            "shifts": d.shifts,
            "pairs_examined": d.pairs_examined,
            "claimed_size": self.claimed_size,
            "verified_size": self.verified_size,
            "size_method": self.size_method,
            "claimed_min_distance": self.claimed_min_distance,
            "orbits": self.orbits,
            "checks": [asdict(c) for c in self.checks],
            "passed": self.passed,
            "duration_ms": round(self.duration_ms, 3),
        }

    def render(self) -> str:
        d = self.distance
        dist = "undefined (fewer than two codewords)" if d.value is None else str(d.value)
        flag = "exact" if d.exact else "upper bound only"
        lines = [
            f"code: {self.code}",
            f"orbits: {self.orbits}",
            f"size: {self.verified_size} (claimed {self.claimed_size}, {self.size_method}) "
            + ("PASS" if self.size_ok else "FAIL"),
            f"min distance: {dist} (claimed >= {self.claimed_min_distance}, {d.method}, {flag}) "
            + ("PASS" if self.distance_ok else "FAIL"),
        ]
        lines += [f"{c.name}: {'PASS' if c.ok else 'FAIL'}" + (f" ({c.detail})" if c.detail else "") for c in self.checks]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} in {self.duration_ms:.1f} ms")
        return "\n".join(lines)


# -- parallel plumbing ----------------------------------------------------


def _run(fn, tasks: list[tuple], workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*tasks)))


def _merge(results: list[tuple]) -> tuple:
    """Largest intersection wins; ties go to the smallest location, so the
    answer does not depend on how work was split."""
    best = (-1, None, 0)
    for score, loc, count in results:
        if score > best[0] or (score == best[0] and loc is not None and (best[1] is None or loc < best[1])):
            best = (score, loc, best[2])
        best = (best[0], best[1], best[2] + count)
    return best


def _mask_scan(masks: list[int], stride: int, offset: int) -> tuple:
    best, loc, count = -1, None, 0
    total = len(masks)
    for a in range(offset, total, stride):
        ma = masks[a]
        for b in range(a + 1, total):
            c = (ma & masks[b]).bit_count()
            if c > best:
                best, loc = c, (a, b)
        count += total - a - 1
    return best, loc, count


def _rank_scan(spec: str, rows: list[tuple[int, ...]], stride: int, offset: int) -> tuple:
    tower = parse_spec(spec)
    subs = [Subspace(tower, r) for r in rows]
    best, loc, count = -1, None, 0
    for a in range(offset, len(subs), stride):
        for b in range(a + 1, len(subs)):
            c = intersect_dim(subs[a], subs[b])
            if c > best:
                best, loc = c, (a, b)
        count += len(subs) - a - 1
    return best, loc, count


def _walk_scan(spec: str, rows_i, rows_j, i: int, j: int, start: int, stop: int) -> tuple:
    tower = parse_spec(spec)
    U = Subspace(tower, rows_i)
    g = tower.pow(tower.gamma, start)
    rows = cyclic_shift(Subspace(tower, rows_j), g).rows
    step = _step(tower)
    best, loc, count = -1, None, 0
    for e in range(start, stop):
        if not (i == j and e == 0):
            c = intersect_dim(U, Subspace(tower, rows))
            count += 1
            if c > best:
                best, loc = c, (i, j, e)
        rows = step(rows)
    return best, loc, count


def _ratio_scan(spec: str, rows_i, rows_j, i: int, j: int) -> tuple:
    tower = parse_spec(spec)
    U = Subspace(tower, rows_i)
    W = Subspace(tower, rows_j)
    inv = tower.inv
    cands = sorted({tower.mul(u, inv(v)) for u in U.elements() if u for v in W.elements() if v})
    best, loc, count = 0, None, 0
    for alpha in cands:
        S = cyclic_shift(W, alpha)
        if i == j and S == U:
            continue
        c = intersect_dim(U, S)
        count += 1
        if c > best:
            best, loc = c, (i, j, alpha)
    return best, loc, count


# -- distance -------------------------------------------------------------


def _pair_count(size: int) -> int:
    return size * (size - 1) // 2


def _check_shape(code: CyclicCode) -> None:
    if not code.orbits:
        raise ValueError("empty code")
    if any(o.representative.dim != code.k for o in code.orbits):
        raise ValueError("codewords of mixed dimensions")


def _exhaustive(code: CyclicCode, workers: int) -> DistanceResult:
    tower = code.tower
    members = list(code.members())
    k = code.k
    if len(members) < 2:
        return DistanceResult(None, True, "exhaustive")
    if tower.order <= MASK_LIMIT:
        masks = []
        for V in members:
            m = 0
            for a in V.elements():
                m |= 1 << a
            masks.append(m & ~1)
        tasks = [(masks, workers, w) for w in range(workers)]
        best, loc, count = _merge(_run(_mask_scan, tasks, workers))
        inter = _log(best + 1, tower.q)
    else:
        rows = [V.rows for V in members]
        tasks = [(tower.spec_string(), rows, workers, w) for w in range(workers)]
        inter, loc, count = _merge(_run(_rank_scan, tasks, workers))
    a, b = loc
    return DistanceResult(2 * k - 2 * inter, True, "exhaustive", witness=(members[a], members[b]), pairs_examined=count)


def _log(x: int, q: int) -> int:
    e = 0
    while x > 1:
        x //= q
        e += 1
    return e


def _orbit_reduced(code: CyclicCode, workers: int, shifts: str) -> DistanceResult:
    tower = code.tower
    spec = tower.spec_string()
    k = code.k
    orbits = code.orbits
    if sum(o.size for o in orbits) < 2:
        return DistanceResult(None, True, "orbit-reduced", shifts)
    tasks = []
    if shifts == "all":
        chunk = 4096
        for i, oi in enumerate(orbits):
            for j in range(i, len(orbits)):
                oj = orbits[j]
                for start in range(0, oj.size, chunk):
                    tasks.append((spec, oi.representative.rows, oj.representative.rows, i, j, start, min(oj.size, start + chunk)))
        best, loc, count = _merge(_run(_walk_scan, tasks, workers))
        i, j, e = loc
        other = cyclic_shift(orbits[j].representative, tower.pow(tower.gamma, e))
    elif shifts == "ratio":
        for i, oi in enumerate(orbits):
            for j in range(i, len(orbits)):
                tasks.append((spec, oi.representative.rows, orbits[j].representative.rows, i, j))
        best, loc, count = _merge(_run(_ratio_scan, tasks, workers))
        if loc is None:
            # every pair meets trivially; find any two distinct members
            other = orbits[1].representative if len(orbits) > 1 else cyclic_shift(orbits[0].representative, tower.gamma)
            return DistanceResult(2 * k, True, "orbit-reduced", shifts, (orbits[0].representative, other), count)
        i, j, alpha = loc
        other = cyclic_shift(orbits[j].representative, alpha)
    else:
        raise ValueError(f"unknown shift strategy {shifts!r}")
    return DistanceResult(2 * k - 2 * best, True, "orbit-reduced", shifts, (orbits[i].representative, other), count)


def _sampled(code: CyclicCode, cfg: VerifyConfig) -> DistanceResult:
    tower = code.tower
    orbits = code.orbits
    if sum(o.size for o in orbits) < 2:
        return DistanceResult(None, False, "sampled")
    rng = random.Random(cfg.seed)
    best, witness = -1, None
    for _ in range(cfg.sample_pairs):
        i, j = rng.randrange(len(orbits)), rng.randrange(len(orbits))
        e, f = rng.randrange(orbits[i].size), rng.randrange(orbits[j].size)
        if i == j and e == f:
            continue
        U = cyclic_shift(orbits[i].representative, tower.pow(tower.gamma, e))
        W = cyclic_shift(orbits[j].representative, tower.pow(tower.gamma, f))
        c = intersect_dim(U, W)
        if c > best:
            best, witness = c, (U, W)
    return DistanceResult(2 * code.k - 2 * best, False, "sampled", witness=witness, pairs_examined=cfg.sample_pairs)


def _ratio_cost(code: CyclicCode) -> int:
    r = len(code.orbits)
    return r * (r + 1) // 2 * (code.tower.q**code.k - 1) ** 2


def min_distance(code: CyclicCode, mode: str = "auto", shifts: str = "auto", config: VerifyConfig | None = None) -> DistanceResult:
    """Minimum subspace distance of ``code`` with a witnessing pair.

    ``mode`` is one of auto, exhaustive, orbit, sample.
    """
    cfg = config or VerifyConfig()
    _check_shape(code)
    workers = cfg.n_workers()
    total = code.size
    if mode == "auto":
        if _pair_count(total) <= cfg.pair_budget:
            mode = "exhaustive"
        elif total <= cfg.shift_budget or _ratio_cost(code) <= cfg.shift_budget:
            mode = "orbit"
        else:
            mode = "sample"
    if mode == "exhaustive":
        return _exhaustive(code, workers)
    if mode == "orbit":
        if shifts == "auto":
            shifts = "all" if total <= cfg.shift_budget and total <= _ratio_cost(code) else "ratio"
        return _orbit_reduced(code, workers, shifts)
    if mode == "sample":
        return _sampled(code, cfg)
    raise ValueError(f"unknown mode {mode!r}")


# -- code checks ----------------------------------------------------------


def _size_check(code: CyclicCode, cfg: VerifyConfig, checks: list[Check], exhaustive: bool) -> tuple[int, str]:
    if exhaustive:
        seen = {V.rows for V in code.members()}
        return len(seen), "enumerated"
    # orbit periods by walking (or stabilizer when too long), plus disjointness
    total = 0
    walk = code.size <= cfg.shift_budget
    for o in code.orbits:
        total += orbit_period(o.representative) if walk else orbit_size_for(code.tower, stabilizer_degree(o.representative))
    reps = [o.representative for o in code.orbits]
    clash = [(i, j) for i in range(len(reps)) for j in range(i + 1, len(reps)) if shift_between(reps[i], reps[j]) is not None]
    checks.append(Check("orbits disjoint", not clash, f"overlapping orbits {clash}" if clash else ""))
    return total, "orbit periods" if walk else "stabilizer formula"


def _closure_check(code: CyclicCode, cfg: VerifyConfig, members: set | None) -> Check:
    tower = code.tower
    rng = random.Random(cfg.seed + 1)
    bad = 0
    for _ in range(cfg.closure_samples):
        o = code.orbits[rng.randrange(len(code.orbits))]
        W = cyclic_shift(o.representative, tower.pow(tower.gamma, rng.randrange(o.size)))
        alpha = rng.randrange(1, tower.order)
        S = cyclic_shift(W, alpha)
        if members is not None:
            ok = S.rows in members
        else:
            ok = any(shift_between(p.representative, S) is not None for p in code.orbits)
        bad += not ok
    return Check("cyclic closure (sampled)", bad == 0, f"{bad} shifts left the code" if bad else "")


def _stabilizer_check(code: CyclicCode) -> Check:
    wrong = []
    for idx, o in enumerate(code.orbits):
        t = stabilizer_degree(o.representative)
        if t != o.stab_degree or o.size != orbit_size_for(code.tower, t) or gcd(code.tower.n, code.k) % t:
            wrong.append(idx)
    return Check("stabilizer records", not wrong, f"orbits {wrong}" if wrong else "")


def _membership_check(code: CyclicCode, cfg: VerifyConfig) -> Check | None:
    if code.construction == "subfield":
        ds = [int(code.parameters["d"])]
    elif code.construction == "union":
        ds = [int(d) for d in code.parameters["divisors"]]
    else:
        return None
    if code.size > cfg.membership_cap:
        return Check("C_d membership", True, "skipped: above membership cap")
    bad = sum(1 for V in code.members() if not any(cd_membership(V, d) for d in ds))
    return Check("C_d membership", bad == 0, f"{bad} members outside" if bad else "")


def code_identity(code: CyclicCode) -> str:
    return f"{code.construction} k={code.k} {code.tower.spec_string()}"


def verify_code(code: CyclicCode, mode: str = "auto", shifts: str = "auto", config: VerifyConfig | None = None) -> VerificationReport:
    """Check every claim of ``code``; failures are recorded, never raised."""
    cfg = config or VerifyConfig()
    t0 = time.perf_counter()
    checks: list[Check] = []
    try:
        dist = min_distance(code, mode, shifts, cfg)
    except ValueError as exc:
        dist = DistanceResult(None, False, "none")
        checks.append(Check("well-formed", False, str(exc)))
        return VerificationReport(code_identity(code), code.claimed_size, code.claimed_min_distance, 0, "none", dist, checks, len(code.orbits), (time.perf_counter() - t0) * 1000)
    exhaustive = dist.method == "exhaustive"
    checks.append(_stabilizer_check(code))
    size, size_method = _size_check(code, cfg, checks, exhaustive)
    members = {V.rows for V in code.members()} if exhaustive else None
    checks.append(_closure_check(code, cfg, members))
    mem = _membership_check(code, cfg)
    if mem is not None:
        checks.append(mem)
    return VerificationReport(
        code=code_identity(code),
        claimed_size=code.claimed_size,
        claimed_min_distance=code.claimed_min_distance,
        verified_size=size,
        size_method=size_method,
        distance=dist,
        checks=checks,
        orbits=len(code.orbits),
        duration_ms=(time.perf_counter() - t0) * 1000,
    )
