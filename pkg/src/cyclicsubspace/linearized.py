"""Linearized (q-)polynomials and subspace polynomials.

A linearized polynomial sum_j c_j x^{q^j} is stored by q-degree: ``coeffs[j]``
is the coefficient of x^{q^j}, a top-field element.  The subspace polynomial
of V is the monic one whose roots are exactly V, each simple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import polyring
from .field_tower import FieldTower
from .subspace import Subspace, _rref2, from_generators, rref_coords


@dataclass(frozen=True)
class LinearizedPoly:
    tower: FieldTower
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        polyring.trim(c)
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def qdegree(self) -> int:
        """Index of the leading coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, a: int) -> int:
        return lp_eval(self, a)

    def support(self) -> list[int]:
        return [j for j, c in enumerate(self.coeffs) if c]

    def serialize(self) -> str:
        body = "|".join(self.tower.encode(c) for c in self.coeffs)
        return f"k={self.qdegree};c={body}"

    @classmethod
    def deserialize(cls, tower: FieldTower, text: str) -> "LinearizedPoly":
        try:
            head, body = text.strip().split(";", 1)
            k = int(head.removeprefix("k="))
            coeffs = tuple(tower.decode(c) for c in body.removeprefix("c=").split("|"))
        except ValueError as exc:
            raise ValueError(f"malformed polynomial {text!r}") from exc
        if len(coeffs) != k + 1:
            raise ValueError(f"polynomial record claims k={k} but has {len(coeffs)} coefficients")
        return cls(tower, coeffs)


def x_poly(tower: FieldTower) -> LinearizedPoly:
    return LinearizedPoly(tower, (1,))


def lp_eval(P: LinearizedPoly, a: int) -> int:
    t = P.tower
    add, mul, pw, q = t.add, t.mul, t.pow, t.q
    acc = 0
    for c in P.coeffs:
        if c and a:
            acc = add(acc, mul(c, a))
        a = pw(a, q)
    return acc


def subspace_poly(V: Subspace) -> LinearizedPoly:
    """The subspace polynomial of V, built one basis vector at a time.

    Adding v to W uses P_{W+<v>} = P_W^q - P_W(v)^{q-1} P_W.
    """
    t = V.tower
    add, sub, mul, pw, q = t.add, t.sub, t.mul, t.pow, t.q
    P = x_poly(t)
    for v in V.rows:
        w = lp_eval(P, v)
        if w == 0:
            raise ValueError("basis vectors are not independent")
        s = pw(w, q - 1)
        new = [0] * (len(P.coeffs) + 1)
        for j, c in enumerate(P.coeffs):
            if c:
                new[j + 1] = add(new[j + 1], pw(c, q))
                new[j] = sub(new[j], mul(s, c))
        P = LinearizedPoly(t, tuple(new))
    if any(lp_eval(P, v) for v in V.rows):
        raise AssertionError("subspace polynomial does not vanish on the basis")
    return P


def normalize(P: LinearizedPoly) -> LinearizedPoly:
    """Divide by the leading coefficient."""
    if P.is_zero():
        raise ValueError("zero polynomial")
    if P.is_monic:
        return P
    t = P.tower
    inv = t.inv(P.coeffs[-1])
    return LinearizedPoly(t, tuple(t.mul(inv, c) for c in P.coeffs))


def kernel(P: LinearizedPoly) -> Subspace:
    """Roots of P in the top field, as an F_q-subspace.

    Null space of the F_q-linear map a -> P(a), written in the basis
    1, x, ..., x^{n-1}.
    """
    if P.is_zero():
        raise ValueError("kernel of the zero polynomial")
    t = P.tower
    n = t.n
    basis = [t.pow(t.x, j) if t.degree > 1 else 1 for j in range(n)]
    if t.fast2:
        stacked = [(lp_eval(P, b) << n) | (1 << j) for j, b in enumerate(basis)]
        mask = (1 << n) - 1
        return from_generators(t, [r & mask for r in _rref2(stacked) if r >> n == 0])
    stacked = []
    for j, b in enumerate(basis):
        tag = [0] * n
        tag[j] = 1
        stacked.append(tag + t.fq_coords(lp_eval(P, b)))
    reduced = rref_coords(t.mid, stacked)
    return from_generators(t, [t.from_fq_coords(r[:n]) for r in reduced if not any(r[n:])])


def gap(P: LinearizedPoly) -> int:
    """k - i, with i the index of the second-highest nonzero coefficient."""
    if not P.is_monic:
        raise ValueError("gap needs a monic polynomial")
    if P.qdegree < 1 or P.coeffs[0] == 0:
        raise ValueError("gap needs a subspace polynomial (q-degree >= 1, nonzero x coefficient)")
    k = P.qdegree
    i = max(j for j in range(k) if P.coeffs[j])
    return k - i


def is_subspace_poly(P: LinearizedPoly) -> bool:
    """True iff P is monic, splits in the top field and has simple roots."""
    if not P.is_monic:
        return False
    if P.coeffs[0] == 0:
        return False
    return kernel(P).dim == P.qdegree


def _exp_mod(t: FieldTower, k: int, j: int) -> int:
    """q^k - q^j reduced mod |F*|."""
    M = t.order - 1
    if M == 0:
        return 0
    return (pow(t.q, k, M) - pow(t.q, j, M)) % M


def shift_poly(P: LinearizedPoly, alpha: int) -> LinearizedPoly:
    """Subspace polynomial of alpha·V from that of V: c_j -> alpha^{q^k-q^j} c_j."""
    if alpha == 0:
        raise ValueError("cyclic shift by 0")
    t = P.tower
    k = P.qdegree
    return LinearizedPoly(
        t, tuple(t.mul(t.pow(alpha, _exp_mod(t, k, j)), c) if c else 0 for j, c in enumerate(P.coeffs))
    )


def frobenius_poly(P: LinearizedPoly, s: int) -> LinearizedPoly:
    """Subspace polynomial of F^s(V): every coefficient raised to q^s."""
    t = P.tower
    return LinearizedPoly(t, tuple(t.frobenius(c, s) for c in P.coeffs))


def to_dense(P: LinearizedPoly) -> list[int]:
    """Ordinary coefficient list (index = exponent)."""
    q = P.tower.q
    out = [0] * (q**P.qdegree + 1)
    for j, c in enumerate(P.coeffs):
        out[q**j] = c
    return out


def _log_q(q: int, n: int) -> int:
    d = 0
    while n > 1:
        n, r = divmod(n, q)
        if r:
            raise ValueError("gcd degree is not a power of q")
        d += 1
    return d


def intersection_dim_poly(P_U: LinearizedPoly, P_V: LinearizedPoly, check: bool = True) -> int:
    """dim(U ∩ V) = log_q deg gcd(P_U, P_V), gcd taken as ordinary polynomials."""
    if P_U.tower != P_V.tower:
        raise ValueError("polynomials live in different towers")
    if check and not (is_subspace_poly(P_U) and is_subspace_poly(P_V)):
        raise ValueError("intersection_dim_poly needs subspace polynomials")
    t = P_U.tower
    g = polyring.gcd(t.top, to_dense(P_U), to_dense(P_V))
    return _log_q(t.q, len(g) - 1)


def _second_index(P: LinearizedPoly) -> int:
    k = P.qdegree
    return max(j for j in range(k) if P.coeffs[j])


def intersection_bound(P_U: LinearizedPoly, P_V: LinearizedPoly) -> int:
    """Upper bound max(s, t + k2 - k1) on dim(U ∩ V) for distinct U, V.

    The argument with the larger q-degree plays the role of U (q-degree k2,
    second index s); the other is V (q-degree k1, second index t).
    """
    if P_U.qdegree < P_V.qdegree:
        P_U, P_V = P_V, P_U
    k2, k1 = P_U.qdegree, P_V.qdegree
    return max(_second_index(P_U), _second_index(P_V) + k2 - k1)


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-zγ]+)|(\S))")


class _Parser:
    """Recursive descent over sums of products of constants, generator
    powers and (at most one) x^{q^j} per term."""

    def __init__(self, tower: FieldTower, text: str, gen: int, gen_names: tuple[str, ...]):
        self.t = tower
        self.gen = gen
        self.gen_names = gen_names
        self.toks: list[str] = []
        for num, name, sym in _TOKEN.findall(text):
            self.toks.append(num or name or sym)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'} at position {self.i}, got {tok!r}")
        self.i += 1
        return tok

    # values: dict qdeg -> coeff; key -1 means a pure constant
    def expr(self) -> dict[int, int]:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            if op == "-":
                rhs = {k: self.t.neg(v) for k, v in rhs.items()}
            for k, v in rhs.items():
                acc[k] = self.t.add(acc.get(k, 0), v)
        return acc

    def term(self) -> dict[int, int]:
        acc = self.factor()
        while self.peek() is not None and self.peek() not in ("+", "-", ")"):
            if self.peek() == "*":
                self.take()
            acc = self._mul(acc, self.factor())
        return acc

    def _mul(self, a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
        if set(a) == {-1}:
            a, b = b, a
        if set(b) != {-1}:
            raise ValueError("product of two x-terms is not linearized")
        c = b[-1]
        return {k: self.t.mul(v, c) for k, v in a.items()}

    def _exponent(self) -> int:
        """``N``, ``[j]`` (= q^j), ``{N}``, ``{[j]}`` or ``(q^j)``."""
        tok = self.take()
        if tok.isdigit():
            return int(tok)
        if tok == "[":
            j = int(self.take())
            self.take("]")
            return self.t.q**j
        if tok in ("{", "("):
            close = "}" if tok == "{" else ")"
            if self.peek() == "[":
                val = self._exponent()
            elif self.peek() == "q":
                self.take("q")
                self.take("^")
                val = self.t.q ** int(self.take())
            else:
                val = int(self.take())
            self.take(close)
            return val
        raise ValueError(f"bad exponent {tok!r}")

    def factor(self) -> dict[int, int]:
        tok = self.peek()
        if tok == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if tok is not None and tok.isdigit():
            self.take()
            return {-1: self.t.top.scalar(int(tok), 1)}
        if tok in self.gen_names:
            self.take()
            e = 1
            if self.peek() == "^":
                self.take()
                e = self._exponent()
            return {-1: self.t.pow(self.gen, e)}
        if tok == "x":
            self.take()
            deg = 1
            if self.peek() == "^":
                self.take()
                deg = self._exponent()
            return {_log_q(self.t.q, deg): 1}
        raise ValueError(f"unexpected token {tok!r}")


def parse_linearized(
    tower: FieldTower,
    text: str,
    generator: int | None = None,
    gen_names: tuple[str, ...] = ("g", "gamma", "γ"),
) -> LinearizedPoly:
    """Parse e.g. ``"x^[3] + (g^2 + 1) x^[2] + g x"``.

    ``x^[j]`` and ``x^{[j]}`` mean x^{q^j}; a plain exponent must be a power of
    q.  The generator symbol defaults to the class of the indeterminate in the
    top field (the root of the top modulus).
    """
    gen = tower.x if generator is None else generator
    p = _Parser(tower, text, gen, gen_names)
    val = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input at token {p.peek()!r}")
    if val.get(-1, 0):
        raise ValueError("constant term in a linearized polynomial")
    val.pop(-1, None)
    K = max(val, default=-1)
    return LinearizedPoly(tower, tuple(val.get(j, 0) for j in range(K + 1)))
