from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicsubspace import polyring
from cyclicsubspace.field_tower import BasePoly, build_tower, splitting_field_degree
from cyclicsubspace.linearized import (
    LinearizedPoly,
    frobenius_poly,
    gap,
    intersection_bound,
    intersection_dim_poly,
    is_subspace_poly,
    kernel,
    lp_eval,
    normalize,
    parse_linearized,
    shift_poly,
    subspace_poly,
    to_dense,
    x_poly,
)
from cyclicsubspace.orbit import shift_between
from cyclicsubspace.subspace import (
    cyclic_shift,
    distance,
    from_generators,
    frobenius_shift,
    grassmannian,
    intersect_dim,
    random_subspace,
    subfield_subspace,
)

P_U_TEXT = "x^{[3]} + x^{[2]} + (γ^6 + γ^4 + γ^3 + γ + 1)x^{[1]} + (γ^3 + γ^2 + γ + 1)x"
P_V_TEXT = "x^{[3]} + (γ^2 + 1)x^{[2]} + (γ^6 + γ^4 + γ + 1)x^{[1]} + (γ^5 + γ^4 + γ)x"


def lin(t, coeffs):
    return LinearizedPoly(t, tuple(coeffs))


def product_form(V):
    """Oracle: prod_{v in V} (x - v) as an ordinary polynomial."""
    t = V.tower
    F = t.top
    f = [1]
    for v in V.elements():
        f = polyring.mul(F, f, [F.neg(v), 1])
    return f


def test_remark_polynomials(f128):
    PU = parse_linearized(f128, P_U_TEXT)
    PV = parse_linearized(f128, P_V_TEXT)
    assert PU.coeffs == (15, 91, 1, 1)
    assert PV.coeffs == (50, 83, 5, 1)
    U, V = kernel(PU), kernel(PV)
    assert U.dim == V.dim == 3
    assert subspace_poly(U) == PU and subspace_poly(V) == PV
    assert gap(PU) == gap(PV) == 1
    assert distance(U, V) == 4
    assert intersection_dim_poly(PU, PV) == 1
    assert intersection_bound(PU, PV) == 2
    alpha = shift_between(U, V)
    assert alpha is not None and cyclic_shift(U, alpha) == V
    assert shift_poly(PU, alpha) == PV


def test_remark_frobenius(f128):
    PU = parse_linearized(f128, P_U_TEXT)
    U = kernel(PU)
    sq = frobenius_poly(PU, 1)
    assert sq.coeffs == tuple(f128.mul(c, c) for c in PU.coeffs)
    assert set(kernel(sq).elements()) == {f128.mul(u, u) for u in U.elements()}


def test_remark_evaluation_at_gamma(f128):
    PU = parse_linearized(f128, P_U_TEXT)
    g = f128.x
    assert (lp_eval(PU, g) == 0) == (g in kernel(PU))


def test_parser_forms(f128):
    ref = lin(f128, (1, 1, 0, 1))
    for text in ["x^8 + x^2 + x", "x^[3] + x^[1] + x", "x^{8} + x^{[1]} + x", "x^(q^3) + x^{q^1} + x", "x^{[3]}+x^{2}+x^1"]:
        assert parse_linearized(f128, text) == ref
    for bad in ["x^3 + x", "x^2 + 1", "x^2 + x )", "x^^2"]:
        with pytest.raises(ValueError):
            parse_linearized(f128, bad)


def test_subspace_poly_examples(f16, f64):
    for t, d in [(f16, 2), (f64, 2), (f64, 3), (f64, 6)]:
        P = subspace_poly(subfield_subspace(t, d))
        expect = [0] * (d + 1)
        expect[0], expect[d] = 1, 1  # x^{q^d} - x, char 2
        assert P.coeffs == tuple(expect)
        assert gap(P) == d
    assert subspace_poly(from_generators(f64, [])) == x_poly(f64)


def test_subspace_poly_span_of_powers(f128):
    g = f128.x
    V = from_generators(f128, [1, g, f128.mul(g, g)])
    P = subspace_poly(V)
    assert P.qdegree == 3 and P.is_monic
    assert all(lp_eval(P, v) == 0 for v in V.elements())
    rng = random.Random(3)
    outside = [a for a in rng.sample(range(f128.order), 40) if a not in V][:8]
    assert all(lp_eval(P, a) != 0 for a in outside)


@pytest.mark.parametrize("p,m,n,k", [(2, 1, 6, 2), (2, 1, 5, 3), (3, 1, 3, 2), (2, 2, 3, 2), (3, 2, 2, 1)])
def test_subspace_poly_matches_product_form(p, m, n, k):
    t = build_tower(p, m, n)
    rng = random.Random(p + m + n + k)
    for _ in range(10):
        V = random_subspace(t, k, rng)
        assert to_dense(subspace_poly(V)) == product_form(V)


def test_kernel_examples(f16, f128):
    assert kernel(lin(f16, (1, 1))).rows == (1,)
    P = lin(f128, (1, 1, 0, 1))
    V = kernel(P)
    assert V.dim == 3 and subspace_poly(V) == P
    assert lp_eval(lin(f16, (1, 1)), 1) == 0
    with pytest.raises(ValueError):
        kernel(lin(f16, ()))


def test_is_subspace_poly_examples(f64, f128):
    assert is_subspace_poly(lin(f128, (1, 1, 0, 1)))
    assert not is_subspace_poly(lin(build_tower(2, 1, 5), (1, 1, 0, 1)))
    assert not is_subspace_poly(lin(f128, (0, 1, 0, 1)))
    assert is_subspace_poly(lin(f64, (1, 0, 0, 1)))  # x^8 - x, F_8 ⊂ F_64


def test_gap_errors(f128):
    assert gap(lin(f128, (1, 1, 0, 1))) == 2
    with pytest.raises(ValueError):
        gap(lin(f128, (0, 1, 0, 1)))
    with pytest.raises(ValueError):
        gap(lin(f128, (1, 1, 0, 3)))


def test_shift_poly_fixed_points():
    t = build_tower(3, 1, 4)
    P = subspace_poly(subfield_subspace(t, 2))
    assert shift_poly(P, 1) == P
    assert shift_poly(P, t.neg(1)) == P  # F_3^* = {1, -1}
    with pytest.raises(ValueError):
        shift_poly(P, 0)
    assert frobenius_poly(P, 0) == P and frobenius_poly(P, 3) == P


def test_normalize(f64):
    P = lin(f64, (5, 0, 7))
    N = normalize(P)
    assert N.is_monic and kernel(N) == kernel(P)


def test_serialization(f128):
    P = parse_linearized(f128, P_V_TEXT)
    assert LinearizedPoly.deserialize(f128, P.serialize()) == P
    with pytest.raises(ValueError):
        LinearizedPoly.deserialize(f128, "k=5;c=1")


def test_trinomial_shift_intersections(f128):
    P = lin(f128, (1, 1, 0, 1))
    V = kernel(P)
    bound = intersection_bound(P, P)
    assert bound == 1
    for e in range(1, 127):
        W = cyclic_shift(V, f128.pow(f128.gamma, e))
        assert W != V
        assert intersect_dim(V, W) <= bound


TOWERS = [(2, 1, 6), (2, 1, 8), (3, 1, 4), (2, 2, 3)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TOWERS), st.integers(0, 10**9))
def test_shift_and_frobenius_commute_with_poly(spec, seed):
    t = build_tower(*spec)
    rng = random.Random(seed)
    V = random_subspace(t, rng.randrange(1, t.n), rng)
    P = subspace_poly(V)
    a = rng.randrange(1, t.order)
    s = rng.randrange(t.n)
    assert subspace_poly(cyclic_shift(V, a)) == shift_poly(P, a)
    assert subspace_poly(frobenius_shift(V, s)) == frobenius_poly(P, s)
    assert kernel(P) == V
    assert P.coeffs[0] != 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TOWERS), st.integers(0, 10**9))
def test_lp_eval_is_fq_linear(spec, seed):
    t = build_tower(*spec)
    rng = random.Random(seed)
    P = lin(t, [rng.randrange(t.order) for _ in range(rng.randrange(1, t.n + 1))])
    a, b = rng.randrange(t.order), rng.randrange(t.order)
    c = rng.choice(t.fq_elements())
    assert lp_eval(P, t.add(a, b)) == t.add(lp_eval(P, a), lp_eval(P, b))
    assert lp_eval(P, t.mul(c, a)) == t.mul(c, lp_eval(P, a))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TOWERS), st.integers(0, 10**9))
def test_intersection_poly_vs_linear_algebra(spec, seed):
    t = build_tower(*spec)
    rng = random.Random(seed)
    U = random_subspace(t, rng.randrange(1, t.n), rng)
    V = random_subspace(t, rng.randrange(1, t.n), rng)
    PU, PV = subspace_poly(U), subspace_poly(V)
    assert intersection_dim_poly(PU, PV) == intersect_dim(U, V)
    assert intersection_dim_poly(PU, PU) == U.dim
    if U != V:
        assert intersect_dim(U, V) <= intersection_bound(PU, PV)
    if U.dim == V.dim and U != V:
        assert intersection_bound(PU, PV) == U.dim - min(gap(PU), gap(PV))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 1, 6), (2, 1, 7), (3, 1, 3)]), st.integers(0, 10**9))
def test_monic_with_nonzero_x_coefficient_splits_in_splitting_field(spec, seed):
    # any monic P with c_0 != 0 has q^k distinct roots in its splitting field
    t = build_tower(*spec)
    rng = random.Random(seed)
    k = rng.randrange(1, 3)
    F = t.mid
    coeffs = [rng.randrange(1, F.order)] + [rng.randrange(F.order) for _ in range(k - 1)] + [1]
    dense = {t.q**j: c for j, c in enumerate(coeffs) if c}
    N = splitting_field_degree(BasePoly.from_terms(F, dense))
    big = build_tower(t.p, t.m, N)
    P = lin(big, [big.embed_mid(c) for c in coeffs])
    assert is_subspace_poly(P)


def test_round_trip_exhaustive_small(f64):
    for k in range(0, 4):
        for V in grassmannian(f64, k):
            assert kernel(subspace_poly(V)) == V
