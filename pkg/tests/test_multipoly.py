"""Polynomial layer checks: arithmetic, order, determinants, span solving."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentangle.multipoly import (
    MultiPoly,
    PolyMatrix,
    det_bareiss,
    det_cofactor,
    determinant,
    grevlex_key,
    in_linear_span,
    partial_derivative,
    rank_at_point,
    scalar_matrix_det,
    scalar_matrix_nullspace,
    scalar_matrix_rank,
    solve_linear_system,
)
from pentangle.scalars import Cyclo, EPS3, Fp, RatFunc

SEED = 20260824
XVARS = ("x0", "x1", "x2")


def _random_poly(rng: random.Random, vars=XVARS, max_terms=5, max_deg=3) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_deg) for _ in vars)
        terms[mono] = Fraction(rng.randint(-6, 6))
    return MultiPoly(vars, terms)


def _random_point(rng: random.Random, n=3):
    return [Fraction(rng.randint(-5, 5)) for _ in range(n)]


# -- ordering and rendering -------------------------------------------


def test_grevlex_order_of_degree_two_monomials():
    monos = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert sorted(monos, key=grevlex_key) == monos


def test_render_canonical():
    x0, x1, x2 = MultiPoly.gens(XVARS)
    f = x1 * x1 + x0 * x0 - x2 * x2 * 3 + 1
    assert f.render() == "x0^2 + x1^2 - 3*x2^2 + 1"
    assert MultiPoly.zero(XVARS).render() == "0"


def test_render_cyclotomic_coefficients():
    one = Cyclo(1)
    x0, x1, x2 = MultiPoly.gens(XVARS, one)
    f = x0 * x1 * EPS3 + x2 * x2
    assert f.render() == "eps3*x0*x1 + x2^2"


# -- ring structure ----------------------------------------------------


def test_eval_is_ring_homomorphism_random():
    rng = random.Random(SEED)
    for _ in range(1000):
        f, g = _random_poly(rng), _random_poly(rng)
        p = _random_point(rng)
        assert (f * g).eval_at(p) == f.eval_at(p) * g.eval_at(p)
        assert (f + g).eval_at(p) == f.eval_at(p) + g.eval_at(p)


def test_product_of_homogeneous_is_homogeneous():
    rng = random.Random(SEED + 1)
    for _ in range(200):
        d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
        f = _random_homogeneous(rng, d1)
        g = _random_homogeneous(rng, d2)
        if f.is_zero() or g.is_zero():
            continue
        assert (f * g).homogeneous_degree() == d1 + d2


def _random_homogeneous(rng: random.Random, deg: int) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        cuts = sorted(rng.randint(0, deg) for _ in range(2))
        mono = (cuts[0], cuts[1] - cuts[0], deg - cuts[1])
        terms[mono] = Fraction(rng.randint(-4, 4))
    return MultiPoly(XVARS, terms)


@given(st.integers(min_value=-4, max_value=4), st.integers(min_value=-4, max_value=4))
@settings(max_examples=40, deadline=None)
def test_constant_arithmetic_matches_fractions(a, b):
    ca = MultiPoly.constant(XVARS, Fraction(a))
    cb = MultiPoly.constant(XVARS, Fraction(b))
    assert (ca * cb).constant_value() == Fraction(a * b)
    assert (ca + cb).constant_value() == Fraction(a + b)


def test_exact_div_roundtrip_random():
    rng = random.Random(SEED + 2)
    done = 0
    while done < 120:
        f, g = _random_poly(rng), _random_poly(rng)
        if f.is_zero() or g.is_zero():
            continue
        assert (f * g).exact_div(g) == f
        done += 1


def test_exact_div_rejects_non_divisor():
    x0, x1, _ = MultiPoly.gens(XVARS)
    with pytest.raises(ValueError):
        (x0 * x0 + x1).exact_div(x0 + 1)


def test_substitute_is_ring_homomorphism():
    rng = random.Random(SEED + 3)
    x0, x1, x2 = MultiPoly.gens(XVARS)
    images = {"x0": x1 + x2, "x1": x0 - x2 * 2, "x2": x0 + x1 + 1}
    for _ in range(100):
        f, g = _random_poly(rng), _random_poly(rng)
        assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)
        assert (f + g).substitute(images) == f.substitute(images) + g.substitute(images)


def test_partial_derivative_basics():
    x0, x1, x2 = MultiPoly.gens(XVARS)
    assert partial_derivative(x0 * x0, "x0") == x0 * 2
    assert partial_derivative(x1 * x2, "x0").is_zero()
    with pytest.raises(ValueError):
        partial_derivative(x0, "w")


def test_partial_derivative_leibniz_random():
    rng = random.Random(SEED + 4)
    for _ in range(200):
        f, g = _random_poly(rng), _random_poly(rng)
        lhs = partial_derivative(f * g, "x1")
        rhs = partial_derivative(f, "x1") * g + f * partial_derivative(g, "x1")
        assert lhs == rhs


def test_partial_derivative_char_guard():
    one = Fp(1, 5)
    x0 = MultiPoly.variable("x0", XVARS, one)
    with pytest.raises(ValueError):
        (x0 ** 5 + x0).partial_derivative("x0")


# -- scalar linear algebra --------------------------------------------


def test_scalar_det_and_rank_small_cases():
    one = Fraction(1)
    eye = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    assert scalar_matrix_det(eye, one) == 1
    assert scalar_matrix_rank(eye, one) == 4
    sing = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert scalar_matrix_det(sing, one) == 0
    assert scalar_matrix_rank(sing, one) == 1
    ns = scalar_matrix_nullspace(sing, one)
    assert len(ns) == 1
    v = ns[0]
    assert sing[0][0] * v[0] + sing[0][1] * v[1] == 0


def test_nullspace_rank_nullity_random():
    rng = random.Random(SEED + 5)
    one = Fraction(1)
    for _ in range(200):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(n)]
        r = scalar_matrix_rank(a, one)
        ns = scalar_matrix_nullspace(a, one)
        assert r + len(ns) == m
        for v in ns:
            for row in a:
                assert sum(x * y for x, y in zip(row, v)) == 0


def test_solve_linear_system_consistency():
    one = Fraction(1)
    a = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    x = solve_linear_system(a, [Fraction(3), Fraction(1)], one)
    assert x == [Fraction(2), Fraction(1)]
    assert solve_linear_system([[Fraction(1)], [Fraction(1)]],
                               [Fraction(0), Fraction(1)], one) is None


# -- polynomial matrices ----------------------------------------------


def test_determinant_trivial_cases():
    one = Fraction(1)
    vars5 = tuple("x%d" % i for i in range(5))
    eye = PolyMatrix([[MultiPoly.constant(vars5, Fraction(int(i == j)))
                       for j in range(5)] for i in range(5)])
    assert det_cofactor(eye).constant_value() == 1
    gens = MultiPoly.gens(vars5)
    diag = PolyMatrix([[gens[i] if i == j else MultiPoly.zero(vars5)
                        for j in range(5)] for i in range(5)])
    prod = gens[0]
    for g in gens[1:]:
        prod = prod * g
    assert det_cofactor(diag) == prod
    assert det_bareiss(diag) == prod


def _random_linear_matrix(rng: random.Random, n: int) -> PolyMatrix:
    vars5 = tuple("x%d" % i for i in range(5))
    rowsets = []
    for _ in range(n):
        row = []
        for _ in range(n):
            terms = {}
            for k in range(5):
                c = rng.randint(-2, 2)
                if c:
                    mono = tuple(1 if i == k else 0 for i in range(5))
                    terms[mono] = Fraction(c)
            row.append(MultiPoly(vars5, terms))
        rowsets.append(row)
    return PolyMatrix(rowsets)


def test_bareiss_agrees_with_cofactor_random():
    rng = random.Random(SEED + 6)
    for _ in range(25):
        m = _random_linear_matrix(rng, rng.randint(2, 4))
        assert det_bareiss(m) == det_cofactor(m)


def test_determinant_evaluates_to_pointwise_determinant():
    rng = random.Random(SEED + 7)
    m = _random_linear_matrix(rng, 4)
    d = determinant(m)
    for _ in range(100):
        pt = [Fraction(rng.randint(-4, 4)) for _ in range(5)]
        assert d.eval_at(pt) == scalar_matrix_det(m.eval_at(pt), Fraction(1))


def test_determinant_of_linear_forms_is_homogeneous():
    rng = random.Random(SEED + 8)
    for n in (3, 5):
        m = _random_linear_matrix(rng, n)
        d = determinant(m)
        assert d.is_zero() or d.homogeneous_degree() == n


def test_rank_at_point_invariances():
    rng = random.Random(SEED + 9)
    m = _random_linear_matrix(rng, 4)
    pt = [Fraction(rng.randint(-4, 4)) for _ in range(5)]
    if all(c == 0 for c in pt):
        pt[0] = Fraction(1)
    r = rank_at_point(m, pt)
    # point rescaling
    assert rank_at_point(m, [c * 7 for c in pt]) == r
    # row and column permutation
    perm = PolyMatrix([m.entries[i] for i in (2, 0, 3, 1)])
    assert rank_at_point(perm, pt) == r
    permc = PolyMatrix([[row[j] for j in (1, 3, 0, 2)] for row in m.entries])
    assert rank_at_point(permc, pt) == r
    with pytest.raises(ValueError):
        rank_at_point(m, [Fraction(0)] * 5)


def test_determinant_with_ratfunc_scalars_uses_bareiss():
    one = RatFunc.const(1)
    a = RatFunc.gen()
    vars2 = ("y0", "y1")
    y0 = MultiPoly.variable("y0", vars2, one)
    y1 = MultiPoly.variable("y1", vars2, one)
    m = PolyMatrix([[y0 * a, y1], [y1, y0 * (1 / a)]])
    d = determinant(m)
    assert d == y0 * y0 - y1 * y1


# -- linear span membership -------------------------------------------


def test_in_linear_span_trivial_cases():
    x0, x1, x2 = MultiPoly.gens(XVARS)
    basis = [x0 * x0, x1 * x1, x0 * x2]
    assert in_linear_span(basis[0], basis) == [1, 0, 0]
    assert in_linear_span(MultiPoly.zero(XVARS), basis) == [0, 0, 0]
    assert in_linear_span(x0 * x1, basis) is None
    combo = basis[0] * Fraction(2) - basis[2] * Fraction(5, 3)
    assert in_linear_span(combo, basis) == [Fraction(2), 0, Fraction(-5, 3)]


def test_in_linear_span_degree_mismatch():
    x0, x1, _ = MultiPoly.gens(XVARS)
    with pytest.raises(ValueError):
        in_linear_span(x0, [x0 * x1])
    with pytest.raises(ValueError):
        in_linear_span(x0 + x0 * x1, [x0 * x1])


def test_in_linear_span_with_parameter():
    vars_a = ("x0", "x1", "a")
    x0 = MultiPoly.variable("x0", vars_a)
    x1 = MultiPoly.variable("x1", vars_a)
    a = MultiPoly.variable("a", vars_a)
    # q = a*(x0^2) + x1^2 against basis {x0^2, x1^2}: coefficients (a, 1)
    q = a * x0 * x0 + x1 * x1
    sol = in_linear_span(q, [x0 * x0, x1 * x1], param_vars=("a",))
    assert sol is not None
    assert sol[0] == RatFunc.gen()
    assert sol[1] == RatFunc.const(1)
    # and a non-member stays a non-member
    assert in_linear_span(a * x0 * x1, [x0 * x0], param_vars=("a",)) is None
