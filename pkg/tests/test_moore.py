"""Structure, dual and syzygy matrices of the cyclic quadric family."""

from __future__ import annotations

import random

import pytest

from pentangle.moore import (
    AVARS_X,
    MooreMatrices,
    QuadricSystem,
    VARS_X,
    VARS_Y,
    _character_substitution,
    _lift_to_cleared,
    _shift_substitution,
    build_moore_matrices,
    excluded_moduli,
    excluded_modulus_residues,
    incidence_residual,
    is_admissible_modulus,
    quintic_equations,
    reference_curve_points,
    specialize_modulus,
    symbolic_modulus,
    verify_matrix_identities,
    verify_span_claims,
    z_vector,
)
from pentangle.multipoly import (
    MultiPoly,
    det_bareiss,
    det_cofactor,
    rank_at_point,
    scalar_matrix_det,
    scalar_matrix_nullspace,
    scalar_matrix_rank,
)
from pentangle.scalars import EPS5, Cyclo, Fp, ONE, RatFunc, find_root_of_unity

SEED = 20260824


@pytest.fixture(scope="module")
def fp_bundle():
    a = Fp(2, 31)
    return build_moore_matrices(a), QuadricSystem(a)


@pytest.fixture(scope="module")
def symbolic_bundle():
    a = symbolic_modulus()
    return build_moore_matrices(a), QuadricSystem(a)


@pytest.fixture(scope="module")
def symbolic_identity_report():
    return verify_matrix_identities()


# -- moduli ------------------------------------------------------------


def test_excluded_moduli_shape():
    vals = excluded_moduli()
    assert len(vals) == 12
    assert vals[0] == Cyclo(0)
    assert vals[1] is None
    finite = [v for v in vals if v is not None]
    assert len(set(finite)) == 11


def test_excluded_residues_mod_31_frozen():
    assert sorted(excluded_modulus_residues(31)) == [0, 3, 5, 6, 9, 10, 12,
                                                     17, 18, 20, 24]


def test_excluded_residues_independent_of_root_choice():
    p = 31
    w0 = find_root_of_unity(p, 5).v
    reference = excluded_modulus_residues(p)
    for k in range(1, 5):
        w = pow(w0, k, p)
        alt = {0}
        for j in range(5):
            wj = pow(w, j, p)
            alt.add(wj * (pow(w, 2, p) + pow(w, 3, p)) % p)
            alt.add(wj * (w + pow(w, 4, p)) % p)
        assert frozenset(alt) == reference


def test_admissibility_dispatch():
    assert is_admissible_modulus(Fp(2, 31))
    assert not is_admissible_modulus(Fp(12, 31))
    assert is_admissible_modulus(Cyclo(1))
    assert is_admissible_modulus(1)
    assert not is_admissible_modulus(0)
    assert not is_admissible_modulus(None)
    assert not is_admissible_modulus(EPS5 ** 2 + EPS5 ** 3)
    assert not is_admissible_modulus(EPS5 * (EPS5 + EPS5 ** 4))
    assert is_admissible_modulus(symbolic_modulus())
    assert not is_admissible_modulus(RatFunc.const(ONE * 0, ONE))


def test_zero_modulus_rejected():
    with pytest.raises(ValueError):
        build_moore_matrices(Cyclo(0))
    with pytest.raises(ValueError):
        QuadricSystem(Fp(0, 31))
    with pytest.raises(ValueError):
        z_vector(0)
    with pytest.raises(ValueError):
        reference_curve_points(0)


# -- quadrics ----------------------------------------------------------


def test_quadrics_cyclic_shift(fp_bundle):
    _, qs = fp_bundle
    for i in range(5):
        assert _shift_substitution(qs.quadrics[i]) == qs.quadrics[(i - 1) % 5]


def test_quadrics_character_eigenvalue(fp_bundle):
    _, qs = fp_bundle
    eps = find_root_of_unity(31, 5)
    for i in range(5):
        expected = qs.quadrics[i] * eps ** (-2 * i)
        assert _character_substitution(qs.quadrics[i]) == expected


def test_quadric_explicit_form():
    qs = QuadricSystem(Cyclo(2))
    x = MultiPoly.gens(VARS_X, ONE)
    half = ONE / Cyclo(2)
    expected = x[0] * x[0] + x[2] * x[3] * Cyclo(2) - x[1] * x[4] * half
    assert qs.quadrics[0] == expected


# -- matrix construction ----------------------------------------------


def test_structure_matrix_entries_frozen(fp_bundle):
    mm, _ = fp_bundle
    y = MultiPoly.gens(VARS_Y, Fp(1, 31))
    z_table = (2, 2, 15, 15, 2)  # (2, a, -1/a, -1/a, a) at a = 2 mod 31
    for i in range(5):
        for j in range(5):
            assert mm.m[i, j] == y[(i + j) % 5] * Fp(z_table[(i - j) % 5], 31)


def test_symmetry_and_antisymmetry(fp_bundle, symbolic_bundle):
    for mm, _ in (fp_bundle, symbolic_bundle):
        assert mm.m.is_symmetric()
        assert not mm.m.is_antisymmetric()
        assert mm.syzygy.is_antisymmetric()
        assert not mm.syzygy.is_symmetric()


def test_syzygy_matrix_rows_frozen(fp_bundle):
    mm, _ = fp_bundle
    one = Fp(1, 31)
    a = Fp(2, 31)
    x0, x1, x2, x3, x4 = MultiPoly.gens(VARS_X, one)
    zero = MultiPoly.zero(VARS_X, one)
    expected = [
        [zero, a * x4, -x3, x2, -(a * x1)],
        [-(a * x4), zero, a * x2, -x1, x0],
        [x3, -(a * x2), zero, a * x0, -x4],
        [-x2, x1, -(a * x0), zero, a * x3],
        [a * x1, -x0, x4, -(a * x3), zero],
    ]
    for i in range(5):
        for j in range(5):
            assert mm.syzygy[i, j] == expected[i][j]


def test_syzygy_closed_form(symbolic_bundle):
    mm, _ = symbolic_bundle
    a = mm.a
    one = mm.one
    weights = {0: one * 0, 1: a, 2: -one, 3: one, 4: -a}
    x = MultiPoly.gens(VARS_X, one)
    for i in range(5):
        for j in range(5):
            assert mm.syzygy[i, j] == x[(-i - j) % 5] * weights[(j - i) % 5]


def test_dual_matrix_closed_form(fp_bundle):
    mm, _ = fp_bundle
    z = z_vector(Fp(2, 31))
    x = MultiPoly.gens(VARS_X, Fp(1, 31))
    for i in range(5):
        for j in range(5):
            assert mm.m_prime[i, j] == x[(j - i) % 5] * z[(2 * i - j) % 5]


def test_dual_matrix_is_gradient_matrix(symbolic_bundle):
    mm, qs = symbolic_bundle
    for i in range(5):
        for j in range(5):
            grad = qs.quadrics[(3 * j) % 5].partial_derivative(VARS_X[i])
            assert mm.m_prime[i, j] == grad


def test_doubled_quadrics_pointwise_oracle(fp_bundle):
    mm, qs = fp_bundle
    one = Fp(1, 31)
    zero = Fp(0, 31)
    rng = random.Random(SEED)
    for _ in range(40):
        pt = [Fp(rng.randrange(31), 31) for _ in range(5)]
        if all(v == zero for v in pt):
            continue
        for i in range(5):
            unit = [one if k == i else zero for k in range(5)]
            gram = mm.m.eval_at(unit)
            form = zero
            for j in range(5):
                for k in range(5):
                    form = form + gram[j][k] * pt[j] * pt[k]
            assert form == qs.quadrics[(3 * i) % 5].eval_at(pt) * 2


# -- determinants ------------------------------------------------------


def test_determinants_homogeneous_quintic(fp_bundle, symbolic_bundle):
    for mm, _ in (fp_bundle, symbolic_bundle):
        det_m, det_mp = quintic_equations(mm)
        assert det_m.homogeneous_degree() == 5
        assert det_mp.homogeneous_degree() == 5
        assert len(det_m.terms) == 26
        assert len(det_mp.terms) == 26


def test_determinant_routes_agree_numeric(fp_bundle):
    mm, _ = fp_bundle
    det_m, det_mp = quintic_equations(mm)
    assert det_bareiss(mm.m) == det_m == det_cofactor(mm.m)
    assert det_bareiss(mm.m_prime) == det_mp == det_cofactor(mm.m_prime)


def test_determinant_routes_agree_cyclo():
    mm = build_moore_matrices(Cyclo(1))
    det_m, _ = quintic_equations(mm)
    assert det_bareiss(mm.m) == det_m


def test_determinant_pointwise_oracle(fp_bundle):
    mm, _ = fp_bundle
    det_m, det_mp = quintic_equations(mm)
    one = Fp(1, 31)
    rng = random.Random(SEED)
    for _ in range(20):
        pt = [Fp(rng.randrange(31), 31) for _ in range(5)]
        assert det_m.eval_at(pt) == scalar_matrix_det(mm.m.eval_at(pt), one)
        assert det_mp.eval_at(pt) == scalar_matrix_det(mm.m_prime.eval_at(pt), one)


def test_substitution_action_fixes_determinants(fp_bundle):
    mm, _ = fp_bundle
    det_m, det_mp = quintic_equations(mm)
    for det in (det_m, det_mp):
        assert _shift_substitution(det) == det
        assert _character_substitution(det) == det
        assert _shift_substitution(det, step=2) == det
        assert _character_substitution(det, power=3) == det


def test_symbolic_determinant_specializes(symbolic_bundle):
    mm, _ = symbolic_bundle
    det_m, det_mp = quintic_equations(mm)
    numeric = build_moore_matrices(Cyclo(2))
    num_m, num_mp = quintic_equations(numeric)
    assert specialize_modulus(det_m, Cyclo(2)) == num_m
    assert specialize_modulus(det_mp, Cyclo(2)) == num_mp


def test_lift_to_cleared_guards(symbolic_bundle):
    mm, _ = symbolic_bundle
    det_m, _ = quintic_equations(mm)
    lifted = _lift_to_cleared(det_m, ("a",) + VARS_Y, 5)
    assert lifted.homogeneous_degree(exclude=("a",)) == 5
    with pytest.raises(ValueError):
        _lift_to_cleared(mm.m_prime[0, 2], AVARS_X, 0)  # 1/a pole remains
    with pytest.raises(TypeError):
        _lift_to_cleared(MultiPoly.gens(VARS_X, ONE)[0], ("a",) + VARS_X, 0)


# -- reference points and incidence -----------------------------------


def test_reference_points_satisfy_quadrics(fp_bundle, symbolic_bundle):
    for mm, qs in (fp_bundle, symbolic_bundle):
        zero = mm.one * 0
        p0, p1 = reference_curve_points(mm.a)
        for q in qs.quadrics:
            assert q.eval_at(p0) == zero
            assert q.eval_at(p1) == zero
        assert p1 == tuple(p0[(i + 1) % 5] for i in range(5))


def test_dual_matrix_rank_three_on_curve(fp_bundle, symbolic_bundle):
    for mm, _ in (fp_bundle, symbolic_bundle):
        p0, p1 = reference_curve_points(mm.a)
        assert rank_at_point(mm.m_prime, p0) == 3
        assert rank_at_point(mm.m_prime, p1) == 3


def test_incidence_residual_agreement_and_nonvanishing(fp_bundle):
    mm, _ = fp_bundle
    rng = random.Random(SEED)
    nonzero = 0
    for _ in range(50):
        x = [rng.randrange(31) for _ in range(5)]
        y = [rng.randrange(31) for _ in range(5)]
        if not any(x) or not any(y):
            continue
        res = incidence_residual(x, y, mm)
        if any(v != Fp(0, 31) for v in res):
            nonzero += 1
    assert nonzero >= 45


def test_incidence_residual_zero_on_incident_pair(fp_bundle):
    mm, _ = fp_bundle
    one = Fp(1, 31)
    zero = Fp(0, 31)
    p0, _ = reference_curve_points(mm.a)
    kernel = scalar_matrix_nullspace(mm.m_prime.eval_at(p0), one)
    assert len(kernel) == 2  # the pencil of singular quadrics at a curve point
    for y in kernel:
        assert incidence_residual(p0, y, mm) == [zero] * 5


def test_rank_four_vertex_lies_on_dual_quintic(fp_bundle):
    mm, _ = fp_bundle
    one = Fp(1, 31)
    _, det_mp = quintic_equations(mm)
    p0, _ = reference_curve_points(mm.a)
    b1, b2 = scalar_matrix_nullspace(mm.m_prime.eval_at(p0), one)
    rng = random.Random(SEED)
    seen_rank_four = 0
    for _ in range(10):
        t = Fp(rng.randrange(31), 31)
        y = [u + t * v for u, v in zip(b1, b2)]
        if all(v == Fp(0, 31) for v in y):
            continue
        rows = mm.m.eval_at(y)
        if scalar_matrix_rank(rows, one) != 4:
            continue
        seen_rank_four += 1
        for vertex in scalar_matrix_nullspace(rows, one):
            assert det_mp.eval_at(vertex) == Fp(0, 31)
    assert seen_rank_four >= 8


def test_incidence_residual_rejects_zero_points(fp_bundle):
    mm, _ = fp_bundle
    with pytest.raises(ValueError):
        incidence_residual([0, 0, 0, 0, 0], [1, 0, 0, 0, 0], mm)
    with pytest.raises(ValueError):
        incidence_residual([1, 0, 0, 0, 0], [0, 0, 0, 0, 0], mm)
    with pytest.raises(ValueError):
        incidence_residual([1, 0, 0], [1, 0, 0, 0, 0], mm)


# -- reports -----------------------------------------------------------


def test_identity_report_symbolic(symbolic_identity_report):
    rep = symbolic_identity_report
    assert rep["passed"]
    names = [c["name"] for c in rep["checks"]]
    assert "dual matrix equals the gradient matrix in 3j column order" in names
    assert "cleared-cofactor and rational-elimination determinants agree" in names
    record = [c for c in rep["checks"]
              if c["name"] == "determinant behaviour at a degenerate modulus (record)"]
    assert len(record) == 1
    assert record[0]["detail"] == ("structure determinant vanishes identically: "
                                   "False; dual: False")


def test_identity_report_prime_field():
    rep = verify_matrix_identities(Fp(2, 61))
    assert rep["passed"]
    assert rep["modulus"] == "2"


def test_span_report_symbolic(symbolic_bundle):
    mm, qs = symbolic_bundle
    rep = verify_span_claims(mm, qs)
    assert rep["passed"]
    assert rep["pairings"] == [(3, 0)]
    assert rep["span_vectors"]["(0, 0)"] == ["0"] * 5
    assert rep["span_vectors"]["(0, 1)"] == ["0", "0", "a", "0", "0"]
    kernel = [c for c in rep["checks"]
              if c["name"] == "every syzygy row has a nonzero coefficient kernel"]
    assert kernel[0]["detail"] == "kernel dimensions [2, 2, 2, 2, 2]"


def test_span_report_prime_field(fp_bundle):
    mm, qs = fp_bundle
    rep = verify_span_claims(mm, qs)
    assert rep["passed"]
    assert rep["pairings"] == [(3, 0)]
    assert rep["span_vectors"]["(0, 1)"] == ["0", "0", "2", "0", "0"]


def test_span_report_rejects_mixed_moduli(fp_bundle):
    mm, _ = fp_bundle
    with pytest.raises(ValueError):
        verify_span_claims(mm, QuadricSystem(Fp(7, 31)))


def test_pairing_product_structure(fp_bundle):
    mm, qs = fp_bundle
    product = mm.syzygy @ mm.m_prime.transpose()
    assert product[0, 0].is_zero()
    assert product[1, 1] == qs.quadrics[4]
    assert product[0, 1] == qs.quadrics[2] * Fp(2, 31)
