import numpy as np
import pytest

from octo_cfs.mult_algebra import (
    SpanClosureError,
    chain,
    dagger,
    in_span,
    left_matrix,
    left_right_equality,
    left_unit,
    octonion_inner,
    quadratic_relation_check,
    right_matrix,
    right_unit,
    span_dimension,
)
from octo_cfs.octonion import ComplexOctonion, Octonion, mul

rng = np.random.default_rng(11)

I8 = np.eye(8)


def rand_octonion():
    return Octonion(rng.standard_normal(8))


def test_left_identity_is_identity_matrix():
    assert np.array_equal(left_unit(0), I8)
    assert np.array_equal(right_unit(0), I8)


def test_left_matrix_represents_multiplication():
    e2 = np.zeros(8)
    e2[2] = 1.0
    e3 = np.zeros(8)
    e3[3] = 1.0
    assert np.array_equal(left_unit(1) @ e2, e3)
    for _ in range(1000):
        a = rand_octonion()
        x = rand_octonion()
        scale = a.norm() * x.norm()
        assert np.allclose(left_matrix(a) @ x.coeffs, (a * x).coeffs, atol=1e-12 * max(1.0, scale))
        assert np.allclose(right_matrix(a) @ x.coeffs, (x * a).coeffs, atol=1e-12 * max(1.0, scale))


def test_left_matrix_linear_in_argument():
    a, b = rand_octonion(), rand_octonion()
    assert np.allclose(left_matrix(a + b), left_matrix(a) + left_matrix(b), atol=1e-14)
    assert np.allclose(right_matrix(a + b), right_matrix(a) + right_matrix(b), atol=1e-14)


def test_imaginary_left_units_square_to_minus_identity():
    for i in range(1, 8):
        assert np.array_equal(left_unit(i) @ left_unit(i), -I8)


def test_imaginary_left_units_antisymmetric():
    for i in range(1, 8):
        assert np.array_equal(left_unit(i).T, -left_unit(i))


def test_chain_identity_l1_to_l6_equals_l7():
    assert np.array_equal(chain([1, 2, 3, 4, 5, 6]), left_unit(7))


def test_chain_squares_and_anticommutation():
    for a in range(1, 8):
        assert np.array_equal(chain([a, a]), -I8)
    for a in range(1, 8):
        for b in range(1, 8):
            if a != b:
                assert np.array_equal(chain([a, b]) + chain([b, a]), np.zeros((8, 8)))


def test_clifford_generation_relations():
    # {L_i, L_j} = -2 delta_ij on the first six generators (Cl(0,6))
    for i in range(1, 7):
        for j in range(1, 7):
            anti = left_unit(i) @ left_unit(j) + left_unit(j) @ left_unit(i)
            expect = -2.0 * I8 if i == j else np.zeros((8, 8))
            assert np.array_equal(anti, expect)


def test_not_an_algebra_homomorphism():
    # explicit witness: L_{e1} L_{e2} differs from L_{e1 e2} = L_{e3}
    lhs = left_unit(1) @ left_unit(2)
    rhs = left_matrix(mul(Octonion.e(1), Octonion.e(2)))
    assert not np.allclose(lhs, rhs)
    e4 = np.zeros(8)
    e4[4] = 1.0
    assert np.array_equal(lhs @ e4, -(rhs @ e4))


def test_span_dimension_real_64():
    span = span_dimension([left_unit(i) for i in range(1, 8)], field="real")
    assert span.dimension == 64


def test_span_dimension_complex_64():
    gens = [left_unit(i).astype(complex) for i in range(1, 8)]
    span = span_dimension(gens, field="complex")
    assert span.dimension == 64


def test_span_dimension_identity():
    span = span_dimension([I8], field="real")
    assert span.dimension == 1


def test_span_basis_rank_equals_dimension():
    span = span_dimension([left_unit(i) for i in range(1, 8)], field="real")
    rows = np.array([b.ravel() for b in span.basis])
    assert np.linalg.matrix_rank(rows, tol=1e-9) == span.dimension


def test_span_closure_products_stay_inside():
    span = span_dimension([left_unit(i) for i in range(1, 8)], field="real")
    for _ in range(20):
        a = span.basis[rng.integers(len(span.basis))]
        b = span.basis[rng.integers(len(span.basis))]
        assert in_span(a @ b, span) < 1e-9


def test_span_closure_error():
    with pytest.raises(SpanClosureError):
        span_dimension([left_unit(i) for i in range(1, 8)], field="real", max_passes=1)


def test_left_right_equality():
    report = left_right_equality()
    assert report["left_dim"] == 64
    assert report["right_dim"] == 64
    assert report["union_rank"] == 64
    assert report["equal"]


def test_right_unit_in_left_span_but_not_among_single_letters():
    left_span = span_dimension([left_unit(i) for i in range(1, 8)], field="real")
    assert in_span(right_unit(1), left_span) < 1e-9
    # L_{e1} is not in the span of the eight single-letter right maps
    singles = np.array([right_unit(i).ravel() for i in range(8)])
    stacked = np.vstack([singles, left_unit(1).ravel()[None, :]])
    assert np.linalg.matrix_rank(stacked, tol=1e-9) == 9


def test_quadratic_relation_basis_cases():
    e1 = Octonion.e(1)
    e2 = Octonion.e(2)
    assert quadratic_relation_check(e1, e1) < 1e-14
    assert octonion_inner(e1, e1) == 1.0
    assert quadratic_relation_check(e1, e2) < 1e-14
    assert octonion_inner(e1, e2) == 0.0


def test_quadratic_relation_random():
    for _ in range(1000):
        x = rand_octonion()
        y = rand_octonion()
        scale = max(1.0, x.norm() * y.norm())
        assert quadratic_relation_check(x, y) < 1e-12 * scale


def test_dagger_matches_algebraic_adjoint_on_units():
    # conj-transpose of L_a equals L over the algebraic dagger of a
    for i in range(1, 8):
        a = ComplexOctonion.e(i)
        assert np.array_equal(dagger(left_matrix(a)), left_matrix(a.dagger()))
    z = ComplexOctonion(rng.standard_normal(8) + 1j * rng.standard_normal(8))
    assert np.allclose(dagger(left_matrix(z)), left_matrix(z.dagger()), atol=1e-14)


def test_complex_left_matrix_on_projector_idempotent():
    from octo_cfs.octonion import projector

    rp = projector(+1)
    m = left_matrix(rp)
    assert np.allclose(m @ m, m, atol=1e-14)


def test_end8_json_round_trip():
    from octo_cfs.mult_algebra import end8_from_json, end8_to_json

    real = left_unit(3)
    obj = end8_to_json(real)
    assert obj["field"] == "real"
    assert np.array_equal(end8_from_json(obj), real)
    z = left_matrix(ComplexOctonion(rng.standard_normal(8) + 1j * rng.standard_normal(8)))
    obj = end8_to_json(z)
    assert obj["field"] == "complex"
    assert np.array_equal(end8_from_json(obj), z)
