"""Property-based invariants over randomly generated operators."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from seminormal.classify import SeminormalClass, classify, stampfli_check
from seminormal.core import (
    HermitianOperator,
    adjoint,
    norm_defect,
    quadratic_form,
    self_commutator,
)
from support import random_operator, random_vector

_elements = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False,
                      allow_infinity=False)


def complex_matrices(max_dim=6):
    return st.integers(2, max_dim).flatmap(
        lambda n: arrays(np.float64, (2, n, n), elements=_elements).map(
            lambda parts: parts[0] + 1j * parts[1]
        )
    )


def matrix_vector_pairs(max_dim=6):
    return st.integers(2, max_dim).flatmap(
        lambda n: st.tuples(
            arrays(np.float64, (2, n, n), elements=_elements).map(
                lambda parts: parts[0] + 1j * parts[1]),
            arrays(np.float64, (2, n), elements=_elements).map(
                lambda parts: parts[0] + 1j * parts[1]),
        )
    )


@settings(deadline=None)
@given(matrix_vector_pairs())
def test_norm_defect_equals_commutator_form(pair):
    a, x = pair
    c = self_commutator(a)
    scale = np.linalg.norm(a, "fro") ** 2 * np.linalg.norm(x) ** 2
    q = quadratic_form(c, x)
    assert abs(norm_defect(a, x) - q.real) <= 1e-10 * scale + 1e-300
    assert abs(q.imag) <= 1e-10 * scale + 1e-300


@settings(deadline=None)
@given(complex_matrices())
def test_self_commutator_traceless(a):
    c = self_commutator(a)
    assert abs(np.trace(c.matrix)) <= 1e-12 * np.linalg.norm(a, "fro") ** 2 + 1e-300


@settings(deadline=None)
@given(complex_matrices())
def test_adjoint_involution(a):
    np.testing.assert_array_equal(adjoint(adjoint(a)), a)


@settings(deadline=None)
@given(complex_matrices())
def test_commutator_of_adjoint_flips_sign(a):
    np.testing.assert_allclose(self_commutator(adjoint(a)).matrix,
                               -self_commutator(a).matrix, atol=1e-12)


@settings(deadline=None)
@given(matrix_vector_pairs())
def test_hermitian_quadratic_form_real(pair):
    a, x = pair
    h = HermitianOperator(a + a.conj().T)
    scale = np.linalg.norm(h.matrix, 2) * np.linalg.norm(x) ** 2
    assert abs(quadratic_form(h, x).imag) <= 1e-12 * scale + 1e-300


@settings(deadline=None, max_examples=50)
@given(complex_matrices())
def test_zero_extremeness_matches_class(a):
    report = classify(a)
    assert report.zero_is_extreme == (
        report.seminormal_class is not SeminormalClass.NON_SEMINORMAL)


def test_null_space_membership_implies_metric_equality():
    rng = np.random.default_rng(99)
    for _ in range(200):
        n = int(rng.integers(2, 17))
        rec = stampfli_check(random_operator(rng, n), random_vector(rng, n))
        if rec.in_null_space:
            assert rec.in_e_set
