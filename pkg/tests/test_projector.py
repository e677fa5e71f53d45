import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockforge import perm
from fockforge.projector import (
    NotWellDefinedError,
    braid_representation,
    build_P,
    build_R,
    check_ideal_invariance,
    check_positivity,
    check_quasi_symmetrizer,
    gram,
    ideal_tower,
    quasi_symmetrizer,
    quotient_algebra,
)
from fockforge.tensor import enumerate_basis, word_index
from fockforge.twist import BOperator, EpsilonSpec, make_twist


def permutation_matrix(p, N):
    """Independent construction: |w> -> |w o p^{-1}> on basis words."""
    n = len(p)
    inv = perm.inverse(p)
    M = np.zeros((N**n, N**n))
    for w in enumerate_basis(N, n):
        image = tuple(w[inv[k] - 1] for k in range(n))
        M[word_index(image, N), word_index(w, N)] = 1.0
    return M


def brute_symmetrizer(N, n, signed):
    return sum((perm.sign(p) if signed else 1) * permutation_matrix(p, N) for p in perm.all_perms(n))


def test_small_levels():
    T = make_twist("q_flip", 2, q=0.3)
    assert np.array_equal(build_P(T, 0), np.ones((1, 1)))
    assert np.array_equal(build_P(T, 1), np.eye(2))
    assert np.allclose(build_P(T, 2), np.eye(4) + T.t_tilde)
    assert np.allclose(build_R(T, 3), np.eye(8) + T.at(1, 3) + T.at(1, 3) @ T.at(2, 3))
    with pytest.raises(ValueError):
        build_R(T, 0)


def test_scalar_quasi_symmetrizer_at_level_three():
    T = make_twist("q_flip", 1, q=0.5)
    assert build_P(T, 3)[0, 0].real == pytest.approx(2.625, abs=1e-14)


@given(st.floats(-1, 1), st.integers(1, 2), st.integers(1, 4))
def test_recursion_matches_permutation_sum(q, N, n):
    T = make_twist("q_flip", N, q=q)
    assert check_quasi_symmetrizer(T, n).residual <= 1e-10


def test_epsilon_recursion_matches_permutation_sum():
    T = make_twist("epsilon_diag", epsilon=EpsilonSpec.lambda2())
    for n in range(1, 5):
        assert check_quasi_symmetrizer(T, n).residual <= 1e-12


@pytest.mark.parametrize("signed", [False, True])
def test_bose_fermi_quasi_symmetrizer_equals_brute_force(signed):
    T = make_twist("fermion" if signed else "boson", 2)
    for n in range(1, 5):
        assert np.array_equal(quasi_symmetrizer(T, n).real, brute_symmetrizer(2, n, signed))


def test_braid_representation_is_a_homomorphism_for_flip():
    T = make_twist("boson", 2)
    S3 = perm.all_perms(3)
    for p, q in itertools.product(S3, repeat=2):
        lhs = braid_representation(T, perm.compose(p, q))
        rhs = braid_representation(T, p) @ braid_representation(T, q)
        assert np.array_equal(lhs, rhs)
        assert np.array_equal(braid_representation(T, p).real, permutation_matrix(p, 2))


def test_braid_representation_carries_sign_for_minus_flip():
    T = make_twist("fermion", 2)
    for p in perm.all_perms(3):
        assert np.array_equal(braid_representation(T, p).real, perm.sign(p) * permutation_matrix(p, 2))


@pytest.mark.parametrize("q", [0.5, -0.5, 0.9, 1j])
def test_braid_representation_refuses_non_involutive_twist(q):
    with pytest.raises(NotWellDefinedError, match="not well-defined"):
        braid_representation(make_twist("q_flip", 2, q=q), (2, 1, 3))


@given(st.floats(-0.95, 0.95), st.integers(1, 3))
def test_q_gram_positive_definite_inside_unit_interval(q, N):
    T = make_twist("q_flip", N, q=q)
    for n in range(1, 4 if N == 3 else 5):
        lg = gram(T, n)
        assert lg.min_eig > 0
        assert lg.kernel.dim == 0
        assert check_positivity(lg).passed


@pytest.mark.parametrize("N", [1, 2, 3])
def test_bose_fermi_kernel_dims_match_brute_force(N):
    for kind, signed in (("boson", False), ("fermion", True)):
        T = make_twist(kind, N)
        for n in range(1, 5):
            lg = gram(T, n)
            expected = N**n - np.linalg.matrix_rank(brute_symmetrizer(N, n, signed))
            assert lg.kernel.dim == expected
            assert lg.min_eig >= -1e-10


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("use_b", [True, False])
def test_quotient_dimension_laws(N, use_b):
    for kind, law in (("boson", lambda n: comb(N + n - 1, n)), ("fermion", lambda n: comb(N, n))):
        T = make_twist(kind, N)
        B = BOperator.from_twist(T) if use_b else None
        tower = ideal_tower(T, B, 4)
        assert tower.dims() == [law(n) for n in range(5)]
        assert tower.source == ("B" if use_b else "kernel")
        assert check_ideal_invariance(tower).passed


def test_zero_twist_has_exact_identity_quotient():
    tower = ideal_tower(make_twist("zero", 2), None, 4)
    for n in range(5):
        assert tower.ideal[n].dim == 0
        assert np.array_equal(tower.quotient[n].vectors, np.eye(2**n))


def test_b_generated_ideal_sits_in_gram_kernel():
    T = make_twist("fermion", 3)
    tower = ideal_tower(T, BOperator.from_twist(T), 3)
    assert tower.consistency_residual <= 1e-14


def test_two_generator_epsilon_quotient_relations():
    T = make_twist("epsilon_diag", epsilon=EpsilonSpec.lambda2())
    alg = quotient_algebra(ideal_tower(T, BOperator.from_twist(T), 3))
    assert alg.tower.dims() == [1, 2, 1, 0]
    x1, x2 = alg.generator(1), alg.generator(2)

    def mul(a, b):
        return np.einsum("ijk,i,j->k", alg.mult, a, b)

    eps = np.finfo(float).eps
    assert np.max(np.abs(mul(x1, x2) - mul(x2, x1))) <= 4 * eps
    assert np.max(np.abs(mul(x1, x1))) <= 4 * eps
    assert np.max(np.abs(mul(x2, x2))) <= 4 * eps
    assert np.allclose(mul(alg.unit(), x1), x1)
