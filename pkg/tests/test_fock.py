import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockforge.fock import (
    DegenerateQuotientError,
    FockError,
    RegimeError,
    annihilate_adjoint,
    annihilate_twist_sum,
    build_fock,
    ccr_coefficients,
    check_associativity,
    compare_annihilators,
    creation,
    multiply,
    operad_compose,
    verify_adjointness,
    verify_ccr,
)
from fockforge.tensor import flip
from fockforge.twist import BOperator, TwistOperator, make_twist


def q_factorial(n, q):
    out = 1.0
    for k in range(1, n + 1):
        out *= sum(q**j for j in range(k))
    return out


def commutator_residual(F, sign, n_levels):
    """max |a_{*i} a_j^+ - sign a_j^+ a_{*i} - delta^{ij}| over levels < n_levels."""
    worst = 0.0
    for n in range(n_levels):
        d = F.dim(n)
        if d == 0:
            continue
        for i in range(1, F.N + 1):
            for j in range(1, F.N + 1):
                D = annihilate_twist_sum(F, i, n + 1) @ creation(F, j, n) - (i == j) * np.eye(d)
                if n >= 1:
                    D = D - sign * creation(F, j, n - 1) @ annihilate_twist_sum(F, i, n)
                worst = max(worst, np.max(np.abs(D)))
    return worst


def test_boltzmann_space_is_the_full_tensor_algebra():
    F = build_fock(make_twist("zero", 2), None, 4)
    assert F.well_defined
    assert F.dims() == [1, 2, 4, 8, 16]
    for n in range(5):
        assert np.array_equal(F.grams[n], np.eye(2**n))
    for i in (1, 2):
        for j in (1, 2):
            for n in range(4):
                prod = annihilate_twist_sum(F, i, n + 1) @ creation(F, j, n)
                assert np.array_equal(prod, (i == j) * np.eye(2**n))
    # a_{*i} strips the first letter
    state = F.state((1, 2)).coords
    assert np.array_equal(annihilate_twist_sum(F, 1, 2) @ state, F.state((2,)).coords)
    assert np.array_equal(annihilate_twist_sum(F, 2, 2) @ state, np.zeros(2))


def test_scalar_q_norms_are_q_factorials():
    q = 0.5
    F = build_fock(make_twist("q_flip", 1, q=q), None, 6)
    for n in range(7):
        v = F.state((1,) * n).coords
        assert F.inner(v, v, n).real == pytest.approx(q_factorial(n, q), abs=1e-12)
    assert q_factorial(3, q) == 2.625


@given(st.floats(-0.95, 0.95), st.integers(1, 3))
def test_q_commutation_relations(q, N):
    F = build_fock(make_twist("q_flip", N, q=q), None, 3)
    assert F.well_defined
    assert commutator_residual(F, q, 3) <= 1e-10
    assert verify_ccr(F).residual <= 1e-10


@pytest.mark.parametrize("N", [1, 2, 3])
def test_bose_and_fermi_quotients_obey_canonical_relations(N):
    for kind, sign in (("boson", 1.0), ("fermion", -1.0)):
        T = make_twist(kind, N)
        F = build_fock(T, BOperator.from_twist(T), 4)
        assert F.well_defined
        assert commutator_residual(F, sign, 4) <= 1e-10


@pytest.mark.parametrize("kind,params", [("zero", {}), ("boson", {}), ("fermion", {}), ("q_flip", {"q": 0.7})])
def test_adjointness_and_annihilator_agreement(kind, params):
    T = make_twist(kind, 2, **params)
    F = build_fock(T, None, 4)
    assert verify_adjointness(F, pairs=100).residual <= 1e-10
    assert compare_annihilators(F).residual <= 1e-10
    for n in range(1, 5):
        assert annihilate_adjoint(F, 1, n).shape == annihilate_twist_sum(F, 1, n).shape


def test_commutation_coefficients_use_shuffled_twist_entries():
    N = 2
    rng = np.random.default_rng(1)
    T = TwistOperator(N, rng.standard_normal((4, 4)))
    C = ccr_coefficients(T)
    t4 = T.t_tilde.reshape(N, N, N, N)
    cross = T.cross_matrix().reshape(N, N, N, N)
    for i, j, k, l in np.ndindex(N, N, N, N):
        assert C[i, j, k, l] == t4[i, k, j, l]
        # equal to the cross-operator entry T^{ij}_{kl}
        assert C[i, j, k, l] == cross[k, l, i, j]
    assert np.array_equal(ccr_coefficients(make_twist("q_flip", 2, q=0.5)).reshape(4, 4), 0.5 * flip(2))


def test_wrong_b_is_rejected_at_build_time():
    with pytest.raises(RegimeError):
        build_fock(make_twist("boson", 2), BOperator(2, -flip(2)), 3)


def test_degenerate_quotient_detected():
    root = np.exp(2j * np.pi / 3)  # 1 + t + t^2 = 0 kills level 3
    with pytest.raises(DegenerateQuotientError) as info:
        build_fock(TwistOperator(1, np.array([[root]])), None, 3)
    assert info.value.level == 3


def test_creation_and_state_range_errors():
    F = build_fock(make_twist("boson", 2), None, 2)
    with pytest.raises(FockError):
        creation(F, 3, 0)
    with pytest.raises(FockError):
        creation(F, 1, 2)
    with pytest.raises(FockError):
        F.state((1, 1, 1))
    with pytest.raises(FockError):
        build_fock(make_twist("boson", 2), None, 0)


def test_operad_composition_adds_levels_and_is_associative():
    T = make_twist("q_flip", 2, q=0.4)
    F = build_fock(T, None, 4)
    x1, x2 = F.state((1,)).coords, F.state((2,)).coords
    level, v = operad_compose(F, (1, x1), (1, x2), (2, F.state((1, 2)).coords))
    assert level == 4
    assert np.allclose(v, F.state((1, 2, 1, 2)).coords)
    assert np.allclose(multiply(F, x1, 1, x2, 1), F.state((1, 2)).coords)
    assert check_associativity(F).passed


def test_fermion_quotient_kills_repeated_letters():
    T = make_twist("fermion", 2)
    F = build_fock(T, BOperator.from_twist(T), 2)
    assert np.max(np.abs(F.state((1, 1)).coords)) < 1e-15
    assert np.allclose(F.state((1, 2)).coords, -F.state((2, 1)).coords)
