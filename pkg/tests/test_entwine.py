import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockforge.entwine import (
    ENTWINING_AXIOMS,
    AlgebraPresentation,
    CoalgebraPresentation,
    CrossSymmetry,
    DimensionError,
    EntwinedModuleData,
    EntwiningStructure,
    NotFactorizableError,
    check_algebra,
    check_coalgebra,
    check_entwined_module,
    check_entwining,
    crossed_product,
    dual_algebra,
    dual_coalgebra,
    entwining_residuals,
    factorize_dual,
    flip_entwining,
    graded_flip,
    grassmann_algebra,
    group_algebra,
    grouplike_coalgebra,
    mutant_entwining,
    psi_1n,
    psi_split_residual,
    regular_module,
    shift_entwining,
    swap,
    tensor_module,
)


def brute_associative(A):
    """Independent check on basis triples with explicit index sums."""
    m = A.mult
    d = A.dim
    worst = 0.0
    for i, j, k in itertools.product(range(d), repeat=3):
        for l in range(d):
            lhs = sum(m[i, j, p] * m[p, k, l] for p in range(d))
            rhs = sum(m[j, k, p] * m[i, p, l] for p in range(d))
            worst = max(worst, abs(lhs - rhs))
    return worst


@given(st.integers(1, 4), st.integers(1, 4))
def test_flip_over_grouplikes_passes_all_axioms(n, c):
    E = flip_entwining(group_algebra(n), grouplike_coalgebra(c))
    assert entwining_residuals(E) == [0.0, 0.0, 0.0, 0.0]
    assert all(ch.passed for ch in check_entwining(E))


def test_scaled_flip_breaks_unitality():
    A, C = group_algebra(2), grouplike_coalgebra(2)
    E = EntwiningStructure(A, C, 2 * swap(2, 2))
    res = dict(zip(ENTWINING_AXIOMS, entwining_residuals(E)))
    assert res["unital"] == pytest.approx(1.0)


def test_flip_over_dual_of_group_algebra():
    A = group_algebra(2)
    C = dual_coalgebra(A)
    assert all(ch.passed for ch in check_coalgebra(C))
    E = flip_entwining(A, C)
    assert max(entwining_residuals(E)) == 0.0


@pytest.mark.parametrize("axiom", ENTWINING_AXIOMS)
def test_each_mutant_fails_exactly_its_axiom(axiom):
    E = mutant_entwining(axiom)
    assert all(ch.passed for ch in check_algebra(E.A) + check_coalgebra(E.C))
    failed = {a for a, r in zip(ENTWINING_AXIOMS, entwining_residuals(E)) if r > 1e-12}
    assert failed == {axiom}


def test_unknown_mutant():
    with pytest.raises(ValueError):
        mutant_entwining("braided")


def test_shift_entwining_is_nontrivial_and_valid():
    E = shift_entwining()
    assert max(entwining_residuals(E)) == 0.0
    assert not np.array_equal(E.tau, swap(2, 2))


@pytest.mark.parametrize("make", [lambda: flip_entwining(group_algebra(3), grouplike_coalgebra(2)), shift_entwining])
def test_psi_iteration_splits(make):
    E = make()
    for total in (2, 3):
        for m in range(1, total):
            assert psi_split_residual(E, m, total - m) <= 1e-12
    assert np.array_equal(psi_1n(E, 1), E.tau)


def test_regular_module_is_entwined_under_flip():
    E = flip_entwining(group_algebra(2), grouplike_coalgebra(2))
    checks = check_entwined_module(E, regular_module(E, 1))
    assert [c.name for c in checks][-1] == "module.entwined"
    assert all(c.passed for c in checks)


def test_scaled_coaction_stops_before_compatibility():
    E = flip_entwining(group_algebra(2), grouplike_coalgebra(2))
    M = regular_module(E, 0)
    bad = EntwinedModuleData(M.dim, M.action, 2 * M.coaction)
    checks = check_entwined_module(E, bad)
    names = {c.name: c.passed for c in checks}
    assert names["module.coaction_counital"] is False
    assert "module.entwined" not in names


def test_tensor_module_over_coalgebra_is_entwined():
    E = flip_entwining(group_algebra(2), grouplike_coalgebra(2))
    M = tensor_module(E, regular_module(E, 0))
    assert M.dim == 4
    assert all(c.passed for c in check_entwined_module(E, M))


def test_module_dimension_mismatch():
    E = flip_entwining(group_algebra(2), grouplike_coalgebra(2))
    with pytest.raises(DimensionError):
        check_entwined_module(E, EntwinedModuleData(3, np.eye(2), np.eye(2)))


def test_presentation_shape_validation():
    with pytest.raises(DimensionError):
        AlgebraPresentation(2, np.zeros((2, 2)), [1, 0])
    with pytest.raises(DimensionError):
        CoalgebraPresentation(1, [[[np.nan]]], [1])
    with pytest.raises(DimensionError):
        EntwiningStructure(group_algebra(2), grouplike_coalgebra(2), np.eye(3))


@given(st.integers(1, 4))
def test_duality_round_trip(n):
    A = group_algebra(n)
    back = dual_algebra(dual_coalgebra(A))
    assert np.array_equal(back.mult, A.mult) and np.array_equal(back.unit, A.unit)
    assert brute_associative(A) == 0.0


def test_flip_cross_gives_tensor_product_algebra():
    A, B = group_algebra(2), group_algebra(3)
    cp = crossed_product(CrossSymmetry(A, B, swap(3, 2)))
    assert cp.certified
    expected = np.einsum("ace,bdf->abcdef", A.mult, B.mult).reshape(6, 6, 6)
    assert np.array_equal(cp.algebra.mult, expected)


def test_graded_crossed_product_of_two_grassmann_algebras():
    G = grassmann_algebra()
    cp = crossed_product(CrossSymmetry(G, G, graded_flip(G, [0, 1], G, [0, 1])))
    assert cp.certified
    W = cp.algebra
    one_theta, theta_one, theta_theta = W.basis(1), W.basis(2), W.basis(3)
    assert np.array_equal(W.product(one_theta, theta_one), -theta_theta)
    assert np.array_equal(W.product(theta_one, one_theta), theta_theta)
    assert brute_associative(W) == 0.0


def test_perturbed_cross_reports_associativity_witness():
    A = B = group_algebra(2)
    psi = swap(2, 2).astype(complex)
    psi[1, 2] += 0.1
    cp = crossed_product(CrossSymmetry(A, B, psi))
    assoc = next(c for c in cp.checks if c.name == "crossed_product.associative")
    assert not assoc.passed
    assert cp.witness is not None and len(assoc.witness) == 3
    i, j, k = cp.witness
    W = cp.algebra
    e = W.basis
    assert np.max(np.abs(W.product(W.product(e(i), e(j)), e(k)) - W.product(e(i), W.product(e(j), e(k))))) > 1e-12


def test_crossed_product_dimension_cap():
    with pytest.raises(DimensionError):
        crossed_product(CrossSymmetry(group_algebra(5), group_algebra(4), swap(4, 5)))


def test_factorization_of_flip_is_flip():
    A, C = group_algebra(3), grouplike_coalgebra(2)
    tau_t, checks = factorize_dual(flip_entwining(A, C))
    assert np.allclose(tau_t, swap(3, 2))
    assert all(c.passed for c in checks)


def test_factorization_with_one_dimensional_coalgebra_always_exists():
    A = grassmann_algebra()
    C = grouplike_coalgebra(1)
    tau_t, checks = factorize_dual(flip_entwining(A, C))
    assert tau_t.shape == (2, 2)
    assert all(c.passed for c in checks)


def test_factorization_certifies_nontrivial_cross():
    E = shift_entwining()
    tau_t, checks = factorize_dual(E)
    assert all(c.passed for c in checks)
    cp = crossed_product(CrossSymmetry(dual_algebra(E.C), E.A, tau_t))
    assert cp.certified


def test_factorization_rejects_broken_entwining_before_solving():
    with pytest.raises(NotFactorizableError, match="unital"):
        factorize_dual(mutant_entwining("unital"))


def test_degenerate_pairing_is_not_factorizable():
    E = flip_entwining(group_algebra(2), grouplike_coalgebra(2))
    with pytest.raises(NotFactorizableError, match="not factorizable") as info:
        factorize_dual(E, pairing=np.array([[1.0, 0.0], [0.0, 0.0]]))
    assert info.value.rank < info.value.unknowns
