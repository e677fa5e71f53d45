import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockforge import perm
from fockforge.fock import build_fock
from fockforge.logic import (
    LogicError,
    LogicMorphism,
    QuantumLogic,
    check_group_action,
    check_logic,
    check_morphism,
    example_logic,
    is_complete_collection,
    normalize,
    pairing,
    represent,
    represent_word,
    singleton_logic,
    star,
    symmetric_action,
    word_kind,
)
from fockforge.twist import BOperator, make_twist

words_st = st.lists(st.integers(-3, 3), max_size=5).map(tuple)


def failed(checks):
    return {c.name: c.witness for c in checks if not c.passed}


@given(words_st)
def test_conjugation_is_an_involution_reversing_order(w):
    assert star(star(w)) == normalize(w)
    assert len(star(w)) == len(normalize(w))
    if normalize(w):
        assert star(w)[0] == -normalize(w)[-1]


def test_empty_letters_are_dropped():
    assert normalize((0, 1, 0, 2)) == (1, 2)
    assert word_kind((0,)) == "empty"
    assert word_kind((1, -2)) == "mixed"


def test_singleton_logic_passes():
    assert failed(check_logic(singleton_logic(2))) == {}


@pytest.mark.parametrize("N,length", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_canonical_example_logic_passes(N, length):
    assert failed(check_logic(example_logic(N, length))) == {}


def test_reflexive_pair_is_reported_with_witness():
    L = singleton_logic(2)
    bad = QuantumLogic(2, L.words, L.ortho | {((1,), (1,))})
    f = failed(check_logic(bad))
    assert f["logic.anti_reflexive"] == {"word": "{1}"}


def test_missing_conjugate_is_reported():
    L = singleton_logic(2)
    bad = QuantumLogic(2, L.words | {(1, 2)}, L.ortho)
    assert failed(check_logic(bad))["logic.conjugation_closed"] == {"word": "{1,2}"}


def test_symmetric_relation_breaks_transitivity_or_reflexivity():
    L = singleton_logic(2)
    sym = QuantumLogic(2, L.words, L.ortho | {((2,), (-1,))})
    f = failed(check_logic(sym))
    assert "logic.transitive" in f


def test_mixed_self_conjugate_word_fails_disjointness():
    L = QuantumLogic(1, frozenset({(1,), (-1,), (1, -1)}), frozenset())
    assert "logic.conjugate_disjoint" in failed(check_logic(L))


def test_missing_elementary_orthogonality_is_reported():
    L = QuantumLogic(2, singleton_logic(2).words, frozenset())
    assert "logic.elementary_orthogonal" in failed(check_logic(L))


def test_logic_construction_errors():
    with pytest.raises(LogicError):
        QuantumLogic(1, frozenset({(2,)}), frozenset())
    with pytest.raises(LogicError):
        QuantumLogic(1, frozenset({(1,)}), frozenset({((1,), (-1,))}))
    with pytest.raises(LogicError):
        QuantumLogic.from_indexed(1, [[1]], [[0, 5]])


def test_identity_and_label_swap_are_morphisms():
    L = singleton_logic(2)
    assert failed(check_morphism(LogicMorphism.from_function(L, L, lambda w: w))) == {}
    assert failed(check_morphism(LogicMorphism.relabel(L, L, {1: 2, 2: 1}))) == {}
    E = example_logic(2, 2)
    assert failed(check_morphism(LogicMorphism.from_function(E, E, lambda w: w))) == {}


def test_constant_empty_map_fails_orthogonality_preservation():
    E = example_logic(2, 2)
    f = failed(check_morphism(LogicMorphism.from_function(E, E, lambda w: ())))
    assert "morphism.conjugation" not in f
    assert "morphism.orthogonality" in f
    assert f["morphism.orthogonality"]["pair"] == ["{*2}", "{1}"]


def test_symmetric_action_examples():
    assert symmetric_action((1, 2, 3), (2, 1, 1)) == (2, 1, 1)
    assert symmetric_action((2, 1), (1, 2)) == (2, 1)
    assert symmetric_action(perm.from_cycle([1, 2, 3], 3), (1, 2, 3)) == (3, 1, 2)
    with pytest.raises(LogicError):
        symmetric_action((2, 1), (1, 2, 3))


def test_symmetric_action_is_a_group_action_on_length_three_words():
    assert check_group_action(3, 2).passed
    s1, s2 = perm.transposition(1, 3), perm.transposition(2, 3)
    for w in itertools.product((1, 2), repeat=3):
        assert symmetric_action(perm.compose(s1, s2), w) == symmetric_action(s1, symmetric_action(s2, w))


def test_zero_twist_realizes_declared_orthogonality():
    F = build_fock(make_twist("zero", 2), None, 3)
    rep = represent(example_logic(2, 3), F)
    assert rep.checks[0].name == "represent.orthogonality"
    assert rep.checks[0].residual == 0.0
    assert all(v == 0 for _, _, v in rep.pairings)


def test_elementary_conjugate_pairing_is_kronecker_delta():
    F = build_fock(make_twist("boson", 3), None, 2)
    for i, j in itertools.product(range(1, 4), repeat=2):
        val = pairing(F, represent_word(F, (-i,)), represent_word(F, (j,)))
        assert val == (1.0 if i == j else 0.0)


def test_boson_pairing_of_reordered_words_is_one():
    F = build_fock(make_twist("boson", 2), None, 2)
    L = QuantumLogic(2, example_logic(2, 2).words, frozenset({((1, 2), (2, 1))}))
    rep = represent(L, F)
    assert rep.pairings[0][2] == pytest.approx(1.0)
    assert not rep.checks[0].passed


def test_equivariance_holds_for_flip():
    T = make_twist("boson", 2)
    for F in (build_fock(T, None, 3), build_fock(T, BOperator.from_twist(T), 3)):
        rep = represent(singleton_logic(2), F)
        eq = [c for c in rep.checks if c.name.startswith("represent.equivariance")]
        assert len(eq) == 3 and all(c.residual <= 1e-12 for c in eq)


def test_equivariance_skipped_when_braid_representation_undefined():
    F = build_fock(make_twist("q_flip", 2, q=0.5), None, 2)
    rep = represent(singleton_logic(2), F)
    assert not any(c.name.startswith("represent.equivariance") for c in rep.checks)
    assert any("not well-defined" in n for n in rep.notes)


def test_represent_rejects_mixed_words_and_large_labels():
    F = build_fock(make_twist("zero", 2), None, 2)
    with pytest.raises(LogicError):
        represent_word(F, (1, -2))
    with pytest.raises(LogicError):
        represent(singleton_logic(3), F)


def test_empty_word_maps_to_vacuum():
    F = build_fock(make_twist("zero", 1), None, 1)
    r = represent_word(F, ())
    assert r.level == 0 and np.array_equal(r.coords, [1.0])


def test_complete_collection():
    L = singleton_logic(2)
    assert is_complete_collection(L, [(-1,), (2,)]) is False  # misses *2 and 1
    E = example_logic(1, 2)
    assert is_complete_collection(QuantumLogic(1, E.words, E.ortho | {((-1,), (1,))}), [(-1,), (1,)])
