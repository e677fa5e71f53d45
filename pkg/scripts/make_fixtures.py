"""Regenerate the JSON fixture corpus under tests/fixtures."""

import json
import sys
from pathlib import Path

import numpy as np

from fockforge import entwine, logic

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def real(a):
    a = np.asarray(a)
    assert np.allclose(a.imag, 0)
    return np.real(a).tolist()


def algebra(A):
    return {"dim": A.dim, "mult": real(A.mult), "unit": real(A.unit)}


def coalgebra(C):
    return {"dim": C.dim, "comult": real(C.comult), "counit": real(C.counit)}


def entwining(E, module=None):
    d = {"algebra": algebra(E.A), "coalgebra": coalgebra(E.C), "tau": real(E.tau)}
    if module is not None:
        d["module"] = {"dim": module.dim, "action": real(module.action), "coaction": real(module.coaction)}
    return d


def indexed_logic(L):
    words = L.sorted_words()
    index = {w: k for k, w in enumerate(words)}
    pairs = sorted([index[a], index[b]] for a, b in L.ortho)
    return {"N": L.N, "words": [list(w) for w in words], "orthogonal": pairs}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    files = {
        "zero.json": {"dimension": 2, "twist": {"kind": "zero"}},
        "boson.json": {"dimension": 2, "twist": {"kind": "boson"}, "b_operator": {"from_twist": True}, "mu": [1.0, 0.0]},
        "fermion.json": {"dimension": 2, "twist": {"kind": "fermion"}, "b_operator": {"from_twist": True}, "mu": [1.0, 0.0]},
        "qhalf.json": {"dimension": 2, "twist": {"kind": "q_flip", "q": [0.5, 0.0]}},
        "qneg.json": {"dimension": 3, "twist": {"kind": "q_flip", "q": [-0.9, 0.0]}},
        "lambda2.json": {
            "dimension": 2,
            "twist": {"kind": "epsilon_diag", "epsilon": [[-1.0, 1.0], [1.0, -1.0]]},
            "b_operator": {"from_twist": True},
            "mu": [1.0, 0.0],
        },
        "graded_eps.json": {
            "dimension": 2,
            "twist": {"kind": "epsilon_diag", "sigma": [[1, 0], [0, 1]], "omega": [[0, 1], [-1, 0]], "q": [0.0, 1.0]},
        },
        "graded_eps_nonunitary.json": {
            "dimension": 2,
            "twist": {"kind": "epsilon_diag", "sigma": [[1, 0], [0, 1]], "omega": [[0, 1], [-1, 0]], "q": [0.5, 0.0]},
        },
        "boson_wrong_b.json": {
            "dimension": 2,
            "twist": {"kind": "boson"},
            "b_operator": {"matrix": (-np.eye(4)[[0, 2, 1, 3]]).tolist()},
        },
        "qhalf_tight.json": {
            "dimension": 2,
            "twist": {"kind": "q_flip", "q": [0.5, 0.0]},
            "tolerances": {"fock.adjointness": 1e-300},
        },
    }
    A, C = entwine.group_algebra(2), entwine.grouplike_coalgebra(2)
    flip = entwine.flip_entwining(A, C)
    files["entwine_flip.json"] = entwining(flip, entwine.regular_module(flip, 0))
    files["entwine_shift.json"] = entwining(entwine.shift_entwining())
    files["entwine_mutant_unital.json"] = entwining(entwine.mutant_entwining("unital"))
    G = entwine.grassmann_algebra()
    files["cross_graded.json"] = {
        "cross": {"A": algebra(G), "B": algebra(G), "psi": real(entwine.graded_flip(G, [0, 1], G, [0, 1]))}
    }
    files["logic_example.json"] = indexed_logic(logic.example_logic(2, 2))
    files["logic_singleton.json"] = indexed_logic(logic.singleton_logic(2))
    bad = indexed_logic(logic.singleton_logic(2))
    bad["orthogonal"].append([0, 0])
    files["logic_reflexive.json"] = bad
    for name, data in files.items():
        (OUT / name).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    (OUT / "malformed.json").write_text('{\n  "dimension": 2,\n  "twist": {"kind": "boson",}\n}\n')
    (OUT / "bad_schema.json").write_text('{\n  "dimension": 2,\n  "twist": {"kind": "q_flip"}\n}\n')
    print(f"wrote {len(files) + 2} fixtures to {OUT}")


if __name__ == "__main__":
    main()
