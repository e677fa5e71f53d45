"""Finite quantum logics: state words, conjugation, orthogonality, morphisms,
the symmetric-group action on words and representations in a Fock space.

A word is a tuple of nonzero integers: ``i`` is the elementary label i and
``-i`` its conjugate ``*i``.  The empty tuple is the empty level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from fockforge import perm
from fockforge.fock import GradedFockSpace
from fockforge.projector import NotWellDefinedError, braid_representation
from fockforge.report import CheckResult
from fockforge.tensor import basis_vector, max_abs

TRANSITIVITY_NOTE = (
    "orthogonality is checked for transitivity and anti-reflexivity as stated; "
    "together these force the relation to be asymmetric"
)
GRAM_ORTHO_NOTE = "orthogonality of represented words is read as a zero Gram pairing"

Word = tuple[int, ...]


class LogicError(ValueError):
    pass


def normalize(word) -> Word:
    """Drop empty-level letters (0)."""
    return tuple(int(a) for a in word if int(a) != 0)


def star(word) -> Word:
    return tuple(-a for a in reversed(normalize(word)))


def labels(word) -> set[int]:
    return set(normalize(word))


def word_kind(word) -> str:
    """'empty', 'positive', 'conjugate' or 'mixed'."""
    w = normalize(word)
    if not w:
        return "empty"
    if all(a > 0 for a in w):
        return "positive"
    if all(a < 0 for a in w):
        return "conjugate"
    return "mixed"


def format_word(word) -> str:
    w = normalize(word)
    if not w:
        return "{}"
    return "{" + ",".join(str(a) if a > 0 else f"*{-a}" for a in w) + "}"


@dataclass(frozen=True)
class QuantumLogic:
    N: int
    words: frozenset
    ortho: frozenset  # of ordered pairs (w, w')

    def __post_init__(self):
        if self.N < 1:
            raise LogicError("N must be positive")
        words = frozenset(normalize(w) for w in self.words)
        ortho = frozenset((normalize(a), normalize(b)) for a, b in self.ortho)
        for w in words:
            bad = [a for a in w if abs(a) > self.N]
            if bad:
                raise LogicError(f"label {bad[0]} out of range for N={self.N} in word {format_word(w)}")
        for a, b in ortho:
            for w in (a, b):
                if w not in words:
                    raise LogicError(f"orthogonality mentions unknown word {format_word(w)}")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "ortho", ortho)

    @classmethod
    def from_indexed(cls, N: int, words, orthogonal) -> "QuantumLogic":
        """Words as a list and orthogonality as index pairs into that list."""
        ws = [normalize(w) for w in words]
        pairs = []
        for a, b in orthogonal:
            if not (0 <= a < len(ws) and 0 <= b < len(ws)):
                raise LogicError(f"orthogonality index pair ({a}, {b}) out of range")
            pairs.append((ws[a], ws[b]))
        return cls(N, frozenset(ws), frozenset(pairs))

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=lambda w: (len(w), w))

    def is_orthogonal(self, a, b) -> bool:
        return (normalize(a), normalize(b)) in self.ortho


def check_logic(L: QuantumLogic) -> list[CheckResult]:
    """Exhaustive axiom check; each failing check carries its first counterexample."""
    ws = L.sorted_words()
    rel = sorted(L.ortho, key=lambda p: ((len(p[0]), p[0]), (len(p[1]), p[1])))
    checks = []

    reflexive = next((a for a, b in rel if a == b), None)
    checks.append(
        CheckResult.boolean(
            "logic.anti_reflexive", reflexive is None, None if reflexive is None else {"word": format_word(reflexive)}
        )
    )

    succ: dict[Word, set[Word]] = {}
    for a, b in rel:
        succ.setdefault(a, set()).add(b)
    broken = None
    for a, b in rel:
        for c in sorted(succ.get(b, ()), key=lambda w: (len(w), w)):
            if (a, c) not in L.ortho:
                broken = (a, b, c)
                break
        if broken:
            break
    checks.append(
        CheckResult.boolean(
            "logic.transitive",
            broken is None,
            None if broken is None else {"chain": [format_word(w) for w in broken]},
        )
    )

    missing = next((w for w in ws if star(w) not in L.words), None)
    checks.append(
        CheckResult.boolean(
            "logic.conjugation_closed", missing is None, None if missing is None else {"word": format_word(missing)}
        )
    )
    not_involutive = next((w for w in ws if star(star(w)) != w), None)
    checks.append(
        CheckResult.boolean(
            "logic.conjugation_involutive",
            not_involutive is None,
            None if not_involutive is None else {"word": format_word(not_involutive)},
        )
    )
    overlap = next((w for w in ws if labels(w) & labels(star(w))), None)
    checks.append(
        CheckResult.boolean(
            "logic.conjugate_disjoint", overlap is None, None if overlap is None else {"word": format_word(overlap)}
        )
    )

    gap = next(
        ((i, j) for i in range(1, L.N + 1) for j in range(1, L.N + 1) if i != j and not L.is_orthogonal((-i,), (j,))),
        None,
    )
    checks.append(
        CheckResult.boolean(
            "logic.elementary_orthogonal",
            gap is None,
            None if gap is None else {"pair": [format_word((-gap[0],)), format_word((gap[1],))]},
        )
    )
    return checks


def is_complete_collection(L: QuantumLogic, collection) -> bool:
    """Pairwise orthogonal (in the given order) and jointly covering Q u Q*."""
    ws = [normalize(w) for w in collection]
    if any(w not in L.words for w in ws):
        return False
    for a, b in itertools.combinations(ws, 2):
        if not L.is_orthogonal(a, b):
            return False
    covered = set().union(*(labels(w) for w in ws)) if ws else set()
    return covered == set(range(1, L.N + 1)) | set(range(-L.N, 0))


@dataclass(frozen=True)
class LogicMorphism:
    source: QuantumLogic
    target: QuantumLogic
    mapping: dict = field(hash=False)

    def __call__(self, word) -> Word:
        return normalize(self.mapping[normalize(word)])

    @classmethod
    def from_function(cls, source: QuantumLogic, target: QuantumLogic, fn) -> "LogicMorphism":
        return cls(source, target, {w: normalize(fn(w)) for w in source.words})

    @classmethod
    def relabel(cls, source: QuantumLogic, target: QuantumLogic, table: dict[int, int]) -> "LogicMorphism":
        """Letter-wise relabelling i -> table[i], *i -> *table[i]."""

        def fn(w):
            return tuple(table[a] if a > 0 else -table[-a] for a in w)

        return cls.from_function(source, target, fn)


def check_morphism(f: LogicMorphism) -> list[CheckResult]:
    src, tgt = f.source, f.target
    ws = src.sorted_words()
    unmapped = next((w for w in ws if w not in f.mapping), None)
    if unmapped is not None:
        return [CheckResult.boolean("morphism.total", False, {"word": format_word(unmapped)})]
    outside = next((w for w in ws if f(w) not in tgt.words), None)
    checks = [
        CheckResult.boolean(
            "morphism.into_target", outside is None, None if outside is None else {"word": format_word(outside)}
        )
    ]
    empty_ok = () not in src.words or f(()) == ()
    checks.append(CheckResult.boolean("morphism.empty", empty_ok))
    bad_star = next((w for w in ws if star(w) in src.words and f(star(w)) != star(f(w))), None)
    checks.append(
        CheckResult.boolean(
            "morphism.conjugation", bad_star is None, None if bad_star is None else {"word": format_word(bad_star)}
        )
    )
    rel = sorted(src.ortho, key=lambda p: ((len(p[0]), p[0]), (len(p[1]), p[1])))
    lost = next(((a, b) for a, b in rel if not tgt.is_orthogonal(f(a), f(b))), None)
    checks.append(
        CheckResult.boolean(
            "morphism.orthogonality",
            lost is None,
            None if lost is None else {"pair": [format_word(lost[0]), format_word(lost[1])]},
        )
    )
    return checks


def symmetric_action(pi, sigma) -> Word:
    """Letter k of the result is letter pi^{-1}(k) of sigma."""
    pi = perm.validate(pi)
    sigma = normalize(sigma)
    if len(pi) != len(sigma):
        raise LogicError(f"permutation of degree {len(pi)} cannot act on a word of length {len(sigma)}")
    inv = perm.inverse(pi)
    return tuple(sigma[inv[k] - 1] for k in range(len(sigma)))


def check_group_action(n: int, N: int) -> CheckResult:
    """rho(pi rho') = rho(pi) rho(rho') and rho(id) = id on every word of length n over N labels."""
    perms = perm.all_perms(n)
    for sigma in itertools.product(range(1, N + 1), repeat=n):
        if symmetric_action(perm.identity(n), sigma) != sigma:
            return CheckResult.boolean("logic.group_action", False, {"identity": list(sigma)})
        for p in perms:
            for q in perms:
                if symmetric_action(perm.compose(p, q), sigma) != symmetric_action(p, symmetric_action(q, sigma)):
                    return CheckResult.boolean(
                        "logic.group_action", False, {"pi": list(p), "rho": list(q), "word": list(sigma)}
                    )
    return CheckResult.boolean("logic.group_action", True)


def example_logic(N: int, max_length: int = 2) -> QuantumLogic:
    """Every word over one sign up to ``max_length``, with the empty word.

    Orthogonality: {*i} before {j} for i != j at length one, and from length
    two on a strict lexicographic chain inside the positive words and inside
    the conjugate words of each length.  A chain rather than all pairs keeps
    the relation transitive and anti-reflexive.
    """
    words = {()}
    ortho = set()
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i != j:
                ortho.add(((-i,), (j,)))
    for n in range(1, max_length + 1):
        pos = sorted(itertools.product(range(1, N + 1), repeat=n))
        words.update(pos)
        words.update(star(w) for w in pos)
        if n >= 2:
            for a, b in itertools.combinations(pos, 2):
                ortho.add((a, b))
                ortho.add((star(a), star(b)))
    return QuantumLogic(N, frozenset(words), frozenset(ortho))


def singleton_logic(N: int) -> QuantumLogic:
    """Singletons and their conjugates with {*i} before {j} for i != j."""
    words = {(i,) for i in range(1, N + 1)} | {(-i,) for i in range(1, N + 1)}
    ortho = {((-i,), (j,)) for i in range(1, N + 1) for j in range(1, N + 1) if i != j}
    return QuantumLogic(N, frozenset(words), frozenset(ortho))


@dataclass(frozen=True)
class RepresentedWord:
    word: Word
    kind: str  # 'empty', 'positive' (ket) or 'conjugate' (bra of star(word))
    level: int
    coords: np.ndarray


@dataclass
class Representation:
    images: dict
    pairings: list  # (word, word', value)
    checks: list[CheckResult]
    notes: list[str]


def represent_word(F: GradedFockSpace, word) -> RepresentedWord:
    w = normalize(word)
    kind = word_kind(w)
    if kind == "mixed":
        raise LogicError(f"mixed word {format_word(w)} has no representation")
    if kind == "empty":
        return RepresentedWord(w, kind, 0, F.vacuum())
    ket = w if kind == "positive" else star(w)
    return RepresentedWord(w, kind, len(w), F.state(ket).coords)


def pairing(F: GradedFockSpace, a: RepresentedWord, b: RepresentedWord) -> complex:
    """Gram pairing between two represented words.

    ket/ket and bra/ket give <x(a)|x(b)> with a's ket; bra/bra gives the
    conjugate of the ket pairing; a ket followed by a bra pairs b's ket with a.
    Different levels pair to zero.
    """
    if a.level != b.level:
        return 0.0
    val = F.inner(a.coords, b.coords, a.level)
    if a.kind == "conjugate" and b.kind == "conjugate":
        return complex(np.conj(val))
    if a.kind == "positive" and b.kind == "conjugate":
        return F.inner(b.coords, a.coords, a.level)
    return val


def equivariance_residual(F: GradedFockSpace, n: int, tol: float) -> float | None:
    """max over words of length n and pi in S_n of |x(rho(pi) sigma) - S_pi x(sigma)|, or None
    when S_pi is not defined for this twist."""
    worst = 0.0
    for p in perm.all_perms(n):
        try:
            S = braid_representation(F.T, p, tol)
        except NotWellDefinedError:
            return None
        for sigma in itertools.product(range(1, F.N + 1), repeat=n):
            lhs = F.state(symmetric_action(p, sigma)).coords
            rhs = F.tower.project(S @ basis_vector(sigma, F.N), n)
            worst = max(worst, max_abs(lhs - rhs))
    return worst


def represent(L: QuantumLogic, F: GradedFockSpace, tol: float | None = None, max_equivariance_level: int = 3):
    tol = F.tol if tol is None else tol
    if L.N > F.N:
        raise LogicError(f"logic uses {L.N} labels but the Fock space has N={F.N}")
    images = {w: represent_word(F, w) for w in L.sorted_words()}
    checks, pairings = [], []
    worst, witness = 0.0, None
    rel = sorted(L.ortho, key=lambda p: ((len(p[0]), p[0]), (len(p[1]), p[1])))
    for a, b in rel:
        val = pairing(F, images[a], images[b])
        pairings.append((a, b, val))
        if abs(val) > worst:
            worst = abs(val)
            witness = {"pair": [format_word(a), format_word(b)], "pairing": [val.real, val.imag]}
    checks.append(CheckResult.from_residual("represent.orthogonality", worst, tol, witness if worst > tol else None))
    notes = [GRAM_ORTHO_NOTE]
    for n in range(1, min(max_equivariance_level, F.n_max) + 1):
        r = equivariance_residual(F, n, tol)
        if r is None:
            notes.append("equivariance not checked: braid representation not well-defined for this twist")
            break
        checks.append(CheckResult.from_residual(f"represent.equivariance.level{n}", r, tol))
    return Representation(images, pairings, checks, notes)
