"""Graded Fock spaces: quotient levels, creation and annihilation operators,
deformed commutation relations and adjointness."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fockforge.projector import (
    IdealTower,
    build_P,
    build_R,
    eigen_extrema,
    ideal_tower,
)
from fockforge.report import CheckResult
from fockforge.tensor import DEFAULT_RANK_TOL, basis_vector, max_abs, validate_word
from fockforge.twist import DEFAULT_TOL, BOperator, TwistOperator, check_yang_baxter

CCR_NOTE = (
    "commutation coefficients C^{ij}_{kl} = T~^{jl}_{ik} (equal to the cross "
    "operator entries T^{ij}_{kl}) multiply a_k^+ a_{*l}"
)
ORDER_NOTE = "state vectors |i1..in> = a_{i1}^+ ... a_{in}^+ |0>"


class FockError(ValueError):
    pass


class DegenerateQuotientError(FockError):
    def __init__(self, level: int, sigma_min: float):
        super().__init__(f"degenerate quotient: restricted Gram singular at level {level} (sigma_min={sigma_min:.3g})")
        self.level = level
        self.sigma_min = sigma_min


class WickInvarianceError(FockError):
    def __init__(self, level: int, residual: float):
        super().__init__(f"ideal not Wick-invariant at level {level} (residual {residual:.3g})")
        self.level = level
        self.residual = residual


class RegimeError(FockError):
    pass


@dataclass
class GradedFockSpace:
    T: TwistOperator
    B: BOperator | None
    n_max: int
    tower: IdealTower
    grams: list[np.ndarray]
    creators: dict = field(repr=False)  # (i, n) -> matrix level n -> n+1
    annihilators: dict = field(repr=False)  # (i, n) -> matrix level n -> n-1
    tol: float = DEFAULT_TOL
    rank_tol: float = DEFAULT_RANK_TOL
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def N(self) -> int:
        return self.T.N

    @property
    def well_defined(self) -> bool:
        return all(c.passed for c in self.checks)

    def dims(self) -> list[int]:
        return self.tower.dims()

    def dim(self, n: int) -> int:
        return self.tower.quotient[n].dim

    def inner(self, v: np.ndarray, w: np.ndarray, n: int) -> complex:
        return complex(np.conj(v) @ self.grams[n] @ w)

    def state(self, word) -> "StateWord":
        word = validate_word(word, self.N)
        n = len(word)
        if n > self.n_max:
            raise FockError(f"word length {n} exceeds n_max={self.n_max}")
        return StateWord(word, self.tower.project(basis_vector(word, self.N), n))

    def vacuum(self) -> np.ndarray:
        return np.ones(1, dtype=complex)

    def spectra(self) -> list[tuple[float, float]]:
        return [eigen_extrema(G) for G in self.grams]


@dataclass(frozen=True)
class StateWord:
    word: tuple[int, ...]
    coords: np.ndarray

    @property
    def level(self) -> int:
        return len(self.word)


def _creation_matrix(tower: IdealTower, i: int, n: int) -> np.ndarray:
    N = tower.N
    e = np.zeros((N, 1), dtype=complex)
    e[i - 1, 0] = 1.0
    lifted = np.kron(e, tower.quotient[n].vectors)
    return tower.project(lifted, n + 1)


def _pairing_row(N: int, i: int, n: int) -> np.ndarray:
    """<x^{*i}| (x) id^(n-1) as an N^(n-1) x N^n matrix."""
    e = np.zeros((1, N), dtype=complex)
    e[0, i - 1] = 1.0
    return np.kron(e, np.eye(N ** (n - 1)))


def annihilator_full(T: TwistOperator, i: int, n: int) -> np.ndarray:
    """Twist-sum annihilator on the full tensor level: pair the first slot after R_n."""
    return _pairing_row(T.N, i, n) @ build_R(T, n)


def build_fock(
    T: TwistOperator,
    B: BOperator | None = None,
    n_max: int = 4,
    tol: float = DEFAULT_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
    adjoint_pairs: int = 100,
    seed: int = 0,
) -> GradedFockSpace:
    """Quotient Fock space TE / I truncated at level ``n_max``.

    The ideal is generated by Im(id - B) when B is given and by ker P_2
    otherwise (a zero kernel gives the full tensor algebra).
    """
    if n_max < 1:
        raise FockError("n_max must be >= 1")
    if B is not None:
        one = np.eye(T.N * T.N)
        res = max_abs((one + T.t_tilde) @ (one - B.matrix))
        if res > tol:
            raise RegimeError(
                f"(id + T~)(id - B) = 0 fails (residual {res:.3g}); Im(id - B) is not inside ker P_2"
            )
    tower = ideal_tower(T, B, max(n_max, 2), rank_tol)

    grams = []
    for n in range(n_max + 1):
        Q = tower.quotient[n].vectors
        G = Q.conj().T @ build_P(T, n) @ Q
        if G.size:
            s = np.linalg.svd(G, compute_uv=False)
            if s[-1] <= rank_tol * max(s[0], 1.0):
                raise DegenerateQuotientError(n, float(s[-1]))
        grams.append(G)

    creators = {}
    annihilators = {}
    for i in range(1, T.N + 1):
        for n in range(n_max):
            creators[(i, n)] = _creation_matrix(tower, i, n)
        annihilators[(i, 0)] = np.zeros((0, 1), dtype=complex)
        for n in range(1, n_max + 1):
            A = annihilator_full(T, i, n)
            K = tower.ideal[n].vectors
            if K.shape[1]:
                leak = max_abs(tower.project(A @ K, n - 1))
                if leak > tol:
                    raise WickInvarianceError(n, leak)
            annihilators[(i, n)] = tower.project(A @ tower.quotient[n].vectors, n - 1)

    F = GradedFockSpace(T, B, n_max, tower, grams, creators, annihilators, tol, rank_tol)
    F.checks = well_defined_checks(F, adjoint_pairs, seed)
    return F


def creation(F: GradedFockSpace, i: int, n: int) -> np.ndarray:
    if not 1 <= i <= F.N:
        raise FockError(f"creation index {i} outside 1..{F.N}")
    if not 0 <= n < F.n_max:
        raise FockError(f"creation at level {n} needs 0 <= n < n_max={F.n_max}")
    return F.creators[(i, n)]


def annihilate_twist_sum(F: GradedFockSpace, i: int, n: int) -> np.ndarray:
    if not 1 <= i <= F.N:
        raise FockError(f"annihilation index {i} outside 1..{F.N}")
    if not 0 <= n <= F.n_max:
        raise FockError(f"annihilation at level {n} needs 0 <= n <= n_max={F.n_max}")
    return F.annihilators[(i, n)]


def annihilate_adjoint(F: GradedFockSpace, i: int, n: int) -> np.ndarray:
    """The A solving G_{n-1} A = (a_i^+ at level n-1)^H G_n."""
    if not 1 <= n <= F.n_max:
        raise FockError(f"adjoint annihilator at level {n} needs 1 <= n <= n_max")
    C = creation(F, i, n - 1)
    rhs = C.conj().T @ F.grams[n]
    G = F.grams[n - 1]
    if G.size == 0:
        return np.zeros((0, F.dim(n)), dtype=complex)
    return np.linalg.solve(G, rhs)


def ccr_coefficients(T: TwistOperator) -> np.ndarray:
    """C[i, j, k, l] = T~^{jl}_{ik}, indices 0-based."""
    N = T.N
    t4 = T.t_tilde.reshape(N, N, N, N)  # [k, l, i, j] = T~^{ij}_{kl}
    return np.einsum("ikjl->ijkl", t4)


def ccr_residual(F: GradedFockSpace, i: int, j: int, n: int) -> float:
    """max |a_{*i} a_j^+ - sum C^{ij}_{kl} a_k^+ a_{*l} - delta^{ij}| on level n."""
    C = ccr_coefficients(F.T)
    d = F.dim(n)
    D = annihilate_twist_sum(F, i, n + 1) @ creation(F, j, n) - (i == j) * np.eye(d)
    if n >= 1:
        for k in range(1, F.N + 1):
            for l in range(1, F.N + 1):
                c = C[i - 1, j - 1, k - 1, l - 1]
                if c != 0:
                    D = D - c * (creation(F, k, n - 1) @ annihilate_twist_sum(F, l, n))
    return max_abs(D)


def verify_ccr(F: GradedFockSpace, tol: float | None = None) -> CheckResult:
    tol = F.tol if tol is None else tol
    worst, where = 0.0, None
    for n in range(F.n_max):
        for i in range(1, F.N + 1):
            for j in range(1, F.N + 1):
                r = ccr_residual(F, i, j, n)
                if r > worst:
                    worst, where = r, {"i": i, "j": j, "level": n}
    return CheckResult.from_residual("fock.ccr", worst, tol, where if worst > tol else None)


def verify_adjointness(F: GradedFockSpace, pairs: int = 100, seed: int = 0, tol: float | None = None) -> CheckResult:
    """<a_i^+ v | w> = <v | a_{*i} w> on random vector pairs at every level."""
    tol = F.tol if tol is None else tol
    rng = np.random.default_rng(seed)
    worst, where = 0.0, None
    for n in range(F.n_max):
        dn, dm = F.dim(n), F.dim(n + 1)
        if dn == 0 or dm == 0:
            continue
        for i in range(1, F.N + 1):
            C = creation(F, i, n)
            A = annihilate_twist_sum(F, i, n + 1)
            V = rng.standard_normal((dn, pairs)) + 1j * rng.standard_normal((dn, pairs))
            W = rng.standard_normal((dm, pairs)) + 1j * rng.standard_normal((dm, pairs))
            lhs = np.einsum("ap,ab,bp->p", np.conj(C @ V), F.grams[n + 1], W)
            rhs = np.einsum("ap,ab,bp->p", np.conj(V), F.grams[n], A @ W)
            scale = np.linalg.norm(V, axis=0) * np.linalg.norm(W, axis=0)
            r = float(np.max(np.abs(lhs - rhs) / scale))
            if r > worst:
                worst, where = r, {"i": i, "level": n}
    return CheckResult.from_residual("fock.adjointness", worst, tol, where if worst > tol else None)


def compare_annihilators(F: GradedFockSpace, tol: float | None = None) -> CheckResult:
    tol = F.tol if tol is None else tol
    worst = 0.0
    for n in range(1, F.n_max + 1):
        for i in range(1, F.N + 1):
            diff = annihilate_twist_sum(F, i, n) - annihilate_adjoint(F, i, n)
            worst = max(worst, max_abs(diff))
    return CheckResult.from_residual("fock.annihilators_agree", worst, tol)


def well_defined_checks(F: GradedFockSpace, pairs: int = 100, seed: int = 0) -> list[CheckResult]:
    """Yang-Baxter, positive restricted Grams, adjointness and the CCR."""
    checks = [check_yang_baxter(F.T, F.tol)]
    lo = min((eigen_extrema(G)[0] for G in F.grams if G.size), default=1.0)
    checks.append(
        CheckResult.from_residual("fock.positive_definite", max(0.0, -lo), F.tol, {"min_eig": lo})
    )
    checks.append(verify_adjointness(F, pairs, seed))
    checks.append(verify_ccr(F))
    return checks


def multiply(F: GradedFockSpace, u: np.ndarray, k: int, v: np.ndarray, m: int) -> np.ndarray:
    """Quotient product of a level-k and a level-m vector (quotient coordinates)."""
    if k + m > F.n_max:
        raise FockError(f"product level {k + m} exceeds n_max={F.n_max}")
    rep = np.kron(F.tower.lift(u, k), F.tower.lift(v, m))
    return F.tower.project(rep, k + m)


def operad_compose(F: GradedFockSpace, u: tuple[int, np.ndarray], *vs: tuple[int, np.ndarray]):
    """gamma(u; v1, ..., vl) = u . (v1 . (... . vl)) on (level, coords) pairs."""
    if not vs:
        return u
    level, acc = vs[-1]
    for lv, v in reversed(vs[:-1]):
        acc = multiply(F, v, lv, acc, level)
        level += lv
    k, uc = u
    return k + level, multiply(F, uc, k, acc, level)


def check_associativity(F: GradedFockSpace, tol: float | None = None) -> CheckResult:
    """x^i (x^j v) = (x^i x^j) v for basis v on levels that fit under n_max."""
    tol = F.tol if tol is None else tol
    worst = 0.0
    for n in range(F.n_max - 1):
        for b in range(F.dim(n)):
            v = np.zeros(F.dim(n), dtype=complex)
            v[b] = 1.0
            for i in range(1, F.N + 1):
                for j in range(1, F.N + 1):
                    xi, xj = F.state((i,)).coords, F.state((j,)).coords
                    left = multiply(F, xi, 1, multiply(F, xj, 1, v, n), n + 1)
                    right = multiply(F, multiply(F, xi, 1, xj, 1), 2, v, n)
                    worst = max(worst, max_abs(left - right))
    return CheckResult.from_residual("fock.associativity", worst, tol)
