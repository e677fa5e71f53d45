"""Quasi-symmetrizers, level Gram matrices, Wick-ideal towers and quotients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from fockforge import perm
from fockforge.report import CheckResult
from fockforge.tensor import (
    DEFAULT_RANK_TOL,
    SubspaceBasis,
    kernel_basis,
    max_abs,
    span_basis,
)
from fockforge.twist import DEFAULT_TOL, BOperator, TwistOperator, check_involutive, check_yang_baxter

VACUUM_NOTE = (
    "vacuum normalized as <0|0> = 1; a zero vacuum norm would make the "
    "level-0 form degenerate"
)
PAIRING_NOTE = "deformed pairing <s|t> = <s|P_n t>_0 applied at every level n, including n = 2"


class NotWellDefinedError(ValueError):
    pass


def build_R(T: TwistOperator, n: int) -> np.ndarray:
    """R_n = id + T1 + T1 T2 + ... + T1 ... T_{n-1} at level n."""
    if n < 1:
        raise ValueError("R_n needs n >= 1")
    d = T.N**n
    term = np.eye(d, dtype=complex)
    R = term.copy()
    for k in range(1, n):
        term = term @ T.at(k, n)
        R += term
    return R


def build_P(T: TwistOperator, n: int) -> np.ndarray:
    """P_1 = id, P_{n+1} = (id (x) P_n) R_{n+1}; P_0 = [1]."""
    if n < 0:
        raise ValueError("P_n needs n >= 0")
    if n == 0:
        return np.ones((1, 1), dtype=complex)
    P = np.eye(T.N, dtype=complex)
    for k in range(2, n + 1):
        P = np.kron(np.eye(T.N), P) @ build_R(T, k)
    return P


def twist_word_product(T: TwistOperator, word, n: int) -> np.ndarray:
    """T~^(i1) T~^(i2) ... T~^(ik) at level n."""
    d = T.N**n
    return reduce(lambda acc, i: acc @ T.at(i, n), word, np.eye(d, dtype=complex))


def quasi_symmetrizer(T: TwistOperator, n: int) -> np.ndarray:
    """Sum over S_n of twist products along a reduced word of each permutation."""
    if n == 0:
        return np.ones((1, 1), dtype=complex)
    return sum(twist_word_product(T, perm.reduced_word(p), n) for p in perm.all_perms(n))


def check_quasi_symmetrizer(T: TwistOperator, n: int, tol: float = DEFAULT_TOL) -> CheckResult:
    residual = max_abs(build_P(T, n) - quasi_symmetrizer(T, n))
    return CheckResult.from_residual(f"oracle.quasi_symmetrizer.level{n}", residual, tol)


def braid_representation(T: TwistOperator, pi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """S_pi = T~^(i1) ... T~^(ik) for pi = s_i1 o ... o s_ik.

    Only defined when T~ satisfies the braid relation and squares to the
    identity; otherwise the product depends on the chosen decomposition.
    """
    pi = perm.validate(pi)
    ybe = check_yang_baxter(T, tol)
    inv = check_involutive(T, tol)
    if not (ybe.passed and inv.passed):
        raise NotWellDefinedError(
            "representation not well-defined: "
            f"Yang-Baxter residual {ybe.residual:.3g}, T~^2 - id residual {inv.residual:.3g}"
        )
    return twist_word_product(T, perm.reduced_word(pi), len(pi))


@dataclass(frozen=True)
class LevelGram:
    level: int
    gram: np.ndarray
    min_eig: float
    max_eig: float
    kernel: SubspaceBasis
    quotient: SubspaceBasis

    @property
    def hermitian_residual(self) -> float:
        return max_abs(self.gram - self.gram.conj().T)


def eigen_extrema(G: np.ndarray) -> tuple[float, float]:
    if G.size == 0:
        return float("inf"), float("-inf")
    w = np.linalg.eigvalsh((G + G.conj().T) / 2)
    return float(w[0]), float(w[-1])


def gram(T: TwistOperator, n: int, rank_tol: float = DEFAULT_RANK_TOL) -> LevelGram:
    """Gram matrix G_n[s, t] = <s|P_n t>_0 of the deformed pairing at level n."""
    G = build_P(T, n)
    lo, hi = eigen_extrema(G)
    kernel, quotient = kernel_basis(G, rank_tol, level=n)
    return LevelGram(n, G, lo, hi, kernel, quotient)


def check_positivity(lg: LevelGram, tol: float = DEFAULT_TOL) -> CheckResult:
    """Residual is the amount by which the smallest eigenvalue dips below zero."""
    return CheckResult.from_residual(
        f"gram.psd.level{lg.level}", max(0.0, -lg.min_eig), tol, {"min_eig": lg.min_eig}
    )


@dataclass(frozen=True)
class IdealTower:
    """Per-level bases of a two-sided ideal of the tensor algebra and of the
    orthogonal complements used as quotient representatives."""

    N: int
    n_max: int
    ideal: list[SubspaceBasis]
    quotient: list[SubspaceBasis]
    source: str
    consistency_residual: float | None = None

    def dims(self) -> list[int]:
        return [q.dim for q in self.quotient]

    def project(self, v: np.ndarray, n: int) -> np.ndarray:
        """Quotient coordinates of full-level vector(s) v."""
        return self.quotient[n].vectors.conj().T @ v

    def lift(self, c: np.ndarray, n: int) -> np.ndarray:
        return self.quotient[n].vectors @ c


def level2_generators(T: TwistOperator, B: BOperator | None, rank_tol: float = DEFAULT_RANK_TOL):
    """Generating subspace I_2: Im(id - B) when B is given, else ker P_2."""
    if B is not None:
        if B.N != T.N:
            raise ValueError(f"dimension mismatch: twist N={T.N}, B N={B.N}")
        gens, _ = span_basis(np.eye(T.N**2) - B.matrix, T.N**2, rank_tol, level=2)
        return gens, "B"
    kernel, _ = kernel_basis(build_P(T, 2), rank_tol, level=2)
    return kernel, "kernel"


def ideal_tower(
    T: TwistOperator,
    B: BOperator | None = None,
    n_max: int = 4,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> IdealTower:
    if n_max < 2:
        raise ValueError("ideal tower needs n_max >= 2")
    N = T.N
    gens, source = level2_generators(T, B, rank_tol)
    consistency = None
    if B is not None:
        consistency = max_abs(build_P(T, 2) @ gens.vectors) if gens.dim else 0.0
    ideal: list[SubspaceBasis] = []
    quotient: list[SubspaceBasis] = []
    for n in range(2):
        ideal.append(SubspaceBasis(n, np.zeros((N**n, 0), dtype=complex)))
        quotient.append(SubspaceBasis(n, np.eye(N**n, dtype=complex)))
    ideal.append(gens)
    quotient.append(span_basis(gens.vectors, N * N, rank_tol, level=2)[1])
    eye = np.eye(N, dtype=complex)
    for n in range(3, n_max + 1):
        prev = ideal[n - 1].vectors
        cols = np.hstack([np.kron(eye, prev), np.kron(prev, eye)])
        span, comp = span_basis(cols, N**n, rank_tol, level=n)
        ideal.append(span)
        quotient.append(comp)
    return IdealTower(N, n_max, ideal, quotient, source, consistency)


def check_ideal_invariance(tower: IdealTower, tol: float = DEFAULT_TOL) -> CheckResult:
    """x^i (x) v and v (x) x^i stay in the ideal for every ideal vector v."""
    worst = 0.0
    eye = np.eye(tower.N)
    for n in range(2, tower.n_max):
        v = tower.ideal[n].vectors
        if v.shape[1] == 0:
            continue
        up = np.hstack([np.kron(eye, v), np.kron(v, eye)])
        worst = max(worst, max_abs(tower.project(up, n + 1)))
    return CheckResult.from_residual("ideal.two_sided", worst, tol)


@dataclass(frozen=True)
class QuotientAlgebra:
    """Finite-dimensional algebra A_{<=n_max} = (TE / I) / (degrees > n_max).

    Basis: the quotient basis vectors of levels 0..n_max concatenated.
    ``mult[a, b, c]`` is the coefficient of basis element c in a * b.
    """

    tower: IdealTower
    offsets: list[int]
    mult: np.ndarray

    @property
    def dim(self) -> int:
        return self.offsets[-1]

    def embed(self, coords: np.ndarray, n: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.offsets[n] : self.offsets[n + 1]] = coords
        return v

    def generator(self, i: int) -> np.ndarray:
        e = np.zeros(self.tower.N, dtype=complex)
        e[i - 1] = 1.0
        return self.embed(self.tower.project(e, 1), 1)

    def unit(self) -> np.ndarray:
        return self.embed(np.ones(1), 0)


def quotient_algebra(tower: IdealTower) -> QuotientAlgebra:
    dims = tower.dims()
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    D = offsets[-1]
    m = np.zeros((D, D, D), dtype=complex)
    for a in range(tower.n_max + 1):
        for b in range(tower.n_max + 1 - a):
            Qa, Qb = tower.quotient[a].vectors, tower.quotient[b].vectors
            if Qa.shape[1] == 0 or Qb.shape[1] == 0:
                continue
            prod = np.einsum("ia,jb->ijab", Qa, Qb).reshape(Qa.shape[0] * Qb.shape[0], -1)
            coords = tower.project(prod, a + b).reshape(-1, Qa.shape[1], Qb.shape[1])
            m[offsets[a] : offsets[a + 1], offsets[b] : offsets[b + 1], offsets[a + b] : offsets[a + b + 1]] = (
                np.transpose(coords, (1, 2, 0))
            )
    return QuotientAlgebra(tower, offsets, m)
