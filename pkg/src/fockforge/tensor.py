"""Dense linear algebra on graded tensor powers of E = C^N.

Basis words are tuples of letters in 1..N.  Level n has N**n basis words,
ordered lexicographically with the leftmost letter most significant, and all
matrices in the package are written in that order.  Matrices act on column
vectors: ``M[row, col]`` is the coefficient of basis word ``row`` in the image
of basis word ``col``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

DEFAULT_RANK_TOL = 1e-9


def validate_word(word, N: int) -> tuple[int, ...]:
    word = tuple(int(a) for a in word)
    for a in word:
        if not 1 <= a <= N:
            raise ValueError(f"letter {a} outside 1..{N} in word {word}")
    return word


def enumerate_basis(N: int, n: int) -> list[tuple[int, ...]]:
    if N < 1 or n < 0:
        raise ValueError(f"need N >= 1 and n >= 0, got N={N}, n={n}")
    return list(itertools.product(range(1, N + 1), repeat=n))


def word_index(word, N: int) -> int:
    """Position of ``word`` in the lexicographic basis of its level."""
    word = validate_word(word, N)
    pos = 0
    for a in word:
        pos = pos * N + (a - 1)
    return pos


def basis_vector(word, N: int) -> np.ndarray:
    v = np.zeros(N ** len(word), dtype=complex)
    v[word_index(word, N)] = 1.0
    return v


def flip(N: int) -> np.ndarray:
    """Matrix of x^i (x) x^j -> x^j (x) x^i."""
    S = np.zeros((N * N, N * N), dtype=complex)
    for i in range(N):
        for j in range(N):
            S[j * N + i, i * N + j] = 1.0
    return S


def embed_at(op2: np.ndarray, i: int, n: int, N: int) -> np.ndarray:
    """id^(i-1) (x) op2 (x) id^(n-i-1) on level n; slots are 1-based."""
    op2 = np.asarray(op2)
    if op2.shape != (N * N, N * N):
        raise ValueError(f"level-2 operator must be {N * N}x{N * N}, got {op2.shape}")
    if not 1 <= i <= n - 1:
        raise IndexError(f"slot {i} out of range 1..{n - 1} at level {n}")
    left = np.eye(N ** (i - 1))
    right = np.eye(N ** (n - i - 1))
    return np.kron(np.kron(left, op2), right)


def adjoint(M: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(M)).T


def max_abs(M) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(M)))


@dataclass(frozen=True)
class SubspaceBasis:
    """Basis vectors of a subspace of level ``level``, stored as columns."""

    level: int
    vectors: np.ndarray
    orthonormal: bool = True

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[0]

    def projector(self) -> np.ndarray:
        Q = self.vectors
        return Q @ adjoint(Q)

    def distance(self, v: np.ndarray) -> float:
        """Norm of the component of ``v`` (columns) outside the subspace."""
        v = np.asarray(v, dtype=complex)
        if self.dim == 0:
            return float(np.linalg.norm(v))
        return float(np.linalg.norm(v - self.projector() @ v))


def _svd_split(M: np.ndarray, tol: float):
    U, s, Vh = np.linalg.svd(M)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return U, s, Vh, rank


def kernel_basis(M, tol: float = DEFAULT_RANK_TOL, level: int = -1):
    """Orthonormal bases of the numerical kernel of ``M`` and its complement.

    Singular values at or below ``tol * sigma_max`` count as zero.  Returns
    ``(kernel, complement)``; for the zero matrix the kernel is everything.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"square matrix required, got shape {M.shape}")
    d = M.shape[1]
    if d == 0:
        empty = np.zeros((0, 0), dtype=complex)
        return SubspaceBasis(level, empty), SubspaceBasis(level, empty)
    _, _, Vh, rank = _svd_split(M, tol)
    V = adjoint(Vh)
    return SubspaceBasis(level, V[:, rank:]), SubspaceBasis(level, V[:, :rank])


def span_basis(vectors, ambient_dim: int, tol: float = DEFAULT_RANK_TOL, level: int = -1):
    """Orthonormal basis of the column span of ``vectors`` and of its complement."""
    vectors = np.asarray(vectors, dtype=complex).reshape(ambient_dim, -1)
    if vectors.shape[1] == 0 or max_abs(vectors) == 0.0:
        return (
            SubspaceBasis(level, np.zeros((ambient_dim, 0), dtype=complex)),
            SubspaceBasis(level, np.eye(ambient_dim, dtype=complex)),
        )
    U, _, _, rank = _svd_split(vectors, tol)
    return SubspaceBasis(level, U[:, :rank]), SubspaceBasis(level, U[:, rank:])


def to_pairs(M) -> list:
    """Row-major nested lists of [re, im] pairs for serialization."""
    M = np.asarray(M, dtype=complex)
    if M.ndim == 0:
        return [float(M.real), float(M.imag)]
    return [to_pairs(row) for row in M]
