"""Twist operators on E (x) E, the builtin statistics catalog, and the
compatibility checks a twist (and its companion B) must pass."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fockforge.report import CheckResult
from fockforge.tensor import embed_at, enumerate_basis, flip, max_abs

DEFAULT_TOL = 1e-10
NORM_SLACK = 1e-12
EPS_PRODUCT_TOL = 1e-12

CATALOG = {
    "zero": "Boltzmann (infinite) statistics, T~ = 0",
    "boson": "Bose statistics, T~ = flip",
    "fermion": "Fermi statistics, T~ = -flip",
    "q_flip": "q-deformed statistics, T~ = q * flip",
    "epsilon_diag": "epsilon-statistics, T~(x^i x^j) = eps^ij x^j x^i",
    "custom": "explicit N^2 x N^2 matrix",
}

# T~[ij,kl] = T[ki,lj] is used; the starred alternative T~[ij,kl] = T*[ki,l*j]
# is recorded in reports but not applied.
CROSS_CONVENTION_NOTE = (
    "cross operator T: E*(x)E -> E(x)E* is recovered from the twist by "
    "T^{ki}_{lj} = T~^{ij}_{kl}; a variant placing complex conjugation on the "
    "cross entries is not applied"
)


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class EpsilonSpec:
    """Commutation factors eps^{ij} of a diagonal (epsilon) twist.

    Either given directly, or generated from integer matrices sigma
    (symmetric), omega (antisymmetric) and a parameter q through
    eps^{ij} = -(-1)^sigma_ij * q^omega_ij.
    """

    eps: np.ndarray
    sigma: np.ndarray | None = None
    omega: np.ndarray | None = None
    q: complex | None = None

    def __post_init__(self):
        eps = np.asarray(self.eps, dtype=complex)
        if eps.ndim != 2 or eps.shape[0] != eps.shape[1] or eps.shape[0] < 1:
            raise ParameterError(f"epsilon must be a square N x N matrix, got {eps.shape}")
        if not np.all(np.isfinite(eps)):
            raise ParameterError("epsilon has non-finite entries")
        bad = np.abs(eps * eps.T - 1.0)
        if bad.max() > EPS_PRODUCT_TOL:
            i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
            raise ParameterError(
                f"eps^ij * eps^ji must be 1; fails at (i,j)=({i + 1},{j + 1}) "
                f"with product {eps[i, j] * eps[j, i]}"
            )
        object.__setattr__(self, "eps", eps)

    @property
    def N(self) -> int:
        return self.eps.shape[0]

    @classmethod
    def from_grading(cls, sigma, omega, q) -> "EpsilonSpec":
        sigma = np.asarray(sigma)
        omega = np.asarray(omega)
        if sigma.shape != omega.shape or sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
            raise ParameterError("sigma and omega must be square matrices of equal shape")
        if not (np.issubdtype(sigma.dtype, np.integer) and np.issubdtype(omega.dtype, np.integer)):
            if not (np.all(sigma == np.round(sigma)) and np.all(omega == np.round(omega))):
                raise ParameterError("sigma and omega must be integer-valued")
            sigma = sigma.astype(int)
            omega = omega.astype(int)
        if not np.array_equal(sigma, sigma.T):
            raise ParameterError("sigma must be symmetric")
        if not np.array_equal(omega, -omega.T):
            raise ParameterError("omega must be antisymmetric")
        q = complex(q)
        if q == 0 and np.any(omega < 0):
            raise ParameterError("q = 0 with negative powers of omega")
        eps = -((-1.0) ** sigma) * np.power(q, omega.astype(float))
        return cls(eps, sigma, omega, q)

    @classmethod
    def lambda2(cls) -> "EpsilonSpec":
        """The two-generator case eps^ii = -1, eps^12 = eps^21 = 1."""
        return cls(np.array([[-1.0, 1.0], [1.0, -1.0]]))


@dataclass(frozen=True)
class TwistOperator:
    N: int
    t_tilde: np.ndarray
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        t = np.asarray(self.t_tilde, dtype=complex)
        d = self.N * self.N
        if t.shape != (d, d):
            raise ParameterError(f"twist matrix must be {d}x{d} for N={self.N}, got {t.shape}")
        if not np.all(np.isfinite(t)):
            raise ParameterError("twist matrix has non-finite entries")
        object.__setattr__(self, "t_tilde", t)

    def at(self, i: int, n: int) -> np.ndarray:
        return embed_at(self.t_tilde, i, n, self.N)

    def cross_matrix(self) -> np.ndarray:
        """Matrix of the cross operator T : E* (x) E -> E (x) E*.

        Columns are indexed by (i, j) for x^{*i} (x) x^j, rows by (k, l) for
        x^k (x) x^{*l}.
        """
        N = self.N
        t4 = self.t_tilde.reshape(N, N, N, N)  # [k, l, i, j] = T~^{ij}_{kl}
        # T^{ab}_{cd} = T~^{bd}_{ac}
        cross = np.einsum("aibj->ijab", t4)
        return cross.reshape(N * N, N * N)

    @classmethod
    def from_cross(cls, cross, N: int) -> "TwistOperator":
        c4 = np.asarray(cross, dtype=complex).reshape(N, N, N, N)  # [c, d, a, b] = T^{ab}_{cd}
        t4 = np.einsum("ijab->aibj", c4)
        return cls(N, t4.reshape(N * N, N * N), "custom", {})


@dataclass(frozen=True)
class BOperator:
    N: int
    matrix: np.ndarray
    mu: complex | None = None
    rank_tol: float = 1e-9

    def __post_init__(self):
        B = np.asarray(self.matrix, dtype=complex)
        d = self.N * self.N
        if B.shape != (d, d):
            raise ParameterError(f"B must be {d}x{d} for N={self.N}, got {B.shape}")
        s = np.linalg.svd(B, compute_uv=False)
        if s[0] == 0 or s[-1] <= self.rank_tol * s[0]:
            raise ParameterError("B must be invertible")
        object.__setattr__(self, "matrix", B)

    @classmethod
    def from_twist(cls, T: TwistOperator, mu: complex | None = None) -> "BOperator":
        """B = T~ / mu (or T~ itself when mu is None)."""
        if mu is None:
            return cls(T.N, T.t_tilde.copy())
        mu = complex(mu)
        if mu == 0:
            raise ParameterError("mu must be nonzero")
        return cls(T.N, T.t_tilde / mu, mu)

    def at(self, i: int, n: int) -> np.ndarray:
        return embed_at(self.matrix, i, n, self.N)


def make_twist(kind: str, N: int | None = None, **params) -> TwistOperator:
    if kind not in CATALOG:
        raise ParameterError(f"unknown twist kind {kind!r}; expected one of {sorted(CATALOG)}")
    if kind == "epsilon_diag":
        spec = params.get("epsilon")
        if spec is None:
            raise ParameterError("epsilon_diag needs an EpsilonSpec as 'epsilon'")
        if not isinstance(spec, EpsilonSpec):
            spec = EpsilonSpec(spec)
        if N is not None and N != spec.N:
            raise ParameterError(f"dimension {N} does not match epsilon size {spec.N}")
        N = spec.N
        t = np.zeros((N * N, N * N), dtype=complex)
        for i in range(N):
            for j in range(N):
                t[j * N + i, i * N + j] = spec.eps[i, j]
        return TwistOperator(N, t, kind, {"epsilon": spec})
    if kind == "custom":
        data = params.get("matrix")
        if data is None:
            raise ParameterError("custom twist needs 'matrix'")
        data = np.asarray(data, dtype=complex)
        if N is None:
            N = int(round(np.sqrt(data.shape[0])))
        return TwistOperator(N, data, kind, {})
    if N is None or N < 1:
        raise ParameterError(f"{kind} twist needs a positive dimension N")
    if kind == "zero":
        return TwistOperator(N, np.zeros((N * N, N * N), dtype=complex), kind, {})
    if kind == "boson":
        return TwistOperator(N, flip(N), kind, {})
    if kind == "fermion":
        return TwistOperator(N, -flip(N), kind, {})
    if "q" not in params:
        raise ParameterError("q_flip needs parameter q")
    q = complex(params["q"])
    return TwistOperator(N, q * flip(N), kind, {"q": q})


def check_yang_baxter(T: TwistOperator, tol: float = DEFAULT_TOL) -> CheckResult:
    t1, t2 = T.at(1, 3), T.at(2, 3)
    residual = max_abs(t1 @ t2 @ t1 - t2 @ t1 @ t2)
    return CheckResult.from_residual("twist.yang_baxter", residual, tol)


def operator_norm(M) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def check_norm_bound(T: TwistOperator) -> CheckResult:
    """Pass iff sigma_max(T~) <= 1; the residual is sigma_max itself."""
    norm = operator_norm(T.t_tilde)
    return CheckResult("twist.norm_bound", norm, 1.0 + NORM_SLACK, bool(norm <= 1.0 + NORM_SLACK))


def check_hermitian(T: TwistOperator, tol: float = DEFAULT_TOL) -> CheckResult:
    t = T.t_tilde
    return CheckResult.from_residual("twist.hermitian", max_abs(t - t.conj().T), tol)


def check_involutive(T: TwistOperator, tol: float = DEFAULT_TOL) -> CheckResult:
    t = T.t_tilde
    return CheckResult.from_residual("twist.involutive", max_abs(t @ t - np.eye(len(t))), tol)


def check_hecke(T: TwistOperator, mu, tol: float = DEFAULT_TOL) -> CheckResult:
    """Residual of (T~ - mu)(T~ + 1) = 0."""
    mu = complex(mu)
    if mu == 0:
        raise ParameterError("Hecke parameter mu must be nonzero")
    t = T.t_tilde
    one = np.eye(len(t))
    residual = max_abs((t - mu * one) @ (t + one))
    return CheckResult.from_residual("twist.hecke", residual, tol, {"mu": [mu.real, mu.imag]})


def check_cd_conditions(T: TwistOperator, B: BOperator, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """The three compatibility conditions between a twist and its B operator:

    B1 B2 B1 = B2 B1 B2,  B1 T2 T1 = T2 T1 B2,  (id + T~)(id - B) = 0.
    """
    if B.N != T.N:
        raise ParameterError(f"dimension mismatch: twist N={T.N}, B N={B.N}")
    b1, b2 = B.at(1, 3), B.at(2, 3)
    t1, t2 = T.at(1, 3), T.at(2, 3)
    one = np.eye(T.N * T.N)
    return [
        CheckResult.from_residual("cd.braid_B", max_abs(b1 @ b2 @ b1 - b2 @ b1 @ b2), tol),
        CheckResult.from_residual("cd.mixed_braid", max_abs(b1 @ t2 @ t1 - t2 @ t1 @ b2), tol),
        CheckResult.from_residual(
            "cd.kernel", max_abs((one + T.t_tilde) @ (one - B.matrix)), tol
        ),
    ]


def clifford_generators() -> tuple[np.ndarray, np.ndarray]:
    """Two Hermitian anticommuting 2x2 matrices squaring to the identity."""
    e1 = np.array([[0, 1], [1, 0]], dtype=complex)
    e2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    return e1, e2


def _grassmann_one() -> np.ndarray:
    """Structure constants of C[theta]/(theta^2) in the basis (1, theta)."""
    m = np.zeros((2, 2, 2))
    m[0, 0, 0] = m[0, 1, 1] = m[1, 0, 1] = 1.0
    return m


def check_clifford_embedding(spec: EpsilonSpec, tol: float = 1e-14) -> list[CheckResult]:
    """Grassmann realizations of the two-generator epsilon algebra.

    Builds the quotient algebra for eps^ii = -1, eps^12 = eps^21 = 1 and checks
    (a) its defining relations, (b) that theta^i = x^i (x) e^i anticommute and
    square to zero inside quotient (x) Cl_2, and (c) that x^1 -> theta (x) 1,
    x^2 -> 1 (x) theta extends to an algebra isomorphism onto
    C[theta]/(theta^2) (x) C[theta]/(theta^2).
    """
    from fockforge.projector import ideal_tower, quotient_algebra

    expected = np.array([[-1.0, 1.0], [1.0, -1.0]])
    if spec.N != 2 or max_abs(spec.eps - expected) > EPS_PRODUCT_TOL:
        raise ParameterError("Clifford embedding needs eps^ii = -1, eps^12 = eps^21 = 1 with N = 2")

    T = make_twist("epsilon_diag", epsilon=spec)
    B = BOperator.from_twist(T)
    tower = ideal_tower(T, B, n_max=3)
    alg = quotient_algebra(tower)
    m = alg.mult
    x1, x2 = alg.generator(1), alg.generator(2)

    def mul(a, b):
        return np.einsum("ijk,i,j->k", m, a, b)

    checks = [
        CheckResult.from_residual(
            "lambda2.commute", max_abs(mul(x1, x2) - mul(x2, x1)), tol
        ),
        CheckResult.from_residual(
            "lambda2.nilpotent", max(max_abs(mul(x1, x1)), max_abs(mul(x2, x2))), tol
        ),
        CheckResult.boolean("lambda2.product_nonzero", max_abs(mul(x1, x2)) > 0.5),
    ]

    e = clifford_generators()
    cliff = max(
        max_abs(e[i] @ e[j] + e[j] @ e[i] - 2.0 * (i == j) * np.eye(2))
        for i in range(2)
        for j in range(2)
    )
    checks.append(CheckResult.from_residual("clifford.relations", cliff, tol))

    def cmul(X, Y):  # product in quotient (x) Cl_2, elements shaped (dim, 2, 2)
        return np.einsum("ijk,iab,jbc->kac", m, X, Y)

    theta = [np.einsum("i,ab->iab", x, ei) for x, ei in zip((x1, x2), e)]
    anti = cmul(theta[0], theta[1]) + cmul(theta[1], theta[0])
    checks.append(CheckResult.from_residual("clifford.anticommute", max_abs(anti), tol))
    sq = max(max_abs(cmul(t, t)) for t in theta)
    checks.append(CheckResult.from_residual("clifford.nilpotent", sq, tol))
    nontrivial = max_abs(cmul(theta[0], theta[1]))
    checks.append(CheckResult.boolean("clifford.product_nonzero", nontrivial > 0.5))

    # pair representation inside C[theta]/(theta^2) (x) C[theta]/(theta^2)
    g = _grassmann_one()
    gg = np.einsum("ace,bdf->abcdef", g, g).reshape(4, 4, 4)  # (a(x)b)(c(x)d)
    one, th = np.eye(2)
    images = {1: np.kron(th, one), 2: np.kron(one, th)}

    def gmul(a, b):
        return np.einsum("ijk,i,j->k", gg, a, b)

    target = np.kron(th, th)
    pair = max(
        max_abs(gmul(images[1], images[2]) - target),
        max_abs(gmul(images[2], images[1]) - target),
        max_abs(gmul(images[1], images[1])),
        max_abs(gmul(images[2], images[2])),
    )
    checks.append(CheckResult.from_residual("pair.product", pair, tol))

    # word map on the free algebra up to level 2; it must kill the ideal and be
    # bijective on the quotient
    def word_image(word):
        v = np.kron(one, one)
        for a in word:
            v = gmul(v, images[a])
        return v

    cols = []
    killed = 0.0
    for n in range(3):
        phi = np.array([word_image(w) for w in enumerate_basis(2, n)]).T.reshape(4, -1)
        ideal = tower.ideal[n].vectors
        if ideal.shape[1]:
            killed = max(killed, max_abs(phi @ ideal))
        cols.append(phi @ tower.quotient[n].vectors)
    iso = np.hstack(cols)
    smin = np.linalg.svd(iso, compute_uv=False).min()
    checks.append(CheckResult.from_residual("pair.kills_ideal", killed, tol))
    checks.append(
        CheckResult.boolean(
            "pair.isomorphism", iso.shape == (4, 4) and smin > 1e-9, {"sigma_min": float(smin)}
        )
    )
    return checks
