"""Entwining structures, entwined modules and crossed products for
finite-dimensional algebras and coalgebras given by structure constants.

Linear maps between tensor products are matrices in the lexicographic product
basis, so ``np.kron`` composes them slot-wise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from fockforge.report import CheckResult
from fockforge.tensor import max_abs

DEFAULT_TOL = 1e-12
MAX_CERTIFY_DIM = 16


class DimensionError(ValueError):
    pass


def _arr(x, shape, what):
    a = np.asarray(x, dtype=complex)
    if a.shape != shape:
        raise DimensionError(f"{what} must have shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionError(f"{what} has non-finite entries")
    return a


def swap(d1: int, d2: int) -> np.ndarray:
    """U (x) V -> V (x) U for dim U = d1, dim V = d2."""
    S = np.zeros((d1 * d2, d1 * d2))
    for a in range(d1):
        for b in range(d2):
            S[b * d1 + a, a * d2 + b] = 1.0
    return S


def kron(*ms) -> np.ndarray:
    return reduce(np.kron, ms)


def I(d: int) -> np.ndarray:
    return np.eye(d)


@dataclass(frozen=True)
class AlgebraPresentation:
    """``mult[i, j, k]``: coefficient of x_k in x_i x_j."""

    dim: int
    mult: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        d = self.dim
        object.__setattr__(self, "mult", _arr(self.mult, (d, d, d), "mult"))
        object.__setattr__(self, "unit", _arr(self.unit, (d,), "unit"))

    @property
    def m(self) -> np.ndarray:
        """A (x) A -> A as a dim x dim^2 matrix."""
        return self.mult.reshape(self.dim * self.dim, self.dim).T

    def product(self, a, b) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.mult, a, b)

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[i] = 1.0
        return e


@dataclass(frozen=True)
class CoalgebraPresentation:
    """``comult[i, j, k]``: coefficient of x_j (x) x_k in Delta(x_i)."""

    dim: int
    comult: np.ndarray
    counit: np.ndarray

    def __post_init__(self):
        d = self.dim
        object.__setattr__(self, "comult", _arr(self.comult, (d, d, d), "comult"))
        object.__setattr__(self, "counit", _arr(self.counit, (d,), "counit"))

    @property
    def delta(self) -> np.ndarray:
        """C -> C (x) C as a dim^2 x dim matrix."""
        return self.comult.reshape(self.dim, self.dim * self.dim).T

    @property
    def eps(self) -> np.ndarray:
        return self.counit.reshape(1, self.dim)


def check_algebra(A: AlgebraPresentation, tol: float = DEFAULT_TOL, name: str = "algebra") -> list[CheckResult]:
    m, d = A.m, A.dim
    u = A.unit.reshape(d, 1)
    assoc = max_abs(m @ kron(m, I(d)) - m @ kron(I(d), m))
    unit = max(max_abs(m @ kron(u, I(d)) - I(d)), max_abs(m @ kron(I(d), u) - I(d)))
    return [
        CheckResult.from_residual(f"{name}.associative", assoc, tol),
        CheckResult.from_residual(f"{name}.unital", unit, tol),
    ]


def check_coalgebra(C: CoalgebraPresentation, tol: float = DEFAULT_TOL, name: str = "coalgebra") -> list[CheckResult]:
    D, e, d = C.delta, C.eps, C.dim
    coassoc = max_abs(kron(D, I(d)) @ D - kron(I(d), D) @ D)
    counit = max(max_abs(kron(e, I(d)) @ D - I(d)), max_abs(kron(I(d), e) @ D - I(d)))
    return [
        CheckResult.from_residual(f"{name}.coassociative", coassoc, tol),
        CheckResult.from_residual(f"{name}.counital", counit, tol),
    ]


def dual_coalgebra(A: AlgebraPresentation) -> CoalgebraPresentation:
    """A* with Delta dual to the multiplication, in the dual basis."""
    return CoalgebraPresentation(A.dim, np.einsum("jki->ijk", A.mult), A.unit.copy())


def dual_algebra(C: CoalgebraPresentation) -> AlgebraPresentation:
    """C* with the convolution product <phi psi, f> = <phi (x) psi, Delta f>."""
    return AlgebraPresentation(C.dim, np.einsum("kij->ijk", C.comult), C.counit.copy())


def group_algebra(n: int) -> AlgebraPresentation:
    """C[Z_n] in the basis g^0, ..., g^(n-1)."""
    m = np.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            m[a, b, (a + b) % n] = 1.0
    unit = np.zeros(n)
    unit[0] = 1.0
    return AlgebraPresentation(n, m, unit)


def grouplike_coalgebra(n: int) -> CoalgebraPresentation:
    """n grouplike elements: Delta(g_k) = g_k (x) g_k, eps(g_k) = 1."""
    c = np.zeros((n, n, n))
    for k in range(n):
        c[k, k, k] = 1.0
    return CoalgebraPresentation(n, c, np.ones(n))


def grassmann_algebra() -> AlgebraPresentation:
    """C[theta]/(theta^2) in the basis (1, theta)."""
    m = np.zeros((2, 2, 2))
    m[0, 0, 0] = m[0, 1, 1] = m[1, 0, 1] = 1.0
    return AlgebraPresentation(2, m, np.array([1.0, 0.0]))


@dataclass(frozen=True)
class EntwiningStructure:
    """``tau``: C (x) A -> A (x) C as a (dimA dimC) square matrix."""

    A: AlgebraPresentation
    C: CoalgebraPresentation
    tau: np.ndarray

    def __post_init__(self):
        d = self.A.dim * self.C.dim
        object.__setattr__(self, "tau", _arr(self.tau, (d, d), "tau"))


def flip_entwining(A: AlgebraPresentation, C: CoalgebraPresentation) -> EntwiningStructure:
    return EntwiningStructure(A, C, swap(C.dim, A.dim))


def entwining_residuals(E: EntwiningStructure) -> list[float]:
    A, C, t = E.A, E.C, E.tau
    a, c = A.dim, C.dim
    m, D, e = A.m, C.delta, C.eps
    u = A.unit.reshape(a, 1)
    r1 = t @ kron(I(c), m) - kron(m, I(c)) @ kron(I(a), t) @ kron(t, I(a))
    r2 = t @ kron(I(c), u) - kron(u, I(c))
    r3 = kron(I(a), D) @ t - kron(t, I(c)) @ kron(I(c), t) @ kron(D, I(a))
    r4 = kron(I(a), e) @ t - kron(e, I(a))
    return [max_abs(r) for r in (r1, r2, r3, r4)]


ENTWINING_AXIOMS = ("multiplicative", "unital", "comultiplicative", "counital")


def check_entwining(E: EntwiningStructure, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Algebra/coalgebra invariants followed by the four entwining axioms."""
    checks = check_algebra(E.A, tol) + check_coalgebra(E.C, tol)
    for axiom, r in zip(ENTWINING_AXIOMS, entwining_residuals(E)):
        checks.append(CheckResult.from_residual(f"entwining.{axiom}", r, tol))
    return checks


def psi_1n(E: EntwiningStructure, n: int) -> np.ndarray:
    """C (x) A^n -> A^n (x) C: move C to the right past each A factor in turn."""
    a, c = E.A.dim, E.C.dim
    out = np.eye(c * a**n)
    for k in range(n):
        out = kron(I(a**k), E.tau, I(a ** (n - k - 1))) @ out
    return out


def psi_split_residual(E: EntwiningStructure, m: int, n: int) -> float:
    """Psi_{1,m+n} against (id_{A^m} (x) Psi_{1,n})(Psi_{1,m} (x) id_{A^n})."""
    a = E.A.dim
    lhs = psi_1n(E, m + n)
    rhs = kron(I(a**m), psi_1n(E, n)) @ kron(psi_1n(E, m), I(a**n))
    return max_abs(lhs - rhs)


@dataclass(frozen=True)
class EntwinedModuleData:
    """Right A-action ``action``: M (x) A -> M and right C-coaction ``coaction``: M -> M (x) C."""

    dim: int
    action: np.ndarray
    coaction: np.ndarray


def check_entwined_module(E: EntwiningStructure, M: EntwinedModuleData, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    """Module and comodule laws first; the compatibility square only if they hold."""
    a, c, d = E.A.dim, E.C.dim, M.dim
    alpha = _arr(M.action, (d, d * a), "module action")
    delta = _arr(M.coaction, (d * c, d), "module coaction")
    m, u = E.A.m, E.A.unit.reshape(a, 1)
    D, e = E.C.delta, E.C.eps
    checks = [
        CheckResult.from_residual(
            "module.action_associative",
            max_abs(alpha @ kron(alpha, I(a)) - alpha @ kron(I(d), m)),
            tol,
        ),
        CheckResult.from_residual("module.action_unital", max_abs(alpha @ kron(I(d), u) - I(d)), tol),
        CheckResult.from_residual(
            "module.coaction_coassociative",
            max_abs(kron(delta, I(c)) @ delta - kron(I(d), D) @ delta),
            tol,
        ),
        CheckResult.from_residual("module.coaction_counital", max_abs(kron(I(d), e) @ delta - I(d)), tol),
    ]
    if not all(ch.passed for ch in checks):
        return checks
    square = delta @ alpha - kron(alpha, I(c)) @ kron(I(d), E.tau) @ kron(delta, I(a))
    checks.append(CheckResult.from_residual("module.entwined", max_abs(square), tol))
    return checks


def regular_module(E: EntwiningStructure, grouplike: int) -> EntwinedModuleData:
    """M = A with alpha = m and delta(a) = a (x) g for the grouplike basis element g."""
    a, c = E.A.dim, E.C.dim
    g = np.zeros((c, 1))
    g[grouplike] = 1.0
    return EntwinedModuleData(a, E.A.m, np.kron(I(a), g))


def tensor_module(E: EntwiningStructure, base: EntwinedModuleData) -> EntwinedModuleData:
    """C (x) M with alpha = id (x) alpha_M and delta = id (x) delta_M."""
    c = E.C.dim
    return EntwinedModuleData(c * base.dim, kron(I(c), base.action), kron(I(c), base.coaction))


@dataclass(frozen=True)
class CrossSymmetry:
    """``psi``: B (x) A -> A (x) B."""

    A: AlgebraPresentation
    B: AlgebraPresentation
    psi: np.ndarray

    def __post_init__(self):
        d = self.A.dim * self.B.dim
        object.__setattr__(self, "psi", _arr(self.psi, (d, d), "psi"))


def cross_residuals(X: CrossSymmetry) -> dict[str, float]:
    a, b = X.A.dim, X.B.dim
    mA, mB, p = X.A.m, X.B.m, X.psi
    uA, uB = X.A.unit.reshape(a, 1), X.B.unit.reshape(b, 1)
    return {
        "cross.compatible_A": max_abs(
            p @ kron(I(b), mA) - kron(mA, I(b)) @ kron(I(a), p) @ kron(p, I(a))
        ),
        "cross.compatible_B": max_abs(
            p @ kron(mB, I(a)) - kron(I(a), mB) @ kron(p, I(b)) @ kron(I(b), p)
        ),
        "cross.unit_A": max_abs(p @ kron(I(b), uA) - kron(uA, I(b))),
        "cross.unit_B": max_abs(p @ kron(uB, I(a)) - kron(I(a), uB)),
    }


@dataclass
class CrossedProduct:
    algebra: AlgebraPresentation
    checks: list[CheckResult]
    witness: tuple[int, int, int] | None = None

    @property
    def certified(self) -> bool:
        return all(c.passed for c in self.checks)


def crossed_product(X: CrossSymmetry, tol: float = DEFAULT_TOL, max_dim: int = MAX_CERTIFY_DIM) -> CrossedProduct:
    """A (x) B with m = (m_A (x) m_B)(id (x) psi (x) id), certified by brute force.

    Failures are reported as checks with a witness basis triple, not raised.
    """
    a, b = X.A.dim, X.B.dim
    d = a * b
    if d > max_dim:
        raise DimensionError(f"crossed product dimension {d} exceeds certification cap {max_dim}")
    m = kron(X.A.m, X.B.m) @ kron(I(a), X.psi, I(b))  # d x d^2
    mult = m.T.reshape(d, d, d)
    unit = np.kron(X.A.unit, X.B.unit)
    W = AlgebraPresentation(d, mult, unit)

    checks = [CheckResult.from_residual(k, v, tol) for k, v in cross_residuals(X).items()]
    checks += check_algebra(X.A, tol, "A") + check_algebra(X.B, tol, "B")

    worst, witness = 0.0, None
    for i, j, k in itertools.product(range(d), repeat=3):
        ei, ej, ek = W.basis(i), W.basis(j), W.basis(k)
        r = max_abs(W.product(W.product(ei, ej), ek) - W.product(ei, W.product(ej, ek)))
        if r > worst:
            worst = r
            if r > tol:
                witness = (i, j, k) if witness is None else witness
    checks.append(
        CheckResult.from_residual(
            "crossed_product.associative", worst, tol, list(witness) if witness else None
        )
    )
    unit_res = max(
        max(max_abs(W.product(unit, W.basis(i)) - W.basis(i)), max_abs(W.product(W.basis(i), unit) - W.basis(i)))
        for i in range(d)
    )
    checks.append(CheckResult.from_residual("crossed_product.unital", unit_res, tol))

    # m restricted to A (x) 1 and 1 (x) B recovers m_A and m_B
    emb_A = np.kron(I(a), X.B.unit.reshape(b, 1))
    emb_B = np.kron(X.A.unit.reshape(a, 1), I(b))
    restrict = max(
        max_abs(m @ kron(emb_A, emb_A) - emb_A @ X.A.m),
        max_abs(m @ kron(emb_B, emb_B) - emb_B @ X.B.m),
    )
    checks.append(CheckResult.from_residual("crossed_product.restricts", restrict, tol))
    return CrossedProduct(W, checks, witness)


def graded_flip(A: AlgebraPresentation, degA, B: AlgebraPresentation, degB) -> np.ndarray:
    """psi(b (x) a) = (-1)^{|a||b|} a (x) b for homogeneous basis elements."""
    a, b = A.dim, B.dim
    P = np.zeros((a * b, a * b))
    for j in range(b):
        for i in range(a):
            P[i * b + j, j * a + i] = (-1.0) ** (degA[i] * degB[j])
    return P


class NotFactorizableError(ValueError):
    def __init__(self, message: str, rank: int, unknowns: int):
        super().__init__(message)
        self.rank = rank
        self.unknowns = unknowns


def factorize_dual(
    E: EntwiningStructure,
    pairing: np.ndarray | None = None,
    tol: float = DEFAULT_TOL,
    rank_tol: float = 1e-9,
) -> tuple[np.ndarray, list[CheckResult]]:
    """Solve (ev (x) id)(id (x) tau~) = (id (x) ev)(tau (x) id) for tau~ : A (x) C* -> C* (x) A.

    ``pairing[i, j] = <c_i, phi_j>``; the canonical dual-basis pairing is the
    identity.  The system is solved as a linear system in the entries of tau~,
    and the solution is then certified as an algebra cross for (C*, A).
    """
    pre = check_entwining(E, tol)
    failed = [c.name for c in pre if not c.passed]
    if failed:
        raise NotFactorizableError(f"entwining axioms fail: {', '.join(failed)}", 0, 0)
    a, c = E.A.dim, E.C.dim
    ev = np.eye(c) if pairing is None else np.asarray(pairing, dtype=complex)
    if ev.shape != (c, c):
        raise DimensionError(f"pairing must be {c}x{c}")
    ev_row = ev.reshape(1, c * c)  # C (x) C* -> k
    # unknown X: (c*a) x (a*c), vec in row-major order; lhs(X) = L X R
    L = kron(ev_row, I(a))  # C (x) C* (x) A -> A
    rhs = kron(I(a), ev_row) @ kron(E.tau, I(c))  # (a) x (c*a*c)
    # (ev (x) id)(id_C (x) X): column (f, x, phi) -> sum over X
    coeff = np.zeros((a * c * a * c, (c * a) * (a * c)), dtype=complex)
    for col in range(c * a * c):
        f, rest = divmod(col, a * c)
        # input basis vector e_f (x) e_rest, image under id (x) X is e_f (x) X[:, rest]
        for row_out in range(c * a):
            unknown = row_out * (a * c) + rest
            image = np.zeros(c * c * a, dtype=complex)
            image[f * c * a + row_out] = 1.0
            coeff[col * a : (col + 1) * a, unknown] += L @ image
    target = rhs.T.reshape(-1)  # ordered (col, out)
    s = np.linalg.svd(coeff, compute_uv=False)
    unknowns = coeff.shape[1]
    rank = int(np.sum(s > rank_tol * s[0])) if s.size and s[0] > 0 else 0
    sol, *_ = np.linalg.lstsq(coeff, target, rcond=None)
    consistency = max_abs(coeff @ sol - target)
    if rank < unknowns:
        raise NotFactorizableError(
            f"not factorizable: solution not unique (rank {rank} < {unknowns} unknowns)", rank, unknowns
        )
    if consistency > tol:
        raise NotFactorizableError(
            f"not factorizable: inconsistent system (residual {consistency:.3g})", rank, unknowns
        )
    tau_t = sol.reshape(c * a, a * c)
    Cstar = dual_algebra(E.C)
    X = CrossSymmetry(Cstar, E.A, tau_t)
    checks = [CheckResult.from_residual("factorize.consistent", consistency, tol)]
    checks += [CheckResult.from_residual(k, v, tol) for k, v in cross_residuals(X).items()]
    return tau_t, checks


def _tau_from_blocks(phi: np.ndarray) -> np.ndarray:
    """tau(c_k (x) a) = sum_l phi[k, l](a) (x) c_l; ``phi[k, l]`` is a dimA x dimA matrix."""
    c, _, a, _ = phi.shape
    t = np.zeros((a * c, c * a), dtype=complex)
    for k in range(c):
        for l in range(c):
            for a_out in range(a):
                for a_in in range(a):
                    t[a_out * c + l, k * a + a_in] = phi[k, l, a_out, a_in]
    return t


def shift_entwining() -> EntwiningStructure:
    """tau(c_k (x) g^d) = g^d (x) c_{k+d} over C[Z_2] and two grouplikes."""
    phi = np.zeros((2, 2, 2, 2))
    for k in range(2):
        for d in range(2):
            phi[k, (k + d) % 2, d, d] = 1.0
    return EntwiningStructure(group_algebra(2), grouplike_coalgebra(2), _tau_from_blocks(phi))


def mutant_entwining(axiom: str) -> EntwiningStructure:
    """Perturbation of the flip over C[Z_2] and two grouplikes breaking one axiom only.

    ``axiom`` is one of ENTWINING_AXIOMS.
    """
    eye = np.eye(2)
    phi = np.zeros((2, 2, 2, 2))
    phi[0, 0] = phi[1, 1] = eye
    onto_unit = np.array([[1.0, 0.0], [0.0, 0.0]])  # projection onto 1 along g
    sign = np.diag([1.0, -1.0])  # automorphism g -> -g
    to_unit = np.array([[1.0, 1.0], [0.0, 0.0]])  # g -> 1, an algebra map, not unit-preserving on C
    if axiom == "multiplicative":
        phi[0, 0], phi[0, 1] = onto_unit, eye - onto_unit
    elif axiom == "unital":
        phi[1, 0], phi[1, 1] = eye, np.zeros((2, 2))
    elif axiom == "comultiplicative":
        phi[1, 1], phi[1, 0] = sign, eye - sign
    elif axiom == "counital":
        phi[1, 1] = to_unit
    else:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {ENTWINING_AXIOMS}")
    return EntwiningStructure(group_algebra(2), grouplike_coalgebra(2), _tau_from_blocks(phi))
