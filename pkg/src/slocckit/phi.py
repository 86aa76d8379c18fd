"""Construction of the doubled matrix whose Jordan data carries the invariants.

The coefficient matrix C of a 4n-qubit state is conjugated by the fixed
unitary U (an n-fold Kronecker power of a 4x4 seed T) into Gamma = U C U+,
then doubled into the complex symmetric

    Phi = [[0, Gamma], [Gamma^t, 0]].

T equals 2^(-1/2) times a Gaussian-integer matrix, so Gamma = 2^(-n) *
(T0^(x n)) C (T0^(x n))+ stays Gaussian rational whenever C is; the exact
mirror is propagated that way.  The module also checks the unitary
identities that make determinant products appear: U+ U* is the n-fold power
of the antisymmetric unit, and Q_i = U Delta_i U+ satisfies
Q_i Q_i^t = (product of local determinants) * identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from slocckit.exactnum import GaussianRational
from slocckit.numkit import ComplexMatrix, ExactGrid, exact_matmul
from slocckit.states import LocalOperatorSet, QubitSplit, det_products

# exact Gamma is built only up to this coefficient-matrix size; beyond it the
# Fraction arithmetic would dominate the runtime budget and the float path
# takes over (8 qubits -> 16x16, well inside; 16 qubits -> 256x256, outside)
EXACT_DIM_CAP = 16

_T0_ROWS = (
    (1, 0, 0, 1),
    (0, 1j, 1j, 0),
    (0, -1, 1, 0),
    (1j, 0, 0, -1j),
)


def t_matrix() -> np.ndarray:
    """The fixed 4x4 conjugating unitary (includes the 1/sqrt(2) factor)."""
    return np.array(_T0_ROWS, dtype=complex) / np.sqrt(2.0)


def _t0_exact() -> ExactGrid:
    i = GaussianRational(0, 1)
    one = GaussianRational(1)
    zero = GaussianRational(0)
    return (
        (one, zero, zero, one),
        (zero, i, i, zero),
        (zero, -one, one, zero),
        (i, zero, zero, -i),
    )


def u_matrix(n: int) -> np.ndarray:
    """Kronecker power T^(x n); unitary of size 4^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    u = t_matrix()
    for _ in range(n - 1):
        u = np.kron(u, t_matrix())
    return u


@lru_cache(maxsize=None)
def _u0_exact(n: int) -> ExactGrid:
    """Gaussian-integer core of U: U = 2^(-n/2) * u0."""
    u = _t0_exact()
    for _ in range(n - 1):
        u = _exact_kron(u, _t0_exact())
    return u


def _exact_kron(a: ExactGrid, b: ExactGrid) -> ExactGrid:
    out = []
    for arow in a:
        for brow in b:
            out.append(tuple(x * y for x in arow for y in brow))
    return tuple(out)


def _exact_conj_transpose(a: ExactGrid) -> ExactGrid:
    return tuple(tuple(a[i][j].conjugate() for i in range(len(a))) for j in range(len(a[0])))


def antisymmetric_unit() -> np.ndarray:
    return np.array([[0, 1], [-1, 0]], dtype=complex)


def antisymmetric_unit_power(m: int) -> np.ndarray:
    u = antisymmetric_unit()
    out = u
    for _ in range(m - 1):
        out = np.kron(out, u)
    return out


@dataclass(frozen=True)
class PhiAnalysisInput:
    """Gamma and Phi for one state and split, with exactness flag."""

    gamma: ComplexMatrix
    phi: ComplexMatrix

    @property
    def exact(self) -> bool:
        return self.phi.exact is not None

    @property
    def half_dim(self) -> int:
        return self.gamma.rows


def build_phi(c: ComplexMatrix) -> PhiAnalysisInput:
    """Gamma = U C U+ and its doubling for a square coefficient matrix.

    The exact mirror is carried through when C has one and the dimension is
    within :data:`EXACT_DIM_CAP`: U contributes two half powers of sqrt(2)
    that pair into a rational global factor 2^(-n).
    """
    if c.rows != c.cols:
        raise ValueError("coefficient matrix must be square")
    dim = c.rows
    n = 0
    while 4**n < dim:
        n += 1
    if 4**n != dim:
        raise ValueError(f"coefficient matrix size {dim} is not a power of 4")
    u = u_matrix(n)
    gamma_f = u @ c.data @ u.conj().T
    gamma_exact = None
    if c.exact is not None and dim <= EXACT_DIM_CAP:
        u0 = _u0_exact(n)
        scale = GaussianRational(Fraction(1, 2**n))
        prod = exact_matmul(exact_matmul(u0, c.exact), _exact_conj_transpose(u0))
        gamma_exact = tuple(tuple(x * scale for x in row) for row in prod)
    gamma = ComplexMatrix(gamma_f, gamma_exact)
    phi_f = np.zeros((2 * dim, 2 * dim), dtype=complex)
    phi_f[:dim, dim:] = gamma_f
    phi_f[dim:, :dim] = gamma_f.T
    phi_exact = None
    if gamma_exact is not None:
        zero = GaussianRational(0)
        phi_rows = []
        for i in range(dim):
            phi_rows.append(tuple([zero] * dim) + gamma_exact[i])
        for j in range(dim):
            phi_rows.append(tuple(gamma_exact[i][j] for i in range(dim)) + tuple([zero] * dim))
        phi_exact = tuple(phi_rows)
    phi = ComplexMatrix(phi_f, phi_exact)
    return PhiAnalysisInput(gamma, phi)


@dataclass(frozen=True)
class AppendixReport:
    """Residuals of the determinant-product identities for one operator set."""

    g: complex
    h: complex
    residual_q1: float
    residual_q2: float
    unit_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.residual_q1, self.residual_q2) <= self.tolerance

    @property
    def max_residual(self) -> float:
        return max(self.residual_q1, self.residual_q2)


def conjugated_operator_pair(ops: LocalOperatorSet, split: QubitSplit) -> tuple[np.ndarray, np.ndarray]:
    """Q1 = U Delta1 U+ and Q2 = U Delta2 U+ for the split's operator halves."""
    n = split.num_qubits // 4
    u = u_matrix(n)
    delta1 = _kron_ops(ops, split.row_qubits)
    delta2 = _kron_ops(ops, split.column_qubits).T
    return u @ delta1 @ u.conj().T, u @ delta2 @ u.conj().T


def _kron_ops(ops: LocalOperatorSet, qubits: tuple[int, ...]) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in qubits:
        out = np.kron(out, ops.ops[q - 1])
    return out


def verify_appendix_a(ops: LocalOperatorSet, split: QubitSplit, tolerance: float = 1e-9) -> AppendixReport:
    """Check Q_i Q_i^t = Q_i^t Q_i = (det product) * I to the given relative error."""
    q1, q2 = conjugated_operator_pair(ops, split)
    g, h = det_products(ops, split)
    dim = q1.shape[0]
    eye = np.eye(dim)

    def rel(q, scalar):
        ref = abs(scalar) * np.sqrt(dim)
        return max(
            float(np.linalg.norm(q @ q.T - scalar * eye)),
            float(np.linalg.norm(q.T @ q - scalar * eye)),
        ) / ref

    n = split.num_qubits // 4
    u = u_matrix(n)
    unit_residual = float(
        np.linalg.norm(u.conj().T @ u.conj() - antisymmetric_unit_power(2 * n))
    )
    return AppendixReport(
        g=g,
        h=h,
        residual_q1=rel(q1, g),
        residual_q2=rel(q2, h),
        unit_residual=unit_residual,
        tolerance=tolerance,
    )
