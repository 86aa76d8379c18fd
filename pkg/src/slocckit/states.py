"""State vectors, local operators, and coefficient-matrix reshaping.

Qubit 1 is the most significant bit of a basis label, so the label of
``|ijkl>`` reads left to right.  A state of 4n qubits is reshaped into a
2^(2n) x 2^(2n) coefficient matrix by a split of the qubits into 2n row
bits and 2n column bits; the default split takes qubits 1..2n as rows.
States carry an optional exact Gaussian-rational amplitude mirror which
survives reshaping and rational operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from slocckit.exactnum import GaussianRational
from slocckit.numkit import ComplexMatrix

_DET_FLOOR = 1e-3


class ZeroStateError(ValueError):
    """All amplitudes vanish; the zero vector is not a state."""


class ArityError(ValueError):
    """Operator count or split does not match the qubit count."""


class SingularOperatorError(ValueError):
    """A local operator is not invertible."""


def _exact_amplitudes(scalars) -> tuple[GaussianRational, ...] | None:
    out = []
    for x in scalars:
        g = x if isinstance(x, GaussianRational) else GaussianRational.from_value(x)
        if g is None:
            return None
        out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class StateVector:
    """Pure state of ``num_qubits`` qubits, not necessarily normalized."""

    num_qubits: int
    amplitudes: np.ndarray
    exact: tuple[GaussianRational, ...] | None = None

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("a state needs at least one qubit")
        arr = np.array(self.amplitudes, dtype=complex)
        if arr.shape != (2**self.num_qubits,):
            raise ValueError(
                f"expected {2**self.num_qubits} amplitudes for {self.num_qubits} qubits, "
                f"got shape {arr.shape}"
            )
        if not np.any(arr):
            raise ZeroStateError("all amplitudes vanish")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)
        if self.exact is not None and len(self.exact) != arr.shape[0]:
            raise ValueError("exact mirror length mismatch")

    @classmethod
    def from_scalars(cls, scalars: Sequence) -> "StateVector":
        """Build from a full amplitude list, exact when every entry is exact."""
        scalars = list(scalars)
        n = len(scalars).bit_length() - 1
        if 2**n != len(scalars):
            raise ValueError("amplitude count must be a power of two")
        exact = _exact_amplitudes(scalars)
        if exact is not None:
            return cls(n, np.array([complex(x) for x in exact]), exact)
        return cls(n, np.array(scalars, dtype=complex), None)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def scaled(self, factor) -> "StateVector":
        g = factor if isinstance(factor, GaussianRational) else GaussianRational.from_value(factor)
        if self.exact is not None and g is not None:
            return StateVector.from_scalars([a * g for a in self.exact])
        return StateVector(self.num_qubits, self.amplitudes * complex(factor), None)


@dataclass(frozen=True)
class QubitSplit:
    """Partition of qubits 1..4n into ordered row bits and column bits."""

    row_qubits: tuple[int, ...]
    column_qubits: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.row_qubits)
        cols = tuple(self.column_qubits)
        object.__setattr__(self, "row_qubits", rows)
        object.__setattr__(self, "column_qubits", cols)
        total = len(rows) + len(cols)
        if len(rows) != len(cols):
            raise ArityError("row and column halves must have equal size")
        if set(rows) & set(cols):
            raise ArityError("row and column qubits overlap")
        if set(rows) | set(cols) != set(range(1, total + 1)):
            raise ArityError(f"split must cover qubits 1..{total} exactly")

    @classmethod
    def default(cls, num_qubits: int) -> "QubitSplit":
        if num_qubits % 2 != 0:
            raise ArityError("splits need an even number of qubits")
        half = num_qubits // 2
        return cls(tuple(range(1, half + 1)), tuple(range(half + 1, num_qubits + 1)))

    @property
    def num_qubits(self) -> int:
        return len(self.row_qubits) + len(self.column_qubits)


@dataclass(frozen=True)
class LocalOperatorSet:
    """One invertible 2x2 operator per qubit."""

    ops: tuple[np.ndarray, ...]
    exact_ops: tuple[tuple[tuple[GaussianRational, ...], ...], ...] | None = None

    def __post_init__(self):
        mats = []
        for op in self.ops:
            m = np.array(op, dtype=complex)
            if m.shape != (2, 2):
                raise ValueError("local operators must be 2x2")
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "ops", tuple(mats))
        if any(d == 0 for d in self.dets):
            raise SingularOperatorError("local operators must be invertible")

    @classmethod
    def from_matrices(cls, mats: Iterable) -> "LocalOperatorSet":
        mats = list(mats)
        exact = []
        for m in mats:
            rows = [list(r) for r in m] if not isinstance(m, np.ndarray) else m.tolist()
            grid = _exact_amplitudes([x for row in rows for x in row])
            if grid is None:
                exact = None
                break
            exact.append(((grid[0], grid[1]), (grid[2], grid[3])))
        arrs = [np.array([[complex(x) for x in row] for row in (m.tolist() if isinstance(m, np.ndarray) else m)]) for m in mats]
        return cls(tuple(arrs), tuple(exact) if exact else None)

    @property
    def arity(self) -> int:
        return len(self.ops)

    @property
    def dets(self) -> tuple[complex, ...]:
        return tuple(complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]) for m in self.ops)


def identity_operators(num_qubits: int) -> LocalOperatorSet:
    return LocalOperatorSet.from_matrices([[[1, 0], [0, 1]] for _ in range(num_qubits)])


def apply_local_operators(state: StateVector, ops: LocalOperatorSet) -> StateVector:
    """Contract op_1 x op_2 x ... x op_m against the state, one qubit sweep
    at a time; the full 2^m x 2^m operator is never formed."""
    m = state.num_qubits
    if ops.arity != m:
        raise ArityError(f"operator set acts on {ops.arity} qubits, state has {m}")
    psi = state.amplitudes.reshape([2] * m)
    for q in range(m):
        psi = np.moveaxis(np.tensordot(ops.ops[q], psi, axes=([1], [q])), 0, q)
    flat = psi.reshape(-1)
    exact = None
    if state.exact is not None and ops.exact_ops is not None:
        exact = _apply_exact(state.exact, ops.exact_ops, m)
    return StateVector(m, flat, exact)


def _apply_exact(amps, exact_ops, m):
    cur = list(amps)
    for q in range(m):
        (a, b), (c, d) = exact_ops[q]
        shift = m - 1 - q
        nxt = list(cur)
        for i in range(len(cur)):
            if (i >> shift) & 1 == 0:
                j = i | (1 << shift)
                nxt[i] = a * cur[i] + b * cur[j]
                nxt[j] = c * cur[i] + d * cur[j]
        cur = nxt
    return tuple(cur)


def coefficient_matrix(state: StateVector, split: QubitSplit | None = None) -> ComplexMatrix:
    """Reshape amplitudes into the coefficient matrix of the given split.

    Entry (r, c) is the amplitude whose row-qubit bits spell r (first row
    qubit most significant) and column-qubit bits spell c.
    """
    m = state.num_qubits
    if split is None:
        split = QubitSplit.default(m)
    if split.num_qubits != m:
        raise ArityError(f"split covers {split.num_qubits} qubits, state has {m}")
    half = len(split.row_qubits)
    dim = 2**half
    idx = np.arange(2**m)
    r = np.zeros_like(idx)
    c = np.zeros_like(idx)
    for pos, q in enumerate(split.row_qubits):
        r |= ((idx >> (m - q)) & 1) << (half - 1 - pos)
    for pos, q in enumerate(split.column_qubits):
        c |= ((idx >> (m - q)) & 1) << (half - 1 - pos)
    data = np.zeros((dim, dim), dtype=complex)
    data[r, c] = state.amplitudes
    exact = None
    if state.exact is not None:
        grid = [[None] * dim for _ in range(dim)]
        for i in range(2**m):
            grid[r[i]][c[i]] = state.exact[i]
        exact = tuple(tuple(row) for row in grid)
    return ComplexMatrix(data, exact)


def state_from_coefficient_matrix(cm: ComplexMatrix, split: QubitSplit) -> StateVector:
    """Inverse reshaping; coefficient_matrix is a bijective reindexing."""
    m = split.num_qubits
    half = len(split.row_qubits)
    idx = np.arange(2**m)
    r = np.zeros_like(idx)
    c = np.zeros_like(idx)
    for pos, q in enumerate(split.row_qubits):
        r |= ((idx >> (m - q)) & 1) << (half - 1 - pos)
    for pos, q in enumerate(split.column_qubits):
        c |= ((idx >> (m - q)) & 1) << (half - 1 - pos)
    amps = cm.data[r, c]
    exact = None
    if cm.exact is not None:
        exact = tuple(cm.exact[r[i]][c[i]] for i in range(2**m))
    return StateVector(m, amps, exact)


def det_products(ops: LocalOperatorSet, split: QubitSplit) -> tuple[complex, complex]:
    """(g, h): products of operator determinants over row and column qubits."""
    if ops.arity != split.num_qubits:
        raise ArityError("operator set and split arity differ")
    dets = ops.dets
    g = 1.0 + 0j
    for q in split.row_qubits:
        g *= dets[q - 1]
    h = 1.0 + 0j
    for q in split.column_qubits:
        h *= dets[q - 1]
    return g, h


def _cond_2x2(m: np.ndarray) -> float:
    t = float(np.sum(np.abs(m) ** 2))
    d = abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    disc = max(t * t - 4.0 * d * d, 0.0)
    smax2 = (t + disc**0.5) / 2.0
    smin2 = (t - disc**0.5) / 2.0
    if smin2 <= 0.0:
        return float("inf")
    return (smax2 / smin2) ** 0.5


def random_invertible_local_ops(
    num_qubits: int,
    rng_seed: int,
    condition_cap: float = 100.0,
) -> LocalOperatorSet:
    """Deterministic random operator set for invariance fuzzing.

    Entries are uniform on [-1, 1]^2 in the complex plane; candidates are
    rejected until |det| >= 1e-3 and the condition number is within the cap.
    """
    if num_qubits % 4 != 0:
        raise ArityError("fuzzing targets 4n-qubit states")
    rng = np.random.default_rng(rng_seed)
    mats = []
    for _ in range(num_qubits):
        while True:
            m = rng.uniform(-1.0, 1.0, (2, 2)) + 1j * rng.uniform(-1.0, 1.0, (2, 2))
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if abs(det) < _DET_FLOOR or _cond_2x2(m) > condition_cap:
                continue
            mats.append(m)
            break
    return LocalOperatorSet.from_matrices(mats)


# ---------------------------------------------------------------------------
# state construction helpers
# ---------------------------------------------------------------------------

def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    amps = np.kron(a.amplitudes, b.amplitudes)
    exact = None
    if a.exact is not None and b.exact is not None:
        exact = tuple(x * y for x in a.exact for y in b.exact)
    return StateVector(a.num_qubits + b.num_qubits, amps, exact)


def permute_qubits(state: StateVector, new_from_old: Sequence[int]) -> StateVector:
    """Reorder qubits so that new qubit j is old qubit ``new_from_old[j-1]``."""
    m = state.num_qubits
    order = [q - 1 for q in new_from_old]
    if sorted(order) != list(range(m)):
        raise ArityError("permutation must mention every qubit once")
    amps = state.amplitudes.reshape([2] * m).transpose(order).reshape(-1)
    exact = None
    if state.exact is not None:
        obj = np.empty(len(state.exact), dtype=object)
        obj[:] = state.exact
        exact = tuple(obj.reshape([2] * m).transpose(order).reshape(-1))
    return StateVector(m, amps, exact)


def product_state(num_qubits: int, placements: Sequence[tuple[Sequence[int], StateVector]]) -> StateVector:
    """Tensor factors placed on explicit qubit positions.

    ``placements`` is a list of (qubit positions, factor); the positions
    must partition 1..num_qubits.
    """
    concat: list[int] = []
    combined: StateVector | None = None
    for qubits, factor in placements:
        qubits = list(qubits)
        if len(qubits) != factor.num_qubits:
            raise ArityError("factor arity does not match its qubit positions")
        concat.extend(qubits)
        combined = factor if combined is None else tensor_product(combined, factor)
    if combined is None or sorted(concat) != list(range(1, num_qubits + 1)):
        raise ArityError(f"placements must cover qubits 1..{num_qubits} exactly")
    # combined qubit p is the state's qubit concat[p-1]; invert the placement
    new_from_old = [concat.index(q) + 1 for q in range(1, num_qubits + 1)]
    return permute_qubits(combined, new_from_old)
