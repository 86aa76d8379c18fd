"""Dense complex linear algebra kernels.

Everything the classifier needs from linear algebra lives here and is
implemented directly on numpy arrays: eigenvalues by Householder reduction
to Hessenberg form followed by shifted QR iteration with deflation,
numerical rank by column-pivoted QR, exact rank over the Gaussian rationals
by fraction-free elimination, and Jordan structure by rank chains (Weyr
sequences).

Jordan structure is discontinuous in the matrix entries, so the numerical
paths are diagnostics-first: suspicious rank chains and tight eigenvalue
clusters are reported, never silently repaired.  Matrices with exact
Gaussian-rational mirrors get their zero-eigenvalue structure from exact
ranks, which removes the tolerance question entirely for that part.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

import numpy as np

from slocckit.exactnum import GaussianRational

DEFAULT_TOL_RANK = 1e-8
DEFAULT_TOL_CLUSTER = 1e-7

ExactGrid = tuple[tuple[GaussianRational, ...], ...]


class NumericsError(Exception):
    """Base class for numerical-kernel failures."""


class EigenIterationError(NumericsError):
    """QR iteration failed to deflate within the sweep budget."""


class RankMismatchError(NumericsError):
    """Floating-point rank disagrees with the exact rank of the same matrix."""


# ---------------------------------------------------------------------------
# matrix value type
# ---------------------------------------------------------------------------

def as_exact_grid(rows) -> ExactGrid | None:
    """Coerce nested exact scalars to a GaussianRational grid, or None."""
    out = []
    for row in rows:
        exact_row = []
        for x in row:
            g = x if isinstance(x, GaussianRational) else GaussianRational.from_value(x)
            if g is None:
                return None
            exact_row.append(g)
        out.append(tuple(exact_row))
    return tuple(out)


@dataclass(frozen=True)
class ComplexMatrix:
    """Dense complex matrix with an optional exact Gaussian-rational mirror."""

    data: np.ndarray
    exact: ExactGrid | None = None

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex)
        if arr.ndim != 2:
            raise ValueError("ComplexMatrix requires a 2-D array")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        if self.exact is not None:
            if len(self.exact) != arr.shape[0] or any(len(r) != arr.shape[1] for r in self.exact):
                raise ValueError("exact mirror shape mismatch")
            mirror = np.array([[complex(x) for x in row] for row in self.exact])
            scale = max(1.0, float(np.max(np.abs(mirror))) if mirror.size else 1.0)
            if float(np.max(np.abs(mirror - arr))) > 1e-12 * scale:
                raise ValueError("exact mirror disagrees with float entries")

    @classmethod
    def from_rows(cls, rows) -> "ComplexMatrix":
        """Build from nested scalars, keeping an exact mirror when possible."""
        exact = as_exact_grid(rows)
        if exact is not None:
            data = np.array([[complex(x) for x in row] for row in exact])
            return cls(data, exact)
        return cls(np.array(rows, dtype=complex), None)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


def _as_array(m) -> np.ndarray:
    if isinstance(m, ComplexMatrix):
        return m.data
    return np.asarray(m, dtype=complex)


# ---------------------------------------------------------------------------
# eigenvalues: Hessenberg reduction + shifted QR with deflation
# ---------------------------------------------------------------------------

_EPS = float(np.finfo(np.float64).eps)


def _hessenberg(a: np.ndarray) -> np.ndarray:
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        norm_x = float(np.linalg.norm(x))
        if norm_x == 0.0:
            continue
        alpha = x[0]
        phase = alpha / abs(alpha) if abs(alpha) > 0 else 1.0
        v = x.copy()
        v[0] += phase * norm_x
        vn = float(np.linalg.norm(v))
        if vn == 0.0:
            continue
        v /= vn
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def _eig_2x2(a, b, c, d) -> tuple[complex, complex]:
    tr = a + d
    disc = np.sqrt(complex((a - d) * (a - d) + 4.0 * b * c))
    return (tr + disc) / 2.0, (tr - disc) / 2.0


def _givens(f: complex, g: complex) -> tuple[float, complex]:
    """c real, s complex with [[c, s], [-conj(s), c]] @ (f, g) = (r, 0)."""
    if g == 0:
        return 1.0, 0.0
    if f == 0:
        return 0.0, g.conjugate() / abs(g)
    d = float(np.hypot(abs(f), abs(g)))
    c = abs(f) / d
    s = (f / abs(f)) * g.conjugate() / d
    return c, s


def eigenvalues(m, *, sweeps_per_eigenvalue: int = 60) -> np.ndarray:
    """All eigenvalues of a square complex matrix.

    Householder reduction to Hessenberg form, then explicitly shifted QR
    iteration with Wilkinson shifts and deflation.  Raises
    :class:`EigenIterationError` if a block refuses to deflate within the
    sweep budget; the result is never silently unconverged.
    """
    a = _as_array(m)
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("eigenvalues requires a square matrix")
    if n == 0:
        return np.array([], dtype=complex)
    if n == 1:
        return a[0, :1].astype(complex)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return np.zeros(n, dtype=complex)
    h = _hessenberg(a / scale)
    eigs: list[complex] = []
    hi = n - 1
    sweeps = 0
    budget = sweeps_per_eigenvalue * n
    stagnation = 0
    while hi >= 0:
        if hi == 0:
            eigs.append(h[0, 0])
            hi -= 1
            continue
        # zero out negligible subdiagonals in the leading block
        for i in range(hi):
            bound = _EPS * (abs(h[i, i]) + abs(h[i + 1, i + 1]))
            if bound == 0.0:
                bound = _EPS
            if abs(h[i + 1, i]) <= bound:
                h[i + 1, i] = 0.0
        if h[hi, hi - 1] == 0.0:
            eigs.append(h[hi, hi])
            hi -= 1
            stagnation = 0
            continue
        if hi == 1 or h[hi - 1, hi - 2] == 0.0:
            lam1, lam2 = _eig_2x2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            eigs.extend([lam1, lam2])
            hi -= 2
            stagnation = 0
            continue
        lo = hi
        while lo > 0 and h[lo, lo - 1] != 0.0:
            lo -= 1
        sweeps += 1
        stagnation += 1
        if sweeps > budget:
            raise EigenIterationError(
                f"QR iteration did not deflate after {sweeps} sweeps "
                f"(active block {lo}..{hi} of {n}); matrix may be pathological"
            )
        lam1, lam2 = _eig_2x2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        mu = lam1 if abs(lam1 - h[hi, hi]) <= abs(lam2 - h[hi, hi]) else lam2
        if stagnation % 12 == 0:
            # exceptional shift to break symmetric stalls
            mu = h[hi, hi] + 1.5 * abs(h[hi, hi - 1])
        # explicit single-shift QR step on the active block
        idx = slice(lo, hi + 1)
        block = h[idx, idx]
        mdim = hi - lo + 1
        block[np.arange(mdim), np.arange(mdim)] -= mu
        rots = []
        for i in range(mdim - 1):
            c, s = _givens(block[i, i], block[i + 1, i])
            rots.append((c, s))
            rows = block[i:i + 2, i:]
            block[i:i + 2, i:] = np.array([[c, s], [-np.conj(s), c]]) @ rows
            block[i + 1, i] = 0.0
        for i, (c, s) in enumerate(rots):
            cols = block[:min(i + 2, mdim), i:i + 2]
            block[:min(i + 2, mdim), i:i + 2] = cols @ np.array([[c, -s], [np.conj(s), c]])
        block[np.arange(mdim), np.arange(mdim)] += mu
        h[idx, idx] = block
    out = np.array(eigs, dtype=complex) * scale
    return out


# ---------------------------------------------------------------------------
# eigenvalue clustering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenCluster:
    """A group of computed eigenvalues treated as one true eigenvalue."""

    representative: complex
    algebraic_multiplicity: int
    members: tuple[complex, ...]
    is_zero: bool = False


def cluster_eigenvalues(raw, tol_cluster: float = DEFAULT_TOL_CLUSTER) -> list[EigenCluster]:
    """Single-linkage clustering of computed eigenvalues.

    The linkage threshold is ``tol_cluster * max(1, max |lambda|)``; any
    cluster reaching within the threshold of 0 becomes the zero cluster.
    Clusters are returned zero first, then by decreasing magnitude.
    """
    vals = [complex(v) for v in raw]
    if not vals:
        return []
    scale = max(1.0, max(abs(v) for v in vals))
    thresh = tol_cluster * scale
    parent = list(range(len(vals)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if abs(vals[i] - vals[j]) <= thresh:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i, v in enumerate(vals):
        groups.setdefault(find(i), []).append(v)
    clusters = []
    for members in groups.values():
        rep = sum(members) / len(members)
        is_zero = abs(rep) <= thresh or any(abs(v) <= thresh for v in members)
        clusters.append(
            EigenCluster(
                representative=0.0 if is_zero else rep,
                algebraic_multiplicity=len(members),
                members=tuple(members),
                is_zero=is_zero,
            )
        )
    clusters.sort(key=lambda c: (not c.is_zero, -abs(c.representative)))
    return clusters


def clustering_diagnostics(clusters: Sequence[EigenCluster], tol_cluster: float = DEFAULT_TOL_CLUSTER) -> list[str]:
    """Ambiguity report: clusters separated by less than 10x the threshold."""
    all_members = [v for c in clusters for v in c.members]
    if not all_members:
        return []
    scale = max(1.0, max(abs(v) for v in all_members))
    thresh = tol_cluster * scale
    notes = []
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            gap = min(abs(u - v) for u in clusters[i].members for v in clusters[j].members)
            if gap < 10.0 * thresh:
                notes.append(
                    f"clusters near {clusters[i].representative:.6g} and "
                    f"{clusters[j].representative:.6g} are separated by {gap:.3e}, "
                    f"less than 10x the clustering threshold {thresh:.3e}"
                )
    return notes


# ---------------------------------------------------------------------------
# numerical rank: column-pivoted QR
# ---------------------------------------------------------------------------

def _cpqr(a: np.ndarray, tol: float, want_q: bool = False, tol_floor: float = 0.0):
    """Column-pivoted Householder QR.

    Returns (rank, R, perm, Q_range) where Q_range has orthonormal columns
    spanning the numerical range (None unless requested).  Stops early once
    every remaining column is below ``tol`` times the largest column norm or
    below the absolute ``tol_floor`` (used by rank chains, whose products
    can be numerically zero: their own largest column is then junk and must
    not serve as the scale reference).
    """
    r_mat = np.array(a, dtype=complex)
    m, n = r_mat.shape
    perm = np.arange(n)
    reflectors: list[tuple[int, np.ndarray]] = []
    rank_ = 0
    r00 = None
    # squared column norms are downdated after each reflection; the selected
    # pivot is always recomputed exactly, and a full recompute guards every
    # break decision against downdating drift
    norms2 = np.sum(np.abs(r_mat) ** 2, axis=0)
    for k in range(min(m, n)):
        j = int(np.argmax(norms2[k:])) + k
        piv = float(np.linalg.norm(r_mat[k:, j]))
        norms2[j] = piv * piv
        if k == 0:
            r00 = piv
            if r00 == 0.0 or r00 <= tol_floor:
                break
        threshold = max(tol * r00, tol_floor)
        if piv <= threshold:
            norms2[k:] = np.sum(np.abs(r_mat[k:, k:]) ** 2, axis=0)
            j = int(np.argmax(norms2[k:])) + k
            piv = float(np.sqrt(norms2[j]))
            if piv <= threshold:
                break
        if j != k:
            r_mat[:, [k, j]] = r_mat[:, [j, k]]
            norms2[[k, j]] = norms2[[j, k]]
            perm[[k, j]] = perm[[j, k]]
        x = r_mat[k:, k]
        alpha = x[0]
        phase = alpha / abs(alpha) if abs(alpha) > 0 else 1.0
        v = x.copy()
        v[0] += phase * piv
        vn = float(np.linalg.norm(v))
        if vn == 0.0:
            break
        v /= vn
        r_mat[k:, k:] -= 2.0 * np.outer(v, v.conj() @ r_mat[k:, k:])
        r_mat[k + 1:, k] = 0.0
        np.subtract(norms2[k + 1:], np.abs(r_mat[k, k + 1:]) ** 2, out=norms2[k + 1:])
        np.maximum(norms2[k + 1:], 0.0, out=norms2[k + 1:])
        if want_q:
            reflectors.append((k, v))
        rank_ += 1
    q = None
    if want_q:
        q = np.eye(m, rank_, dtype=complex)
        for k, v in reversed(reflectors):
            q[k:, :] -= 2.0 * np.outer(v, v.conj() @ q[k:, :])
    return rank_, r_mat, perm, q


def rank(m, tol_rank: float = DEFAULT_TOL_RANK) -> int:
    """Numerical rank by column-pivoted QR.

    On a :class:`ComplexMatrix` with an exact mirror the exact rank is also
    computed; a disagreement raises :class:`RankMismatchError`, since it
    means the tolerance misjudged the zero structure.
    """
    a = _as_array(m)
    r, _, _, _ = _cpqr(a, tol_rank)
    if isinstance(m, ComplexMatrix) and m.exact is not None:
        re = exact_rank(m.exact)
        if re != r:
            raise RankMismatchError(
                f"numerical rank {r} (tol {tol_rank:g}) != exact rank {re}; "
                f"adjust tol_rank or inspect conditioning"
            )
    return r


def range_basis(a, tol_rank: float = DEFAULT_TOL_RANK) -> tuple[int, np.ndarray]:
    """(rank, orthonormal basis of the numerical column space)."""
    r, _, _, q = _cpqr(_as_array(a), tol_rank, want_q=True)
    return r, q


def null_space(a, tol_rank: float = DEFAULT_TOL_RANK) -> np.ndarray:
    """Orthonormal basis of the numerical null space (columns)."""
    arr = _as_array(a)
    m, n = arr.shape
    r, r_mat, perm, _ = _cpqr(arr, tol_rank)
    if r == n:
        return np.zeros((n, 0), dtype=complex)
    # R11 y1 = -R12 for the permuted coordinates, free part = identity
    basis = np.zeros((n, n - r), dtype=complex)
    if r > 0:
        r11 = r_mat[:r, :r]
        r12 = r_mat[:r, r:n]
        y1 = _solve_upper(r11, -r12)
        basis[:r, :] = y1
    basis[r:, :] = np.eye(n - r)
    unperm = np.empty_like(basis)
    unperm[perm, :] = basis
    _, _, _, q = _cpqr(unperm, 1e-14, want_q=True)
    return q


def _solve_upper(u: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = u.shape[0]
    x = np.array(b, dtype=complex)
    for i in range(n - 1, -1, -1):
        x[i, :] -= u[i, i + 1:] @ x[i + 1:, :]
        x[i, :] /= u[i, i]
    return x


# ---------------------------------------------------------------------------
# exact rank: fraction-free elimination over Gaussian integers
# ---------------------------------------------------------------------------

def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gi_div_exact(a, b):
    norm = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re, norm)
    qi, ri = divmod(im, norm)
    if rr or ri:
        raise ArithmeticError("fraction-free elimination produced a non-exact division")
    return (qr, qi)


def exact_rank(m) -> int:
    """Rank over the Gaussian rationals by fraction-free (Bareiss) elimination.

    Rows are cleared of denominators first (rank-preserving), then eliminated
    over the Gaussian integers with exact divisions only.
    """
    if isinstance(m, ComplexMatrix):
        if m.exact is None:
            raise ValueError("exact_rank requires an exact mirror")
        grid = m.exact
    else:
        grid = as_exact_grid(m)
        if grid is None:
            raise ValueError("exact_rank requires exact Gaussian-rational entries")
    if not grid or not grid[0]:
        return 0
    rows = []
    for row in grid:
        den = 1
        for x in row:
            den = lcm(den, x.re.denominator, x.im.denominator)
        rows.append([(int(x.re * den), int(x.im * den)) for x in row])
    nrows, ncols = len(rows), len(rows[0])
    prev = (1, 0)
    r = 0
    while r < min(nrows, ncols):
        pivot_pos = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                if rows[i][j] != (0, 0):
                    pivot_pos = (i, j)
                    break
            if pivot_pos:
                break
        if pivot_pos is None:
            break
        pi, pj = pivot_pos
        if pi != r:
            rows[r], rows[pi] = rows[pi], rows[r]
        if pj != r:
            for row in rows:
                row[r], row[pj] = row[pj], row[r]
        piv = rows[r][r]
        for i in range(r + 1, nrows):
            row_i = rows[i]
            head = row_i[r]
            prow = rows[r]
            for j in range(r + 1, ncols):
                num = _gi_sub(_gi_mul(piv, row_i[j]), _gi_mul(head, prow[j]))
                row_i[j] = _gi_div_exact(num, prev)
            row_i[r] = (0, 0)
        prev = piv
        r += 1
    return r


def exact_matmul(a: ExactGrid, b: ExactGrid) -> ExactGrid:
    """Exact product of GaussianRational grids, skipping zero entries."""
    n, k = len(a), len(a[0])
    k2, m = len(b), len(b[0])
    if k != k2:
        raise ValueError("shape mismatch in exact_matmul")
    zero = GaussianRational(0)
    bt = list(zip(*b))
    out = []
    for row in a:
        live = [(j, x) for j, x in enumerate(row) if not x.is_zero]
        out_row = []
        for col in range(m):
            bcol = bt[col]
            acc = zero
            for j, x in live:
                y = bcol[j]
                if not y.is_zero:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


# ---------------------------------------------------------------------------
# Jordan structure from rank chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClusterJordan:
    """Weyr and Segre data of one eigenvalue cluster."""

    eigenvalue: complex
    algebraic_multiplicity: int
    weyr: tuple[int, ...]      # d_j = dim ker (M - lambda I)^j, strictly rising
    segre: tuple[int, ...]     # Jordan block sizes, weakly decreasing
    exact_zero: bool = False   # zero cluster computed from exact ranks

    @property
    def geometric_multiplicity(self) -> int:
        return len(self.segre)


@dataclass(frozen=True)
class JordanStructure:
    per_cluster: tuple[ClusterJordan, ...]
    diagnostics: tuple[str, ...] = ()

    def for_eigenvalue(self, lam: complex) -> ClusterJordan:
        best = min(self.per_cluster, key=lambda c: abs(c.eigenvalue - lam))
        return best


def segre_from_weyr(weyr: Sequence[int], am: int, label: str = "cluster") -> tuple[tuple[int, ...], list[str]]:
    """Conjugate the first differences of a Weyr chain into block sizes.

    Returns (segre, diagnostics); a chain that saturates away from the
    algebraic multiplicity or has non-monotone differences is reported and
    repaired best-effort rather than raised, so callers can downgrade
    confidence while still emitting a label.
    """
    diagnostics = []
    chain = list(weyr)
    while len(chain) >= 2 and chain[-1] == chain[-2]:
        chain.pop()
    if not chain or chain == [0]:
        return (), diagnostics
    if chain[-1] != am:
        diagnostics.append(
            f"{label}: Weyr chain saturated at {chain[-1]} but algebraic multiplicity is {am}; "
            f"consider adjusting tol_rank"
        )
    chi = [chain[0]] + [chain[i] - chain[i - 1] for i in range(1, len(chain))]
    if any(x <= 0 for x in chi) or any(chi[i] < chi[i + 1] for i in range(len(chi) - 1)):
        diagnostics.append(
            f"{label}: inconsistent Weyr sequence {tuple(chain)}; numerical degeneracy, "
            f"consider adjusting tol_rank"
        )
        chi = sorted((x for x in chi if x > 0), reverse=True)
    segre: list[int] = []
    for i in range(1, (chi[0] if chi else 0) + 1):
        segre.append(sum(1 for x in chi if x >= i))
    return tuple(segre), diagnostics


def _weyr_chain_float(a: np.ndarray, am: int, tol_rank: float) -> list[int]:
    """d_j for (already shifted) matrix a, by re-orthogonalized range collapse.

    rank(a^j)( = rank(a @ Q_{j-1}) for Q_{j-1} an orthonormal range basis of
    a^(j-1), which keeps every factorization well scaled.
    """
    n = a.shape[0]
    chain: list[int] = []
    basis: np.ndarray | None = None
    d_prev = 0
    floor = tol_rank * float(np.linalg.norm(a))
    for _ in range(n):
        b = a if basis is None else a @ basis
        r, _, _, q = _cpqr(b, tol_rank, want_q=True, tol_floor=floor)
        d = n - r
        chain.append(d)
        if d >= am or r == 0 or d == d_prev:
            break
        basis = q
        d_prev = d
    return chain


def zero_weyr_exact(exact: ExactGrid) -> list[int]:
    """Exact Weyr chain of the zero eigenvalue: d_j = n - exact_rank(M^j)."""
    n = len(exact)
    power = exact
    chain: list[int] = []
    prev_d = -1
    while True:
        d = n - exact_rank(power)
        if d == 0:
            return []
        if d == prev_d:
            break
        chain.append(d)
        prev_d = d
        if d == n:
            break
        power = exact_matmul(power, exact)
    return chain


def zero_weyr_float(a, tol_rank: float = DEFAULT_TOL_RANK) -> list[int]:
    """Floating-point Weyr chain at shift exactly zero, saturating on its own."""
    arr = _as_array(a)
    chain = _weyr_chain_float(arr, arr.shape[0], tol_rank)
    while len(chain) >= 2 and chain[-1] == chain[-2]:
        chain.pop()
    if chain == [0]:
        return []
    return chain


def jordan_structure(
    m,
    clusters: Sequence[EigenCluster],
    tol_rank: float = DEFAULT_TOL_RANK,
    exact: ExactGrid | None = None,
) -> JordanStructure:
    """Weyr sequences and Segre partitions per eigenvalue cluster.

    ``d_j = n - rank((M - lambda I)^j)`` until ``d_j`` reaches the cluster's
    algebraic multiplicity; the Segre partition is the conjugate of the
    first differences.  Clusters of multiplicity 1 are forced to a single
    1x1 block without any rank work.  When ``exact`` is supplied (the exact
    mirror of M), the zero cluster's chain uses exact ranks of exact powers.
    """
    a = _as_array(m)
    n = a.shape[0]
    if isinstance(m, ComplexMatrix) and exact is None:
        exact = m.exact
    entries: list[ClusterJordan] = []
    diagnostics: list[str] = []
    for cluster in clusters:
        am = cluster.algebraic_multiplicity
        lam = 0.0 if cluster.is_zero else cluster.representative
        label = "zero cluster" if cluster.is_zero else f"cluster {lam:.6g}"
        exact_zero = False
        if cluster.is_zero and exact is not None:
            chain = zero_weyr_exact(exact)
            exact_zero = True
            if chain and chain[-1] != am:
                diagnostics.append(
                    f"zero cluster: exact zero multiplicity {chain[-1]} disagrees with "
                    f"clustered multiplicity {am}; trusting exact value"
                )
                am = chain[-1]
        elif am == 1:
            chain = [1]
        else:
            shifted = a - lam * np.eye(n)
            chain = _weyr_chain_float(shifted, am, tol_rank)
        if chain and chain[-1] > am:
            diagnostics.append(
                f"{label}: kernel dimension {chain[-1]} exceeds algebraic multiplicity {am}; "
                f"tol_rank may be too loose"
            )
            chain[-1] = am
        segre, segre_diag = segre_from_weyr(chain, am, label)
        diagnostics.extend(segre_diag)
        entries.append(
            ClusterJordan(
                eigenvalue=complex(lam),
                algebraic_multiplicity=am,
                weyr=tuple(chain),
                segre=segre,
                exact_zero=exact_zero,
            )
        )
    return JordanStructure(tuple(entries), tuple(diagnostics))
