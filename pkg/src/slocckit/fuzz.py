"""Randomized executable verification of the invariance theorems.

A trial draws an invertible local operator set, transforms a state, and
classifies both sides.  Equality of the invariants is the theorem's
prediction; on top of that the nonzero eigenvalues must map by the factor
sqrt(g h), where g and h are the determinant products of the row-qubit and
column-qubit operators, block sizes must match cluster by cluster, and the
unitary identities behind the determinant products must hold on the trial's
operator set.  Any failure is reported with the violated clause; a clean
theorem with a failing trial means an implementation or tolerance bug.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from slocckit import numkit
from slocckit.classify import Classification, RunConfig, classify
from slocckit.phi import verify_appendix_a
from slocckit.states import (
    QubitSplit,
    StateVector,
    apply_local_operators,
    det_products,
    random_invertible_local_ops,
)

RATIO_TOL = 1e-6
EIGVEC_TOL = 1e-8


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of one invariance trial."""

    seed: int
    descriptor: str
    g: complex
    h: complex
    xi_equal: bool
    theta_equal: bool
    max_ratio_error: float
    blocks_match: bool
    appendix_a_residual: float
    failures: tuple[str, ...]
    base: Classification
    transformed: Classification

    @property
    def passed(self) -> bool:
        return not self.failures


def invariance_trial(
    state: StateVector,
    seed: int,
    descriptor: str = "",
    condition_cap: float = 100.0,
    config: RunConfig | None = None,
    base: Classification | None = None,
    ops=None,
) -> InvarianceReport:
    """One randomized check of the invariance of Xi, theta, and the spectrum map.

    ``base`` may carry a precomputed classification of ``state`` so batch
    runs classify the untouched side once; ``ops`` overrides the random
    operator draw (deterministic corner cases like identity operators).
    """
    nq = state.num_qubits
    split = QubitSplit.default(nq)
    if ops is None:
        ops = random_invertible_local_ops(nq, seed, condition_cap)
    transformed_state = apply_local_operators(state, ops)
    g, h = det_products(ops, split)
    c1 = base if base is not None else classify(state, split, config)
    c2 = classify(transformed_state, split, config)
    failures: list[str] = []
    if c1.xi != c2.xi:
        failures.append(f"xi changed: {c1.xi.render()} -> {c2.xi.render()}")
    if c1.theta != c2.theta:
        failures.append(f"theta changed: {c1.theta.render()} -> {c2.theta.render()}")
    ratio_err, blocks_ok, notes = _spectral_map_check(c1, c2, g, h)
    failures.extend(notes)
    if ratio_err > RATIO_TOL:
        failures.append(f"spectral ratio error {ratio_err:.3e} exceeds {RATIO_TOL:g}")
    report = verify_appendix_a(ops, split)
    if not report.passed:
        failures.append(
            f"determinant-product identity residual {report.max_residual:.3e}"
        )
    return InvarianceReport(
        seed=seed,
        descriptor=descriptor,
        g=g,
        h=h,
        xi_equal=c1.xi == c2.xi,
        theta_equal=c1.theta == c2.theta,
        max_ratio_error=ratio_err,
        blocks_match=blocks_ok,
        appendix_a_residual=report.max_residual,
        failures=tuple(failures),
        base=c1,
        transformed=c2,
    )


def _spectral_map_check(c1: Classification, c2: Classification, g: complex, h: complex):
    """Match nonzero eigenvalue pairs of the transformed state against
    +-sqrt(gh) times the originals and compare block data."""
    root = complex(np.sqrt(g * h))
    pairs1 = _pair_entries(c1)
    pairs2 = _pair_entries(c2)
    notes: list[str] = []
    if len(pairs1) != len(pairs2):
        notes.append(
            f"nonzero pair count changed: {len(pairs1)} -> {len(pairs2)}"
        )
        return float("inf"), False, notes
    worst = 0.0
    blocks_ok = True
    remaining = list(pairs2)
    for entry in pairs1:
        target = root * entry.eigenvalue
        best_i = None
        best_err = float("inf")
        for i, cand in enumerate(remaining):
            err = min(abs(cand.eigenvalue - target), abs(cand.eigenvalue + target))
            if err < best_err:
                best_err = err
                best_i = i
        cand = remaining.pop(best_i)
        worst = max(worst, best_err / max(abs(target), 1e-300))
        if cand.algebraic_multiplicity != entry.algebraic_multiplicity or cand.segre != entry.segre:
            blocks_ok = False
            notes.append(
                f"pair {entry.eigenvalue:.6g}: blocks {entry.segre} x{entry.algebraic_multiplicity} "
                f"-> {cand.segre} x{cand.algebraic_multiplicity}"
            )
    return worst, blocks_ok, notes


def _pair_entries(c: Classification):
    out = []
    seen = set()
    for e in c.eigen_report:
        if e.eigenvalue == 0:
            continue
        key = min(complex(e.eigenvalue), -complex(e.eigenvalue), key=lambda z: (z.real, z.imag))
        if key in seen:
            continue
        seen.add(key)
        out.append(e)
    return out


@dataclass(frozen=True)
class FuzzSummary:
    descriptor: str
    trials: int
    passes: int
    worst_ratio_error: float
    worst_appendix_residual: float
    failed_seeds: tuple[int, ...]

    @property
    def all_passed(self) -> bool:
        return self.passes == self.trials

    def render(self) -> str:
        status = "PASS" if self.all_passed else "FAIL"
        lines = [
            f"{status}: {self.passes}/{self.trials} trials on {self.descriptor}",
            f"  worst spectral ratio error: {self.worst_ratio_error:.3e}",
            f"  worst determinant-identity residual: {self.worst_appendix_residual:.3e}",
        ]
        if self.failed_seeds:
            lines.append(f"  failing seeds: {list(self.failed_seeds)}")
        return "\n".join(lines)


def run_trials(
    state: StateVector,
    trials: int,
    seed: int = 0,
    descriptor: str = "state",
    condition_cap: float = 100.0,
    config: RunConfig | None = None,
) -> FuzzSummary:
    """Run consecutive-seed invariance trials; reports merge in seed order."""
    base = classify(state, QubitSplit.default(state.num_qubits), config)
    worst_ratio = 0.0
    worst_app = 0.0
    passes = 0
    failed: list[int] = []
    for s in range(seed, seed + trials):
        rep = invariance_trial(
            state, s, descriptor, condition_cap, config, base=base
        )
        worst_ratio = max(worst_ratio, rep.max_ratio_error)
        worst_app = max(worst_app, rep.appendix_a_residual)
        if rep.passed:
            passes += 1
        else:
            failed.append(s)
    return FuzzSummary(descriptor, trials, passes, worst_ratio, worst_app, tuple(failed))


# ---------------------------------------------------------------------------
# eigenvector map check (the chain-scaling machinery, tested at the
# block-size level plus eigenvector residuals)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigvecMapReport:
    max_residual: float
    checked: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def eigvec_map_check(gamma, g: complex, h: complex, tolerance: float = EIGVEC_TOL) -> EigvecMapReport:
    """Verify the eigenvector transport between M = [[0, G], [G^t, 0]] and
    D = [[0, hG], [gG^t, 0]].

    For an eigenvector (v', v'') of M with eigenvalue lambda != 0, the
    vector W = (s v', v'') with s = sqrt(h/g) satisfies D W = t lambda W for
    t = h / s (a square root of gh consistent with s).  Kernel vectors of M
    are kernel vectors of D unchanged.
    """
    gam = np.asarray(gamma, dtype=complex)
    n = gam.shape[0]
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    m[:n, n:] = gam
    m[n:, :n] = gam.T
    d = np.zeros_like(m)
    d[:n, n:] = h * gam
    d[n:, :n] = g * gam.T
    s = complex(np.sqrt(h / g))
    t = h / s
    scale = max(1.0, float(np.linalg.norm(d)))
    eigs = numkit.eigenvalues(m)
    clusters = numkit.cluster_eigenvalues(eigs)
    worst = 0.0
    checked = 0
    for cl in clusters:
        lam = cl.representative
        vecs = numkit.null_space(m - lam * np.eye(2 * n))
        for v in vecs.T:
            checked += 1
            if cl.is_zero:
                resid = float(np.linalg.norm(d @ v)) / (scale * float(np.linalg.norm(v)))
            else:
                w = np.concatenate([s * v[:n], v[n:]])
                resid = float(np.linalg.norm(d @ w - t * lam * w)) / (
                    scale * float(np.linalg.norm(w))
                )
            worst = max(worst, resid)
    return EigvecMapReport(worst, checked, tolerance)
