"""Integer-partition combinatorics behind the SLOCC invariants.

Pure states of 4n qubits are sorted into groups by a spectrum signature
(the algebraic multiplicities of the eigenvalues of the doubled coefficient
matrix) and into finer families by a Jordan label (the multisets of Jordan
block sizes).  Both invariants reduce to integer partitions:

* a :class:`SpectrumSignature` is ``(2k; l_1, ..., l_s)`` where ``2k`` is the
  multiplicity of the zero eigenvalue and ``(l_1, ..., l_s)`` is a partition
  of ``2^(2n) - k`` formed by the multiplicities of the nonzero pairs;
* a :class:`JordanLabel` is ``{tau; pi_1, ..., pi_s}`` where ``tau`` is a
  tri-even partition of ``2k`` (zero-eigenvalue block sizes) and each
  ``pi_i`` is a partition of ``l_i`` (block sizes of one nonzero pair),
  taken as an unordered multiset.

Partitions are plain tuples of ints, weakly decreasing.  Everything here is
exact integer arithmetic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterator

Partition = tuple[int, ...]


# ---------------------------------------------------------------------------
# plain partition machinery
# ---------------------------------------------------------------------------

def canonical_partition(parts) -> Partition:
    """Sort parts weakly decreasing and validate positivity."""
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in p):
        raise ValueError(f"partition parts must be positive: {parts}")
    return p


def weight(p: Partition) -> int:
    return sum(p)


@lru_cache(maxsize=None)
def enumerate_partitions(m: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``m`` in reverse-lexicographic order, ``(m)`` first.

    ``enumerate_partitions(0)`` is the single empty partition.
    """
    if m < 0:
        raise ValueError("cannot partition a negative integer")
    if max_part is None or max_part > m:
        max_part = m
    if m == 0:
        return ((),)
    out: list[Partition] = []
    for first in range(max_part, 0, -1):
        for rest in enumerate_partitions(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def partition_count(m: int) -> int:
    """Number of integer partitions P(m), with P(0) = 1.

    Computed by the bounded-largest-part recurrence, independent of
    :func:`enumerate_partitions` so the two can cross-check each other.
    """
    if m < 0:
        raise ValueError("cannot partition a negative integer")
    # table[j] = number of partitions of j using parts <= current bound
    table = [1] + [0] * m
    for part in range(1, m + 1):
        for j in range(part, m + 1):
            table[j] += table[j - part]
    return table[m]


def conjugate_partition(p: Partition) -> Partition:
    """Transpose of the Young diagram of ``p``."""
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= i) for i in range(1, p[0] + 1))


# ---------------------------------------------------------------------------
# tri-even partitions
# ---------------------------------------------------------------------------

def is_tri_even(p: Partition) -> bool:
    """True when ``p`` has an even number of parts and every even part
    occurs an even number of times."""
    if len(p) % 2 != 0:
        return False
    counts = Counter(p)
    return all(mult % 2 == 0 for part, mult in counts.items() if part % 2 == 0)


@lru_cache(maxsize=None)
def tri_even_partitions(two_k: int) -> tuple[Partition, ...]:
    """All tri-even partitions of the even number ``two_k``."""
    if two_k % 2 != 0 or two_k < 0:
        raise ValueError(f"tri-even partitions are defined for even m >= 0, got {two_k}")
    return tuple(p for p in enumerate_partitions(two_k) if is_tri_even(p))


def tri_even_count(two_k: int) -> int:
    return len(tri_even_partitions(two_k))


# ---------------------------------------------------------------------------
# multiset counting
# ---------------------------------------------------------------------------

def rho(l: int, j: int) -> int:
    """Number of unordered j-tuples of partitions of ``l``.

    Stars and bars: distributing j identical slots over the P(l) distinct
    partitions gives C(j + P(l) - 1, j).
    """
    if l < 1 or j < 1:
        raise ValueError("rho requires l >= 1 and j >= 1")
    return comb(j + partition_count(l) - 1, j)


# ---------------------------------------------------------------------------
# invariant value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumSignature:
    """Spectrum type ``(2k; l_1, ..., l_s)``.

    ``k`` is half the algebraic multiplicity of the zero eigenvalue and
    ``ells`` collects the multiplicities of the distinct nonzero pairs,
    stored as a weakly decreasing partition.
    """

    k: int
    ells: Partition

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("zero-eigenvalue multiplicity cannot be negative")
        object.__setattr__(self, "ells", canonical_partition(self.ells))

    @property
    def zero_am(self) -> int:
        return 2 * self.k

    @property
    def matrix_dim(self) -> int:
        """Dimension 2^(2n+1) implied by the multiplicity balance."""
        return 2 * (self.k + weight(self.ells))

    def render(self) -> str:
        ells = ",".join(str(x) for x in self.ells)
        return f"({self.zero_am}; {ells})" if ells else f"({self.zero_am}; )"


@dataclass(frozen=True)
class JordanLabel:
    """Jordan-form type ``{tau; pi_1, ..., pi_s}``.

    ``tau`` is the partition of zero-eigenvalue block sizes; ``pis`` is the
    unordered multiset of block-size partitions of the nonzero pairs.  The
    constructor canonicalizes, so labels built from permuted inputs compare
    equal.  The all-ones ``tau`` with no nonzero part is rejected: it
    describes the zero matrix, which no nonzero state produces.
    """

    tau: Partition
    pis: tuple[Partition, ...] = field(default=())

    def __post_init__(self):
        tau = canonical_partition(self.tau)
        pis = canonical_pis(self.pis)
        if not pis and tau and all(x == 1 for x in tau):
            raise ValueError("all-ones zero label with no nonzero blocks is the zero matrix")
        if any(not p for p in pis):
            raise ValueError("nonzero-pair partitions must be nonempty")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "pis", pis)

    def signature(self) -> SpectrumSignature:
        """The spectrum signature this label refines."""
        if sum(self.tau) % 2 != 0:
            raise ValueError("zero block sizes must sum to an even multiplicity")
        return SpectrumSignature(sum(self.tau) // 2, tuple(weight(p) for p in self.pis))

    def is_structurally_valid(self) -> bool:
        """Tri-even zero part; every classification must satisfy this."""
        return is_tri_even(self.tau)

    def render(self) -> str:
        tau = "(" + ",".join(str(x) for x in self.tau) + ")" if self.tau else "phi"
        pis = ", ".join("(" + ",".join(str(x) for x in p) + ")" for p in self.pis)
        return f"{{{tau}; {pis}}}" if pis else f"{{{tau}; }}"


def canonical_pis(pis) -> tuple[Partition, ...]:
    """Canonical order for a multiset of partitions.

    Weight descending first, then lexicographically descending on parts;
    this makes multiset equality a tuple comparison.
    """
    normalized = [canonical_partition(p) for p in pis]
    return tuple(sorted(normalized, key=lambda p: (-weight(p), tuple(-x for x in p))))


# ---------------------------------------------------------------------------
# enumeration of all invariant values for 4n qubits
# ---------------------------------------------------------------------------

def enumerate_spectrum_types(n: int) -> list[SpectrumSignature]:
    """All spectrum signatures for 4n qubits.

    One signature per k in 0..2^(2n) and partition of 2^(2n) - k; the total
    is sum_{i=0}^{2^(2n)} P(i).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    big_n = 4**n
    out = []
    for k in range(big_n + 1):
        for ells in enumerate_partitions(big_n - k):
            out.append(SpectrumSignature(k, ells))
    return out


def spectrum_type_count(n: int) -> int:
    return sum(partition_count(i) for i in range(4**n + 1))


def labels_for_signature(sig: SpectrumSignature) -> Iterator[JordanLabel]:
    """All Jordan labels refining one spectrum signature.

    Unordered choices across repeated multiplicities are produced by
    combinations with replacement per distinct value, so each label appears
    exactly once.
    """
    pis_choices_per_value = []
    for value, mult in sorted(Counter(sig.ells).items(), reverse=True):
        pool = enumerate_partitions(value)
        pis_choices_per_value.append(list(combinations_with_replacement(pool, mult)))
    for tau in tri_even_partitions(sig.zero_am):
        if not sig.ells and all(x == 1 for x in tau) and tau:
            continue  # zero matrix
        stack = [()]
        for choices in pis_choices_per_value:
            stack = [acc + chosen for acc in stack for chosen in choices]
        for pis in stack:
            yield JordanLabel(tau, pis)


def enumerate_sjnf_types(n: int) -> Iterator[JordanLabel]:
    """Stream all Jordan labels for 4n qubits; eta(n) - 1 in total."""
    for sig in enumerate_spectrum_types(n):
        yield from labels_for_signature(sig)


def eta(n: int) -> int:
    """Closed-form count of partition lists.

    eta = sum_k P*(2k) * sum over partitions w of 2^(2n)-k of the product of
    rho(value, multiplicity) over the distinct values of w.  The number of
    distinct Jordan labels is eta - 1 (the zero matrix is removed).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    big_n = 4**n
    total = 0
    for k in range(big_n + 1):
        star = tri_even_count(2 * k)
        inner = 0
        for w in enumerate_partitions(big_n - k):
            prod = 1
            for value, mult in Counter(w).items():
                prod *= rho(value, mult)
            inner += prod
        total += star * inner
    return total


def sjnf_type_count(n: int) -> int:
    return eta(n) - 1
