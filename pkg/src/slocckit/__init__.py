"""slocckit: SLOCC classification of 4n-qubit pure states.

The classification pipeline reshapes a state vector into a coefficient
matrix, conjugates it into a doubled complex-symmetric matrix, and reads the
SLOCC invariants off that matrix's spectrum and Jordan structure: the
spectrum signature Xi and the Jordan label theta, both reducible to integer
partitions.  States with different invariants are SLOCC inequivalent.

Quick start::

    from slocckit import classify, compare, parse_state

    c = classify(parse_state("|0000> + |1111>"))
    print(c.xi.render(), c.theta.render())
"""

from slocckit.catalog import NamedState, catalog_entries, catalog_state
from slocckit.classify import (
    Classification,
    ComparisonVerdict,
    RunConfig,
    classify,
    compare,
    emit_tables,
    genuine_entanglement,
    product_label_sets,
)
from slocckit.fuzz import invariance_trial, run_trials
from slocckit.ketparse import parse_state
from slocckit.partitions import JordanLabel, SpectrumSignature
from slocckit.states import QubitSplit, StateVector

__all__ = [
    "Classification",
    "ComparisonVerdict",
    "JordanLabel",
    "NamedState",
    "QubitSplit",
    "RunConfig",
    "SpectrumSignature",
    "StateVector",
    "catalog_entries",
    "catalog_state",
    "classify",
    "compare",
    "emit_tables",
    "genuine_entanglement",
    "invariance_trial",
    "parse_state",
    "product_label_sets",
    "run_trials",
]

__version__ = "0.1.0"
