"""Catalog of named states.

Standard fixtures (GHZ, W, EPR, Cluster, Dicke, the four-qubit Upsilon
state) plus the nine four-qubit family representatives of Verstraete,
Dehaene, De Moor, and Verschelde (PRA 65, 052112), with the starred variant
of Chterental and Djokovic that flips the last two signs of L_ab3.  States
are intentionally not normalized: the classification invariants ignore
global scale, and skipping 1/sqrt(2) factors keeps amplitudes exact where
possible.

Amplitude lists use qubit 1 as the most significant bit of the label.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from slocckit.exactnum import GaussianRational
from slocckit.states import StateVector

SQRT1_2 = 2.0**-0.5


class UnknownStateError(ValueError):
    """Name not present in the catalog."""


class ParameterError(ValueError):
    """Wrong parameter count or invalid parameter values."""


@dataclass(frozen=True)
class NamedState:
    """A catalog reference: name plus concrete scalar parameters."""

    name: str
    parameters: tuple = ()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameter_names: tuple[str, ...]
    description: str
    builder: Callable


def _amap(entries: dict[str, object], width: int) -> list:
    amps: list = [0] * (2**width)
    for label, value in entries.items():
        amps[int(label, 2)] = value
    return amps


def _half(x):
    """x/2 staying exact for exact x."""
    if isinstance(x, GaussianRational):
        return x / 2
    g = GaussianRational.from_value(x)
    if g is not None:
        return g / 2
    return x / 2.0


def _ghz(m: int = 4) -> StateVector:
    m = int(m)
    if m < 2:
        raise ParameterError("GHZ needs at least 2 qubits")
    amps = [0] * 2**m
    amps[0] = 1
    amps[-1] = 1
    return StateVector.from_scalars(amps)


def _w(m: int = 4) -> StateVector:
    m = int(m)
    if m < 2:
        raise ParameterError("W needs at least 2 qubits")
    amps = [0] * 2**m
    for q in range(m):
        amps[1 << q] = 1
    return StateVector.from_scalars(amps)


def _epr() -> StateVector:
    return StateVector.from_scalars([1, 0, 0, 1])


def _zero_qubit() -> StateVector:
    return StateVector.from_scalars([1, 0])


def _cluster() -> StateVector:
    return StateVector.from_scalars(_amap({"0000": 1, "0011": 1, "1100": 1, "1111": -1}, 4))


def _dicke(k: int = 2, m: int = 4) -> StateVector:
    k, m = int(k), int(m)
    if not 0 < k < m:
        raise ParameterError("Dicke weight must satisfy 0 < k < qubit count")
    amps = [1 if bin(i).count("1") == k else 0 for i in range(2**m)]
    return StateVector.from_scalars(amps)


def _upsilon4() -> StateVector:
    amps = [1] * 16
    amps[0] = 0
    amps[15] = 0
    return StateVector.from_scalars(amps)


def _g_abcd(a, b, c, d) -> StateVector:
    return StateVector.from_scalars(
        _amap(
            {
                "0000": _half(a + d), "1111": _half(a + d),
                "0011": _half(a - d), "1100": _half(a - d),
                "0101": _half(b + c), "1010": _half(b + c),
                "0110": _half(b - c), "1001": _half(b - c),
            },
            4,
        )
    )


def _l_abc2(a, b, c) -> StateVector:
    return StateVector.from_scalars(
        _amap(
            {
                "0000": _half(a + b), "1111": _half(a + b),
                "0011": _half(a - b), "1100": _half(a - b),
                "0101": c, "1010": c,
                "0110": 1,
            },
            4,
        )
    )


def _l_a2b2(a, b) -> StateVector:
    return StateVector.from_scalars(
        _amap(
            {
                "0000": a, "1111": a,
                "0101": b, "1010": b,
                "0110": 1, "0011": 1,
            },
            4,
        )
    )


def _l_ab3(a, b, star: bool = False) -> StateVector:
    tail = -1j * SQRT1_2 if star else 1j * SQRT1_2
    entries = {
        "0000": complex(a), "1111": complex(a),
        "0101": complex(_half(a + b)), "1010": complex(_half(a + b)),
        "0110": complex(_half(a - b)), "1001": complex(_half(a - b)),
        "0001": 1j * SQRT1_2, "0010": 1j * SQRT1_2,
        "0111": tail, "1011": tail,
    }
    return StateVector.from_scalars(_amap(entries, 4))


def _l_a4(a) -> StateVector:
    one_i = GaussianRational(0, 1)
    return StateVector.from_scalars(
        _amap(
            {
                "0000": a, "0101": a, "1010": a, "1111": a,
                "0001": one_i, "0110": 1, "1011": -one_i,
            },
            4,
        )
    )


def _l_a2_0_3plus1(a) -> StateVector:
    return StateVector.from_scalars(
        _amap({"0000": a, "1111": a, "0011": 1, "0101": 1, "0110": 1}, 4)
    )


def _l_0_5plus3() -> StateVector:
    return StateVector.from_scalars(_amap({"0000": 1, "0101": 1, "1000": 1, "1110": 1}, 4))


def _l_0_7plus1() -> StateVector:
    return StateVector.from_scalars(_amap({"0000": 1, "1011": 1, "1101": 1, "1110": 1}, 4))


def _l_0_3plus1_0_3plus1() -> StateVector:
    # |0>(|000> + |111>)
    return StateVector.from_scalars(_amap({"0000": 1, "0111": 1}, 4))


_CATALOG: dict[str, CatalogEntry] = {}


def _register(name, params, description, builder):
    _CATALOG[name.lower()] = CatalogEntry(name, tuple(params), description, builder)


_register("GHZ", ("m",), "|0...0> + |1...1> on m qubits (default 4)", _ghz)
_register("W", ("m",), "sum of weight-1 basis states on m qubits (default 4)", _w)
_register("EPR", (), "|00> + |11>", _epr)
_register("Zero", (), "single-qubit |0>", _zero_qubit)
_register("Cluster", (), "|0000> + |0011> + |1100> - |1111>", _cluster)
_register("Dicke", ("k", "m"), "sum of weight-k basis states on m qubits (default 2, 4)", _dicke)
_register("Upsilon4", (), "sum of all 4-qubit basis states minus |0000> and |1111>", _upsilon4)
_register("G_abcd", ("a", "b", "c", "d"), "generic Verstraete family representative", _g_abcd)
_register("L_abc2", ("a", "b", "c"), "Verstraete family L_abc2 representative", _l_abc2)
_register("L_a2b2", ("a", "b"), "Verstraete family L_a2b2 representative", _l_a2b2)
_register("L_ab3", ("a", "b"), "Verstraete family L_ab3 representative", _l_ab3)
_register(
    "L_ab3star",
    ("a", "b"),
    "L_ab3 with the last two plus signs flipped (Chterental-Djokovic)",
    lambda a, b: _l_ab3(a, b, star=True),
)
_register("L_a4", ("a",), "Verstraete family L_a4 representative", _l_a4)
_register("L_a2_0_3plus1", ("a",), "Verstraete family L_a2 0_(3+1) representative", _l_a2_0_3plus1)
_register("L_0_5plus3", (), "Verstraete family L_0_(5+3) representative", _l_0_5plus3)
_register("L_0_7plus1", (), "Verstraete family L_0_(7+1) representative", _l_0_7plus1)
_register(
    "L_0_3plus1_0_3plus1",
    (),
    "Verstraete family L_0_(3+1) 0_(3+1) representative, |0>(|000> + |111>)",
    _l_0_3plus1_0_3plus1,
)


def catalog_entries() -> list[CatalogEntry]:
    return sorted(_CATALOG.values(), key=lambda e: e.name.lower())


def catalog_state(spec: NamedState) -> StateVector:
    """Resolve a named state; parameters are applied positionally.

    Entries with defaults (GHZ, W, Dicke) may be called with no parameters.
    """
    entry = _CATALOG.get(spec.name.lower())
    if entry is None:
        known = ", ".join(e.name for e in catalog_entries())
        raise UnknownStateError(f"unknown state {spec.name!r}; catalog has: {known}")
    params = _normalized_parameters(spec.parameters)
    try:
        return entry.builder(*params)
    except TypeError as exc:
        raise ParameterError(
            f"{entry.name} takes parameters ({', '.join(entry.parameter_names)}), got {len(params)}"
        ) from exc


def _normalized_parameters(parameters: Sequence) -> list:
    out = []
    for p in parameters:
        if isinstance(p, (int, Fraction, GaussianRational)):
            out.append(p)
        elif isinstance(p, float) and p.is_integer():
            out.append(int(p))
        else:
            out.append(complex(p))
    return out
