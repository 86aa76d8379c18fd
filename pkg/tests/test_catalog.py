import numpy as np
import pytest

from slocckit.catalog import (
    NamedState,
    ParameterError,
    UnknownStateError,
    catalog_entries,
    catalog_state,
)
from slocckit.classify import classify
from table_fixtures import lbl


class TestPlainEntries:
    def test_upsilon_amplitudes(self):
        s = catalog_state(NamedState("Upsilon4"))
        assert s.amplitudes[0] == 0 and s.amplitudes[15] == 0
        assert all(s.amplitudes[i] == 1 for i in range(1, 15))

    def test_dicke_two_four(self):
        s = catalog_state(NamedState("Dicke", (2, 4)))
        weight2 = [i for i in range(16) if bin(i).count("1") == 2]
        assert all(s.amplitudes[i] == 1 for i in weight2)
        assert np.count_nonzero(s.amplitudes) == 6

    def test_ghz_w_defaults(self):
        ghz = catalog_state(NamedState("GHZ"))
        assert ghz.num_qubits == 4 and ghz.amplitudes[0] == ghz.amplitudes[15] == 1
        w = catalog_state(NamedState("W", (3,)))
        assert sorted(np.flatnonzero(w.amplitudes)) == [1, 2, 4]

    def test_cluster_amplitudes(self):
        s = catalog_state(NamedState("Cluster"))
        assert s.amplitudes[0] == 1 and s.amplitudes[3] == 1
        assert s.amplitudes[12] == 1 and s.amplitudes[15] == -1

    def test_unknown_name(self):
        with pytest.raises(UnknownStateError):
            catalog_state(NamedState("Nonsense"))

    def test_wrong_parameter_count(self):
        with pytest.raises(ParameterError):
            catalog_state(NamedState("L_a4", (1, 2, 3)))

    def test_entries_listing(self):
        names = {e.name for e in catalog_entries()}
        assert {"GHZ", "W", "EPR", "Cluster", "Dicke", "Upsilon4"} <= names
        assert {"G_abcd", "L_abc2", "L_a2b2", "L_ab3", "L_ab3star", "L_a4"} <= names
        assert {"L_a2_0_3plus1", "L_0_5plus3", "L_0_7plus1", "L_0_3plus1_0_3plus1"} <= names


class TestFamilyAmplitudes:
    def test_l_ab3_structure(self):
        s = catalog_state(NamedState("L_ab3", (0, 1)))
        isq2 = 1j / np.sqrt(2.0)
        for label in ("0001", "0010", "0111", "1011"):
            assert s.amplitudes[int(label, 2)] == pytest.approx(isq2)
        assert s.amplitudes[int("0101", 2)] == pytest.approx(0.5)
        assert s.amplitudes[int("0110", 2)] == pytest.approx(-0.5)

    def test_l_ab3star_sign_flip(self):
        plain = catalog_state(NamedState("L_ab3", (1, 2)))
        star = catalog_state(NamedState("L_ab3star", (1, 2)))
        for label in ("0111", "1011"):
            i = int(label, 2)
            assert star.amplitudes[i] == pytest.approx(-plain.amplitudes[i])
        for label in ("0001", "0010", "0000", "0101"):
            i = int(label, 2)
            assert star.amplitudes[i] == pytest.approx(plain.amplitudes[i])

    def test_l_a4_exact(self):
        s = catalog_state(NamedState("L_a4", (0,)))
        assert s.is_exact
        assert s.amplitudes[1] == 1j and s.amplitudes[6] == 1 and s.amplitudes[11] == -1j

    def test_g_abcd_collapses_to_epr_pair(self):
        s = catalog_state(NamedState("G_abcd", (1, 0, 0, 0)))
        nz = sorted(np.flatnonzero(s.amplitudes))
        assert nz == [0, 3, 12, 15]


# Golden classifications frozen from the exact sympy Jordan-form oracle; the
# oracle run itself is repeated in TestOracleCertification below.
GOLDEN_LABELS = {
    ("GHZ", (4,)): lbl((1, 1, 1, 1), (1, 1)),
    ("W", (4,)): lbl((3, 3, 1, 1)),
    ("Cluster", ()): lbl((1, 1, 1, 1), (1,), (1,)),
    ("Dicke", (2, 4)): lbl((1, 1), (1, 1), (1,)),
    ("Upsilon4", ()): lbl((1, 1), (1,), (1,), (1,)),
    ("L_a4", (1,)): lbl((), (4,)),
    ("L_a4", (0,)): lbl((4, 4)),
    ("L_0_5plus3", ()): lbl((5, 3)),
    ("L_0_7plus1", ()): lbl((7, 1)),
    ("L_0_3plus1_0_3plus1", ()): lbl((3, 3, 1, 1)),
    ("L_ab3", (0, 1)): lbl((3, 3), (1,)),
    ("L_ab3star", (0, 1)): lbl((3, 3), (1,)),
    ("L_ab3", (0, 0)): lbl((3, 3, 1, 1)),
    ("L_abc2", (1, 2, 3)): lbl((), (2,), (1,), (1,)),
    ("L_a2b2", (1, 2)): lbl((), (2,), (2,)),
    ("L_a2_0_3plus1", (1,)): lbl((3, 1), (2,)),
    ("G_abcd", (1, 2, 3, 4)): lbl((), (1,), (1,), (1,), (1,)),
}


class TestGoldenClassifications:
    @pytest.mark.parametrize("key", sorted(GOLDEN_LABELS, key=str))
    def test_catalog_state_classifies_to_golden_label(self, key):
        name, params = key
        c = classify(catalog_state(NamedState(name, params)))
        assert c.theta == GOLDEN_LABELS[key]
        assert c.confidence in ("EXACT", "FLOAT")


def _sympy_amplitudes(state):
    import sympy as sp

    if state.exact is not None:
        return [sp.Rational(x.re) + sp.I * sp.Rational(x.im) for x in state.exact]
    out = []
    for z in state.amplitudes:
        re = sp.nsimplify(z.real, [sp.sqrt(2)], rational=False)
        im = sp.nsimplify(z.imag, [sp.sqrt(2)], rational=False)
        out.append(re + sp.I * im)
    return out


class TestOracleCertification:
    """Re-derive the frozen goldens with the independent sympy oracle."""

    @pytest.mark.parametrize("key", sorted(GOLDEN_LABELS, key=str))
    def test_oracle_agrees(self, key):
        from oracles import sympy_jordan_label

        name, params = key
        state = catalog_state(NamedState(name, params))
        tau, pis = sympy_jordan_label(_sympy_amplitudes(state))
        expected = GOLDEN_LABELS[key]
        assert tau == expected.tau
        assert pis == expected.pis
