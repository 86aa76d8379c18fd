from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocckit.exactnum import GaussianRational
from slocckit.ketparse import (
    InconsistentWidthError,
    KetExpression,
    KetSyntaxError,
    ZeroStateError,
    parse_state,
    render,
)


class TestBasicParsing:
    def test_two_term_sum(self):
        s = parse_state("|0000> + |1111>")
        assert s.amplitudes[0] == 1 and s.amplitudes[15] == 1
        assert np.count_nonzero(s.amplitudes) == 2
        assert s.is_exact

    def test_gaussian_coefficient(self):
        s = parse_state("(1+2i)|01> + |10>")
        assert s.amplitudes[1] == 1 + 2j
        assert s.amplitudes[2] == 1
        assert s.exact[1] == GaussianRational(1, 2)

    def test_cancellation_rejected(self):
        with pytest.raises(ZeroStateError):
            parse_state("|00> - |00>")

    def test_rational_and_star(self):
        s = parse_state("1/2 * |0> + 1/2|1>")
        assert s.exact[0] == GaussianRational(Fraction(1, 2))
        assert s.exact[1] == GaussianRational(Fraction(1, 2))

    def test_pure_imaginary_and_leading_sign(self):
        s = parse_state("-2i|10> + |01>")
        assert s.amplitudes[2] == -2j
        assert s.is_exact

    def test_decimal_drops_exactness(self):
        s = parse_state("0.5|0> + |1>")
        assert not s.is_exact
        assert s.amplitudes[0] == 0.5

    def test_duplicate_labels_merge(self):
        s = parse_state("|01> + 2|01> + |10>")
        assert s.amplitudes[1] == 3

    def test_negative_imag_in_parens(self):
        s = parse_state("(1-1/2i)|1> + |0>")
        assert s.exact[1] == GaussianRational(1, Fraction(-1, 2))


class TestErrors:
    def test_syntax_error_carries_position_and_expected(self):
        with pytest.raises(KetSyntaxError) as err:
            parse_state("|00> + ")
        assert err.value.position == 7
        assert "number" in err.value.expected or "ket" in err.value.expected or "term" in err.value.expected

    def test_malformed_ket(self):
        with pytest.raises(KetSyntaxError):
            parse_state("|01x>")

    def test_inconsistent_width(self):
        with pytest.raises(InconsistentWidthError):
            parse_state("|00> + |000>")

    def test_unknown_character(self):
        with pytest.raises(KetSyntaxError):
            parse_state("|00> & |11>")

    def test_empty_input(self):
        with pytest.raises(KetSyntaxError):
            parse_state("   ")

    def test_zero_denominator(self):
        with pytest.raises(KetSyntaxError):
            parse_state("1/0|00>")

    def test_missing_ket_after_coeff(self):
        with pytest.raises(KetSyntaxError) as err:
            parse_state("2 + |00>")
        assert "ket" in err.value.expected


rational = st.fractions(min_value=-9, max_value=9, max_denominator=12)
coefficients = st.builds(GaussianRational, rational, rational)
labels4 = st.text(alphabet="01", min_size=4, max_size=4)


@st.composite
def exact_expressions(draw):
    n_terms = draw(st.integers(min_value=1, max_value=6))
    terms = tuple((draw(coefficients), draw(labels4)) for _ in range(n_terms))
    expr = KetExpression(terms)
    merged = expr.merged()
    if all(c.is_zero for c in merged.values()):
        # steer away from the rejected zero state
        terms = terms + ((GaussianRational(1), "0000"),)
        expr = KetExpression(terms)
    return expr


class TestRoundTrip:
    @settings(max_examples=200)
    @given(exact_expressions())
    def test_render_parse_roundtrip_exact(self, expr):
        text = render(expr)
        reparsed = parse_state(text)
        merged = expr.merged()
        assert reparsed.is_exact
        for idx in range(16):
            expected = merged.get(format(idx, "04b"), GaussianRational(0))
            assert reparsed.exact[idx] == expected

    @settings(max_examples=150)
    @given(st.text(alphabet="01+-*/()|>i. 2", max_size=30))
    def test_parser_is_total(self, text):
        # arbitrary strings either parse or raise a structured error; no crashes
        try:
            parse_state(text)
        except (KetSyntaxError, InconsistentWidthError, ZeroStateError):
            pass
