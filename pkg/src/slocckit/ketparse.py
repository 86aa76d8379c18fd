"""Recursive-descent parser for textual ket expressions.

Grammar (whitespace insignificant)::

    expr   := [ "+" | "-" ] term { ("+" | "-") term }
    term   := [ coeff [ "*" ] ] ket
    ket    := "|" bit+ ">"
    coeff  := number | "(" number [ ("+" | "-") number "i" ] ")" | number "i"
    number := int | int "/" int | decimal

A leading sign on the first term is accepted as a convenience.  Integer and
rational literals keep the expression on the exact path; any decimal drops
it to floating point.  Duplicate basis labels are merged by coefficient
addition before the state is built, and an expression whose amplitudes all
cancel is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from slocckit.exactnum import GaussianRational
from slocckit.states import StateVector, ZeroStateError

__all__ = [
    "KetExpression",
    "KetSyntaxError",
    "InconsistentWidthError",
    "ZeroStateError",
    "parse_expression",
    "parse_state",
    "render",
]

Coefficient = Union[GaussianRational, complex]


class KetSyntaxError(ValueError):
    """Malformed expression; carries position and the expected token."""

    def __init__(self, message: str, position: int, expected: str):
        super().__init__(f"{message} at position {position} (expected {expected})")
        self.position = position
        self.expected = expected


class InconsistentWidthError(ValueError):
    """Kets of different widths in one expression."""


@dataclass(frozen=True)
class KetExpression:
    """Sum of coefficient-weighted basis kets, prior to merging."""

    terms: tuple[tuple[Coefficient, str], ...]

    @property
    def num_qubits(self) -> int:
        return len(self.terms[0][1])

    def merged(self) -> dict[str, Coefficient]:
        out: dict[str, Coefficient] = {}
        for coeff, label in self.terms:
            if label in out:
                prev = out[label]
                if isinstance(prev, GaussianRational) and isinstance(coeff, GaussianRational):
                    out[label] = prev + coeff
                else:
                    out[label] = complex(prev) + complex(coeff)
            else:
                out[label] = coeff
        return out


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<ket>\|[01]+>)
      | (?P<badket>\|)
      | (?P<decimal>\d+\.\d*|\.\d+)
      | (?P<int>\d+)
      | (?P<imag>i)
      | (?P<op>[+\-*/()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise KetSyntaxError(f"unrecognized character {text[pos]!r}", pos, "term or operator")
        kind = m.lastgroup
        if kind == "badket":
            raise KetSyntaxError("malformed ket", pos, "ket like |0101>")
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, expected: str):
        tok = self.take()
        if tok[0] != kind:
            raise KetSyntaxError(f"unexpected {tok[1]!r}" if tok[1] else "unexpected end of input", tok[2], expected)
        return tok

    def fail(self, expected: str):
        tok = self.peek()
        message = f"unexpected {tok[1]!r}" if tok[1] else "unexpected end of input"
        raise KetSyntaxError(message, tok[2], expected)

    # number := int | int "/" int | decimal
    def number(self) -> Fraction | float:
        kind, value, pos = self.peek()
        if kind == "decimal":
            self.take()
            return float(value)
        if kind == "int":
            self.take()
            if self.peek()[:2] == ("op", "/"):
                self.take()
                denom_tok = self.expect("int", "denominator")
                if int(denom_tok[1]) == 0:
                    raise KetSyntaxError("zero denominator", denom_tok[2], "nonzero integer")
                return Fraction(int(value), int(denom_tok[1]))
            return Fraction(int(value))
        self.fail("number")

    def _imag_if_present(self) -> bool:
        if self.peek()[0] == "imag":
            self.take()
            return True
        return False

    # coeff := number ["i"] | "(" number [sign number "i"] ")"
    def coefficient(self) -> Coefficient:
        kind, value, pos = self.peek()
        if kind == "op" and value == "(":
            self.take()
            first = self.number()
            first_imag = self._imag_if_present()
            if first_imag:
                coeff = _make_coeff(0, first)
            elif self.peek()[:2] in (("op", "+"), ("op", "-")):
                sign = 1 if self.take()[1] == "+" else -1
                second = self.number()
                tok = self.peek()
                if tok[0] != "imag":
                    self.fail("'i' after imaginary part")
                self.take()
                coeff = _make_coeff(first, sign * second)
            else:
                coeff = _make_coeff(first, 0)
            tok = self.take()
            if tok[:2] != ("op", ")"):
                raise KetSyntaxError("unclosed coefficient", tok[2], "')'")
            return coeff
        num = self.number()
        if self._imag_if_present():
            return _make_coeff(0, num)
        return _make_coeff(num, 0)

    # term := [coeff ["*"]] ket
    def term(self) -> tuple[Coefficient, str]:
        kind, value, pos = self.peek()
        if kind == "ket":
            self.take()
            return GaussianRational(1), value[1:-1]
        coeff = self.coefficient()
        if self.peek()[:2] == ("op", "*"):
            self.take()
        ket = self.expect("ket", "ket like |0101>")
        return coeff, ket[1][1:-1]

    def expression(self) -> KetExpression:
        terms = []
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = 1 if self.take()[1] == "+" else -1
        coeff, label = self.term()
        terms.append((_signed(coeff, sign), label))
        while self.peek()[0] != "end":
            kind, value, pos = self.peek()
            if (kind, value) == ("op", "+"):
                sign = 1
            elif (kind, value) == ("op", "-"):
                sign = -1
            else:
                self.fail("'+' or '-'")
            self.take()
            coeff, label = self.term()
            terms.append((_signed(coeff, sign), label))
        widths = {len(label) for _, label in terms}
        if len(widths) > 1:
            raise InconsistentWidthError(
                f"kets of different widths in one expression: {sorted(widths)}"
            )
        return KetExpression(tuple(terms))


def _make_coeff(re_part, im_part) -> Coefficient:
    if isinstance(re_part, float) or isinstance(im_part, float):
        return complex(re_part, im_part)
    return GaussianRational(re_part, im_part)


def _signed(coeff: Coefficient, sign: int) -> Coefficient:
    return coeff if sign == 1 else -coeff


def parse_expression(text: str) -> KetExpression:
    if not text.strip():
        raise KetSyntaxError("empty expression", 0, "term")
    return _Parser(text).expression()


def parse_state(text: str) -> StateVector:
    """Parse a ket expression into a state vector.

    The exactness flag survives only integer and rational literals; the
    summed amplitude of a basis label lands at its binary index.  Raises
    :class:`ZeroStateError` when everything cancels.
    """
    expr = parse_expression(text)
    merged = expr.merged()
    width = expr.num_qubits
    scalars: list = [0] * (2**width)
    exact_ok = all(isinstance(c, GaussianRational) for c in merged.values())
    for label, coeff in merged.items():
        idx = int(label, 2)
        scalars[idx] = coeff if exact_ok else complex(coeff)
    if exact_ok:
        scalars = [c if isinstance(c, GaussianRational) else GaussianRational(c) for c in scalars]
    return StateVector.from_scalars(scalars)


def _render_fraction(x: Fraction) -> str:
    return str(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render(expr: KetExpression) -> str:
    """Expression text that reparses to the same amplitudes.

    Exact coefficients with both real and imaginary parts are split into a
    real term and an imaginary term so negative components stay inside the
    grammar, which has no signed numbers.
    """
    pieces: list[str] = []

    def emit(sign: str, body: str):
        if not pieces and sign == "+":
            pieces.append(body)
        else:
            pieces.append(f"{sign} {body}")

    for coeff, label in expr.terms:
        ket = f"|{label}>"
        if isinstance(coeff, GaussianRational):
            if coeff.is_zero:
                emit("+", f"0{ket}")
                continue
            if coeff.re != 0:
                emit("+" if coeff.re > 0 else "-", f"{_render_fraction(abs(coeff.re))}{ket}")
            if coeff.im != 0:
                emit("+" if coeff.im > 0 else "-", f"{_render_fraction(abs(coeff.im))}i{ket}")
        else:
            z = complex(coeff)
            if z.real or not z.imag:
                emit("+" if z.real >= 0 else "-", f"{abs(z.real):.17f}{ket}")
            if z.imag:
                emit("+" if z.imag >= 0 else "-", f"{abs(z.imag):.17f}i{ket}")
    return " ".join(pieces)
