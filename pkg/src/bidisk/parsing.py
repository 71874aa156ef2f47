"""Text syntax for generator polynomials, complex literals and Blaschke specs.

Polynomials use variables ``z`` and ``w``, integer powers with ``^``,
products with ``*`` or juxtaposition, and complex literals written with the
imaginary unit ``i``, e.g. ``"z^2 - w^3"`` or ``"(0.5+0i)*z - w"``.
Whitespace is ignored everywhere.
"""

from __future__ import annotations

import re

from .blaschke import BlaschkeProduct
from .errors import InvalidInputError
from .series import Series2D

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)|(?P<sym>[zwi+\-*^()]))"
)

Poly = dict[tuple[int, int], complex]


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise InvalidInputError(f"unexpected character {text[pos]!r} in {text!r}")
        out.append(m.group("num") or m.group("sym"))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser over the token list."""

    def __init__(self, tokens: list[str]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise InvalidInputError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        poly = self.expr()
        if self.peek() is not None:
            raise InvalidInputError(f"trailing input starting at {self.peek()!r}")
        return poly

    def expr(self) -> Poly:
        sign = 1.0
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        acc = _scale(self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = 1.0
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            acc = _add(acc, _scale(self.term(), sign))
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.take()
                acc = _mul(acc, self.factor())
            elif nxt is not None and (nxt not in "+-*^)"):
                acc = _mul(acc, self.factor())  # juxtaposition
            else:
                return acc

    def factor(self) -> Poly:
        base = self.primary()
        while self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise InvalidInputError(f"power must be a nonnegative integer, got {tok!r}")
            base = _pow(base, int(tok))
        return base

    def primary(self) -> Poly:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise InvalidInputError("unbalanced parentheses")
            return inner
        if tok == "z":
            return {(1, 0): 1.0 + 0.0j}
        if tok == "w":
            return {(0, 1): 1.0 + 0.0j}
        if tok == "i":
            return {(0, 0): 1.0j}
        if tok[0].isdigit():
            value = float(tok)
            if self.peek() == "i":
                self.take()
                return {(0, 0): value * 1.0j}
            return {(0, 0): complex(value)}
        raise InvalidInputError(f"unexpected token {tok!r}")


def _add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0.0) + v
    return out


def _scale(p: Poly, s: complex) -> Poly:
    return {k: s * v for k, v in p.items()}


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), v1 in p.items():
        for (i2, j2), v2 in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0.0) + v1 * v2
    return out


def _pow(p: Poly, n: int) -> Poly:
    out: Poly = {(0, 0): 1.0 + 0.0j}
    for _ in range(n):
        out = _mul(out, p)
    return out


def parse_polynomial(text: str) -> Series2D:
    """Parse a polynomial in z and w into its coefficient grid."""
    if not text or not text.strip():
        raise InvalidInputError("empty polynomial")
    poly = _Parser(_tokenize(text)).parse()
    poly = {k: v for k, v in poly.items() if v != 0}
    if not poly:
        raise InvalidInputError(f"polynomial {text!r} is identically zero")
    return Series2D.from_terms(poly)


def parse_generators(text: str) -> list[Series2D]:
    """Parse a comma- or semicolon-separated list of generator polynomials."""
    parts = [p for p in re.split(r"[;,]", text) if p.strip()]
    if not parts:
        raise InvalidInputError("no generators given")
    return [parse_polynomial(p) for p in parts]


def parse_complex(text: str) -> complex:
    """Parse a complex literal written with ``i`` (e.g. ``0.3i``, ``-0.2+0.1i``)."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    if not cleaned:
        raise InvalidInputError("empty complex literal")
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse complex literal {text!r}") from exc


def parse_point(text: str) -> tuple[complex, complex]:
    """Parse an ``a,b`` pair of complex literals."""
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidInputError(f"point must be 'a,b', got {text!r}")
    return parse_complex(parts[0]), parse_complex(parts[1])


def parse_blaschke(spec: str) -> BlaschkeProduct:
    """Parse ``zeros=0.5,0.3i;gamma=1`` into a Blaschke product (gamma optional)."""
    zeros: list[complex] | None = None
    gamma: complex = 1.0 + 0.0j
    for field in spec.split(";"):
        field = field.strip()
        if not field:
            continue
        if "=" not in field:
            raise InvalidInputError(f"malformed Blaschke field {field!r}")
        key, _, val = field.partition("=")
        key = key.strip().lower()
        if key == "zeros":
            zeros = [parse_complex(p) for p in val.split(",") if p.strip()]
        elif key == "gamma":
            gamma = parse_complex(val)
        else:
            raise InvalidInputError(f"unknown Blaschke field {key!r}")
    if not zeros:
        raise InvalidInputError(f"Blaschke spec {spec!r} has no zeros")
    return BlaschkeProduct(zeros, gamma)
