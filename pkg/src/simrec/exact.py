"""Exact scalars, dense univariate polynomials and small matrix helpers.

Scalars are :class:`fractions.Fraction` values; ``Rational`` is an alias kept
so that signatures read in terms of the mathematics.  Fractions are already
canonical (reduced, positive denominator, zero stored as 0/1) and immutable.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[Fraction, int]
Matrix = tuple[tuple[Fraction, ...], ...]

_RATIONAL_RE = re.compile(r"^\s*(-?)(\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``[-]digits[/digits]`` into a Fraction.

    Decimals, exponents and signed denominators are rejected.

    >>> parse_rational("-7/3")
    Fraction(-7, 3)
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(q: Scalar) -> str:
    """Render as ``p/q`` (or ``p`` for integers), never as a decimal."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_decimal(q: Scalar, digits: int) -> str:
    """Approximate decimal rendering with ``digits`` places after the point."""
    if digits < 0:
        raise ValueError("digits must be non-negative")
    scaled = round(Fraction(q) * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def rat(value: Union[Scalar, str]) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def rat_arith(op: str, a: Scalar, b: Scalar) -> Fraction:
    """Apply one of ``add``, ``sub``, ``mul``, ``div``, ``neg`` exactly.

    ``neg`` ignores ``b``.  Division by zero raises ``ZeroDivisionError``.
    """
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError(f"division of {format_rational(a)} by zero")
        return a / b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def rat_pow(base: Scalar, exponent: int) -> Fraction:
    """``base ** exponent`` for a non-negative integer exponent, with 0**0 == 1."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    if exponent == 0:
        return Fraction(1)
    return Fraction(base) ** exponent


class Polynomial:
    """Immutable dense polynomial in one variable over the rationals.

    ``coeffs[k]`` is the coefficient of ``λ**k``.  Trailing zeros are stripped
    on construction, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls([c])

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, k: int) -> Fraction:
        """Coefficient of ``λ**k``; zero beyond the degree."""
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def __call__(self, at: Scalar) -> Fraction:
        acc = Fraction(0)
        at = Fraction(at)
        for c in reversed(self._coeffs):
            acc = acc * at + c
        return acc

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = Fraction(other)
            return Polynomial(c * s for c in self._coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, p in enumerate(self._coeffs):
            if p == 0:
                continue
            for j, q in enumerate(other._coeffs):
                out[i + j] += p * q
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(format_rational(c) for c in self._coeffs)}])"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                mono = "λ" if k == 1 else f"λ^{k}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(value: Union[Polynomial, Scalar]) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(value)


def poly_arith(op: str, p: Polynomial, q: Union[Polynomial, Scalar]) -> Polynomial:
    """``add``, ``sub`` or ``mul`` of two polynomials, or ``scale`` by a scalar."""
    if op == "add":
        return p + _as_poly(q)
    if op == "sub":
        return p - _as_poly(q)
    if op == "mul":
        return p * _as_poly(q)
    if op == "scale":
        if isinstance(q, Polynomial):
            raise TypeError("scale expects a scalar")
        return p * Fraction(q)
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: Polynomial, at: Scalar) -> Fraction:
    """Horner evaluation of ``p`` at ``at``."""
    return p(at)


# -- matrices -----------------------------------------------------------------
# Square matrices are tuples of row tuples of Fractions.


def as_matrix(rows: Iterable[Iterable[Union[Scalar, str]]]) -> Matrix:
    return tuple(tuple(rat(v) for v in row) for row in rows)


def is_square(m: Sequence[Sequence[object]]) -> bool:
    n = len(m)
    return n > 0 and all(len(row) == n for row in m)


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def dot(xs: Iterable[Scalar], ys: Iterable[Scalar]) -> Fraction:
    """Exact inner product, normalized once over the common denominator."""
    pairs = [(x.numerator * y.numerator, x.denominator * y.denominator) for x, y in zip(xs, ys)]
    if not pairs:
        return Fraction(0)
    common = math.lcm(*(d for _, d in pairs))
    return Fraction(sum(p * (common // d) for p, d in pairs), common)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(dot(row, v) for row in a)


def mat_add_scalar_identity(a: Matrix, c: Fraction) -> Matrix:
    """``a + c*I``."""
    return tuple(
        tuple(v + c if i == j else v for j, v in enumerate(row)) for i, row in enumerate(a)
    )


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))
