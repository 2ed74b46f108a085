"""Recurrence-system data model and the text front-end.

A system of order ``n`` is::

    y_i[x] = sum_j coefficients[i][j] * y_j[x-1] + affine[i]

with one initial value per variable.  The text grammar (one equation per
line, whitespace-insensitive, ``#`` starts a comment)::

    a[x] = 2*a[x-1] + 4*b[x-1] + 1
    b[x] = a[x-1] + 3*b[x-1] + 2*c[x-1] + 1
    c[x] = 2*b[x-1] + 4*c[x-1] + 1
    init: a = 0, b = 0, c = 0
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import (
    DuplicateEquationError,
    LagError,
    MalformedRationalError,
    MissingInitError,
    ParseError,
    UndeclaredVariableError,
)
from .exact import Matrix, as_matrix, dot, format_rational, parse_rational, rat

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_REF_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\[([^\]]*)\]$")


@dataclass(frozen=True)
class RecurrenceSystem:
    names: tuple[str, ...]
    coefficients: Matrix
    affine: tuple[Fraction, ...]
    initial: tuple[Fraction, ...]

    def __post_init__(self):
        names = tuple(self.names)
        n = len(names)
        if n == 0:
            raise ValueError("a system needs at least one variable")
        if len(set(names)) != n:
            raise ValueError(f"variable names must be unique: {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        coefficients = as_matrix(self.coefficients)
        if len(coefficients) != n or any(len(row) != n for row in coefficients):
            raise ValueError(f"coefficient matrix must be {n}x{n}")
        affine = tuple(rat(v) for v in self.affine)
        initial = tuple(rat(v) for v in self.initial)
        if len(affine) != n or len(initial) != n:
            raise ValueError(f"affine and initial vectors must have length {n}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "affine", affine)
        object.__setattr__(self, "initial", initial)

    @classmethod
    def build(
        cls,
        coefficients: Sequence[Sequence[Any]],
        affine: Sequence[Any] | None = None,
        initial: Sequence[Any] | None = None,
        names: Sequence[str] | None = None,
    ) -> "RecurrenceSystem":
        """Convenience constructor; missing vectors default to zeros and names
        to ``a, b, c, ...`` (``y1, y2, ...`` beyond 26 variables)."""
        n = len(coefficients)
        if names is None:
            names = [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"y{i + 1}" for i in range(n)]
        return cls(
            names=tuple(names),
            coefficients=coefficients,
            affine=tuple(affine) if affine is not None else (0,) * n,
            initial=tuple(initial) if initial is not None else (0,) * n,
        )

    @property
    def order(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def is_homogeneous(self) -> bool:
        return all(v == 0 for v in self.affine)

    def with_initial(self, initial: Sequence[Any]) -> "RecurrenceSystem":
        return RecurrenceSystem(self.names, self.coefficients, self.affine, tuple(initial))

    def step(self, state: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """One application of the recurrence to ``state``."""
        return tuple(dot(row, state) + k for row, k in zip(self.coefficients, self.affine))


@dataclass(frozen=True)
class SumProfile:
    row_sums: tuple[Fraction, ...]
    col_sums: tuple[Fraction, ...]
    rows_equal: bool
    cols_equal: bool


def sum_profile(system: RecurrenceSystem) -> SumProfile:
    """Row and column sums of the coefficient matrix (affine terms excluded)."""
    rows = tuple(sum(row, Fraction(0)) for row in system.coefficients)
    cols = tuple(sum(col, Fraction(0)) for col in zip(*system.coefficients))
    return SumProfile(rows, cols, len(set(rows)) == 1, len(set(cols)) == 1)


# -- parsing ------------------------------------------------------------------


def _split_terms(rhs: str, lineno: int) -> list[tuple[int, str]]:
    """Split at top-level ``+``/``-``; returns ``(sign, body)`` pairs."""
    terms: list[tuple[int, str]] = []
    sign, body, depth = 1, "", 0
    for ch in rhs:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ']'", lineno)
        if depth == 0 and ch in "+-":
            if body:
                terms.append((sign, body))
                sign, body = (1 if ch == "+" else -1), ""
            elif ch == "-":
                sign = -sign
            continue
        body += ch
    if depth != 0:
        raise ParseError("unbalanced '['", lineno)
    if not body:
        raise ParseError("expected a term", lineno)
    terms.append((sign, body))
    return terms


def _parse_coefficient(text: str, lineno: int) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise MalformedRationalError(f"malformed rational {text!r}", lineno) from None


def _parse_reference(text: str, lineno: int) -> str:
    m = _REF_RE.match(text)
    if m is None:
        raise ParseError(f"expected name[x-1], got {text!r}", lineno)
    name, index = m.groups()
    if index != "x-1":
        raise LagError(f"only [x-1] is allowed on the right-hand side, got {name}[{index}]", lineno)
    return name


def parse_system(text: str) -> RecurrenceSystem:
    """Parse equation text into a :class:`RecurrenceSystem`.

    Rows follow the order in which left-hand sides appear.  Omitted
    cross-terms and constants are zero; repeated terms are summed.
    """
    equations: dict[str, tuple[int, list[tuple[Fraction, str | None]]]] = {}
    inits: dict[str, tuple[Fraction, int]] = {}
    saw_init = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = "".join(raw.split("#", 1)[0].split())
        if not line:
            continue
        if line.startswith("init:"):
            saw_init = True
            body = line[len("init:"):]
            if not body:
                raise ParseError("empty init line", lineno)
            for item in body.split(","):
                if item.count("=") != 1:
                    raise ParseError(f"expected name=value in init, got {item!r}", lineno)
                name, value = item.split("=")
                if not _NAME_RE.match(name):
                    raise ParseError(f"invalid variable name {name!r}", lineno)
                if name in inits:
                    raise DuplicateEquationError(f"duplicate initial value for {name}", lineno)
                inits[name] = (_parse_coefficient(value, lineno), lineno)
            continue

        if line.count("=") != 1:
            raise ParseError("expected exactly one '='", lineno)
        lhs, rhs = line.split("=")
        m = _REF_RE.match(lhs)
        if m is None:
            raise ParseError(f"expected name[x] on the left-hand side, got {lhs!r}", lineno)
        name, index = m.groups()
        if index != "x":
            raise LagError(f"left-hand side must be {name}[x], got {name}[{index}]", lineno)
        if name in equations:
            raise DuplicateEquationError(
                f"duplicate equation for {name} (first on line {equations[name][0]})", lineno
            )
        terms: list[tuple[Fraction, str | None]] = []
        for sign, body in _split_terms(rhs, lineno):
            if "*" in body:
                coef_text, ref = body.split("*", 1)
                terms.append((sign * _parse_coefficient(coef_text, lineno), _parse_reference(ref, lineno)))
            elif body.endswith("]"):
                terms.append((Fraction(sign), _parse_reference(body, lineno)))
            else:
                terms.append((sign * _parse_coefficient(body, lineno), None))
        equations[name] = (lineno, terms)

    if not equations:
        raise ParseError("no equations found")
    names = tuple(equations)
    position = {name: i for i, name in enumerate(names)}
    n = len(names)
    coefficients = [[Fraction(0)] * n for _ in range(n)]
    affine = [Fraction(0)] * n
    for i, name in enumerate(names):
        lineno, terms = equations[name]
        for value, ref in terms:
            if ref is None:
                affine[i] += value
            elif ref not in position:
                raise UndeclaredVariableError(f"reference to undeclared variable {ref!r}", lineno)
            else:
                coefficients[i][position[ref]] += value

    if not saw_init:
        raise MissingInitError("missing init: line")
    for name, (_, lineno) in inits.items():
        if name not in position:
            raise UndeclaredVariableError(f"initial value for undeclared variable {name!r}", lineno)
    missing = [name for name in names if name not in inits]
    if missing:
        raise MissingInitError(f"no initial value for {', '.join(missing)}")
    initial = tuple(inits[name][0] for name in names)
    return RecurrenceSystem(names, coefficients, tuple(affine), initial)


# -- rendering ----------------------------------------------------------------


def _render_equation(system: RecurrenceSystem, i: int) -> str:
    parts: list[tuple[bool, str]] = []
    for name, c in zip(system.names, system.coefficients[i]):
        if c == 0:
            continue
        ref = f"{name}[x-1]"
        body = ref if abs(c) == 1 else f"{format_rational(abs(c))}*{ref}"
        parts.append((c < 0, body))
    k = system.affine[i]
    if k != 0:
        parts.append((k < 0, format_rational(abs(k))))
    if not parts:
        return f"{system.names[i]}[x] = 0"
    neg, body = parts[0]
    rhs = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        rhs += f" {'-' if neg else '+'} {body}"
    return f"{system.names[i]}[x] = {rhs}"


def system_document(system: RecurrenceSystem) -> dict[str, Any]:
    """JSON-ready document; every rational is a ``"p/q"`` string."""
    return {
        "order": system.order,
        "names": list(system.names),
        "coefficients": [[format_rational(v) for v in row] for row in system.coefficients],
        "affine": [format_rational(v) for v in system.affine],
        "initial": [format_rational(v) for v in system.initial],
    }


def system_from_document(doc: Mapping[str, Any]) -> RecurrenceSystem:
    system = RecurrenceSystem(
        names=tuple(doc["names"]),
        coefficients=[[parse_rational(v) for v in row] for row in doc["coefficients"]],
        affine=tuple(parse_rational(v) for v in doc["affine"]),
        initial=tuple(parse_rational(v) for v in doc["initial"]),
    )
    if "order" in doc and doc["order"] != system.order:
        raise ValueError(f"order {doc['order']} does not match {system.order} names")
    return system


def render_system(system: RecurrenceSystem, format: str = "text") -> str:
    """Render as equation text (re-parseable) or as a JSON document."""
    if format == "structured":
        return json.dumps(system_document(system), indent=2)
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = [_render_equation(system, i) for i in range(system.order)]
    inits = ", ".join(f"{name} = {format_rational(v)}" for name, v in zip(system.names, system.initial))
    lines.append(f"init: {inits}")
    return "\n".join(lines) + "\n"
