"""Closed forms for two simultaneous first-order recurrences.

With equal row sums ``S = α11 + α12 = α21 + α22`` the difference
``Δ = b - a`` decouples as ``Δ[x] = D Δ[x-1] + δ`` with ``D = α11 - α21`` and
``δ = α2 - α1``, and ``a[x] = S a[x-1] + α12 Δ[x-1] + α1``.  Unrolling gives
geometric sums in ``S`` and ``D``; the five cases separate the degenerate
denominators ``S - D = α12 + α21``, ``S - 1`` and ``D - 1``.

With equal column sums the sum ``σ = a + b`` plays the role of ``Δ``; only the
non-degenerate case is provided.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from .errors import StructuralConditionError, UnsupportedCaseError
from .exact import rat_pow
from .model import RecurrenceSystem

Mode = Literal["row", "column"]


@dataclass(frozen=True)
class PairConstants:
    S: Fraction
    D: Fraction
    delta: Fraction
    delta0: Fraction
    case_id: int


@dataclass(frozen=True)
class ColumnConstants:
    """``P = α11 - α12``, ``T = α11 + α21``; ``sigma0 = a0 + b0``."""

    P: Fraction
    T: Fraction
    sigma_step: Fraction
    sigma0: Fraction
    case_id: int = 1


def _require_order_2(system: RecurrenceSystem) -> None:
    if system.order != 2:
        raise StructuralConditionError(f"expected an order-2 system, got order {system.order}")


def _row_case(S: Fraction, D: Fraction, coupled: Fraction) -> int:
    if coupled != 0:
        if S == 1:
            return 2
        if D == 1:
            return 3
        return 1
    return 5 if S == 1 else 4


def classify_pair(system2: RecurrenceSystem, mode: Mode = "row") -> int:
    """Case id (1-5) of the row-sum closed form, or 1 for the admissible column case."""
    _require_order_2(system2)
    (a11, a12), (a21, a22) = system2.coefficients
    if mode == "row":
        if a11 + a12 != a21 + a22:
            raise StructuralConditionError(
                f"row sums differ: {a11 + a12} != {a21 + a22}"
            )
        return _row_case(a11 + a12, a11 - a21, a12 + a21)
    if mode == "column":
        if a11 + a21 != a12 + a22:
            raise StructuralConditionError(
                f"column sums differ: {a11 + a21} != {a12 + a22}"
            )
        if a12 == -a21 or a11 - a12 == 1 or a11 + a21 == 1:
            raise UnsupportedCaseError(
                "column-sum closed form requires α12 != -α21, α11 - α12 != 1 and α11 + α21 != 1"
            )
        return 1
    raise ValueError(f"unknown mode {mode!r}")


def evaluate_case(
    case_id: int,
    x: int,
    S: Fraction,
    D: Fraction,
    coupled: Fraction,
    k: Fraction,
    y0: Fraction,
    d0: Fraction,
    own: Fraction,
    step: Fraction,
) -> Fraction:
    """One coordinate of the row-sum closed form at ``x >= 1``.

    ``S`` and ``D`` are the two growth rates and ``coupled = S - D``.  For the
    first variable pass ``k = α12``, ``d0 = b0 - a0``, ``own = α1``,
    ``step = α2 - α1``; for the second ``k = α21``, ``d0 = a0 - b0``,
    ``own = α2``, ``step = α1 - α2``.
    """
    Sx, Dx = rat_pow(S, x), rat_pow(D, x)
    if case_id in (1, 2, 3):
        head = Sx * y0 + k * d0 * (Sx - Dx) / coupled
        if case_id == 1:
            return (
                head
                + own * (Sx - 1) / (S - 1)
                + k * step / coupled * ((Sx - S) / (S - 1) - (Dx - D) / (D - 1))
            )
        if case_id == 2:
            return head + own * x + k * step / (D - 1) * ((Dx - D) / (D - 1) - x + 1)
        return head + own * (Sx - 1) / (S - 1) + k * step / (S - 1) * ((Sx - S) / (S - 1) - x + 1)
    S_prev = rat_pow(S, x - 1)
    head = S_prev * (S * y0 + k * d0 * x)
    if case_id == 4:
        return (
            head
            + own * (Sx - 1) / (S - 1)
            + k * step / (S - 1) ** 2 * ((x - 1) * Sx - x * S_prev + 1)
        )
    if case_id == 5:
        return head + own * x + k * step * Fraction(x * (x - 1), 2)
    raise ValueError(f"unknown case {case_id}")


@dataclass(frozen=True)
class ClosedFormPair:
    """Exact evaluator ``x -> (a[x], b[x])`` for an order-2 system."""

    constants: Union[PairConstants, ColumnConstants]
    source: RecurrenceSystem
    mode: Mode = "row"

    def evaluate(self, x: int) -> tuple[Fraction, Fraction]:
        if x < 0:
            raise ValueError("step index must be non-negative")
        a0, b0 = self.source.initial
        if x == 0:
            return (a0, b0)
        if self.mode == "column":
            return self._evaluate_column(x)
        (_, a12), (a21, _) = self.source.coefficients
        al1, al2 = self.source.affine
        c = self.constants
        coupled = a12 + a21
        a = evaluate_case(c.case_id, x, c.S, c.D, coupled, a12, a0, b0 - a0, al1, al2 - al1)
        b = evaluate_case(c.case_id, x, c.S, c.D, coupled, a21, b0, a0 - b0, al2, al1 - al2)
        return (a, b)

    def _evaluate_column(self, x: int) -> tuple[Fraction, Fraction]:
        c = self.constants
        a0, b0 = self.source.initial
        (_, a12), (a21, _) = self.source.coefficients
        al1, al2 = self.source.affine
        P, T = c.P, c.T
        Px, Tx = rat_pow(P, x), rat_pow(T, x)
        spread = (Tx - T) / (T - 1) - (Px - P) / (P - 1)
        coupled = a12 + a21
        a = Px * a0 + a12 * c.sigma0 * (Tx - Px) / coupled + al1 * (Px - 1) / (P - 1) + a12 * c.sigma_step / coupled * spread
        b = Px * b0 + a21 * c.sigma0 * (Tx - Px) / coupled + al2 * (Px - 1) / (P - 1) + a21 * c.sigma_step / coupled * spread
        return (a, b)

    __call__ = evaluate

    def values(self, stop: int) -> list[tuple[Fraction, Fraction]]:
        return [self.evaluate(x) for x in range(stop + 1)]


def closed_form_pair_row(system2: RecurrenceSystem) -> ClosedFormPair:
    case_id = classify_pair(system2, "row")
    (a11, a12), (a21, _) = system2.coefficients
    al1, al2 = system2.affine
    a0, b0 = system2.initial
    constants = PairConstants(S=a11 + a12, D=a11 - a21, delta=al2 - al1, delta0=b0 - a0, case_id=case_id)
    return ClosedFormPair(constants, system2, "row")


def closed_form_pair_col(system2: RecurrenceSystem) -> ClosedFormPair:
    classify_pair(system2, "column")
    (a11, a12), (a21, _) = system2.coefficients
    al1, al2 = system2.affine
    a0, b0 = system2.initial
    constants = ColumnConstants(P=a11 - a12, T=a11 + a21, sigma_step=al1 + al2, sigma0=a0 + b0)
    return ClosedFormPair(constants, system2, "column")


@dataclass(frozen=True)
class DifferenceForm:
    """``Δ[x] = b[x] - a[x]`` solved from ``Δ[x] = D Δ[x-1] + δ``."""

    D: Fraction
    delta: Fraction
    delta0: Fraction

    def evaluate(self, x: int) -> Fraction:
        if x < 0:
            raise ValueError("step index must be non-negative")
        if self.D == 1:
            return self.delta0 + x * self.delta
        Dx = rat_pow(self.D, x)
        return Dx * self.delta0 + self.delta * (Dx - 1) / (self.D - 1)

    __call__ = evaluate


def difference_closed_form(system2: RecurrenceSystem) -> DifferenceForm:
    classify_pair(system2, "row")
    (a11, _), (a21, _) = system2.coefficients
    al1, al2 = system2.affine
    a0, b0 = system2.initial
    return DifferenceForm(D=a11 - a21, delta=al2 - al1, delta0=b0 - a0)
