"""Reduction of matrix recurrences to single-variable regular recurrences.

By Cayley-Hamilton a matrix annihilates its characteristic polynomial, so
every coordinate of ``Y[x] = A Y[x-1]`` obeys the same order-``n`` linear
recurrence whose coefficients come from ``det(A - λI)``.  Affine systems are
handled by adjoining the constant equation ``1 = 1`` (order ``n + 1``) or, for
``n <= 3``, by an explicit per-variable constant tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .errors import StructuralConditionError, UnsupportedOrderError
from .exact import Matrix, Polynomial, as_matrix, dot, is_square
from .model import RecurrenceSystem

Kind = Literal["homogeneous", "augmented", "direct-tail"]


@dataclass(frozen=True)
class RegularRecurrence:
    """``y[x] = sum_j betas[j-1] * y[x-j] (+ tail[i])`` for ``j = 1..order``."""

    betas: tuple[Fraction, ...]
    kind: Kind
    tail: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        if not self.betas:
            raise ValueError("a regular recurrence needs at least one coefficient")
        if self.kind == "direct-tail":
            if self.tail is None:
                raise ValueError("direct-tail recurrences carry a tail")
        elif self.tail is not None:
            raise ValueError(f"{self.kind} recurrences carry no tail")
        if self.kind == "augmented" and sum(self.betas) != 1:
            raise ValueError("augmented coefficients must sum to 1")

    @property
    def order(self) -> int:
        return len(self.betas)

    def predict(self, history: Sequence[Fraction], variable: int = 0) -> Fraction:
        """Next value from ``history`` (oldest first, at least ``order`` long)."""
        if len(history) < self.order:
            raise ValueError(f"need {self.order} previous values, got {len(history)}")
        value = dot(self.betas, (history[-j] for j in range(1, self.order + 1)))
        if self.tail is not None:
            value += self.tail[variable]
        return value


@dataclass(frozen=True)
class AugmentedMatrix:
    entries: Matrix

    @property
    def order(self) -> int:
        return len(self.entries)


def char_poly(matrix: Sequence[Sequence[object]]) -> Polynomial:
    """``det(A - λI)`` by Faddeev-LeVerrier.

    The iteration ``M_k = A M_{k-1} + c_{n-k+1} I``, ``c_{n-k} = -tr(A M_k)/k``
    yields the monic ``det(λI - A)``; the result is scaled by ``(-1)**n`` so
    the leading coefficient is ``(-1)**n``.  The recursion runs on the integer
    matrix ``B = L*A`` (``L`` the common denominator), whose coefficients are
    integers, and ``c_j(A) = c_j(B) / L**(n-j)``.
    """
    if not is_square(matrix):
        raise ValueError("characteristic polynomial needs a non-empty square matrix")
    a = as_matrix(matrix)
    n = len(a)
    L = math.lcm(*(v.denominator for row in a for v in row))
    b = [[int(v * L) for v in row] for row in a]
    c = [0] * (n + 1)
    c[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        m = [[sum(x * y for x, y in zip(row, col)) for col in zip(*m)] for row in b]
        for i in range(n):
            m[i][i] += c[n - k + 1]
        tr = sum(sum(x * y for x, y in zip(b[i], cols_i)) for i, cols_i in enumerate(zip(*m)))
        c[n - k] = -tr // k
    sign = -1 if n % 2 else 1
    return Polynomial(Fraction(sign * v, L ** (n - j)) for j, v in enumerate(c))


def augment(system: RecurrenceSystem) -> AugmentedMatrix:
    n = system.order
    rows = [tuple(row) + (k,) for row, k in zip(system.coefficients, system.affine)]
    rows.append((Fraction(0),) * n + (Fraction(1),))
    return AugmentedMatrix(tuple(rows))


# Both sign rules come from dividing the Cayley-Hamilton identity by the
# leading coefficient u_0 = (-1)**order; u_j is the coefficient of λ**(order-j).


def _homogeneous_betas(phi: Polynomial, n: int) -> tuple[Fraction, ...]:
    sign = (-1) ** (n + 1)
    return tuple(sign * phi.coeff(n - j) for j in range(1, n + 1))


def _augmented_betas(phi_star: Polynomial, n: int) -> tuple[Fraction, ...]:
    sign = (-1) ** n
    return tuple(sign * phi_star.coeff(n + 1 - j) for j in range(1, n + 2))


def decouple_homogeneous(system: RecurrenceSystem) -> RegularRecurrence:
    """Order-``n`` recurrence shared by every variable of a system without
    affine terms."""
    if not system.is_homogeneous():
        raise StructuralConditionError("system has nonzero affine terms; use decouple_affine or direct_affine_small")
    return RegularRecurrence(_homogeneous_betas(char_poly(system.coefficients), system.order), "homogeneous")


def decouple_affine(system: RecurrenceSystem) -> RegularRecurrence:
    """Order-``n + 1`` recurrence from the augmented matrix; coefficients sum to 1."""
    phi_star = char_poly(augment(system).entries)
    return RegularRecurrence(_augmented_betas(phi_star, system.order), "augmented")


def _tails(system: RecurrenceSystem) -> tuple[Fraction, ...]:
    n = system.order
    A, al = system.coefficients, system.affine
    if n == 1:
        return (al[0],)
    if n == 2:
        (a11, a12), (a21, a22) = A
        a1, a2 = al
        return (
            a1 * (1 - a22) + a2 * a12,
            a2 * (1 - a11) + a1 * a21,
        )
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = A
    a1, a2, a3 = al
    return (
        a1 * (1 - a22 - a33) + a2 * a12 + a3 * a13 + a1 * (a22 * a33 - a23 * a32)
        + a2 * (a13 * a32 - a33 * a12) + a3 * (a12 * a23 - a22 * a13),
        a2 * (1 - a11 - a33) + a1 * a21 + a3 * a23 + a2 * (a11 * a33 - a13 * a31)
        + a3 * (a21 * a13 - a11 * a23) + a1 * (a23 * a31 - a33 * a21),
        a3 * (1 - a11 - a22) + a1 * a31 + a2 * a32 + a3 * (a11 * a22 - a12 * a21)
        + a1 * (a32 * a21 - a22 * a31) + a2 * (a31 * a12 - a11 * a32),
    )


def direct_affine_small(system: RecurrenceSystem) -> RegularRecurrence:
    """Order-``n`` recurrence with an explicit constant per variable, ``n <= 3``.

    The coefficients are those of the homogeneous part; the constants carry
    the affine terms.  Only orders 1-3 have closed expressions here.
    """
    if system.order > 3:
        raise UnsupportedOrderError(f"direct affine form is available for orders 1-3, got {system.order}")
    betas = _homogeneous_betas(char_poly(system.coefficients), system.order)
    return RegularRecurrence(betas, "direct-tail", _tails(system))

