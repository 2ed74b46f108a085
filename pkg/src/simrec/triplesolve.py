"""Order-3 systems solved by reduction to order-2 pairs.

If ``b[x] = w1*a[x] + w2*c[x]`` for every ``x`` (with ``w1 + w2 = 1``) one
variable can be eliminated, leaving a two-variable system that the row-sum
closed forms of :mod:`simrec.pairsolve` handle.  The b equation may be
replaced by ``w1 * (a equation) + w2 * (c equation)`` ("star row"), so only
rows a and c need equal sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Union

from .errors import StructuralConditionError
from .exact import Polynomial
from .model import RecurrenceSystem, sum_profile
from .pairsolve import ClosedFormPair, _row_case, closed_form_pair_row, evaluate_case

Provenance = Literal["coefficient-proportion", "initial-value-propagation"]
PairName = Literal["ab", "ac", "bc"]


@dataclass(frozen=True)
class WeightPair:
    w1: Fraction
    w2: Fraction
    provenance: Optional[Provenance] = None

    def __post_init__(self):
        object.__setattr__(self, "w1", Fraction(self.w1))
        object.__setattr__(self, "w2", Fraction(self.w2))
        if self.w1 + self.w2 != 1:
            raise ValueError(f"weights must sum to 1, got {self.w1} + {self.w2}")

    @classmethod
    def from_w1(cls, w1: Fraction, provenance: Optional[Provenance] = None) -> "WeightPair":
        return cls(Fraction(w1), 1 - Fraction(w1), provenance)


def _require_order_3(system: RecurrenceSystem) -> None:
    if system.order != 3:
        raise StructuralConditionError(f"expected an order-3 system, got order {system.order}")


def star_row(system3: RecurrenceSystem, w: WeightPair) -> tuple[tuple[Fraction, ...], Fraction]:
    """``w1 * row_a + w2 * row_c`` and ``w1 * α1 + w2 * α3``."""
    ra, _, rc = system3.coefficients
    al1, _, al3 = system3.affine
    row = tuple(w.w1 * p + w.w2 * q for p, q in zip(ra, rc))
    return row, w.w1 * al1 + w.w2 * al3


def replaced_row_system(system3: RecurrenceSystem, w: WeightPair) -> RecurrenceSystem:
    """The system with the b equation swapped for its star row."""
    _require_order_3(system3)
    row, al2 = star_row(system3, w)
    ra, _, rc = system3.coefficients
    al1, _, al3 = system3.affine
    return RecurrenceSystem(system3.names, (ra, row, rc), (al1, al2, al3), system3.initial)


def propagation_residuals(system3: RecurrenceSystem, w: WeightPair) -> tuple[Fraction, Fraction, Fraction]:
    """Residuals whose vanishing carries ``b = w1*a + w2*c`` from one step to the next.

    With ``r_j = α2j - w1*α1j - w2*α3j`` and ``r0 = α2 - w1*α1 - w2*α3`` these are
    ``(r_1 + w1*r_2, r_3 + w2*r_2, r0)``.
    """
    _require_order_3(system3)
    r = [b - w.w1 * a - w.w2 * c for a, b, c in zip(*system3.coefficients)]
    al1, al2, al3 = system3.affine
    r0 = al2 - w.w1 * al1 - w.w2 * al3
    return (r[0] + w.w1 * r[1], r[2] + w.w2 * r[1], r0)


def invariant_holds(system3: RecurrenceSystem, w: WeightPair) -> bool:
    """``b = w1*a + w2*c`` at x = 0 and preserved by every step."""
    a0, b0, c0 = system3.initial
    return b0 == w.w1 * a0 + w.w2 * c0 and not any(propagation_residuals(system3, w))


def _proportion_holds(system3: RecurrenceSystem, w1: Fraction) -> bool:
    w2 = 1 - w1
    cols = list(zip(*system3.coefficients)) + [system3.affine]
    return all(b == w1 * a + w2 * c for a, b, c in cols)


def _rational_roots(p: Polynomial) -> list[Fraction]:
    if p.degree == 1:
        return [-p.coeff(0) / p.coeff(1)]
    if p.degree != 2:
        return []
    c, b, a = p.coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    num, den = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
    if num * num != disc.numerator or den * den != disc.denominator:
        return []
    root = Fraction(num, den)
    return sorted({(-b - root) / (2 * a), (-b + root) / (2 * a)})


def _weights_from_equal_start(system3: RecurrenceSystem) -> Optional[Fraction]:
    """Rational ``w1`` satisfying the propagation conditions, or None.

    Used when ``a0 = b0 = c0``, where the initial values do not pin the weights.
    Each residual is a polynomial of degree <= 2 in ``w1``.
    """
    w = Polynomial.variable()
    one_minus = 1 - w
    cols = list(zip(*system3.coefficients))
    r = [b - w * a - one_minus * c for a, b, c in cols]
    al1, al2, al3 = system3.affine
    conditions = [r[0] + w * r[1], r[2] + one_minus * r[1], al2 - w * al1 - one_minus * al3]
    nonzero = [p for p in conditions if not p.is_zero()]
    if not nonzero:
        return Fraction(1, 2)
    pivot = min(nonzero, key=lambda p: p.degree)
    candidates = [t for t in _rational_roots(pivot) if all(p(t) == 0 for p in nonzero)]
    if not candidates:
        return None
    # prefer non-degenerate weights
    candidates.sort(key=lambda t: t in (0, 1))
    return candidates[0]


def detect_weights(system3: RecurrenceSystem) -> Optional[WeightPair]:
    """Find weights with ``b[x] = w1*a[x] + w2*c[x]``.

    Tries the coefficient proportion first (independent of initial values),
    then weights read off the initial values and checked for propagation.
    """
    _require_order_3(system3)
    a0, b0, c0 = system3.initial

    for a, b, c in list(zip(*system3.coefficients)) + [system3.affine]:
        if a != c:
            w1 = (b - c) / (a - c)
            break
    else:
        w1 = (b0 - c0) / (a0 - c0) if a0 != c0 else Fraction(1, 2)
    if _proportion_holds(system3, w1):
        return WeightPair.from_w1(w1, "coefficient-proportion")

    if a0 != c0:
        w = WeightPair.from_w1((b0 - c0) / (a0 - c0), "initial-value-propagation")
        return w if not any(propagation_residuals(system3, w)) else None
    if b0 != a0:
        return None
    w1 = _weights_from_equal_start(system3)
    if w1 is None:
        return None
    return WeightPair.from_w1(w1, "initial-value-propagation")


# -- pair reductions ----------------------------------------------------------


@dataclass(frozen=True)
class PairReduction:
    """The three order-2 systems; a pair is None when its weight is zero."""

    ab: Optional[RecurrenceSystem]
    ac: RecurrenceSystem
    bc: Optional[RecurrenceSystem]
    uses_star_row: bool

    def require(self, name: PairName) -> RecurrenceSystem:
        pair = getattr(self, name)
        if pair is None:
            zero = "w2" if name == "ab" else "w1"
            raise StructuralConditionError(f"{name} pair unavailable: {zero} = 0")
        return pair


def _b_row(system3: RecurrenceSystem, w: WeightPair) -> tuple[tuple[Fraction, ...], Fraction, bool]:
    """The b equation used for reductions.

    The original row when all three row sums agree (it then has the right sum),
    otherwise the star row.
    """
    if sum_profile(system3).rows_equal:
        return system3.coefficients[1], system3.affine[1], False
    row, al2 = star_row(system3, w)
    return row, al2, True


def _check_reducible(system3: RecurrenceSystem, w: WeightPair) -> None:
    _require_order_3(system3)
    sums = sum_profile(system3).row_sums
    if sums[0] != sums[2]:
        raise StructuralConditionError(f"rows a and c must have equal sums, got {sums[0]} and {sums[2]}")
    if not invariant_holds(system3, w):
        raise StructuralConditionError(
            f"b = {w.w1}*a + {w.w2}*c does not hold along the trajectory"
        )


def reduce_to_pairs(system3: RecurrenceSystem, w: WeightPair) -> PairReduction:
    """Eliminate one variable at a time using the weight invariant."""
    _check_reducible(system3, w)
    (a11, a12, a13), _, (a31, a32, a33) = system3.coefficients
    (b21, b22, b23), al2, starred = _b_row(system3, w)
    al1, _, al3 = system3.affine
    a_name, b_name, c_name = system3.names
    a0, b0, c0 = system3.initial
    w1, w2 = w.w1, w.w2

    ab = bc = None
    if w2 != 0:
        q = w1 / w2
        ab = RecurrenceSystem(
            (a_name, b_name),
            ((a11 - q * a13, a12 + a13 / w2), (b21 - q * b23, b22 + b23 / w2)),
            (al1, al2),
            (a0, b0),
        )
    ac = RecurrenceSystem(
        (a_name, c_name),
        ((a11 + w1 * a12, w2 * a12 + a13), (a31 + w1 * a32, w2 * a32 + a33)),
        (al1, al3),
        (a0, c0),
    )
    if w1 != 0:
        q = w2 / w1
        bc = RecurrenceSystem(
            (b_name, c_name),
            ((b21 / w1 + b22, -q * b21 + b23), (a31 / w1 + a32, -q * a31 + a33)),
            (al2, al3),
            (b0, c0),
        )
    return PairReduction(ab, ac, bc, starred)


# -- closed forms ---------------------------------------------------------------


@dataclass(frozen=True)
class TripleConstants:
    """Constants of the ab-pair closed form.

    ``star_row``/``alpha2_star`` are the b equation the constants are built
    from: the star row in the generalized form, the original row otherwise.
    """

    C1: Fraction
    C2: Fraction
    C3: Fraction
    C4: Fraction
    C5: Fraction
    alpha2_star: Fraction
    star_row: tuple[Fraction, Fraction, Fraction]
    case_id: int


def _constants(system3: RecurrenceSystem, w: WeightPair, b_row, al2) -> TripleConstants:
    if w.w2 == 0:
        raise StructuralConditionError("w2 = 0: the ab pair and c recovery are unavailable")
    (a11, a12, a13), _, _ = system3.coefficients
    b21, _, b23 = b_row
    q = w.w1 / w.w2
    C1 = a11 + a12 + a13
    C2 = a12 + a13 / w.w2
    C3 = a11 - q * a13 - b21 + q * b23
    C5 = b21 - q * b23
    C4 = C2 + C5
    return TripleConstants(C1, C2, C3, C4, C5, al2, tuple(b_row), _row_case(C1, C3, C4))


def triple_constants(system3: RecurrenceSystem, w: WeightPair) -> TripleConstants:
    """Constants with the b equation replaced by its star row.

    Requires only rows a and c to have equal sums.
    """
    _require_order_3(system3)
    sums = sum_profile(system3).row_sums
    if sums[0] != sums[2]:
        raise StructuralConditionError(f"rows a and c must have equal sums, got {sums[0]} and {sums[2]}")
    row, al2 = star_row(system3, w)
    return _constants(system3, w, row, al2)


def triple_constants_equal_rows(system3: RecurrenceSystem, w: WeightPair) -> TripleConstants:
    """Constants from the original b equation; all three row sums must agree."""
    _require_order_3(system3)
    if not sum_profile(system3).rows_equal:
        raise StructuralConditionError("all three row sums must be equal")
    return _constants(system3, w, system3.coefficients[1], system3.affine[1])


@dataclass(frozen=True)
class ClosedFormTriple:
    """Exact evaluator ``x -> (a[x], b[x], c[x])``."""

    constants: TripleConstants
    w: WeightPair
    source: RecurrenceSystem

    def evaluate(self, x: int) -> tuple[Fraction, Fraction, Fraction]:
        if x < 0:
            raise ValueError("step index must be non-negative")
        a0, b0, c0 = self.source.initial
        if x == 0:
            return (a0, b0, c0)
        k = self.constants
        al1 = self.source.affine[0]
        al2 = k.alpha2_star
        a = evaluate_case(k.case_id, x, k.C1, k.C3, k.C4, k.C2, a0, b0 - a0, al1, al2 - al1)
        b = evaluate_case(k.case_id, x, k.C1, k.C3, k.C4, k.C5, b0, a0 - b0, al2, al1 - al2)
        c = -(self.w.w1 / self.w.w2) * a + b / self.w.w2
        return (a, b, c)

    __call__ = evaluate

    def values(self, stop: int) -> list[tuple[Fraction, Fraction, Fraction]]:
        return [self.evaluate(x) for x in range(stop + 1)]


def closed_form_triple(
    system3: RecurrenceSystem, w: WeightPair, *, generalized: bool = True
) -> ClosedFormTriple:
    """Closed form via the ab pair, recovering c from the invariant.

    ``generalized=False`` uses the original b equation and needs all three row
    sums equal; the default uses the star row and needs only rows a and c.
    """
    constants = triple_constants(system3, w) if generalized else triple_constants_equal_rows(system3, w)
    a0, b0, c0 = system3.initial
    if b0 != w.w1 * a0 + w.w2 * c0:
        raise StructuralConditionError(
            f"initial values violate b0 = w1*a0 + w2*c0 ({b0} != {w.w1 * a0 + w.w2 * c0})"
        )
    if any(propagation_residuals(system3, w)):
        raise StructuralConditionError(f"b = {w.w1}*a + {w.w2}*c is not preserved by the recurrence")
    return ClosedFormTriple(constants, w, system3)


@dataclass(frozen=True)
class PairRouteTriple:
    """Evaluator through the ac pair, used when a weight is zero."""

    pair: ClosedFormPair
    w: WeightPair

    def evaluate(self, x: int) -> tuple[Fraction, Fraction, Fraction]:
        a, c = self.pair.evaluate(x)
        return (a, self.w.w1 * a + self.w.w2 * c, c)

    __call__ = evaluate

    @property
    def case_id(self) -> int:
        return self.pair.constants.case_id


def solve_triple(
    system3: RecurrenceSystem, w: Optional[WeightPair] = None
) -> Union[ClosedFormTriple, PairRouteTriple]:
    """Closed-form evaluator for an order-3 system, detecting weights if needed."""
    _require_order_3(system3)
    if w is None:
        w = detect_weights(system3)
        if w is None:
            raise StructuralConditionError("no weights w1 + w2 = 1 with b = w1*a + w2*c were found")
    if w.w1 == 0 or w.w2 == 0:
        reduction = reduce_to_pairs(system3, w)
        return PairRouteTriple(closed_form_pair_row(reduction.ac), w)
    return closed_form_triple(system3, w)
