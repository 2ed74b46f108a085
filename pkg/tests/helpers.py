"""Independent oracles and fixture generators for the test suite.

Nothing here calls into the code paths it is used to check: determinants use
fraction-free Bareiss elimination, constant tails come from matrix powers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

from simrec.model import RecurrenceSystem

FIXTURES = Path(__file__).parent / "fixtures"

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
nonzero_rationals = rationals.filter(lambda q: q != 0)


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text()


def rand_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-9, 9), rng.choice([d for d in range(-9, 10) if d != 0]))
        if q != 0 or not nonzero:
            return q


def random_system(rng: random.Random, n: int) -> RecurrenceSystem:
    return RecurrenceSystem.build(
        [[rand_rational(rng) for _ in range(n)] for _ in range(n)],
        [rand_rational(rng) for _ in range(n)],
        [rand_rational(rng) for _ in range(n)],
    )


def bareiss_det(matrix) -> Fraction:
    """Fraction-free determinant: scale rows to integers, then Bareiss."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    n = len(rows)
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        lcm = 1
        for v in row:
            lcm = lcm * v.denominator // _gcd(lcm, v.denominator)
        scale /= lcm
        int_rows.append([int(v * lcm) for v in row])
    m = int_rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] * scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def shifted(matrix, t: Fraction):
    """``matrix - t*I``."""
    return [[v - t if i == j else v for j, v in enumerate(row)] for i, row in enumerate(matrix)]


def naive_matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def naive_matpow(a, k: int):
    n = len(a)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = naive_matmul(out, a)
    return out


def generic_tail(system: RecurrenceSystem, betas) -> list[Fraction]:
    """Constant of ``y[x] = sum beta_j y[x-j] + t`` for any order.

    From ``y[x] = A^k y[x-k] + sum_{i<k} A^i α`` the constant is
    ``(sum_{i<n} A^i - sum_j beta_j sum_{i<n-j} A^i) α``.
    """
    n = system.order
    A = [list(r) for r in system.coefficients]
    alpha = [[v] for v in system.affine]
    powers = [naive_matpow(A, i) for i in range(n)]

    def geometric(upto):
        acc = [[Fraction(0)] * n for _ in range(n)]
        for i in range(upto):
            acc = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, powers[i])]
        return acc

    total = geometric(n)
    for j, beta in enumerate(betas, start=1):
        g = geometric(n - j)
        total = [[x - beta * y for x, y in zip(r1, r2)] for r1, r2 in zip(total, g)]
    return [row[0] for row in naive_matmul(total, alpha)]


# -- constructed fixtures -------------------------------------------------------


def row_pair(case: int, rng: random.Random) -> RecurrenceSystem:
    """Random order-2 system with equal row sums landing in the given case."""
    while True:
        a11, a12, a21 = rand_rational(rng), rand_rational(rng), rand_rational(rng)
        if case in (2, 5):
            a12 = 1 - a11
        if case == 3:
            a21 = a11 - 1
        if case in (4, 5):
            a21 = -a12
        S, D = a11 + a12, a11 - a21
        ok = {
            1: a12 != -a21 and S != 1 and D != 1,
            2: a12 != -a21,
            3: a12 != -a21 and S != 1,
            4: S != 1,
            5: True,
        }[case]
        if ok:
            break
    a22 = a11 + a12 - a21
    return RecurrenceSystem.build(
        [[a11, a12], [a21, a22]],
        [rand_rational(rng), rand_rational(rng)],
        [rand_rational(rng), rand_rational(rng)],
    )


def admissible_triple(
    case: int, rng: random.Random, twist: bool = False, w1: Fraction | None = None
) -> RecurrenceSystem:
    """Order-3 system with rows a, c of equal sum and ``b = w1 a + w2 c`` invariant.

    With proportional coefficients C3 = w2(α11 - α31) + w1(α33 - α13); solving
    for α31 under the row-sum constraint hits any target C3.  ``twist`` adds
    ``(-w1 t, t, -w2 t)`` to row b: the invariant still propagates but the
    coefficients are no longer proportional.
    """
    while True:
        if w1 is None:
            weight = rand_rational(rng, nonzero=True)
            if weight == 1:
                continue
        else:
            weight = w1
        w2 = 1 - weight
        a11, a12, a32 = rand_rational(rng), rand_rational(rng), rand_rational(rng)
        a13 = 1 - a11 - a12 if case in (2, 5) else rand_rational(rng)
        C1 = a11 + a12 + a13
        if case in (1, 3, 4) and C1 == 1:
            continue
        target = {1: rand_rational(rng), 2: rand_rational(rng), 3: Fraction(1), 4: C1, 5: Fraction(1)}[case]
        if case in (1, 2) and target in (1, C1):
            continue
        a31 = w2 * a11 + weight * (C1 - a32 - a13) - target
        a33 = C1 - a31 - a32
        ra, rc = (a11, a12, a13), (a31, a32, a33)
        rb = [weight * p + w2 * q for p, q in zip(ra, rc)]
        if twist:
            t = rand_rational(rng, nonzero=True)
            rb = [rb[0] - weight * t, rb[1] + t, rb[2] - w2 * t]
        al1, al3 = rand_rational(rng), rand_rational(rng)
        a0, c0 = rand_rational(rng), rand_rational(rng)
        if twist and a0 == c0:
            continue
        return RecurrenceSystem.build(
            [ra, rb, rc],
            [al1, weight * al1 + w2 * al3, al3],
            [a0, weight * a0 + w2 * c0, c0],
        )
