"""Closed forms for two-variable systems with equal row or column sums.

Run with ``python demos/pair_closed_forms.py``.
"""

from fractions import Fraction

from simrec import (
    RecurrenceSystem,
    closed_form_pair_col,
    closed_form_pair_row,
    difference_closed_form,
    iterate,
)

# Rows sum to 3 in both equations; b - a then evolves on its own.
rows = RecurrenceSystem.build([[2, 1], [0, 3]], affine=[1, 2], initial=[1, 4])
form = closed_form_pair_row(rows)
print("case", form.constants.case_id, "S =", form.constants.S, "D =", form.constants.D)
print("a[20], b[20] =", *map(str, form(20)))
assert form.values(20) == list(iterate(rows, 20).values)

diff = difference_closed_form(rows)
print("b[20] - a[20] =", diff(20))

# S = 1 and α12 = -α21 is the fully degenerate case: polynomial growth.
flat = RecurrenceSystem.build(
    [[Fraction(1, 2), Fraction(1, 2)], [Fraction(-1, 2), Fraction(3, 2)]],
    affine=[1, 0],
    initial=[0, 1],
)
flat_form = closed_form_pair_row(flat)
print("case", flat_form.constants.case_id, "a[10] =", flat_form(10)[0])
assert flat_form.values(10) == list(iterate(flat, 10).values)

# Equal column sums: a + b evolves on its own instead.
cols = RecurrenceSystem.build([[3, 1], [1, 3]], initial=[1, 0])
print("column form a[2] =", closed_form_pair_col(cols)(2)[0])
