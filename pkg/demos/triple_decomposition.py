"""Solve a three-variable system through a linear invariant b = w1*a + w2*c.

The coefficients below are not proportional, so the invariant is not visible
in the matrix.  The initial values put b on the line and the recurrence keeps
it there, which is enough to eliminate c.

Run with ``python demos/triple_decomposition.py``.
"""

from simrec import (
    detect_weights,
    iterate,
    parse_system,
    reduce_to_pairs,
    render_system,
    solve_triple,
)
from simrec.oracle import check_invariant
from simrec.triplesolve import propagation_residuals

SYSTEM = """
a[x] = 37/6*a[x-1] - 1/6*b[x-1] + 2
b[x] = 15/2*a[x-1] - 7/2*b[x-1] + 2*c[x-1] + 2
c[x] = 16/3*a[x-1] - 10/3*b[x-1] + 4*c[x-1] + 2
init: a = 41, b = 47, c = 60
"""

system = parse_system(SYSTEM)
w = detect_weights(system)
print(f"w1 = {w.w1}, w2 = {w.w2} ({w.provenance})")
print("propagation residuals:", propagation_residuals(system, w))

pairs = reduce_to_pairs(system, w)
print("a, b pair:")
print(render_system(pairs.ab))

form = solve_triple(system)
k = form.constants
print(f"case {k.case_id}: C1={k.C1} C2={k.C2} C3={k.C3} C4={k.C4} C5={k.C5}")

traj = iterate(system, 40)
assert form.values(40) == list(traj.values)
assert check_invariant(traj, w)
print("a[40] =", form(40)[0])
