"""Turn a coupled affine system into one recurrence per variable.

Run with ``python demos/decoupling.py``.
"""

from simrec import char_poly, decouple_affine, direct_affine_small, iterate, parse_system

SYSTEM = """
a[x] = 2*a[x-1] + 4*b[x-1] + 1
b[x] = a[x-1] + 3*b[x-1] + 2*c[x-1] + 1
c[x] = 2*b[x-1] + 4*c[x-1] + 1
init: a = 0, b = 0, c = 0
"""

system = parse_system(SYSTEM)
traj = iterate(system, 8)
print("a:", [str(v) for v in traj.column("a")])

# Every matrix satisfies its own characteristic polynomial.
print("det(A - λI) =", char_poly(system.coefficients))

# Adjoining 1 = 1 absorbs the constants; the coefficients then sum to 1.
aug = decouple_affine(system)
print("augmented:", [str(b) for b in aug.betas], "sum", sum(aug.betas))

# For small orders the constants can be kept explicit instead.
direct = direct_affine_small(system)
print("direct:", [str(b) for b in direct.betas], "tails", [str(t) for t in direct.tail])

a = traj.column("a")
for x in range(4, 9):
    assert direct.predict(a[:x]) == a[x]
    assert aug.predict(a[:x]) == a[x]
print("both recurrences reproduce a[4..8]")
