"""Classifying boundary data: stable, strictly semistable, or unstable.

Given w and two boundary points z1 (on the imaginary axis) and z2 (to its
right, both on the same level of Im w), `classify` decides from half-integer
labels alone whether a graph of a function joins them along the level set:
stable means a smooth graph, strictly semistable a continuous graph that
fails to be C^1 at z1, unstable no graph at all.  No curve is ever traced;
the decision is pure index arithmetic.
"""

import cmath

from levelgraph.errors import LevelMismatch
from levelgraph.poly import ComplexPolynomial
from levelgraph.stability import BoundaryData, classify

CUBE = ComplexPolynomial([0.0, 0.0, 0.0, 1.0 / 3.0])  # w = z^3/3


def report(name, w, z1, z2):
    v = classify(BoundaryData(w, z1, z2))
    extra = f", critical order {v.critical_order}" if v.critical_order else ""
    print(f"  {name:30s} -> {v.verdict:10s}"
          f" (n1={v.n1}, n2={v.n2}, case={v.case}{extra})")


print("w = z^3/3  (the origin is a generic critical point of order 2)")
report("z2 = 2 on the real axis", CUBE, 0j, 2.0 + 0j)

# the same level set {Im z^3 = 0} also contains the ray arg z = pi/3;
# a point there shares the level but sits in a different band
report("z2 = 2 e^{i pi/3}", CUBE, 0j, 2.0 * cmath.exp(1j * cmath.pi / 3))

print()
print("a potential with no wall in sight stays stable")
# real coefficients keep the real axis on the zero level, and
# Re w' = 0.75x^2 + 0.6x + 1 never vanishes there
w2 = ComplexPolynomial([0.0, 1.0, 0.3, 0.25])
report("z1 = i0, z2 = 1.5", w2, 0j, 1.5 + 0j)

print()
print("boundary points on different levels are rejected outright")
try:
    classify(BoundaryData(CUBE, 0j, 1.0 + 0.45j))
except LevelMismatch as exc:
    print(f"  LevelMismatch: {exc}")
