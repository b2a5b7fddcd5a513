"""Cauchy indices three ways, and what they count.

The Cauchy index of a rational function h over [c, d] tallies its jumps
through infinity: +1 for each -inf -> +inf jump as the argument increases,
-1 for the reverse.  The package computes it by pole enumeration, by a
floating-point Sturm chain, and by an exact rational Sturm chain; they
must agree to the last half-integer, and for h = P'/P the index over the
whole line counts the distinct real roots of P.
"""

import math

from levelgraph.cauchy import (
    RationalFunction,
    index_on_interval,
    index_on_interval_exact,
    index_on_interval_sturm,
)
from levelgraph.poly import RealPolynomial


def show(name, h, c, d):
    by_poles = index_on_interval(h, c, d)
    by_sturm = index_on_interval_sturm(h, c, d)
    by_exact = index_on_interval_exact(h, c, d)
    tag = "agree" if by_poles == by_sturm == by_exact else "DISAGREE"
    print(f"  {name:28s} over [{c:g}, {d:g}]: "
          f"poles={by_poles} sturm={by_sturm} exact={by_exact}  ({tag})")


print("Three backends on a few hand-checkable functions")
print("-" * 60)

# 1/y has a single +1 jump at the origin
show("1 / y", RationalFunction(RealPolynomial([1.0]),
                               RealPolynomial([0.0, 1.0])), -1.0, 1.0)

# y / (y^2 - 1): two simple poles, each jumping +1
show("y / (y^2 - 1)", RationalFunction(RealPolynomial([0.0, 1.0]),
                                       RealPolynomial([-1.0, 0.0, 1.0])),
     -2.0, 2.0)

# a double pole contributes nothing: the one-sided signs match
show("1 / y^2", RationalFunction(RealPolynomial([1.0]),
                                 RealPolynomial([0.0, 0.0, 1.0])), -1.0, 1.0)

print()
print("Root counting through the logarithmic derivative")
print("-" * 60)
# P = (y+2) y (y-3) (y^2+1): three distinct real roots, one complex pair
P = (RealPolynomial([2.0, 1.0]) * RealPolynomial([0.0, 1.0])
     * RealPolynomial([-3.0, 1.0]) * RealPolynomial([1.0, 0.0, 1.0]))
h = RationalFunction(P.derivative(), P)
count = index_on_interval(h, -math.inf, math.inf)
print(f"  P has real roots -2, 0, 3 (and a complex pair)")
print(f"  index of P'/P over the whole line: {count}")
assert count == 3
print("  matches the distinct real-root count, as it must")
