"""The band landscape of a potential.

For a polynomial w with no derivative roots in the open right half-plane,
the wall {Re w' = 0} slices the right half-plane into regions, and each
region carries a half-integer label computed from Cauchy indices along
vertical lines.  Level curves of Im w can only turn vertical on the wall,
so the labels organise which boundary pairs can be joined by a graph.
"""

from levelgraph.landscape import (
    counting_function,
    on_axis_critical_points,
    tangent_cone_at_infinity,
)
from levelgraph.poly import ComplexPolynomial
from levelgraph.tracer import sample_regions

# w = z^3/3 - i z^2: critical points at 0 and 2i, both on the axis
w = ComplexPolynomial([0.0, 0.0, -1j, 1.0 / 3.0])

print("potential coefficients (ascending):", [str(c) for c in w.coeffs])
print()

print("on-axis critical points")
for cp in on_axis_critical_points(w):
    print(f"  y0 = {cp.y0:+.4f}   order {cp.order}   {cp.genericity}")
print()

cone = tangent_cone_at_infinity(w)
print(f"tangent cone at infinity: {cone.genericity}")
print()

pts = [0.5 + 0.0j, 0.5 + 1.0j, 0.5 + 2.5j, 2.0 + 0.0j, 2.0 - 2.0j]
labels = sample_regions(w, pts)
print("labels at sample points (constant within each region)")
for p, lab in zip(pts, labels):
    res = counting_function(w, p)
    print(f"  N({p.real:+.1f}{p.imag:+.1f}i) = {str(lab):>4s}"
          f"   (interval part {res.interval_index}, "
          f"critical part {res.crit_sum})")
