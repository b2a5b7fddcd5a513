"""Existence verdicts for the deformed equation on projective bundles.

Under the Calabi symmetry on X_{r,m} (the projectivisation of
O + O(-1)^{r+1} over P^m) the equation reduces to finding a graph on a
level set in the plane.  `analyze` builds the potential from the class
data (m, r, xi, b, q), lifts the phases of the three charges Z_X, Z_Dinf,
Z_P, and decides existence from half-integer indices; the grade window
on phi_P - phi_X reproduces the same verdict as a built-in cross-check.
"""

from levelgraph.dhym import CalabiInput, analyze


def show(tag, inp):
    rep = analyze(inp)
    print(f"{tag}")
    print(f"  theta_hat = {rep.theta_hat:+.6f}   genericity: {rep.genericity}")
    print(f"  Z_X = {rep.Z_X:.4f}   Z_Dinf = {rep.Z_Dinf:.4f}   "
          f"Z_P = {rep.Z_P:.4f}")
    print(f"  phi_X = {rep.phi_X:+.6f}   phi_Dinf = {rep.phi_Dinf:+.6f}   "
          f"phi_P = {rep.phi_P:+.6f}")
    print(f"  indices: at the axis {rep.ind_R0}, along x=b {rep.ind_Rb}")
    print(f"  verdict: {rep.verdict}")
    print(f"  note: {rep.normalization_note}")
    print()


# the hand-checkable instance: everything untwisted
show("m=1, r=0, xi=1, b=1, q=0  (hand case: phi_Dinf - phi_X = 1/2)",
     CalabiInput(1, 0, 1.0, 0.0, 1.0, 0.0))

# X_{1,1} with its symmetric class: the zero graph is an exact solution
# and the grade difference sits exactly at the lower end of its window
show("m=1, r=1, xi=1, b=1, q=0  (semistable threshold)",
     CalabiInput(1, 1, 1.0, 0.0, 1.0, 0.0))

# twisting q to the special value sqrt(3) turns the top charge purely
# imaginary; with r=0 the non-generic window is empty, so no solution
show("m=1, r=0, xi=1, b=1, q=sqrt(3)  (non-generic: no solution)",
     CalabiInput(1, 0, 1.0, 0.0, 1.0, 3.0 ** 0.5))
