"""Geometry of the level set {Im w = 0} for a polynomial w.

With all critical points of w confined to the closed left half-plane, the
zero level set of v = Im w meets the right half-plane in finitely many
unbounded arcs.  Everything here reduces questions about those arcs to Cauchy
indices of the ratio

    R_l(y) = Im(w'(l + iy)) / Re(w'(l + iy)),

which is a rational function of y on each vertical line Re z = l.  Poles of
R_l mark the points where Re w' = 0, i.e. where the level curves of v run
vertical; the arcs of that vertical-tangent locus slice the right half-plane
into horizontally ordered bands, and each arc crossing the line shows up as
a jump of a definite sign.  Counting the arcs below a point -- the band
label -- is therefore an index computation, with a correction on the axis
itself where critical points sit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cauchy import HalfInteger, RationalFunction, index_on_interval
from .config import SIGN_TOL, SNAP_TOL
from .errors import CriticalPointInRHP, DegenerateLine, ZeroPolynomial
from .poly import ComplexPolynomial, restrict_to_vertical_line, roots

__all__ = [
    "CriticalPoint",
    "TangentConeAtInfinity",
    "CountingResult",
    "vertical_line_ratio",
    "validate_no_rhp_critical_points",
    "on_axis_critical_points",
    "counting_function",
    "tangent_cone_at_infinity",
]

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class CriticalPoint:
    """A zero of w' on the imaginary axis.

    order is the multiplicity k of the zero; leading_coeff is the first
    nonvanishing Taylor coefficient of w' there, w'^(k)(i y0)/k!.  The
    genericity flag records whether the critical level curve leaves the
    imaginary axis transversally ("generic") or hugs it ("non_generic").
    """

    y0: float
    order: int
    leading_coeff: complex
    genericity: str


@dataclass(frozen=True)
class TangentConeAtInfinity:
    vertex: complex
    ray_angles: tuple
    genericity: str


@dataclass(frozen=True)
class CountingResult:
    """Band label of a point: one plus the vertical-tangent arcs below it.

    value = |interval_index| + crit_sum + 1.  interval_index keeps its sign
    (all jumps along one line share it); crit_sum is the total order of
    on-axis critical points at or below the point, zero off the axis.  A
    half-integer value means the point sits exactly on an arc.
    """

    value: HalfInteger
    interval_index: HalfInteger
    crit_sum: int


def vertical_line_ratio(w: ComplexPolynomial, x0: float) -> RationalFunction:
    """R_{x0}(y) = Im(w'(x0+iy)) / Re(w'(x0+iy)) as a rational function.

    Raises DegenerateLine when Re(w') vanishes identically on the line.
    """
    re, im = restrict_to_vertical_line(w.derivative(), x0)
    if re.is_zero:
        raise DegenerateLine(
            f"Re(w') vanishes identically on the line Re z = {x0!r}"
        )
    return RationalFunction(im, re)


def _critical_points_of(w: ComplexPolynomial):
    wp = w.derivative()
    if wp.is_zero:
        raise ZeroPolynomial("w is constant; it has no level-curve geometry")
    if wp.degree == 0:
        return []
    return roots(wp)


def validate_no_rhp_critical_points(w: ComplexPolynomial, tol: float = SIGN_TOL) -> None:
    """Raise CriticalPointInRHP if w' has a zero with positive real part."""
    for r in _critical_points_of(w):
        band = max(tol * (1.0 + abs(r.location)), 2.0 * r.cluster_radius)
        if r.location.real > band:
            raise CriticalPointInRHP(
                r.location,
                f"critical point at {r.location!r} has positive real part",
            )


def on_axis_critical_points(w: ComplexPolynomial, tol: float = SIGN_TOL):
    """Critical points of Im(w) on the imaginary axis, ordered by height."""
    out = []
    wp = w.derivative()
    for r in _critical_points_of(w):
        band = max(tol * (1.0 + abs(r.location)), 2.0 * r.cluster_radius)
        if abs(r.location.real) <= band:
            k = r.multiplicity
            y0 = r.location.imag
            lead = wp.derivatives_at(1j * y0, k)[k] / math.factorial(k)
            generic = abs((lead * _I_POWERS[k % 4]).real) >= tol * abs(lead)
            out.append(
                CriticalPoint(y0, k, lead, "generic" if generic else "non_generic")
            )
    out.sort(key=lambda c: c.y0)
    return out


def counting_function(
    w: ComplexPolynomial, z0: complex, tol: float = SIGN_TOL
) -> CountingResult:
    """Band label of z0: one plus the number of {Re w' = 0} arcs below it.

    Defined for Re z0 >= 0.  The count is |Cauchy index of R_{x0} over
    (-inf, y0]| plus one; on the axis itself, each critical point at or
    below z0 additionally contributes its full order (its index footprint
    is 0 when generic and -1 when not, so the order has to be added back
    by hand).  A half-integer value means z0 sits on an arc.
    """
    z0 = complex(z0)
    x0, y0 = z0.real, z0.imag
    axis_snap = SNAP_TOL * (1.0 + abs(z0))
    if x0 < -axis_snap:
        raise ValueError(f"z0={z0!r} lies in the open left half-plane")
    on_axis = x0 <= axis_snap
    if on_axis:
        x0 = 0.0
    validate_no_rhp_critical_points(w, tol)
    ratio = vertical_line_ratio(w, x0)
    idx = index_on_interval(ratio, -math.inf, y0)
    crit_sum = 0
    if on_axis:
        for cp in on_axis_critical_points(w, tol):
            if cp.y0 <= y0 + axis_snap:
                crit_sum += cp.order
    return CountingResult(abs(idx) + crit_sum + 1, idx, crit_sum)


def tangent_cone_at_infinity(w: ComplexPolynomial, tol: float = SIGN_TOL) -> TangentConeAtInfinity:
    """Asymptotic cone of the level set {Im w = Im w(vertex)} far from origin.

    The vertex is the centroid of the zeros of w; the cone consists of the n
    directions psi in (-pi/2, pi/2] with Im(beta e^{i n psi}) = 0, beta the
    leading coefficient.  When one ray lands on the imaginary axis the cone
    is flagged non_generic (the flag agrees with the direction-field one).
    """
    n = w.degree
    if n < 1:
        raise ZeroPolynomial("w must be nonconstant")
    beta = w.coeffs[-1]
    c_prev = w.coeffs[-2] if n >= 1 else 0.0
    vertex = -c_prev / (n * beta)
    # atan2 rather than cmath.phase: the latter overflows on subnormal parts
    a = math.atan2(beta.imag, beta.real)
    angles = []
    k_lo = math.floor(a / math.pi - n / 2) - 1
    k_hi = math.ceil(a / math.pi + n / 2) + 1
    for k in range(k_lo, k_hi + 1):
        psi = (k * math.pi - a) / n
        if -math.pi / 2 + tol < psi <= math.pi / 2 + tol:
            angles.append(min(psi, math.pi / 2))
    assert len(angles) == n, (angles, n)
    generic = abs((beta * _I_POWERS[n % 4]).imag) >= tol * abs(beta)
    return TangentConeAtInfinity(
        vertex, tuple(sorted(angles)), "generic" if generic else "non_generic"
    )
