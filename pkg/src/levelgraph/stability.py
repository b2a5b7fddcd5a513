"""Trichotomy for connecting two boundary points along a level curve.

Both points must lie on a common level of v = Im w (after shifting the level
to zero).  The verdict compares the region labels n1 = N(z1), n2 = N(z2)
assigned by the counting function: the vertical-tangent curves of the level
family cut the right half-plane into horizontally-ordered bands, a graphical
connection cannot leave its band, and a band boundary can only be touched at
the far end.  When z1 sits at a critical point of order k the level set
branches there, opening a window of k+1 (or k, in the non-generic case)
admissible bands for z2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cauchy import HalfInteger
from .config import SIGN_TOL, SNAP_TOL
from .errors import LevelMismatch
from .landscape import (
    counting_function,
    on_axis_critical_points,
    validate_no_rhp_critical_points,
)
from .poly import ComplexPolynomial

__all__ = ["BoundaryData", "StabilityVerdict", "shift_to_zero_level", "classify"]

_HALF = HalfInteger(1)


@dataclass(frozen=True)
class BoundaryData:
    """w plus the two points to connect; needs Re z2 > Re z1 >= 0."""

    w: ComplexPolynomial
    z1: complex
    z2: complex

    def __post_init__(self):
        object.__setattr__(self, "z1", complex(self.z1))
        object.__setattr__(self, "z2", complex(self.z2))
        snap = SNAP_TOL * (1.0 + abs(self.z1))
        if self.z1.real < -snap:
            raise ValueError(f"z1={self.z1!r} must have nonnegative real part")
        if not self.z2.real > self.z1.real:
            raise ValueError(
                f"need Re z2 > Re z1, got z1={self.z1!r}, z2={self.z2!r}"
            )


@dataclass(frozen=True)
class StabilityVerdict:
    """verdict is one of stable / strictly_semistable / unstable.

    case records which branch of the decision rule fired: noncritical,
    generic_critical, nongeneric_critical, or z2_on_boundary (z2 exactly on
    a vertical-tangent curve, always unstable).  critical_order is the order
    of the critical point under z1, or None when z1 is a regular point.
    """

    verdict: str
    n1: HalfInteger
    n2: HalfInteger
    case: str
    critical_order: int | None = None


def shift_to_zero_level(data: BoundaryData, tol: float = SIGN_TOL) -> BoundaryData:
    """Subtract a constant from w so that Im w(z1) = 0.

    Raises LevelMismatch when z2 does not lie on the shifted zero level --
    the two points must be on the same level curve for the question to make
    sense at all.
    """
    w = data.w - ComplexPolynomial([1j * data.w(data.z1).imag])
    resid = w(data.z2).imag
    scale = max(abs(w(data.z2)), w.coeff_scale * (1.0 + abs(data.z2)) ** max(w.degree, 0))
    if abs(resid) > tol * max(scale, 1.0):
        raise LevelMismatch(
            f"Im w(z2) = {resid!r} after shifting; z1 and z2 sit on different levels"
        )
    return BoundaryData(w, data.z1, data.z2)


def _critical_point_under(w, z1, tol):
    snap = max(SNAP_TOL * (1.0 + abs(z1)), tol)
    if abs(z1.real) > snap:
        return None
    for cp in on_axis_critical_points(w, tol):
        if abs(cp.y0 - z1.imag) <= snap:
            return cp
    return None


def classify(data: BoundaryData, tol: float = SIGN_TOL) -> StabilityVerdict:
    """Decide whether z2 connects to z1 graphically along their level curve."""
    data = shift_to_zero_level(data, tol)
    validate_no_rhp_critical_points(data.w, tol)
    n1 = counting_function(data.w, data.z1, tol).value
    n2 = counting_function(data.w, data.z2, tol).value
    cp = _critical_point_under(data.w, data.z1, tol)

    if not n2.is_integer:
        return StabilityVerdict(
            "unstable", n1, n2, "z2_on_boundary", cp.order if cp else None
        )

    if cp is None:
        gap = abs(n1 - n2)
        if gap == 0:
            verdict = "stable"
        elif gap == _HALF:
            verdict = "strictly_semistable"
        else:
            verdict = "unstable"
        return StabilityVerdict(verdict, n1, n2, "noncritical")

    k = cp.order
    if cp.genericity == "generic":
        verdict = "stable" if n1 - k <= n2 <= n1 else "unstable"
        return StabilityVerdict(verdict, n1, n2, "generic_critical", k)

    # non-generic: the band window shrinks by a half step on each side,
    # and exactly the two bands just outside it remain reachable
    # semistably through the tangency
    if n1 - k + _HALF <= n2 <= n1 - _HALF:
        verdict = "stable"
    elif n2 == n1 - k - _HALF or n2 == n1 + _HALF:
        verdict = "strictly_semistable"
    else:
        verdict = "unstable"
    return StabilityVerdict(verdict, n1, n2, "nongeneric_critical", k)
