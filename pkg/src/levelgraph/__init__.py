"""Level-curve geometry of harmonic functions Im(w) for polynomial w.

Subpackages build on each other roughly bottom-up:

- ``poly``: complex/real polynomial arithmetic, vertical-line restriction,
  multiplicity-aware root finding
- ``cauchy``: Cauchy indices of real rational functions (three backends)
- ``landscape``: critical points of Im(w) on the imaginary axis, counting
  function for level-curve crossings, tangent cone at infinity
- ``stability``: the boundary-data trichotomy (stable / strictly semistable /
  unstable)
- ``tracer``: numeric continuation of the level curves and gradient-direction
  field curves, graphical-connection checks
- ``kempf_ness``: weighted energy functional on an interval, its flow, and
  convexity along geodesics
- ``dhym``: existence of solutions to the degenerate special-Lagrangian /
  line-bundle equation via phase lifts and Cauchy indices
- ``cli``: JSON/CSV command-line front end
"""

from .errors import (
    CorrectorDiverged,
    CriticalPointInRHP,
    CrossCheckFailure,
    DegenerateLine,
    DenominatorIdenticallyZero,
    Diverged,
    IndeterminateSign,
    LevelGraphError,
    LevelMismatch,
    LiftInconsistency,
    NonIntegrableEndpoint,
    SeedNotOnCurve,
    Z2OnBoundary,
    ZeroPolynomial,
    ZeroTotalCharge,
)

__version__ = "0.1.0"

__all__ = [
    "CorrectorDiverged",
    "CriticalPointInRHP",
    "CrossCheckFailure",
    "DegenerateLine",
    "DenominatorIdenticallyZero",
    "Diverged",
    "IndeterminateSign",
    "LevelGraphError",
    "LevelMismatch",
    "LiftInconsistency",
    "NonIntegrableEndpoint",
    "SeedNotOnCurve",
    "Z2OnBoundary",
    "ZeroPolynomial",
    "ZeroTotalCharge",
    "__version__",
]
