"""Exception types shared across the package.

Every error raised by levelgraph derives from :class:`LevelGraphError`, so
callers can catch one base class at an API boundary (the CLI does exactly
that).  The leaf classes are deliberately fine-grained: most of them signal a
*tolerance* failure — a sign probe or a consistency assertion that could not
be resolved within the configured bands — and the right reaction is usually
to widen a tolerance or perturb the input, not to retry blindly.
"""


class LevelGraphError(Exception):
    """Base class for all levelgraph errors."""


# ---------------------------------------------------------------------------
# polynomial layer


class ZeroPolynomial(LevelGraphError):
    """An operation that needs a nonzero polynomial got the zero polynomial."""


# ---------------------------------------------------------------------------
# Cauchy-index layer


class DenominatorIdenticallyZero(LevelGraphError):
    """The denominator of a rational function vanishes identically."""


class IndeterminateSign(LevelGraphError):
    """A sign probe landed inside the zero-tolerance band.

    The caller should widen the tolerance, move the probe, or switch to the
    exact-rational backend.
    """


# ---------------------------------------------------------------------------
# landscape / stability layer


class CriticalPointInRHP(LevelGraphError):
    """w' has a root with positive real part; the whole pipeline is undefined."""

    def __init__(self, root, message=None):
        self.root = root
        super().__init__(message or f"critical point {root} lies in the open right half-plane")


class DegenerateLine(LevelGraphError):
    """Re(w'(x0+iy)) is identically zero in y; counting is undefined on that line."""


class LevelMismatch(LevelGraphError):
    """The two boundary points do not lie on a common level set of Im(w)."""


class Z2OnBoundary(LevelGraphError):
    """z2 lies on the barrier set D0 (half-integer region label).

    classify() does not raise this; it returns an unstable verdict with the
    ``z2_on_boundary`` flag set.  The class exists for callers that want to
    enforce interior z2 strictly.
    """


# ---------------------------------------------------------------------------
# tracer


class SeedNotOnCurve(LevelGraphError):
    """The trace seed does not satisfy the level equation within tolerance."""


class CorrectorDiverged(LevelGraphError):
    """Newton correction failed to restore the level equation at minimum step size."""


# ---------------------------------------------------------------------------
# flow


class Diverged(LevelGraphError):
    """The flow residual exceeded the divergence threshold."""


class NonIntegrableEndpoint(LevelGraphError):
    """|Im w(z_f)| / sigma blew up near an endpoint during the flow."""


# ---------------------------------------------------------------------------
# dHYM pipeline


class ZeroTotalCharge(LevelGraphError):
    """P(z2) = 0: the total charge vanishes and the phase angle is undefined."""


class LiftInconsistency(LevelGraphError):
    """Phase unwrapping disagrees with the Cauchy-index crossing counts."""


class CrossCheckFailure(LevelGraphError):
    """Index-form and grade-form existence tests disagree."""
