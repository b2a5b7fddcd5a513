"""Tolerance and discretization defaults, collected in one place.

All tolerances that decide a *sign* or a *snap* are relative: they get
multiplied by a scale derived from the coefficients or the geometry at hand.
The constants here are the bare factors.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

# sign of a probed value is "zero" when |value| < SIGN_TOL * (1 + coeff scale)
SIGN_TOL = 1e-9

# a w'-root is snapped onto the imaginary axis when |Re| <= SNAP_TOL * scale;
# the same band matches z1 against a critical point and z-endpoints in traces
SNAP_TOL = 1e-8

# root clustering radius factor: tol = ROOT_CLUSTER_TOL * (1 + max |coeff|)
ROOT_CLUSTER_TOL = 1e-6

# continuation (tracer)
CORRECTOR_TOL = 1e-10      # |level function| after Newton correction
MAX_TURN_ANGLE = 0.2       # radians per accepted step
TRACE_RADIUS_FACTOR = 4.0  # radius = factor * (1 + max |root of w|)

# flow
FLOW_STOP_TOL = 1e-8
FLOW_DIVERGED = 1e6
FLOW_ENDPOINT_BLOWUP = 1e8
GRID_NODES = 257

# phase unwrapping along charge paths
UNWRAP_MAX_STEP = 3.141592653589793 / 8
UNWRAP_T_FACTOR = 64.0
UNWRAP_TAIL_TOL = 1e-6


@dataclass
class RunConfig:
    """Run-wide knobs, mirrored by the CLI ``--config`` JSON file."""

    sign_tol: float = SIGN_TOL
    snap_tol: float = SNAP_TOL
    corrector_tol: float = CORRECTOR_TOL
    stop_tol: float = FLOW_STOP_TOL
    grid_nodes: int = GRID_NODES
    trace_radius: float = 0.0   # 0 means "derive from the roots of w"
    out_path: str = ""
    out_format: str = "json"    # {json, csv}

    def __post_init__(self):
        for name in ("sign_tol", "snap_tol", "corrector_tol", "stop_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.grid_nodes < 3:
            raise ValueError("grid_nodes must be >= 3")
        if self.out_format not in ("json", "csv"):
            raise ValueError("out_format must be 'json' or 'csv'")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)
