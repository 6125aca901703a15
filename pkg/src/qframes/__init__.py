"""Discrete frames on finite-dimensional left quaternion Hilbert spaces."""

from .coefficients import (
    L1SolveReport,
    SolverParams,
    canonical_coefficients,
    lp_norm,
    min_l1_coefficients,
    pythagoras_split,
)
from .frames import (
    DualFrame,
    Frame,
    FrameBounds,
    analysis,
    biorthogonal_check,
    canonical_dual,
    frame_bounds,
    frame_decomposition,
    frame_operator,
    is_frame,
    is_tight,
    mercedes,
    project_onto_span,
    standard_basis,
    synthesis,
)
from .quaternion import Quaternion, qadd, qconj, qinv, qmul, qnorm
from .simulation import NoiseSpec, SimReport, simulate

__version__ = "0.1.0"
