"""Simulation and optimization of quantum partial search over a blocked database."""

from .core import (
    DatabaseGeometry,
    IterationSequence,
    Kind,
    ReducedState,
    apply_sequence,
    asymptotic_global,
    block_success_probability,
    initial_state,
    local_rotation,
    make_geometry,
    reduced_global_exact,
    reduced_local_exact,
)
from .errors import IndexOutOfRange, NonDivisible, NoRoot, PartialSearchError, TooSmall
from .grk import GrkScaled, GrkSchedule, grk_angles, grk_integer_schedule, grk_r_curve, grk_scaled

__version__ = "0.1.0"
