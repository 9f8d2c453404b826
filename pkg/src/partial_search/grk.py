"""The optimized global-local-global partial search (GRK schedule).

The schedule is ``G1 . G2**j1 . G1**j0`` applied to the uniform state, with

    cos(2*j1*theta2) = sin(g) cos(2g) / (cos(g) sin(2g))
    tan(2*j0*theta1) = cos(2g) / (sin(g) sqrt(3 - 4 sin(g)**2))

where ``sin(g) = 1/sqrt(K)``.  In scaled form ``j1 = alpha*sqrt(b)`` and
``j0 = (pi/4)*sqrt(N) - eta*sqrt(b)``, so the query count is
``(pi/4)*sqrt(N) - (eta - alpha)*sqrt(b)`` up to the trailing single query.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .core import (
    DatabaseGeometry,
    IterationSequence,
    Kind,
    ReducedState,
    initial_state,
    reduced_global_exact,
    reduced_local_exact,
)
from .errors import TooSmall

__all__ = [
    "GrkScaled",
    "GrkSchedule",
    "grk_scaled",
    "grk_angles",
    "grk_integer_schedule",
    "grk_r_curve",
]


class GrkScaled(NamedTuple):
    alpha: float
    eta: float
    R: float


def grk_angles(K: float) -> tuple[float, float]:
    """Return ``(2*j1*theta2, 2*j0*theta1)`` of the optimal schedule.

    The first angle lies in ``[0, pi]``; the second in ``[0, pi/2)``, with
    ``K = 2`` giving exactly zero global iterations before the local ones.
    """
    if K < 2:
        raise TooSmall(f"need K >= 2, got {K}")
    g = math.asin(1.0 / math.sqrt(K))
    s, c = math.sin(g), math.cos(g)
    ratio = s * math.cos(2 * g) / (c * math.sin(2 * g))
    local_angle = math.acos(min(1.0, max(-1.0, ratio)))
    global_angle = math.atan2(math.cos(2 * g), s * math.sqrt(3.0 - 4.0 * s * s))
    return local_angle, global_angle


def grk_scaled(K: float) -> GrkScaled:
    """Scaled GRK coefficients ``(alpha, eta, R)`` for ``K`` blocks."""
    if K < 2:
        raise TooSmall(f"need K >= 2, got {K}")
    g = math.asin(1.0 / math.sqrt(K))
    s = math.sin(g)
    local_angle, _ = grk_angles(K)
    alpha = 0.5 * local_angle
    # branch in (0, pi/2]; cos(2g) = 0 at K = 2 lands on pi/2
    eta = 0.5 * math.sqrt(K) * math.atan2(s * math.sqrt(3.0 - 4.0 * s * s), math.cos(2 * g))
    return GrkScaled(alpha, eta, eta - alpha)


@dataclass(frozen=True)
class GrkSchedule:
    j0: int
    j1: int
    j2: int
    alpha: float
    eta: float
    R: float
    final_state: ReducedState

    @property
    def sequence(self) -> IterationSequence:
        return IterationSequence.of(
            (Kind.GLOBAL, self.j0), (Kind.LOCAL, self.j1), (Kind.GLOBAL, self.j2)
        )

    @property
    def total_queries(self) -> int:
        return self.j0 + self.j1 + self.j2

    @property
    def success_probability(self) -> float:
        return self.final_state.a_t**2 + self.final_state.a_ntt**2


def grk_integer_schedule(geom: DatabaseGeometry, radius: int = 2) -> GrkSchedule:
    """Round the GRK angles to integer counts for a concrete database.

    ``j1`` is the floor or ceiling of its ideal value; ``j0`` ranges over
    ``radius`` steps around its nearest integer.  Each pair is simulated
    with the exact reduced model and the one leaving the least amplitude
    outside the target block wins (fewer queries on ties).  Letting ``j1``
    roam too would slide along the nearly flat valley ``a_u = 0``.
    """
    local_angle, global_angle = grk_angles(geom.K)
    j1_ideal = local_angle / (2 * geom.theta2)
    j0_guess = round(global_angle / (2 * geom.theta1))

    g1 = reduced_global_exact(geom)
    g2 = reduced_local_exact(geom)
    s1 = initial_state(geom).as_array()

    offsets = range(-radius, radius + 1)
    j0_vals = sorted({max(0, j0_guess + d) for d in offsets})
    j1_vals = sorted({max(0, math.floor(j1_ideal)), max(0, math.ceil(j1_ideal))})
    after_j0 = {j0: np.linalg.matrix_power(g1, j0) @ s1 for j0 in j0_vals}
    local_pow = {j1: np.linalg.matrix_power(g2, j1) for j1 in j1_vals}

    best = None
    for j0, j1 in itertools.product(j0_vals, j1_vals):
        v = g1 @ (local_pow[j1] @ after_j0[j0])
        key = (abs(v[2]), j0 + j1)
        if best is None or key < best[0]:
            best = (key, j0, j1, v)
    _, j0, j1, v = best
    scaled = grk_scaled(geom.K)
    return GrkSchedule(j0, j1, 1, scaled.alpha, scaled.eta, scaled.R, ReducedState.from_array(v))


def grk_r_curve(K_list: Iterable[int]) -> list[tuple[int, float]]:
    return [(K, grk_scaled(K).R) for K in K_list]
