"""Identities of the LGL optimum at ``alpha = 0``.

At the optimum the second local segment sits exactly on the GRK local
angle, which makes the parity-dependent part of the LGL constraint vanish,
and the total count ``j1 + j2`` is flat to second order in ``j1``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from ..grk import grk_scaled
from .families import gamma_of, lgl_best_delta, lgl_solve_eta
from .residuals import lgl_parity_coefficient

__all__ = ["CancellationCheck", "appendix_cancellation_check", "lgl_flat_direction_check"]


class CancellationCheck(NamedTuple):
    lhs: float  # cos(g) sin(2g) cos(2 delta)
    rhs: float  # sin(g) cos(2g)
    cos_val: float  # (1 - tan(g)**2) / 2
    sin_val: float  # sqrt(3 - 4 sin(g)**2) / (2 cos(g)**2)
    cos_angle: float  # cos(2 delta) at the GRK delta
    sin_angle: float
    grk_ratio: float  # sin(g) cos(2g) / (cos(g) sin(2g))
    parity_coefficient: float  # lgl parity factor at alpha = 0, GRK delta
    parity_coefficient_any_alpha: float  # same at alpha = 0.3

    @property
    def max_error(self) -> float:
        return max(
            abs(self.lhs - self.rhs),
            abs(self.cos_angle - self.cos_val),
            abs(self.sin_angle - self.sin_val),
            abs(self.cos_angle - self.grk_ratio),
            abs(self.parity_coefficient),
            abs(self.parity_coefficient_any_alpha),
        )


def appendix_cancellation_check(K: float) -> CancellationCheck:
    g = gamma_of(K)
    s, c = math.sin(g), math.cos(g)
    delta = grk_scaled(K).alpha
    two_delta = 2.0 * delta
    return CancellationCheck(
        lhs=c * math.sin(2 * g) * math.cos(two_delta),
        rhs=s * math.cos(2 * g),
        cos_val=(1.0 - math.tan(g) ** 2) / 2.0,
        sin_val=math.sqrt(3.0 - 4.0 * s * s) / (2.0 * c * c),
        cos_angle=math.cos(two_delta),
        sin_angle=math.sin(two_delta),
        grk_ratio=s * math.cos(2 * g) / (c * math.sin(2 * g)),
        parity_coefficient=float(lgl_parity_coefficient(g, 0.0, delta)),
        parity_coefficient_any_alpha=float(lgl_parity_coefficient(g, 0.3, delta)),
    )


def lgl_flat_direction_check(K: float, parity: int = -1, h: float = 1e-3) -> tuple[float, float]:
    """Central differences of ``S(alpha) = alpha - eta(alpha)`` at ``alpha = 0``.

    ``S`` is ``(j1 + j2)/sqrt(b)`` up to a constant; ``delta`` stays at its
    optimum for ``alpha = 0``.  Returns the first and second derivatives.
    """
    g = gamma_of(K)
    deltas, _ = lgl_best_delta(K, parity, [0.0])
    delta = float(deltas[0])

    def S(alpha: float) -> float:
        return alpha - lgl_solve_eta(g, alpha, delta, parity, K)

    s_minus, s_zero, s_plus = S(-h), S(0.0), S(h)
    return (s_plus - s_minus) / (2.0 * h), (s_plus - 2.0 * s_zero + s_minus) / (h * h)
