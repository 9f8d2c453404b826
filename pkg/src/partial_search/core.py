"""Grover iterations restricted to the three-dimensional invariant subspace.

Every state reachable from the uniform superposition by global and local
Grover iterations lies in the span of three orthonormal vectors:

* ``|t>``   the target item,
* ``|ntt>`` the uniform state over the non-target items of the target block,
* ``|u>``   the uniform state over every item outside the target block.

Matrices and states in this module use that row/column order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NonDivisible, TooSmall

__all__ = [
    "DatabaseGeometry",
    "ReducedState",
    "Kind",
    "IterationSequence",
    "make_geometry",
    "initial_state",
    "reduced_global_exact",
    "reduced_local_exact",
    "asymptotic_global",
    "local_rotation",
    "apply_sequence",
    "block_success_probability",
]


@dataclass(frozen=True)
class DatabaseGeometry:
    """An ``N``-item database split into ``K`` contiguous blocks of ``b`` items."""

    N: int
    K: int
    b: int
    gamma: float
    theta1: float
    theta2: float


def make_geometry(N: int, K: int) -> DatabaseGeometry:
    """Build the geometry for ``N`` items in ``K`` blocks.

    ``gamma``, ``theta1`` and ``theta2`` are the arcsines of ``1/sqrt(K)``,
    ``1/sqrt(N)`` and ``1/sqrt(b)``.
    """
    N, K = int(N), int(K)
    if K < 2:
        raise TooSmall(f"need at least 2 blocks, got K={K}")
    if N % K:
        raise NonDivisible(f"K must divide N (N={N}, K={K})")
    b = N // K
    if b < 2:
        raise TooSmall(f"blocks need at least 2 items, got b={b}")
    return DatabaseGeometry(
        N=N,
        K=K,
        b=b,
        gamma=math.asin(1.0 / math.sqrt(K)),
        theta1=math.asin(1.0 / math.sqrt(N)),
        theta2=math.asin(1.0 / math.sqrt(b)),
    )


@dataclass(frozen=True)
class ReducedState:
    """Real amplitudes on ``(|t>, |ntt>, |u>)``."""

    a_t: float
    a_ntt: float
    a_u: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a_t, self.a_ntt, self.a_u], dtype=float)

    @classmethod
    def from_array(cls, v) -> "ReducedState":
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def norm(self) -> float:
        return math.sqrt(self.a_t**2 + self.a_ntt**2 + self.a_u**2)


class Kind(enum.Enum):
    GLOBAL = "G"
    LOCAL = "L"


@dataclass(frozen=True)
class IterationSequence:
    """Segments of repeated iterations; the first listed segment acts first."""

    steps: tuple[tuple[Kind, int], ...] = ()

    def __post_init__(self):
        steps = tuple((Kind(kind), int(count)) for kind, count in self.steps)
        for _, count in steps:
            if count < 0:
                raise ValueError(f"iteration counts must be nonnegative, got {count}")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def of(cls, *steps: tuple[Kind | str, int]) -> "IterationSequence":
        return cls(tuple(steps))

    @property
    def total_queries(self) -> int:
        return sum(count for _, count in self.steps)

    def __iter__(self) -> Iterable[tuple[Kind, int]]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)


def initial_state(geom: DatabaseGeometry) -> ReducedState:
    """The uniform superposition over all ``N`` items."""
    sg = math.sin(geom.gamma)
    return ReducedState(
        sg * math.sin(geom.theta2),
        sg * math.cos(geom.theta2),
        math.cos(geom.gamma),
    )


_TARGET_FLIP = np.diag([-1.0, 1.0, 1.0])


def reduced_global_exact(geom: DatabaseGeometry) -> np.ndarray:
    """Exact 3x3 matrix of one global iteration ``-I_s1 I_t``."""
    s1 = initial_state(geom).as_array()
    reflect_s1 = np.eye(3) - 2.0 * np.outer(s1, s1)
    return -reflect_s1 @ _TARGET_FLIP


def reduced_local_exact(geom: DatabaseGeometry) -> np.ndarray:
    """Exact 3x3 matrix of one local iteration ``-I_s2 I_t``.

    The block-wise reflection acts on ``|u>`` as ``-1``: ``|u>`` is a sum of
    the uniform states of the non-target blocks.
    """
    s2 = np.array([math.sin(geom.theta2), math.cos(geom.theta2), 0.0])
    e_u = np.array([0.0, 0.0, 1.0])
    reflect_s2 = np.eye(3) - 2.0 * np.outer(s2, s2) - 2.0 * np.outer(e_u, e_u)
    return -reflect_s2 @ _TARGET_FLIP


def local_rotation(angle: float) -> np.ndarray:
    """Closed form of repeated local iterations with total angle ``2*j*theta2``."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])


def asymptotic_global(gamma: float, phi: float, parity: int) -> np.ndarray:
    """Large-block form of ``j`` global iterations.

    ``phi`` stands for ``2*j*theta1`` and ``parity`` for ``(-1)**j``.
    """
    if parity not in (1, -1):
        raise ValueError(f"parity must be +1 or -1, got {parity}")
    s, c = math.sin(gamma), math.cos(gamma)
    cp, sp = math.cos(phi), math.sin(phi)
    mixed = s * c * (-parity + cp)
    return np.array(
        [
            [cp, sp * s, sp * c],
            [-sp * s, parity * c * c + cp * s * s, mixed],
            [-sp * c, mixed, parity * s * s + cp * c * c],
        ]
    )


def apply_sequence(
    geom: DatabaseGeometry,
    seq: IterationSequence,
    start: ReducedState | None = None,
) -> ReducedState:
    """Evolve ``start`` (default: the uniform state) through ``seq``."""
    v = (start or initial_state(geom)).as_array()
    mats = {Kind.GLOBAL: reduced_global_exact(geom), Kind.LOCAL: reduced_local_exact(geom)}
    for kind, count in seq:
        if count:
            v = np.linalg.matrix_power(mats[kind], count) @ v
    return ReducedState.from_array(v)


def block_success_probability(state: ReducedState) -> float:
    """Probability that measuring lands in the target block."""
    return state.a_t**2 + state.a_ntt**2
