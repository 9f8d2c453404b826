"""Brute-force state-vector simulation over all ``N`` items.

This is the reference the reduced three-dimensional model is checked
against, so it deliberately shares no code with :mod:`partial_search.core`
beyond the geometry record.  Blocks are the contiguous index ranges
``[i*b, (i+1)*b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DatabaseGeometry, IterationSequence, Kind, ReducedState
from .errors import IndexOutOfRange

__all__ = [
    "FullState",
    "uniform_full",
    "apply_global_full",
    "apply_local_full",
    "evolve_full",
    "project_reduced",
    "MAX_ORACLE_N",
]

MAX_ORACLE_N = 2**22


@dataclass(frozen=True)
class FullState:
    amplitudes: np.ndarray
    target_index: int
    geometry: DatabaseGeometry

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def uniform_full(geom: DatabaseGeometry, target_index: int) -> FullState:
    if not 0 <= target_index < geom.N:
        raise IndexOutOfRange(f"target index {target_index} outside [0, {geom.N})")
    if geom.N > MAX_ORACLE_N:
        raise ValueError(f"full simulation capped at N={MAX_ORACLE_N}")
    amps = np.full(geom.N, 1.0 / math.sqrt(geom.N))
    return FullState(amps, int(target_index), geom)


def _global_step(v: np.ndarray, t: int) -> None:
    v[t] = -v[t]
    # 2<s1|v>|s1> - v == 2*mean(v) - v
    np.subtract(2.0 * v.mean(), v, out=v)


def _local_step(v: np.ndarray, t: int, K: int) -> None:
    v[t] = -v[t]
    blocks = v.reshape(K, -1)
    means = blocks.mean(axis=1, keepdims=True)
    np.subtract(2.0 * means, blocks, out=blocks)


def apply_global_full(state: FullState) -> FullState:
    v = state.amplitudes.copy()
    _global_step(v, state.target_index)
    return FullState(v, state.target_index, state.geometry)


def apply_local_full(state: FullState) -> FullState:
    v = state.amplitudes.copy()
    _local_step(v, state.target_index, state.geometry.K)
    return FullState(v, state.target_index, state.geometry)


def evolve_full(state: FullState, seq: IterationSequence) -> FullState:
    """Apply every iteration of ``seq`` one at a time, first segment first."""
    v = state.amplitudes.copy()
    t, K = state.target_index, state.geometry.K
    for kind, count in seq:
        for _ in range(count):
            if kind is Kind.GLOBAL:
                _global_step(v, t)
            else:
                _local_step(v, t, K)
    return FullState(v, t, state.geometry)


def project_reduced(state: FullState) -> tuple[ReducedState, float]:
    """Coordinates on ``(|t>, |ntt>, |u>)`` and the norm of what is left over."""
    geom = state.geometry
    v = state.amplitudes
    t, b = state.target_index, geom.b
    lo = (t // b) * b

    t_vec = np.zeros_like(v)
    t_vec[t] = 1.0
    ntt_vec = np.zeros_like(v)
    ntt_vec[lo : lo + b] = 1.0 / math.sqrt(b - 1)
    ntt_vec[t] = 0.0
    u_vec = np.full_like(v, 1.0 / math.sqrt(b * (geom.K - 1)))
    u_vec[lo : lo + b] = 0.0

    coords = [float(v @ e) for e in (t_vec, ntt_vec, u_vec)]
    rest = v - coords[0] * t_vec - coords[1] * ntt_vec - coords[2] * u_vec
    return ReducedState(*coords), float(np.linalg.norm(rest))
