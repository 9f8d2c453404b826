"""Maximizing the speedup coefficient R for each sequence family.

A family's total query count is ``(pi/4)*sqrt(N) - R*sqrt(b)``:

* ``LG``  (``G1**j2 G2**j1``):                 ``R = eta - alpha``
* ``GLG`` (``G1**j2 G2**j1 G1**j0``):          ``R = eta - beta - alpha``
* ``LGL`` (``G1 G2**j3 G1**j2 G2**j1``):       ``R = eta - alpha - delta``

For every choice of the local coefficients the constraint fixes ``eta``;
among its roots the largest admissible one is taken since it maximizes R.
The search is a dense grid followed by golden-section refinement.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..core import DatabaseGeometry, IterationSequence, Kind
from ..errors import NoRoot, TooSmall
from .residuals import (
    glg_coefficients,
    lg_coefficients,
    lg_stationarity,
    lgl_coefficients,
)
from .solve import bisect, first_near_max, golden_max, largest_root

__all__ = [
    "FAMILIES",
    "ScaledSchedule",
    "CurvePoint",
    "Curve",
    "gamma_of",
    "lg_solve_eta",
    "lg_optimal",
    "lg_asymptotic",
    "glg_solve_eta",
    "glg_optimal",
    "glg_beta_profile",
    "lgl_solve_eta",
    "lgl_optimal",
    "lgl_best_delta",
    "optimal",
    "curve",
    "to_integer_sequence",
]

FAMILIES = ("LG", "GLG", "LGL")

# R values closer than this are treated as ties (smallest coordinates win)
TIE_TOL = 1e-9
# refinement must beat the grid optimum by more than rounding noise
NOISE_TOL = 1e-12
ALPHA_MAX = math.pi
DELTA_MAX = 0.5 * math.pi
_CHUNK = 256


@dataclass(frozen=True)
class ScaledSchedule:
    family: str
    K: float
    parity: int
    alpha: float
    eta: float
    beta: float = 0.0
    delta: float = 0.0

    @property
    def R(self) -> float:
        return self.eta - self.alpha - self.beta - self.delta

    @property
    def gamma(self) -> float:
        return math.asin(1.0 / math.sqrt(self.K))


@dataclass(frozen=True)
class CurvePoint:
    alpha: float
    eta: float
    R: float
    beta: float = 0.0
    delta: float = 0.0


@dataclass
class Curve:
    family: str
    K: float
    parity: int
    points: list[CurvePoint] = field(default_factory=list)
    omitted: int = 0

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def argmax(self) -> CurvePoint:
        i = first_near_max(np.array([p.R for p in self.points]), TIE_TOL)
        return self.points[i]


def gamma_of(K: float) -> float:
    if K < 2:
        raise TooSmall(f"need K >= 2, got {K}")
    return math.asin(1.0 / math.sqrt(K))


def _check_parity(parity: int) -> int:
    if parity not in (1, -1):
        raise ValueError(f"parity must be +1 (even) or -1 (odd), got {parity}")
    return parity


def _eta(x, K):
    return 0.5 * math.sqrt(K) * x


def _scalar_eta(x, what: str, K: float) -> float:
    x = float(x)
    if math.isnan(x):
        raise NoRoot(f"{what}: constraint has no admissible root")
    return _eta(x, K)


def _refine(f, center: float, half_width: float, lo: float, hi: float, xtol: float):
    a = max(lo, center - half_width)
    b = min(hi, center + half_width)
    return golden_max(f, a, b, xtol=xtol)


# -- local-global ----------------------------------------------------------


def lg_solve_eta(gamma, alpha, parity, K) -> float:
    """``eta`` on the LG constraint; the largest admissible root."""
    x = largest_root(*lg_coefficients(gamma, alpha, parity))
    return _scalar_eta(x, "LG", K)


def _lg_R(gamma, K, parity):
    def f(alpha):
        alpha = np.asarray(alpha, dtype=float)
        x = largest_root(*lg_coefficients(gamma, alpha, parity))
        return _eta(x, K) - alpha

    return f


def lg_optimal(K: float, parity: int, step: float = 1e-3, xtol: float = 1e-10) -> ScaledSchedule:
    """Best nontrivial LG schedule.

    ``alpha = 0`` is the trivial full search and is excluded, so the scan
    starts one grid step away from it.  An interior optimum is polished
    onto the exact stationarity condition.
    """
    g = gamma_of(K)
    _check_parity(parity)
    f = _lg_R(g, K, parity)
    alphas = step * np.arange(1, int(math.ceil(ALPHA_MAX / step)))
    alphas = alphas[alphas < ALPHA_MAX]
    R = f(alphas)
    i = first_near_max(R, TIE_TOL)
    if i < 0:
        raise NoRoot(f"LG: no admissible schedule for K={K}")
    a, r = _refine(f, alphas[i], step, step, alphas[-1], xtol)
    if r < R[i] + NOISE_TOL:
        a, r = float(alphas[i]), float(R[i])

    def h(alpha):
        return float(lg_stationarity(g, alpha, lg_solve_eta(g, alpha, parity, K), parity, K))

    lo, hi = max(step, a - step), min(alphas[-1], a + step)
    try:
        h_lo, h_hi = h(lo), h(hi)
    except NoRoot:
        h_lo = h_hi = 0.0
    if h_lo * h_hi < 0:
        try:
            a_s = bisect(h, lo, hi)
        except NoRoot:
            a_s = math.nan
        r_s = float(f(a_s))
        if r_s >= r - NOISE_TOL:
            a, r = a_s, r_s
    return ScaledSchedule("LG", K, parity, alpha=a, eta=lg_solve_eta(g, a, parity, K))


def lg_asymptotic(gamma: float) -> tuple[float, float, float]:
    """Published small-gamma series ``(alpha, eta, R)`` of the LG optimum.

    Only the alpha series agrees with :func:`lg_optimal` to fourth order.
    The exact constraint with ``sin(gamma) = 1/sqrt(K)`` gives eta and R
    cubic coefficients of 5/6 and 1/3.
    """
    return gamma + gamma**3 / 2.0, gamma + 2.0 * gamma**3 / 3.0, gamma**3 / 6.0


# -- global-local-global ---------------------------------------------------


def _glg_R(gamma, K, parity, alpha, beta):
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    x = largest_root(*glg_coefficients(gamma, alpha, beta, parity, K))
    return _eta(x, K) - alpha - beta


def glg_solve_eta(gamma, alpha, beta, parity, K) -> float:
    x = largest_root(*glg_coefficients(gamma, alpha, beta, parity, K))
    return _scalar_eta(x, "GLG", K)


def _beta_max(K: float) -> float:
    return 0.25 * math.pi * math.sqrt(K)


def _row_best(R: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-row maximum and first index within TIE_TOL of it."""
    Rf = np.where(np.isnan(R), -np.inf, R)
    top = Rf.max(axis=1)
    idx = np.argmax(Rf >= (top - TIE_TOL)[:, None], axis=1)
    return np.where(np.isfinite(top), top, np.nan), idx


def _glg_best_alpha(g, K, parity, beta: float, alphas: np.ndarray, half: float, xtol: float):
    """Best alpha (grid then golden) at a fixed beta."""
    R = _glg_R(g, K, parity, alphas, beta)
    i = first_near_max(R, TIE_TOL)
    if i < 0:
        return math.nan, -math.inf
    a, r = _refine(lambda a: _glg_R(g, K, parity, a, beta), alphas[i], half, 0.0, alphas[-1], xtol)
    if r < R[i] + NOISE_TOL:
        return float(alphas[i]), float(R[i])
    return a, r


def glg_beta_profile(K: float, parity: int, betas: Sequence[float], alpha_step: float = 1e-3):
    """Maximum of R over alpha at each beta; returns ``(alphas, Rs)`` arrays."""
    g = gamma_of(K)
    alphas = np.arange(0.0, ALPHA_MAX, alpha_step)
    out_a, out_r = [], []
    for beta in betas:
        a, r = _glg_best_alpha(g, K, parity, float(beta), alphas, alpha_step, 1e-10)
        out_a.append(a)
        out_r.append(r)
    return np.array(out_a), np.array(out_r)


def glg_optimal(
    K: float,
    parity: int,
    alpha_step: float = 1e-3,
    beta_step: float = 1e-2,
    xtol: float = 1e-10,
    alpha: float | None = None,
) -> ScaledSchedule:
    """Best GLG schedule over ``0 <= beta < (pi/4) sqrt(K)`` and ``0 <= alpha < pi``.

    Passing ``alpha`` pins the local coefficient and optimizes beta only.
    """
    g = gamma_of(K)
    _check_parity(parity)
    alphas = np.array([alpha], dtype=float) if alpha is not None else np.arange(0.0, ALPHA_MAX, alpha_step)
    betas = np.arange(0.0, _beta_max(K), beta_step)

    row_r, row_i = [], []
    for start in range(0, len(betas), _CHUNK):
        chunk = betas[start : start + _CHUNK, None]
        r, i = _row_best(_glg_R(g, K, parity, alphas[None, :], chunk))
        row_r.append(r)
        row_i.append(i)
    row_r = np.concatenate(row_r)
    row_i = np.concatenate(row_i)
    k = first_near_max(row_r, TIE_TOL)
    if k < 0:
        raise NoRoot(f"GLG: no admissible schedule for K={K}")
    beta0, alpha0, r0 = float(betas[k]), float(alphas[row_i[k]]), float(row_r[k])

    if alpha is not None:
        b, r = _refine(
            lambda b: _glg_R(g, K, parity, alpha, b), beta0, beta_step, 0.0, betas[-1], xtol
        )
        a = float(alpha)
    else:
        half = 2.0 * max(alpha_step, beta_step)

        def profile(bs):
            flat = np.atleast_1d(bs)
            r = [_glg_best_alpha(g, K, parity, float(b), alphas, half, xtol)[1] for b in flat]
            return np.array(r).reshape(np.shape(bs))

        b, r = _refine(profile, beta0, beta_step, 0.0, betas[-1], 1e-9)
        a, r = _glg_best_alpha(g, K, parity, b, alphas, half, xtol)
    if not r > r0 + NOISE_TOL:
        a, b = alpha0, beta0
    return ScaledSchedule("GLG", K, parity, alpha=a, beta=b, eta=glg_solve_eta(g, a, b, parity, K))


# -- local-global-local ----------------------------------------------------


def _lgl_R(gamma, K, parity, alpha, delta):
    alpha = np.asarray(alpha, dtype=float)
    delta = np.asarray(delta, dtype=float)
    x = largest_root(*lgl_coefficients(gamma, alpha, delta, parity))
    return _eta(x, K) - alpha - delta


def lgl_solve_eta(gamma, alpha, delta, parity, K) -> float:
    x = largest_root(*lgl_coefficients(gamma, alpha, delta, parity))
    return _scalar_eta(x, "LGL", K)


def lgl_best_delta(K: float, parity: int, alphas, delta_step: float = 1e-2, xtol: float = 1e-10):
    """Optimal ``delta`` in ``[0, pi/2]`` for each alpha; returns ``(deltas, Rs)``."""
    g = gamma_of(K)
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    grid = np.arange(0.0, DELTA_MAX + 0.5 * delta_step, delta_step)
    grid = np.minimum(grid, DELTA_MAX)
    d0 = np.empty_like(alphas)
    r0 = np.empty_like(alphas)
    for start in range(0, len(alphas), _CHUNK):
        sl = slice(start, start + _CHUNK)
        r, i = _row_best(_lgl_R(g, K, parity, alphas[sl, None], grid[None, :]))
        d0[sl] = grid[i]
        r0[sl] = r
    ok = ~np.isnan(r0)
    deltas = np.full_like(alphas, np.nan)
    Rs = np.full_like(alphas, np.nan)
    if ok.any():
        a_ok = alphas[ok]
        lo = np.maximum(0.0, d0[ok] - delta_step)
        hi = np.minimum(DELTA_MAX, d0[ok] + delta_step)
        d, r = golden_max(lambda d: _lgl_R(g, K, parity, a_ok, d), lo, hi, xtol=xtol)
        d, r = np.atleast_1d(d), np.atleast_1d(r)
        keep = ~(r > r0[ok] + NOISE_TOL)
        deltas[ok] = np.where(keep, d0[ok], d)
        Rs[ok] = np.where(keep, r0[ok], r)
    return deltas, Rs


def lgl_optimal(
    K: float,
    parity: int,
    alpha_step: float = 1e-3,
    delta_step: float = 1e-2,
    xtol: float = 1e-10,
    alpha: float | None = None,
) -> ScaledSchedule:
    """Best LGL schedule; ``delta`` is re-optimized at every ``alpha``.

    Passing ``alpha`` pins the first local coefficient.
    """
    g = gamma_of(K)
    _check_parity(parity)
    alphas = np.array([alpha], dtype=float) if alpha is not None else np.arange(0.0, ALPHA_MAX, alpha_step)
    deltas, Rs = lgl_best_delta(K, parity, alphas, delta_step, xtol)
    i = first_near_max(Rs, TIE_TOL)
    if i < 0:
        raise NoRoot(f"LGL: no admissible schedule for K={K}")
    a, d, r = float(alphas[i]), float(deltas[i]), float(Rs[i])
    if alpha is None:

        def profile(a_arr):
            return lgl_best_delta(K, parity, a_arr, delta_step, xtol)[1].reshape(np.shape(a_arr))

        a_ref, r_ref = _refine(profile, a, alpha_step, 0.0, alphas[-1], xtol)
        if r_ref > r + NOISE_TOL:
            d_ref, _ = lgl_best_delta(K, parity, [a_ref], delta_step, xtol)
            a, d = a_ref, float(d_ref[0])
    return ScaledSchedule("LGL", K, parity, alpha=a, delta=d, eta=lgl_solve_eta(g, a, d, parity, K))


# -- shared entry points ---------------------------------------------------


def optimal(family: str, K: float, parity: int) -> ScaledSchedule:
    family = family.upper()
    if family == "LG":
        return lg_optimal(K, parity)
    if family == "GLG":
        return glg_optimal(K, parity)
    if family == "LGL":
        return lgl_optimal(K, parity)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _curve_chunk(family: str, K: float, parity: int, alphas: np.ndarray) -> list[CurvePoint | None]:
    g = gamma_of(K)
    n = len(alphas)
    betas = np.zeros(n)
    deltas = np.zeros(n)
    if family == "LG":
        x = largest_root(*lg_coefficients(g, alphas, parity))
        Rs = _eta(x, K) - alphas
    elif family == "GLG":
        step = 1e-2
        grid = np.arange(0.0, _beta_max(K), step)
        r0, i = _row_best(_glg_R(g, K, parity, alphas[:, None], grid[None, :]))
        b0 = grid[i]
        ok = ~np.isnan(r0)
        Rs = np.full(n, np.nan)
        if ok.any():
            lo = np.maximum(0.0, b0[ok] - step)
            hi = np.minimum(grid[-1], b0[ok] + step)
            b, r = golden_max(lambda b: _glg_R(g, K, parity, alphas[ok], b), lo, hi, xtol=1e-10)
            keep = ~(np.atleast_1d(r) > r0[ok] + NOISE_TOL)
            betas[ok] = np.where(keep, b0[ok], b)
            Rs[ok] = np.where(keep, r0[ok], r)
    elif family == "LGL":
        deltas, Rs = lgl_best_delta(K, parity, alphas)
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    out: list[CurvePoint | None] = []
    for a, r, b, d in zip(alphas, Rs, betas, deltas):
        if np.isnan(r):
            out.append(None)
        else:
            out.append(CurvePoint(float(a), float(r + a + b + d), float(r), float(b), float(d)))
    return out


def curve(family: str, K: float, parity: int, alpha_grid, workers: int = 1) -> Curve:
    """R versus alpha, with the other coefficients solved or optimized per point.

    Points whose constraint has no admissible root are dropped and counted.
    The result is ordered by ascending alpha whatever ``workers`` is.
    """
    family = family.upper()
    _check_parity(parity)
    gamma_of(K)
    alphas = np.unique(np.asarray(alpha_grid, dtype=float))
    if workers > 1 and len(alphas) > _CHUNK:
        pieces = np.array_split(alphas, min(workers * 4, len(alphas) // _CHUNK + 1))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _curve_chunk(family, K, parity, a), pieces))
        raw = [p for part in parts for p in part]
    else:
        raw = _curve_chunk(family, K, parity, alphas)
    points = [p for p in raw if p is not None]
    return Curve(family, K, parity, points, omitted=len(raw) - len(points))


# -- integer schedules -----------------------------------------------------


def _round_with_parity(value: float, parity: int) -> int:
    """Nearest nonnegative integer ``j`` with ``(-1)**j == parity``."""
    want = 0 if parity == 1 else 1
    j = int(math.floor(value))
    candidates = [c for c in (j - 1, j, j + 1, j + 2) if c >= 0 and c % 2 == want]
    return min(candidates, key=lambda c: (abs(c - value), c))


def to_integer_sequence(schedule: ScaledSchedule, geom: DatabaseGeometry) -> IterationSequence:
    """Round a scaled schedule to iteration counts for ``geom``.

    Counts come from the exact angles: a local segment of coefficient
    ``alpha`` rotates by ``2*alpha`` and the bulk global segment spans
    ``pi/2 - 2*eta/sqrt(K)``.
    """
    x = 2.0 * schedule.eta / math.sqrt(schedule.K)
    bulk = (0.5 * math.pi - x) / (2.0 * geom.theta1)

    def local(coef: float) -> int:
        return max(0, round(coef / geom.theta2))

    if schedule.family == "LG":
        return IterationSequence.of(
            (Kind.LOCAL, local(schedule.alpha)),
            (Kind.GLOBAL, _round_with_parity(bulk, schedule.parity)),
        )
    if schedule.family == "GLG":
        tail = schedule.beta / (math.sqrt(schedule.K) * geom.theta1)
        return IterationSequence.of(
            (Kind.GLOBAL, max(0, round(bulk))),
            (Kind.LOCAL, local(schedule.alpha)),
            (Kind.GLOBAL, _round_with_parity(tail, schedule.parity)),
        )
    if schedule.family == "LGL":
        return IterationSequence.of(
            (Kind.LOCAL, local(schedule.alpha)),
            (Kind.GLOBAL, _round_with_parity(bulk, schedule.parity)),
            (Kind.LOCAL, local(schedule.delta)),
            (Kind.GLOBAL, 1),
        )
    raise ValueError(f"unknown family {schedule.family!r}")
