"""Root selection and one-dimensional maximization helpers.

Every constraint in this package is linear in ``sin(x)`` and ``cos(x)``
where ``x = 2*eta/sqrt(K)``, so roots come in closed form.  The admissible
window for ``x`` is ``(pi/2 - 2*pi, pi/2]``: ``x <= pi/2`` keeps the bulk
global segment nonnegative and the constraint is ``2*pi``-periodic.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

__all__ = ["X_MAX", "largest_root", "golden_max", "bisect", "first_near_max"]

X_MAX = 0.5 * math.pi
_TWO_PI = 2.0 * math.pi
_EDGE_SLACK = 1e-12


def largest_root(A, B, C):
    """Largest ``x`` in the window solving ``A sin x + B cos x + C = 0``.

    Works elementwise on arrays; returns NaN where no root exists.
    """
    A, B, C = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (A, B, C)))
    rho = np.hypot(A, B)
    psi = np.arctan2(B, A)
    with np.errstate(invalid="ignore", divide="ignore"):
        q = -C / rho
    ok = np.abs(q) <= 1.0 + _EDGE_SLACK
    q = np.clip(np.where(ok, q, 0.0), -1.0, 1.0)
    base = np.arcsin(q)
    r1 = X_MAX - np.mod(X_MAX - (base - psi), _TWO_PI)
    r2 = X_MAX - np.mod(X_MAX - (math.pi - base - psi), _TWO_PI)
    x = np.maximum(r1, r2)
    # rho == 0: identically satisfied when C == 0, never otherwise
    degenerate = rho == 0.0
    x = np.where(degenerate, np.where(C == 0.0, X_MAX, np.nan), x)
    x = np.where(ok | degenerate, x, np.nan)
    return x if x.ndim else float(x)


def _finite(v):
    v = np.asarray(v, dtype=float)
    return np.where(np.isnan(v), -np.inf, v)


def golden_max(
    f: Callable[[np.ndarray], np.ndarray],
    lo,
    hi,
    xtol: float = 1e-10,
    max_iter: int = 200,
):
    """Golden-section maximization of ``f`` on ``[lo, hi]``, elementwise.

    ``lo`` and ``hi`` may be arrays; ``f`` must then be vectorized over them.
    NaN values count as ``-inf``.  Both endpoints are also evaluated and
    win over the interior point when at least as good (lower end first).
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    a, b = lo.copy(), hi.copy()
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = _finite(f(c)), _finite(f(d))
    for _ in range(max_iter):
        if np.all(np.abs(b - a) <= xtol):
            break
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = b - invphi * (b - a)
        new_d = a + invphi * (b - a)
        c_next = np.where(left, new_c, d)
        d_next = np.where(left, c, new_d)
        fc_old, fd_old = fc, fd
        c, d = c_next, d_next
        # reuse one evaluation per step, as usual for golden section
        fc = np.where(left, _finite(f(c)), fd_old)
        fd = np.where(left, fc_old, _finite(f(d)))
    x = np.where(fc >= fd, c, d)
    fx = np.maximum(fc, fd)
    f_lo, f_hi = _finite(f(lo)), _finite(f(hi))
    x = np.where(f_hi >= fx, hi, x)
    fx = np.maximum(fx, f_hi)
    x = np.where(f_lo >= fx, lo, x)
    fx = np.maximum(fx, f_lo)
    if x.ndim == 0:
        return float(x), float(fx)
    return x, fx


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-15, max_iter: int = 200) -> float:
    """Plain bisection; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    f_lo = f(lo)
    if f_lo == 0.0:
        return lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid in (lo, hi):
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def first_near_max(values, tol: float = 1e-9) -> int:
    """Index of the first entry within ``tol`` of the maximum (flattened order)."""
    v = _finite(values).ravel()
    top = v.max()
    if not np.isfinite(top):
        return -1
    return int(np.flatnonzero(v >= top - tol)[0])
