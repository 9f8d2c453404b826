"""Large-block constraint equations for the three sequence families.

Notation shared by every function here:

* ``gamma`` with ``sin(gamma) = 1/sqrt(K)``;
* ``x = 2*eta/sqrt(K)``, so the bulk global segment has angle ``pi/2 - x``;
* local segments of ``alpha*sqrt(b)`` (or ``delta*sqrt(b)``) iterations
  rotate the target block by ``2*alpha`` (or ``2*delta``);
* ``parity`` is ``(-1)**j`` of the global segment named in each family.

Each residual is zero exactly when no amplitude is left outside the target
block.  The ``*_coefficients`` helpers rewrite a residual as
``A*sin(x) + B*cos(x) + C`` for the closed-form root solver.

All functions broadcast over numpy arrays.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "lg_residual",
    "lg_coefficients",
    "lg_stationarity",
    "glg_residual",
    "glg_coefficients",
    "glg_large_k_eta",
    "lgl_xyz",
    "lgl_residual",
    "lgl_coefficients",
    "lgl_parity_coefficient",
]


def _x(eta, K):
    return 2.0 * np.asarray(eta, dtype=float) / np.sqrt(K)


# -- local-global: G1**j2 G2**j1 |s1> --------------------------------------


def lg_residual(gamma, alpha, eta, parity, K):
    s, c = np.sin(gamma), np.cos(gamma)
    x = _x(eta, K)
    c2a, s2a = np.cos(2 * alpha), np.sin(2 * alpha)
    return (
        (s * s * c2a + c * c) * np.sin(x)
        - s * s2a * np.cos(x)
        + parity * s * s * (1.0 - c2a)
    )


def lg_coefficients(gamma, alpha, parity):
    s, c = np.sin(gamma), np.cos(gamma)
    c2a = np.cos(2 * alpha)
    return s * s * c2a + c * c, -s * np.sin(2 * alpha), parity * s * s * (1.0 - c2a)


def lg_stationarity(gamma, alpha, eta, parity, K):
    """Zero where ``eta(alpha) - alpha`` is stationary along the LG constraint."""
    s, c = np.sin(gamma), np.cos(gamma)
    x = _x(eta, K)
    sa, ca = np.sin(alpha), np.cos(alpha)
    return 2.0 * sa * (c * c * sa * np.cos(x) + parity * s * ca)


# -- global-local-global: G1**j2 G2**j1 G1**j0 |s1> ------------------------


def glg_residual(gamma, alpha, beta, eta, parity, K):
    """``<u|`` amplitude with ``2 j0 theta1 = pi/2 - x`` and ``2 j2 theta1 = 2 beta/sqrt(K)``."""
    s, c = np.sin(gamma), np.cos(gamma)
    phi0 = 0.5 * np.pi - _x(eta, K)
    phi2 = 2.0 * np.asarray(beta, dtype=float) / np.sqrt(K)
    c0, s0 = np.cos(phi0), np.sin(phi0)
    c2, s2 = np.cos(phi2), np.sin(phi2)
    tail = -parity + c2
    return (
        np.cos(2 * alpha) * (-c * s2 * s0 + s * s * c0 * c * tail)
        + np.sin(2 * alpha) * (-s * c * s2 * c0 - s * c * s0 * tail)
        + c * c0 * (parity * s * s + c * c * c2)
    )


def glg_coefficients(gamma, alpha, beta, parity, K):
    s, c = np.sin(gamma), np.cos(gamma)
    phi2 = 2.0 * np.asarray(beta, dtype=float) / np.sqrt(K)
    c2, s2 = np.cos(phi2), np.sin(phi2)
    c2a, s2a = np.cos(2 * alpha), np.sin(2 * alpha)
    tail = -parity + c2
    # cos(phi0) = sin(x), sin(phi0) = cos(x)
    A = c2a * s * s * c * tail - s2a * s * c * s2 + c * (parity * s * s + c * c * c2)
    B = -c2a * c * s2 - s2a * s * c * tail
    return A, B, np.zeros_like(A)


def glg_large_k_eta(alpha, beta, parity):
    """Small-gamma solution of the GLG constraint for ``eta``."""
    return beta * np.cos(2 * alpha) + 0.5 * (1 - parity) * np.sin(2 * alpha)


# -- local-global-local: G1 G2**j3 G1**j2 G2**j1 |s1> ----------------------


def _lgl_parts(gamma, delta):
    s, c = np.sin(gamma), np.cos(gamma)
    s2g, c2g = np.sin(2 * gamma), np.cos(2 * gamma)
    s2d, c2d = np.sin(2 * delta), np.cos(2 * delta)
    # each of X, Y, Z as (coef of sin x, coef of cos x, constant / parity)
    X = (s * s2g * s2d, s * s * s2g * c2d + s * c * c2g)
    Y = (-(s**3) * s2g * c2d - s * s * c * c2g, s * s * s2g * s2d)
    Z = (-s * s2g * c2d - c * c2g, s2g * s2d)
    # vanishes when cos(g) sin(2g) cos(2 delta) = sin(g) cos(2g)
    y_parity = -s * s * c * (2.0 * c * c * c2d - c2g)
    return X, Y, Z, y_parity


def lgl_xyz(gamma, delta, eta, parity, K):
    """The ``X``, ``Y``, ``Z`` factors of ``X sin2a + Y (cos2a - 1) + Z``."""
    X, Y, Z, y_parity = _lgl_parts(gamma, delta)
    x = _x(eta, K)
    sx, cx = np.sin(x), np.cos(x)
    return (
        X[0] * sx + X[1] * cx,
        Y[0] * sx + Y[1] * cx + parity * y_parity,
        Z[0] * sx + Z[1] * cx,
    )


def lgl_residual(gamma, alpha, delta, eta, parity, K):
    X, Y, Z = lgl_xyz(gamma, delta, eta, parity, K)
    return X * np.sin(2 * alpha) + Y * (np.cos(2 * alpha) - 1.0) + Z


def lgl_coefficients(gamma, alpha, delta, parity):
    X, Y, Z, y_parity = _lgl_parts(gamma, delta)
    sa, ca = np.sin(2 * alpha), np.cos(2 * alpha) - 1.0
    A = X[0] * sa + Y[0] * ca + Z[0]
    B = X[1] * sa + Y[1] * ca + Z[1]
    C = parity * y_parity * ca
    return A, B, C


def lgl_parity_coefficient(gamma, alpha, delta):
    """Factor multiplying ``parity`` in :func:`lgl_residual`."""
    *_, y_parity = _lgl_parts(gamma, delta)
    return y_parity * (np.cos(2 * alpha) - 1.0)
