from .appendix import CancellationCheck, appendix_cancellation_check, lgl_flat_direction_check
from .families import (
    FAMILIES,
    Curve,
    CurvePoint,
    ScaledSchedule,
    curve,
    gamma_of,
    glg_beta_profile,
    glg_optimal,
    glg_solve_eta,
    lg_asymptotic,
    lg_optimal,
    lg_solve_eta,
    lgl_best_delta,
    lgl_optimal,
    lgl_solve_eta,
    optimal,
    to_integer_sequence,
)
from .residuals import (
    glg_coefficients,
    glg_large_k_eta,
    glg_residual,
    lg_coefficients,
    lg_residual,
    lg_stationarity,
    lgl_coefficients,
    lgl_parity_coefficient,
    lgl_residual,
    lgl_xyz,
)
from .solve import golden_max, largest_root
