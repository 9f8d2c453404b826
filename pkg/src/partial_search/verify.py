"""Randomized cross-checks of the reduced model against brute force."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import IterationSequence, Kind, apply_sequence, initial_state, make_geometry
from .fullsim import evolve_full, project_reduced, uniform_full
from .optimizers.appendix import appendix_cancellation_check

__all__ = ["CheckResult", "random_sequence", "oracle_equivalence", "appendix_identities", "run_all"]

DEFAULT_NS = (8, 64, 1024, 4096)
DEFAULT_KS = (2, 4, 8)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    cases: int

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: max_error={self.max_error:.3e} tol={self.tolerance:.1e} cases={self.cases}"


def random_sequence(rng: np.random.Generator, max_segments: int, max_count: int) -> IterationSequence:
    n = int(rng.integers(0, max_segments + 1))
    kinds = rng.integers(0, 2, size=n)
    counts = rng.integers(0, max_count + 1, size=n)
    return IterationSequence(
        tuple((Kind.GLOBAL if k else Kind.LOCAL, int(c)) for k, c in zip(kinds, counts))
    )


def oracle_equivalence(
    Ns=DEFAULT_NS,
    Ks=DEFAULT_KS,
    trials: int = 100,
    seed: int = 0,
    max_segments: int = 50,
    tolerance: float = 1e-10,
) -> list[CheckResult]:
    """Component-wise reduced-vs-full error and off-subspace residual."""
    rng = np.random.default_rng(seed)
    worst_component = 0.0
    worst_residual = 0.0
    cases = 0
    for N in Ns:
        for K in Ks:
            if N % K or N // K < 2:
                continue
            geom = make_geometry(N, K)
            max_count = int(3 * math.sqrt(N))
            for _ in range(trials):
                seq = random_sequence(rng, max_segments, max_count)
                target = int(rng.integers(0, N))
                full = evolve_full(uniform_full(geom, target), seq)
                projected, residual = project_reduced(full)
                reduced = apply_sequence(geom, seq, initial_state(geom))
                err = np.max(np.abs(projected.as_array() - reduced.as_array()))
                worst_component = max(worst_component, float(err))
                worst_residual = max(worst_residual, residual)
                cases += 1
    return [
        CheckResult("reduced_vs_full_component", worst_component, tolerance, cases),
        CheckResult("full_state_off_subspace_residual", worst_residual, tolerance, cases),
    ]


def appendix_identities(Ks=range(2, 201), tolerance: float = 1e-12) -> list[CheckResult]:
    checks = [appendix_cancellation_check(K) for K in Ks]
    unit = max(abs(c.cos_val**2 + c.sin_val**2 - 1.0) for c in checks)
    closed = max(c.max_error for c in checks)
    return [
        CheckResult("appendix_unit_circle", unit, tolerance, len(checks)),
        CheckResult("appendix_grk_cancellation", closed, tolerance, len(checks)),
    ]


def run_all(n_max: int = 4096, trials: int = 100, seed: int = 0, tolerance: float = 1e-10,
            identity_tolerance: float = 1e-12) -> list[CheckResult]:
    Ns = [N for N in DEFAULT_NS if N <= n_max]
    return oracle_equivalence(Ns, DEFAULT_KS, trials, seed, tolerance=tolerance) + appendix_identities(
        tolerance=identity_tolerance
    )
