"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest

from partial_search import grk_integer_schedule, grk_r_curve, grk_scaled, make_geometry
from partial_search.cli import main as cli_main
from partial_search.optimizers import (
    appendix_cancellation_check,
    gamma_of,
    glg_optimal,
    glg_solve_eta,
    lg_asymptotic,
    lg_optimal,
    lgl_flat_direction_check,
    lgl_optimal,
    lgl_parity_coefficient,
)
from partial_search.verify import oracle_equivalence

from oracles import grk_numeric

RESULTS = {}


def _record(n, title, checks):
    """``checks`` is a list of ``(label, ok, detail)``; returns the failures."""
    failed = [c for c in checks if not c[1]]
    status = "PASS" if not failed else "FAIL"
    detail = "; ".join(f"{label}: {info}" for label, _, info in (failed or checks))
    RESULTS[n] = f"criterion {n} {status} {title} | {detail}"
    print(RESULTS[n])
    return failed


def _assert(failed):
    assert not failed, "; ".join(f"{label}: {info}" for label, _, info in failed)


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    comp, resid = oracle_equivalence(Ns=(8, 64, 1024, 4096), Ks=(2, 4, 8), trials=100, seed=0, max_segments=50)
    dt = time.perf_counter() - t0
    checks = [
        ("component error", comp.max_error <= 1e-10, f"{comp.max_error:.2e} over {comp.cases} cases"),
        ("off-span residual", resid.max_error <= 1e-10, f"{resid.max_error:.2e}"),
        ("runtime", dt < 60, f"{dt:.1f}s"),
    ]
    _assert(_record(1, "reduced model equals full simulation", checks))


def test_criterion_2_grk_numbers():
    R2, R4 = grk_scaled(2).R, grk_scaled(4).R
    num2, num4 = grk_numeric(2)[1], grk_numeric(4)[1]
    rmin = min(r for _, r in grk_r_curve(range(2, 201)))
    rbig = grk_scaled(10**6).R
    limit = math.sqrt(3) / 2 - math.pi / 6
    checks = [
        ("R(2)", abs(R2 - 0.3253) <= 1e-3, f"{R2:.6f}"),
        ("R(4)", abs(R4 - 0.3398) <= 1e-3, f"{R4:.6f}"),
        ("numeric R(2)", abs(num2 - R2) <= 1e-8, f"{abs(num2 - R2):.1e}"),
        ("numeric R(4)", abs(num4 - R4) <= 1e-8, f"{abs(num4 - R4):.1e}"),
        ("min R over 2..200", rmin > 0.32, f"{rmin:.6f}"),
        ("R(1e6)", abs(rbig - limit) <= 1e-3, f"{rbig:.6f}"),
    ]
    _assert(_record(2, "GRK closed form", checks))


def test_criterion_3_grk_end_to_end():
    t0 = time.perf_counter()
    geom = make_geometry(2**20, 4)
    sch = grk_integer_schedule(geom)
    dt = time.perf_counter() - t0
    bound = math.pi / 4 * math.sqrt(geom.N) - 0.30 * math.sqrt(geom.b)
    checks = [
        ("success probability", sch.success_probability >= 0.999, f"{sch.success_probability:.7f}"),
        ("queries", sch.total_queries <= bound, f"{sch.total_queries} <= {bound:.2f}"),
        ("runtime", dt < 5, f"{dt:.2f}s"),
    ]
    _assert(_record(3, "GRK integer schedule at N=2^20, K=4", checks))


def _lg_checks():
    odd_small = {K: lg_optimal(K, -1).R for K in (2, 3)}
    odd_mid = {K: lg_optimal(K, -1).R for K in range(4, 73)}
    even = {K: lg_optimal(K, 1).R for K in range(5, 201)}
    g = 0.01
    K = 1 / math.sin(g) ** 2
    s = lg_optimal(K, -1)
    a_ser, e_ser, r_ser = lg_asymptotic(g)
    tol = 10 * g**4
    return [
        ("R for K=2,3", all(0.25 <= r <= 0.35 for r in odd_small.values()),
         ", ".join(f"{r:.4f}" for r in odd_small.values())),
        ("0<R<0.09 for K=4..72", all(0 < r < 0.09 for r in odd_mid.values()),
         f"range [{min(odd_mid.values()):.2e}, {max(odd_mid.values()):.4f}]"),
        ("even R<=0 for K=5..200", all(r <= 0 for r in even.values()), f"max {max(even.values()):.2e}"),
        ("alpha series", abs(s.alpha - a_ser) <= tol, f"err {abs(s.alpha - a_ser):.2e} tol {tol:.0e}"),
        ("eta series", abs(s.eta - e_ser) <= tol, f"err {abs(s.eta - e_ser):.2e} tol {tol:.0e}"),
        ("R series", abs(s.R - r_ser) <= tol, f"err {abs(s.R - r_ser):.2e} tol {tol:.0e}"),
    ]


@pytest.fixture(scope="module")
def lg_checks():
    return {c[0]: c for c in _lg_checks()}


def test_criterion_4_lg_family(lg_checks):
    _assert(_record(4, "LG family", list(lg_checks.values())))


@pytest.mark.parametrize("label", ["R for K=2,3", "0<R<0.09 for K=4..72", "even R<=0 for K=5..200",
                                   "alpha series", "eta series", "R series"])
def test_criterion_4_part(lg_checks, label):
    _, ok, info = lg_checks[label]
    assert ok, info


def test_criterion_5_glg_family():
    checks = []
    for K in (5, 36, 200):
        s = glg_optimal(K, -1)
        gap = abs(s.R - grk_scaled(K).R)
        checks.append((f"odd K={K}", s.beta <= 1e-3 and gap <= 1e-3, f"beta {s.beta:.1e}, |R-GRK| {gap:.1e}"))
        e = glg_optimal(K, 1)
        checks.append((f"even K={K}", e.R <= 0, f"R {e.R:.2e}"))
    worst = 0.0
    for K in (5, 36, 200):
        g = gamma_of(K)
        for beta in np.linspace(0, 0.25 * math.pi * math.sqrt(K) - 1e-6, 50):
            for p in (1, -1):
                worst = max(worst, abs(glg_solve_eta(g, 0.0, beta, p, K) - beta))
    checks.append(("alpha=0 is full search", worst <= 1e-9, f"max |R| {worst:.1e}"))
    _assert(_record(5, "GLG family", checks))


def test_criterion_6_lgl_family():
    checks = []
    for K in (5, 36, 200):
        odd, even = lgl_optimal(K, -1), lgl_optimal(K, 1)
        gap = abs(odd.R - grk_scaled(K).R)
        checks.append((f"K={K} optimum", odd.alpha <= 1e-3 and gap <= 1e-3, f"alpha {odd.alpha:.1e}, |R-GRK| {gap:.1e}"))
        checks.append((f"K={K} parity", abs(odd.R - even.R) <= 1e-6, f"|odd-even| {abs(odd.R - even.R):.1e}"))
    _assert(_record(6, "LGL family", checks))


def test_criterion_7_appendix():
    unit = max(abs(c.cos_val**2 + c.sin_val**2 - 1)
               for c in map(appendix_cancellation_check, range(2, 201)))
    checks = [("unit circle K=2..200", unit <= 1e-12, f"{unit:.1e}")]
    for K in (8, 200):
        s = lgl_optimal(K, -1)
        pc = abs(lgl_parity_coefficient(gamma_of(K), s.alpha, s.delta))
        d1, d2 = lgl_flat_direction_check(K)
        checks.append((f"K={K} parity coefficient", pc <= 1e-12, f"{pc:.1e}"))
        checks.append((f"K={K} dS", abs(d1) <= 1e-4, f"{d1:.1e}"))
        checks.append((f"K={K} d2S", abs(d2) <= 1e-3, f"{d2:.1e}"))
    _assert(_record(7, "appendix identities", checks))


def _curve_rows(path):
    return [tuple(map(float, ln.split(","))) for ln in path.read_text().splitlines()[1:]]


def test_criterion_8_curves(tmp_path, monkeypatch):
    Ks = range(5, 201)
    best = []
    codes = set()
    for K in Ks:
        path = tmp_path / f"lg_{K}.csv"
        codes.add(cli_main(["curve", "--family", "lg", "--k", str(K), "--parity", "odd", "--output", str(path)]))
        best.append(max(_curve_rows(path), key=lambda r: r[2]))
    peaks = [r[2] for r in best]
    args = [r[0] for r in best]
    refined = [lg_optimal(K, -1).alpha for K in Ks]
    same = True
    for K in (5, 36, 200):
        a, b = tmp_path / f"a{K}.csv", tmp_path / f"b{K}.csv"
        cli_main(["curve", "--k", str(K), "--output", str(a)])
        monkeypatch.setenv("PQS_THREADS", "4")
        cli_main(["curve", "--k", str(K), "--output", str(b)])
        monkeypatch.delenv("PQS_THREADS")
        same &= a.read_bytes() == b.read_bytes() == (tmp_path / f"lg_{K}.csv").read_bytes()
    checks = [
        ("exit codes", codes == {0}, str(sorted(codes))),
        ("positive maxima", min(peaks) > 0, f"min {min(peaks):.2e}"),
        ("maxima shrink", all(x > y for x, y in zip(peaks, peaks[1:])), f"{peaks[0]:.4f} -> {peaks[-1]:.2e}"),
        ("grid argmax non-increasing", all(x >= y for x, y in zip(args, args[1:])), f"{args[0]:.3f} -> {args[-1]:.3f}"),
        ("refined argmax decreasing", all(x > y for x, y in zip(refined, refined[1:])),
         f"{refined[0]:.4f} -> {refined[-1]:.4f}"),
        ("byte-identical reruns", same, "K=5,36,200 with 1 and 4 threads"),
    ]
    _assert(_record(8, "LG odd curves for K=5..200", checks))


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    class _Env:
        def setenv(self, k, v):
            import os
            os.environ[k] = v

        def delenv(self, k):
            import os
            os.environ.pop(k, None)

    tests = [test_criterion_1_oracle_equivalence, test_criterion_2_grk_numbers, test_criterion_3_grk_end_to_end,
             lambda: test_criterion_4_lg_family({c[0]: c for c in _lg_checks()}),
             test_criterion_5_glg_family, test_criterion_6_lgl_family, test_criterion_7_appendix,
             lambda: test_criterion_8_curves(Path(tempfile.mkdtemp()), _Env())]
    ok = True
    for t in tests:
        try:
            t()
        except AssertionError:
            ok = False
    sys.exit(0 if ok else 1)
