"""End-to-end acceptance gate: one test, and one printed verdict line, per
shipped guarantee.

Every test prints

    [criterion NN] <label>: <measured detail> -> PASS|FAIL

before asserting, so a full run always shows the complete scoreboard even
when something breaks.  Random grids are seeded; reruns are deterministic.
"""

from __future__ import annotations

import cmath
import json
import math
import random
import subprocess
import sys
import time
from math import gcd, pi

from bci import (
    INFINITY,
    METHOD_RATIONAL,
    MethodFailure,
    ProblemInstance,
    RationalBeta,
    check_circle_vs_radial,
    check_reconciliation,
    circle_integral,
    euler_integral,
    evaluate_instance,
    hyp2f1_one_b,
    hyp2f1_rational,
    int_pow,
    ode_coefficients_inside,
    ode_coefficients_outside,
    ode_residual,
    roots_of_unity_filter,
    singular_points,
)

TWO_PI = 2.0 * pi


def _report(num: int, label: str, detail: str, ok: bool) -> bool:
    print(f"[criterion {num:02d}] {label}: {detail} -> {'PASS' if ok else 'FAIL'}")
    return ok


def test_criterion_01_integer_exponent_residues():
    start = time.perf_counter()
    worst = 0.0
    cases = 0
    for beta in range(-5, 6):
        for mod in (0.3, 0.7, 1.5, 4.0):
            for arg in (0.5, 2.5, 4.5):
                alpha = mod * cmath.exp(1j * arg)
                if mod > 1.0:
                    exact = -2j * pi * int_pow(alpha, beta) if beta < 0 else 0j
                else:
                    exact = 2j * pi * int_pow(alpha, beta) if beta >= 0 else 0j
                for theta in (pi / 3, pi, 5.0):
                    inst = ProblemInstance(alpha, beta, theta)
                    got = circle_integral(inst).value
                    worst = max(worst, abs(got - exact) / (1.0 + abs(exact)))
                    cases += 1
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 30.0
    assert _report(
        1,
        "integer-exponent residues vs quadrature",
        f"{cases} cases, worst scaled abs error {worst:.3e} (bound 1e-8), "
        f"{elapsed:.1f}s (bound 30s)",
        ok,
    )


_RATIONAL_POOL = ((1, 2), (-1, 2), (1, 3), (-1, 3), (2, 3), (3, 4), (-3, 4), (5, 2))


def _draw_nonconstrained_beta(rng: random.Random) -> complex:
    # |beta| <= 3, kept 0.05 away from every integer (prefactor zeros).
    while True:
        b = complex(rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0))
        if not 0.05 <= abs(b) <= 3.0:
            continue
        if math.hypot(b.real - round(b.real), b.imag) < 0.05:
            continue
        return b


def test_criterion_02_four_way_method_agreement():
    start = time.perf_counter()
    rng = random.Random(20260814)
    worst = 0.0
    refusals = 0
    rational_joined = 0
    for i in range(200):
        mod = rng.uniform(1.1, 5.0) if i % 2 else rng.uniform(0.1, 0.9)
        alpha = mod * cmath.exp(1j * rng.uniform(0.0, TWO_PI))
        theta = rng.uniform(0.1, TWO_PI - 0.1)
        rational = None
        if i % 4 == 0:
            m, n = _RATIONAL_POOL[rng.randrange(len(_RATIONAL_POOL))]
            rational = RationalBeta(m, n)
            beta = complex(m / n, 0.0)
        else:
            beta = _draw_nonconstrained_beta(rng)
        inst = ProblemInstance(alpha, beta, theta, tol=1e-6)
        report = evaluate_instance(inst, rational=rational)
        refusals += sum(isinstance(r, MethodFailure) for r in report.results)
        if rational is not None and any(
            not isinstance(r, MethodFailure) and r.method == METHOD_RATIONAL
            for r in report.results
        ):
            rational_joined += 1
        worst = max(worst, report.max_disagreement)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and refusals == 0 and rational_joined == 50 and elapsed < 120.0
    assert _report(
        2,
        "four-way method agreement",
        f"200 seeded instances ({rational_joined} joined by the rational log sum), "
        f"worst pairwise disagreement {worst:.3e} (bound 1e-6), {refusals} refusals, "
        f"{elapsed:.1f}s (bound 120s)",
        ok,
    )


def test_criterion_03_circle_vs_radial_reduction():
    rng = random.Random(31415926)
    worst = 0.0
    for i in range(50):
        mod = rng.uniform(1.1, 4.0) if i % 2 else rng.uniform(0.15, 0.85)
        while True:
            arg = rng.uniform(0.0, TWO_PI)
            theta = rng.uniform(0.1, TWO_PI - 0.1)
            if abs(arg - theta) >= 0.3:
                break
        while True:
            beta = complex(rng.uniform(0.2, 3.0), rng.uniform(-0.5, 0.5))
            if math.hypot(beta.real - round(beta.real), beta.imag) >= 0.05:
                break
        inst = ProblemInstance(mod * cmath.exp(1j * arg), beta, theta)
        worst = max(worst, check_circle_vs_radial(inst))
    ok = worst < 1e-6
    assert _report(
        3,
        "circle integral vs radial reduction",
        f"50 seeded instances across both regimes, worst residual {worst:.3e} (bound 1e-6)",
        ok,
    )


def test_criterion_04_reconciliation_identity():
    worst = 0.0
    cases = 0
    for mod in (0.2, 0.4, 0.6, 0.8):
        for beta in (0.5, 1.5, 0.5 + 0.3j, 2.2):
            for theta in (pi / 2, pi, 5.0):
                inst = ProblemInstance(mod, beta, theta)
                worst = max(worst, check_reconciliation(inst))
                cases += 1
    ok = worst < 1e-6
    assert _report(
        4,
        "cross-regime reconciliation identity",
        f"{cases} grid points, worst residual {worst:.3e} (bound 1e-6)",
        ok,
    )


def test_criterion_05_rational_log_sum_vs_series():
    rng = random.Random(55095509)
    pairs = [(m, n) for n in range(2, 7) for m in range(-11, 12) if gcd(abs(m), n) == 1]
    worst_val = 0.0
    worst_rot = 0.0
    for m, n in pairs:
        rb = RationalBeta(m, n)
        for _ in range(20):
            z = rng.uniform(0.1, 0.9) * cmath.exp(1j * rng.uniform(0.0, TWO_PI))
            got = hyp2f1_rational(z, rb)
            want = hyp2f1_one_b(m / n, z, tol=1e-13).value
            worst_val = max(worst_val, abs(got - want) / max(1.0, abs(want)))
            for ell in range(1, n):
                rotated = hyp2f1_rational(z, rb, branch=ell)
                worst_rot = max(worst_rot, abs(rotated - got) / max(1.0, abs(got)))
    ok = worst_val < 1e-9 and worst_rot < 1e-12
    assert _report(
        5,
        "rational log sum vs series + branch freedom",
        f"{len(pairs)} exponents x 20 draws, worst relative error {worst_val:.3e} "
        f"(bound 1e-9), worst branch deviation {worst_rot:.3e} (bound 1e-12)",
        ok,
    )


def test_criterion_06_root_of_unity_filter():
    start = time.perf_counter()
    worst_drift = 0.0
    drift_rejections = 0
    value_errors = 0
    cases = 0
    for n in range(1, 65):
        for d in range(-512, 513):
            exact = 1.0 if d % n == 0 else 0.0
            try:
                got = roots_of_unity_filter(n, d)
            except ArithmeticError:
                drift_rejections += 1
                continue
            if got != exact:
                value_errors += 1
            # independent recomputation of the floating sum for the report
            angles = [TWO_PI * ((j * d) % n) / n for j in range(n)]
            re = math.fsum(math.cos(a) for a in angles) / n
            im = math.fsum(math.sin(a) for a in angles) / n
            worst_drift = max(worst_drift, math.hypot(re - exact, im))
            cases += 1
    elapsed = time.perf_counter() - start
    ok = drift_rejections == 0 and value_errors == 0 and worst_drift < 1e-12
    assert _report(
        6,
        "root-of-unity filter exactness",
        f"{cases} (n,d) cases, exact outputs, worst float drift {worst_drift:.3e} "
        f"(bound 1e-12), {elapsed:.1f}s",
        ok,
    )


def test_criterion_07_ode_residuals_and_halving():
    start = time.perf_counter()
    worst_coarse = 0.0
    worst_fine = 0.0
    violations = 0
    cases = 0
    for moduli in ((0.3, 0.5, 0.7), (1.5, 2.5, 4.0)):
        for mod in moduli:
            for arg in (0.7, 2.2, 4.4):
                for beta in (0.5, 1.3, 0.5 + 0.2j):
                    inst = ProblemInstance(mod * cmath.exp(1j * arg), beta, 2.0)
                    coarse = ode_residual(inst, 1e-3).relative_residual
                    fine = ode_residual(inst, 5e-4).relative_residual
                    worst_coarse = max(worst_coarse, coarse)
                    worst_fine = max(worst_fine, fine)
                    if not (coarse < 1e-4 and fine <= max(coarse / 8.0, 1e-6)):
                        violations += 1
                    cases += 1
    elapsed = time.perf_counter() - start
    ok = violations == 0
    assert _report(
        7,
        "ODE residuals with halving law",
        f"{cases} instances across both regimes, worst residual {worst_coarse:.3e} at "
        f"h=1e-3 (bound 1e-4), worst {worst_fine:.3e} at h=5e-4 "
        f"(bound max(res/8, 1e-6)), {violations} violations, {elapsed:.1f}s",
        ok,
    )


def test_criterion_08_singular_point_classification():
    bad = []
    for builder, regime in ((ode_coefficients_inside, "inside"), (ode_coefficients_outside, "outside")):
        for theta in (1.0, pi, 5.0):
            pts = singular_points(builder(0.7, theta))
            finite = [p for p, _ in pts if p != INFINITY]
            good = (
                len(pts) == 3
                and pts[-1][0] == INFINITY
                and all(cls == "Regular" for _, cls in pts)
                and len(finite) == 2
                and min(abs(p) for p in finite) <= 1e-9
                and min(abs(p - cmath.exp(1j * theta)) for p in finite) <= 1e-9
            )
            if not good:
                bad.append((regime, theta, pts))
    ok = not bad
    assert _report(
        8,
        "singular-point classification",
        f"both regimes x 3 angles: points {{0, e^(i*theta), infinity}} all Regular"
        + (f"; unexpected: {bad}" if bad else ""),
        ok,
    )


def test_criterion_09_euler_integral_identity():
    rng = random.Random(27182818)
    worst = 0.0
    for _ in range(30):
        b = complex(rng.uniform(0.2, 3.0), rng.uniform(-0.5, 0.5))
        w = rng.uniform(0.0, 0.9) * cmath.exp(1j * rng.uniform(0.0, TWO_PI))
        series = hyp2f1_one_b(b, w, tol=1e-13).value
        quad = b * euler_integral(w, b).value
        worst = max(worst, abs(quad - series) / max(1.0, abs(series)))
    ok = worst < 1e-8
    assert _report(
        9,
        "Euler-integral identity",
        f"30 seeded (b, w) draws, worst scaled error {worst:.3e} (bound 1e-8)",
        ok,
    )


def test_criterion_10_cli_determinism_and_exit_codes():
    cmd = [sys.executable, "-m", "bci", "verify", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    identical = (
        first.returncode == 0
        and second.returncode == 0
        and first.stdout == second.stdout
        and len(first.stdout) > 0
    )
    corrupted = subprocess.run(cmd + ["--tol", "1e-30"], capture_output=True)
    try:
        corrupted_verdict = json.loads(corrupted.stdout)["verdict"]
    except (json.JSONDecodeError, KeyError):
        corrupted_verdict = "<unparseable>"
    corrupted_ok = corrupted.returncode == 2 and corrupted_verdict == "Disagree"
    ok = identical and corrupted_ok
    assert _report(
        10,
        "CLI determinism and exit codes",
        f"verify --seed 42 byte-identical twice (rc 0): {identical}; "
        f"--tol 1e-30 rc {corrupted.returncode} verdict {corrupted_verdict} (want 2/Disagree)",
        ok,
    )
