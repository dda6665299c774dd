"""Seeded self-verification: internal identities checked end to end.

Each check draws random instances from a seeded generator, measures the
worst residual of one mathematical identity, and compares it against that
identity's own accuracy budget.  The draws, and therefore the report bytes,
are fully determined by the seed.

Checks
------
delta            root-of-unity filter: float sum vs exact 0/1
reduction        radial integral vs its Euler-integral reduction
reconciliation   cross-regime Euler identity (pole term + closed form)
ode              finite-difference residual of the regime ODE
circle           contour integral vs residue + jump * radial integral
euler            beta * Euler integral vs the 2F1(1, b; 1+b; .) series
"""

from __future__ import annotations

import cmath
import math
import random
from typing import Any, Callable

from .branchcut import TWO_PI, ProblemInstance, as_integer
from .closedform import check_reconciliation
from .hypergeometric import hyp2f1_one_b
from .odecheck import ode_residual
from .quadrature import check_circle_vs_radial, check_integral_reduction, euler_integral

__all__ = ["CHECK_ORDER", "DEFAULT_THRESHOLDS", "run_verify"]

CHECK_ORDER = ("delta", "reduction", "reconciliation", "ode", "circle", "euler")

DEFAULT_THRESHOLDS = {
    "delta": 1e-12,
    "reduction": 1e-6,
    "reconciliation": 1e-6,
    "ode": 1e-4,
    "circle": 1e-6,
    "euler": 1e-8,
}

_ANGLE_MARGIN = 0.3  # keep Arg(alpha) away from the cut ray
_INT_MARGIN = 0.05  # keep Re(beta) away from integers


def _draw_theta(rng: random.Random) -> float:
    return rng.uniform(0.1, TWO_PI - 0.1)


def _draw_alpha(rng: random.Random, theta: float, inside: bool) -> complex:
    mod = rng.uniform(0.1, 0.9) if inside else rng.uniform(1.1, 5.0)
    while True:
        arg = rng.uniform(0.0, TWO_PI)
        gap = abs(arg - theta) % TWO_PI
        if min(gap, TWO_PI - gap) >= _ANGLE_MARGIN:
            return mod * cmath.exp(1j * arg)


def _draw_beta(rng: random.Random) -> complex:
    while True:
        re = rng.uniform(0.2, 3.0)
        if abs(re - round(re)) >= _INT_MARGIN:
            break
    return complex(re, rng.uniform(-0.5, 0.5))


def _use_beta(beta_fix: complex | None, rng: random.Random) -> complex:
    if beta_fix is not None:
        return beta_fix
    return _draw_beta(rng)


def _run_delta(rng: random.Random, nmax: int, dmax: int) -> tuple[int, float]:
    cases = 0
    worst = 0.0
    for k in range(400):
        n = rng.randint(1, max(1, nmax))
        if k % 2 == 0:
            d = rng.randint(-dmax, dmax)
        else:  # force exact multiples so the "exactly 1" branch is exercised
            span = max(dmax // n, 1)
            d = n * rng.randint(-span, span)
        exact = 1.0 if d % n == 0 else 0.0
        angles = [TWO_PI * ((j * d) % n) / n for j in range(n)]
        re = math.fsum(math.cos(a) for a in angles) / n
        im = math.fsum(math.sin(a) for a in angles) / n
        worst = max(worst, math.hypot(re - exact, im))
        cases += 1
    return cases, worst


def _run_reduction(rng: random.Random, beta_fix: complex | None) -> tuple[int, float]:
    cases = 0
    worst = 0.0
    for k in range(20):
        theta = _draw_theta(rng)
        alpha = _draw_alpha(rng, theta, inside=k % 2 == 0)
        beta = _use_beta(beta_fix, rng)
        inst = ProblemInstance(alpha=alpha, beta=beta, theta=theta)
        worst = max(worst, check_integral_reduction(inst, tol=1e-10))
        cases += 1
    return cases, worst


def _run_reconciliation(rng: random.Random, beta_fix: complex | None) -> tuple[int, float]:
    cases = 0
    worst = 0.0
    for _ in range(15):
        theta = _draw_theta(rng)
        alpha = _draw_alpha(rng, theta, inside=True)
        beta = _use_beta(beta_fix, rng)
        inst = ProblemInstance(alpha=alpha, beta=beta, theta=theta)
        worst = max(worst, check_reconciliation(inst))
        cases += 1
    return cases, worst


def _run_ode(rng: random.Random, beta_fix: complex | None) -> tuple[int, float]:
    cases = 0
    worst = 0.0
    for k in range(12):
        theta = _draw_theta(rng)
        alpha = _draw_alpha(rng, theta, inside=k % 2 == 0)
        beta = _use_beta(beta_fix, rng)
        inst = ProblemInstance(alpha=alpha, beta=beta, theta=theta)
        worst = max(worst, ode_residual(inst, h=1e-3).relative_residual)
        cases += 1
    return cases, worst


def _run_circle(rng: random.Random, beta_fix: complex | None) -> tuple[int, float]:
    cases = 0
    worst = 0.0
    for k in range(15):
        theta = _draw_theta(rng)
        alpha = _draw_alpha(rng, theta, inside=k % 2 == 0)
        beta = _use_beta(beta_fix, rng)
        inst = ProblemInstance(alpha=alpha, beta=beta, theta=theta)
        worst = max(worst, check_circle_vs_radial(inst, tol=1e-10))
        cases += 1
    return cases, worst


def _run_euler(rng: random.Random, beta_fix: complex | None) -> tuple[int, float]:
    cases = 0
    worst = 0.0
    for _ in range(15):
        mod = rng.uniform(0.1, 0.9)
        arg = rng.uniform(0.0, TWO_PI)
        w = mod * cmath.exp(1j * arg)
        beta = _use_beta(beta_fix, rng)
        series = hyp2f1_one_b(beta, w, tol=1e-13)
        quad = euler_integral(w, beta, tol=1e-10)
        residual = abs(beta * quad.value - series.value) / max(1.0, abs(series.value))
        worst = max(worst, residual)
        cases += 1
    return cases, worst


def run_verify(
    seed: int,
    checks: tuple[str, ...] | None = None,
    tol: float | None = None,
    nmax: int = 32,
    dmax: int = 128,
    beta: complex | None = None,
) -> dict[str, Any]:
    """Run the named checks (all six, in CHECK_ORDER, when None) and return
    the verdict report.

    tol, when given, replaces every check's own threshold — deliberately
    blunt, so `--tol 1e-30` forces a failing report and exercises the
    Disagree exit path.  beta pins the exponent in every non-delta check;
    it must satisfy those checks' preconditions (non-integer, Re > 0).
    """
    if beta is not None and (as_integer(beta) is not None or beta.real <= 0.0):
        raise ValueError(
            f"--beta {beta!r} cannot drive the identity checks: need non-integer beta with Re(beta) > 0"
        )
    selected = CHECK_ORDER if checks is None else tuple(checks)
    for name in selected:
        if name not in CHECK_ORDER:
            raise ValueError(f"unknown check {name!r}; expected one of {CHECK_ORDER}")
    rng = random.Random(seed)
    rows = []
    all_pass = True
    runners: dict[str, Callable[[], tuple[int, float]]] = {
        "delta": lambda: _run_delta(rng, nmax, dmax),
        "reduction": lambda: _run_reduction(rng, beta),
        "reconciliation": lambda: _run_reconciliation(rng, beta),
        "ode": lambda: _run_ode(rng, beta),
        "circle": lambda: _run_circle(rng, beta),
        "euler": lambda: _run_euler(rng, beta),
    }
    for name in CHECK_ORDER:
        if name not in selected:
            continue
        cases, worst = runners[name]()
        threshold = tol if tol is not None else DEFAULT_THRESHOLDS[name]
        ok = worst <= threshold
        all_pass = all_pass and ok
        rows.append(
            {
                "name": name,
                "cases": cases,
                "max_residual": worst,
                "threshold": threshold,
                "pass": ok,
            }
        )
    return {"seed": seed, "checks": rows, "verdict": "Agree" if all_pass else "Disagree"}
