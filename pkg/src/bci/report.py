"""Run several evaluation methods on one instance and compare the answers.

The point of keeping four routes to the same number is that they share
almost no code: a disagreement here is a bug report, not a tolerance issue.
evaluate_instance runs the requested subset, records failures as data rather
than exceptions, and renders a verdict from the pairwise spread of the
survivors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Sequence

from .branchcut import ProblemInstance
from .closedform import (
    METHOD_CLOSED_FORM,
    METHOD_QUADRATURE,
    METHOD_RATIONAL,
    METHOD_SERIES,
    MethodResult,
    RationalBeta,
    eval_closed_form,
    eval_direct_series,
    eval_rational_logsum,
)
from .errors import EvaluationError
from .quadrature import DEFAULT_MAX_PANELS, circle_integral

__all__ = [
    "KNOWN_METHODS",
    "MethodFailure",
    "EvaluationReport",
    "evaluate_instance",
    "report_to_jsonable",
    "dumps_canonical",
]

KNOWN_METHODS = (METHOD_CLOSED_FORM, METHOD_SERIES, METHOD_QUADRATURE, METHOD_RATIONAL)


@dataclass(frozen=True)
class MethodFailure:
    """A method that declined to produce a value, and why.

    status holds the exception class name (the wire-visible code) and
    detail the human-readable message.
    """

    method: str
    status: str
    detail: str


@dataclass(frozen=True)
class EvaluationReport:
    instance: ProblemInstance
    results: tuple[MethodResult | MethodFailure, ...]
    max_disagreement: float
    verdict: str
    timing_us: dict[str, float]


def _quadrature_result(inst: ProblemInstance) -> MethodResult:
    tol = min(max(0.01 * inst.tol, 1e-10), 1e-8)
    q = circle_integral(inst, tol=tol, max_panels=DEFAULT_MAX_PANELS)
    diag: dict[str, Any] = {
        "regime": "outside" if inst.alpha_outside() else "inside",
        "subdivisions": q.subdivisions,
        "converged": q.converged,
    }
    return MethodResult(q.value, METHOD_QUADRATURE, q.abs_error_estimate, diag)


def evaluate_instance(
    inst: ProblemInstance,
    methods: Sequence[str] | None = None,
    rational: RationalBeta | None = None,
) -> EvaluationReport:
    """Evaluate with every requested method and cross-compare.

    methods lists wire names from KNOWN_METHODS; None selects the closed form
    and quadrature, plus the direct series when |alpha| < 1 and the rational
    log sum when `rational` is supplied.  Per-method numerical refusals
    (EvaluationError subclasses) become MethodFailure records; anything else
    — a genuine bug — propagates.

    The verdict is "Agree" when every method produced a value and the largest
    pairwise relative disagreement is within inst.tol, "Partial" when some
    failed but the survivors agree, and "Disagree" otherwise.
    """
    if methods is None:
        selected = [METHOD_CLOSED_FORM, METHOD_QUADRATURE]
        if not inst.alpha_outside():
            selected.append(METHOD_SERIES)
        if rational is not None:
            selected.append(METHOD_RATIONAL)
    else:
        selected = list(methods)
        for name in selected:
            if name not in KNOWN_METHODS:
                raise ValueError(f"unknown method {name!r}; expected one of {KNOWN_METHODS}")
    if METHOD_RATIONAL in selected and rational is None:
        raise ValueError("the rational log-sum method needs an explicit RationalBeta exponent")

    results: list[MethodResult | MethodFailure] = []
    timing: dict[str, float] = {}
    for name in selected:
        start = time.perf_counter()
        try:
            if name == METHOD_CLOSED_FORM:
                results.append(eval_closed_form(inst))
            elif name == METHOD_SERIES:
                results.append(eval_direct_series(inst))
            elif name == METHOD_QUADRATURE:
                results.append(_quadrature_result(inst))
            else:
                assert rational is not None
                results.append(eval_rational_logsum(inst, rational))
        except EvaluationError as exc:
            results.append(MethodFailure(name, type(exc).__name__, str(exc)))
        timing[name] = (time.perf_counter() - start) * 1e6

    values = [r.value for r in results if isinstance(r, MethodResult)]
    disagreement = 0.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            gap = abs(values[i] - values[j]) / max(1.0, abs(values[i]), abs(values[j]))
            disagreement = max(disagreement, gap)
    survivors_agree = disagreement <= inst.tol
    if len(values) == len(results):
        verdict = "Agree" if survivors_agree else "Disagree"
    else:
        verdict = "Partial" if survivors_agree else "Disagree"
    return EvaluationReport(
        instance=inst,
        results=tuple(results),
        max_disagreement=disagreement,
        verdict=verdict,
        timing_us=timing,
    )


def _fmt_float(x: float) -> str:
    if x != x:
        return "NaN"
    if x in (float("inf"), float("-inf")):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    s = format(float(x), ".17g")
    # Keep integers recognisable as floats so round-tripping preserves type.
    if "." not in s and "e" not in s and "E" not in s and "n" not in s:
        s += ".0"
    return s


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON: insertion-ordered keys, floats via repr-faithful
    '%.17g', no whitespace dependence on platform.  Two runs that build the
    same report emit byte-identical text — which is what makes `verify`
    --seed reproducibility testable at the byte level.
    """
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        out = ['"']
        for ch in obj:
            if ch == '"':
                out.append('\\"')
            elif ch == "\\":
                out.append("\\\\")
            elif ord(ch) < 0x20:
                out.append(f"\\u{ord(ch):04x}")
            else:
                out.append(ch)
        out.append('"')
        return "".join(out)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps_canonical(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = []
        for key, value in obj.items():
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            parts.append(dumps_canonical(key) + ":" + dumps_canonical(value))
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot serialise {type(obj).__name__} canonically")


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def report_to_jsonable(report: EvaluationReport) -> dict[str, Any]:
    """Shape an EvaluationReport for the wire.  Timing is deliberately left
    out: identical inputs must serialise identically across runs."""
    inst = report.instance
    results = []
    for r in report.results:
        if isinstance(r, MethodResult):
            results.append(
                {
                    "method": r.method,
                    "value": _complex_pair(r.value),
                    "error_estimate": float(r.error_estimate),
                    "status": "ok",
                }
            )
        else:
            results.append(
                {
                    "method": r.method,
                    "value": None,
                    "error_estimate": None,
                    "status": r.status,
                }
            )
    return {
        "instance": {
            "alpha": _complex_pair(inst.alpha),
            "beta": _complex_pair(inst.beta),
            "theta": float(inst.theta_value),
        },
        "results": results,
        "disagreement": float(report.max_disagreement),
        "verdict": report.verdict,
    }
