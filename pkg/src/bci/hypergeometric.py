"""Gauss hypergeometric series, with a fast path for the pattern 2F1(1, b; 1+b; z).

Only |z| < 1 is needed anywhere in this package: the closed forms always feed
the series an argument of modulus min(|alpha|, 1/|alpha|), which the circle
exclusion band keeps strictly inside the disk.  No analytic continuation is
attempted; arguments too close to the circle raise SlowConvergence instead of
looping for 10^5 terms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branchcut import as_integer
from .errors import InvalidC, SlowConvergence

__all__ = [
    "DEFAULT_MAX_TERMS",
    "DEFAULT_Z_MAX",
    "SeriesResult",
    "pochhammer",
    "hyp2f1_series",
    "hyp2f1_one_b",
]

DEFAULT_MAX_TERMS = 100_000

#: Arguments with |z| above this are refused by default (configurable per
#: call).  The tail ratio is |z|, so the term count explodes as |z| -> 1 —
#: and the integrals the series represents degenerate there anyway.
DEFAULT_Z_MAX = 0.95


@dataclass(frozen=True)
class SeriesResult:
    """Partial-sum value plus the bookkeeping needed to judge it.

    converged means the geometric tail bound dropped below
    tol * max(|value|, 1) before max_terms; otherwise the partial sum is
    still returned, with tail_estimate saying how bad it might be.
    """

    value: complex
    terms_used: int
    tail_estimate: float
    converged: bool


def pochhammer(x: complex, n: int) -> complex:
    """Rising factorial x (x+1) ... (x+n-1) by iterated multiplication.

    Deliberately not a ratio of gamma functions: the product is finite (often
    zero, e.g. pochhammer(-1, 3) = 0) at points where the gamma ratio is a
    pole-over-pole mess, and iterated multiplication cannot overflow before
    the result itself does.
    """
    if n < 0:
        raise ValueError("pochhammer order must be a nonnegative integer")
    out = complex(1.0)
    for k in range(n):
        out *= complex(x) + k
    return out


def _require_inside_domain(z: complex, z_max: float) -> None:
    if abs(z) > z_max:
        raise SlowConvergence(
            f"|z| = {abs(z):.6g} exceeds the configured series domain {z_max:g}; "
            "this close to the unit circle the geometric tail converges too slowly"
        )


def hyp2f1_series(
    a: complex,
    b: complex,
    c: complex,
    z: complex,
    tol: float = 1e-12,
    max_terms: int = DEFAULT_MAX_TERMS,
    z_max: float = DEFAULT_Z_MAX,
) -> SeriesResult:
    """2F1(a, b; c; z) = sum_n (a)_n (b)_n / ((c)_n n!) z^n for |z| < 1.

    Terms follow the running-ratio recurrence
        term_{n+1} = term_n * (a+n)(b+n) z / ((c+n)(n+1)),
    and summation stops once the geometric tail majorant
    |term| * |z| / (1 - |z|) falls below tol * max(|sum|, 1).  The majorant is
    only trusted after n has passed |a|, |b| and |c|, where the ratio modulus
    has settled to ~|z|.  Hitting max_terms returns converged=False with the
    partial sum instead of raising — the caller can see exactly how far it got.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    z = complex(z)
    ci = as_integer(c)
    if ci is not None and ci <= 0:
        raise InvalidC(f"c = {c!r} is a non-positive integer: the series terms divide by zero")
    _require_inside_domain(z, z_max)
    if z == 0:
        return SeriesResult(complex(1.0), 1, 0.0, True)
    geom = abs(z) / (1.0 - abs(z))
    n_trust = max(abs(a), abs(b), abs(c))
    term = complex(1.0)
    total = complex(1.0)
    for n in range(1, max_terms):
        k = n - 1
        term *= (a + k) * (b + k) * z / ((c + k) * n)
        total += term
        tail = abs(term) * geom
        if n >= n_trust and tail <= tol * max(abs(total), 1.0):
            return SeriesResult(total, n + 1, tail, True)
    return SeriesResult(total, max_terms, abs(term) * geom, False)


def hyp2f1_one_b(
    b: complex,
    z: complex,
    tol: float = 1e-12,
    max_terms: int = DEFAULT_MAX_TERMS,
    z_max: float = DEFAULT_Z_MAX,
) -> SeriesResult:
    """sum_{k>=0} b/(b+k) z^k, which is 2F1(1, b; 1+b; z) term for term.

    The (1, b; 1+b) parameter pattern collapses the Pochhammer ratio to
    b/(b+k), so each term costs one divide off a running power of z; this is
    the form every closed form in the package consumes.  b must not be a
    non-positive integer (that makes 1+b an invalid denominator parameter —
    and would zero a denominator b+k at k = -b).
    """
    b = complex(b)
    z = complex(z)
    bi = as_integer(b)
    if bi is not None and bi <= 0:
        raise InvalidC(f"b = {b!r} makes c = 1+b a non-positive integer parameter")
    _require_inside_domain(z, z_max)
    if z == 0:
        return SeriesResult(complex(1.0), 1, 0.0, True)
    geom = abs(z) / (1.0 - abs(z))
    n_trust = abs(b)
    zk = complex(1.0)
    total = complex(1.0)
    tail = 0.0
    for k in range(1, max_terms):
        zk *= z
        term = b / (b + k) * zk
        total += term
        tail = abs(term) * geom
        if k >= n_trust and tail <= tol * max(abs(total), 1.0):
            return SeriesResult(total, k + 1, tail, True)
    return SeriesResult(total, max_terms, tail, False)
