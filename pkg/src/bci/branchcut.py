"""Branch-aware complex logarithm, powers, and the contour integrand.

The whole package works on the plane slit along the ray {r e^{i theta} : r >= 0}
for a cut angle 0 < theta < 2*pi.  Fixing log(1) = 0 on that slit plane forces
the argument function into the open interval (theta - 2*pi, theta): starting
from arg(1) = 0 and moving continuously, the argument can climb to just below
theta on one side of the cut and descend to just above theta - 2*pi on the
other.  theta = pi reproduces the principal branch.

Everything downstream — series arguments, closed-form prefactors, quadrature
integrands — inherits its branch behaviour from `branch_log`, so this module
is deliberately small and heavily cross-checked.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import AlphaOnCircle, OnBranchCut, PoleHit, ZeroInput

__all__ = [
    "ANGULAR_GUARD",
    "INTEGER_DETECTION_TOL",
    "DEFAULT_EXCLUSION_BAND",
    "TWO_PI",
    "BranchAngle",
    "BranchValue",
    "ProblemInstance",
    "as_integer",
    "int_pow",
    "branch_arg",
    "branch_log",
    "branch_pow",
    "cut_jump_factor",
    "integrand",
]

TWO_PI = 2.0 * math.pi

#: Inputs closer than this (in radians) to the cut ray are rejected.  The
#: branch is genuinely discontinuous across the ray, and silently assigning a
#: side would poison every cross-check built on top of this module.
ANGULAR_GUARD = 1e-12

#: An exponent counts as an integer when both components are within this of
#: one.  The closed forms split into discrete residue cases at integers, and
#: every method must make that call identically.
INTEGER_DETECTION_TOL = 1e-12

#: Default half-width of the refused annulus around |alpha| = 1.  Both the
#: series (argument modulus -> 1) and the quadrature (pole distance -> 0)
#: degrade as the pole approaches the contour; inside this band we refuse
#: rather than return junk.
DEFAULT_EXCLUSION_BAND = 0.02


@dataclass(frozen=True)
class BranchAngle:
    """Direction of the cut ray, in radians, restricted to 0 < theta < 2*pi."""

    theta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.theta < TWO_PI):
            raise ValueError(f"branch angle must lie in the open interval (0, 2*pi), got {self.theta!r}")


def _theta_of(theta: BranchAngle | float) -> float:
    if isinstance(theta, BranchAngle):
        return theta.theta
    return BranchAngle(float(theta)).theta


@dataclass(frozen=True)
class BranchValue:
    """A branch logarithm together with the argument representative it used."""

    log_value: complex
    arg_value: float


@dataclass(frozen=True)
class ProblemInstance:
    """One evaluation problem: pole alpha, exponent beta, cut angle theta.

    tol is the relative tolerance used both as the methods' internal accuracy
    target and as the cross-method agreement threshold.  exclusion_band is
    the half-width of the annulus around |alpha| = 1 inside which evaluation
    refuses to run (AlphaOnCircle).
    """

    alpha: complex
    beta: complex
    theta: BranchAngle
    tol: float = 1e-8
    exclusion_band: float = DEFAULT_EXCLUSION_BAND

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not isinstance(self.theta, BranchAngle):
            object.__setattr__(self, "theta", BranchAngle(float(self.theta)))
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if not 0.0 < self.exclusion_band < 1.0:
            raise ValueError("exclusion band must lie in (0, 1)")

    @property
    def theta_value(self) -> float:
        return self.theta.theta

    def alpha_outside(self) -> bool:
        """True when the pole lies outside the unit circle."""
        return abs(self.alpha) > 1.0

    def require_alpha_off_circle(self) -> None:
        if abs(1.0 - abs(self.alpha)) < self.exclusion_band:
            raise AlphaOnCircle(
                f"|alpha| = {abs(self.alpha):.6g} is within {self.exclusion_band:g} of the unit circle"
            )


def as_integer(beta: complex) -> int | None:
    """Return beta as an int when both components sit within 1e-12 of one, else None."""
    b = complex(beta)
    if not (math.isfinite(b.real) and math.isfinite(b.imag)):
        return None
    n = round(b.real)
    if abs(b.real - n) < INTEGER_DETECTION_TOL and abs(b.imag) < INTEGER_DETECTION_TOL:
        return int(n)
    return None


def int_pow(z: complex, n: int) -> complex:
    """z**n for integer n by square-and-multiply; no logarithms involved."""
    if n < 0:
        return 1.0 / int_pow(z, -n)
    out = complex(1.0)
    base = complex(z)
    while n:
        if n & 1:
            out *= base
        n >>= 1
        if n:
            base *= base
    return out


def branch_arg(z: complex, theta: BranchAngle | float) -> float:
    """Argument of z placed in the open interval (theta - 2*pi, theta).

    Raises OnBranchCut for z within ANGULAR_GUARD radians of the cut ray and
    ZeroInput at the origin, where no branch choice helps.
    """
    th = _theta_of(theta)
    z = complex(z)
    if z == 0:
        raise ZeroInput("branch argument undefined at z = 0")
    offset = (cmath.phase(z) - th) % TWO_PI  # in [0, 2*pi)
    if offset < ANGULAR_GUARD or TWO_PI - offset < ANGULAR_GUARD:
        raise OnBranchCut(
            f"z = {z!r} lies within {ANGULAR_GUARD:g} rad of the cut ray at angle {th:.12g}"
        )
    return th - TWO_PI + offset


def branch_log(z: complex, theta: BranchAngle | float) -> BranchValue:
    """Logarithm on the plane slit along angle theta, normalised by log(1) = 0."""
    arg = branch_arg(z, theta)
    return BranchValue(complex(math.log(abs(complex(z))), arg), arg)


def branch_pow(z: complex, beta: complex, theta: BranchAngle | float) -> complex:
    """z**beta on the slit plane: exp(beta * branch_log(z, theta)).

    Integer exponents short-circuit to exact repeated multiplication, which is
    branch independent (two logarithm branches differ by 2*pi*i*k, and
    exp(2*pi*i*k*n) = 1 for integer n).  That keeps integer powers legal on
    the cut itself, and at z = 0 for positive exponents, where the general
    branch power is undefined.
    """
    z = complex(z)
    n = as_integer(beta)
    if n is not None:
        if z == 0:
            if n > 0:
                return 0j
            raise ZeroInput(f"0**{n} is undefined")
        return int_pow(z, n)
    return cmath.exp(complex(beta) * branch_log(z, theta).log_value)


def cut_jump_factor(beta: complex, theta: BranchAngle | float) -> complex:
    """Jump of z**beta across the cut: e^{i beta theta} - e^{i beta (theta - 2 pi)}.

    On the unit circle the branch power at angle t in (theta, theta + 2*pi) is
    exp(i*beta*(t - 2*pi)); letting t run once around, the limits on the two
    banks of the cut differ by exactly this constant (equivalently written
    e^{i beta theta} (1 - e^{-2 pi i beta})).  Every closed form in the
    package carries it as a prefactor, and it vanishes identically at integer
    beta, where the power is single valued and only residues survive.
    """
    th = _theta_of(theta)
    b = complex(beta)
    return cmath.exp(1j * b * th) - cmath.exp(1j * b * (th - TWO_PI))


def integrand(z: complex, inst: ProblemInstance) -> complex:
    """The contour integrand z**beta / (z - alpha) for one problem instance."""
    z = complex(z)
    if abs(z - inst.alpha) < 1e-13 * (1.0 + abs(inst.alpha)):
        raise PoleHit(f"z = {z!r} coincides with the pole alpha = {inst.alpha!r}")
    return branch_pow(z, inst.beta, inst.theta) / (z - inst.alpha)
