"""Closed forms, the direct series, and the rational-exponent log sums."""

import cmath
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bci import (
    AlphaOnCut,
    BetaNonNegativeInteger,
    DivergentAtZero,
    EvaluationError,
    IntegerBeta,
    ProblemInstance,
    RationalBeta,
    ZeroInput,
    check_reconciliation,
    eval_closed_form,
    eval_direct_series,
    eval_rational_logsum,
    hyp2f1_one_b,
    hyp2f1_rational,
    int_pow,
    roots_of_unity_filter,
)

# Same mpmath contour anchors as in test_quadrature, reused against the
# analytic route this time.
FROZEN = [
    (1.5 * cmath.exp(0.8j), 0.5 + 0.3j, 2.0, complex(1.3675970912328640, -1.2040600562880184)),
    (0.4 * cmath.exp(2.9j), 0.7 - 0.2j, 2.5, complex(-0.86314240294559916, 0.28404864998768630)),
    (2.0, 0.5, math.pi, complex(0.0, 0.51832099453158721)),
    (0.3, 0.5, math.pi, complex(0.0, 5.0978397870946862)),
]


class TestResidueCases:
    @pytest.mark.parametrize("beta", [-3, -1, 0, 1, 2, 5])
    @pytest.mark.parametrize("alpha", [0.4 * cmath.exp(1.3j), 2.5 * cmath.exp(4.0j)])
    def test_integer_beta_residues(self, beta, alpha):
        inst = ProblemInstance(alpha=alpha, beta=beta, theta=2.0)
        got = eval_closed_form(inst).value
        if abs(alpha) > 1.0:
            want = -2j * math.pi * int_pow(alpha, beta) if beta < 0 else 0.0
        else:
            want = 2j * math.pi * int_pow(alpha, beta) if beta >= 0 else 0.0
        assert got == pytest.approx(want, abs=1e-12)

    def test_beta_zero_alpha_zero(self):
        inst = ProblemInstance(alpha=0.0, beta=0, theta=math.pi)
        assert eval_closed_form(inst).value == pytest.approx(2j * math.pi, rel=1e-15)

    def test_residues_are_theta_independent(self):
        a = 0.6 * cmath.exp(2.0j)
        vals = {th: eval_closed_form(ProblemInstance(alpha=a, beta=3, theta=th)).value for th in (1.0, math.pi, 5.5)}
        assert len({v for v in vals.values()}) == 1  # exact short-circuit, no logs


class TestClosedForm:
    @pytest.mark.parametrize("alpha,beta,theta,want", FROZEN)
    def test_frozen_contours(self, alpha, beta, theta, want):
        inst = ProblemInstance(alpha=alpha, beta=beta, theta=theta)
        got = eval_closed_form(inst, series_tol=1e-15)
        assert got.value == pytest.approx(want, rel=1e-12, abs=1e-12)
        assert got.diagnostics["series_converged"]

    def test_alpha_zero_noninteger_beta(self):
        # pure cut contribution: P(beta, theta)/beta, here 2i / (1/2) = 4i
        inst = ProblemInstance(alpha=0.0, beta=0.5, theta=math.pi)
        assert eval_closed_form(inst).value == pytest.approx(4j, rel=1e-14)

    def test_error_estimate_scales_with_series_tol(self):
        inst = ProblemInstance(alpha=0.8 * cmath.exp(1.0j), beta=0.3, theta=2.0)
        rough = eval_closed_form(inst, series_tol=1e-6)
        sharp = eval_closed_form(inst, series_tol=1e-15)
        assert abs(rough.value - sharp.value) <= rough.error_estimate + sharp.error_estimate
        assert sharp.error_estimate < rough.error_estimate


class TestDirectSeries:
    def test_outside_refused(self):
        inst = ProblemInstance(alpha=1.5, beta=0.5, theta=math.pi)
        with pytest.raises(EvaluationError):
            eval_direct_series(inst)

    def test_nonnegative_integer_redirects_to_residue(self):
        inst = ProblemInstance(alpha=0.3j, beta=2, theta=math.pi)
        r = eval_direct_series(inst)
        assert r.value == pytest.approx(2j * math.pi * (0.3j) ** 2, rel=1e-14)
        assert "residue" in r.diagnostics["beta_class"]

    def test_negative_integer_beta_vanishes(self):
        inst = ProblemInstance(alpha=0.4 * cmath.exp(0.9j), beta=-2, theta=2.0)
        assert abs(eval_direct_series(inst).value) < 1e-12

    def test_alpha_zero(self):
        inst = ProblemInstance(alpha=0.0, beta=0.5, theta=math.pi)
        r = eval_direct_series(inst)
        assert r.value == pytest.approx(4j, rel=1e-14)
        assert r.diagnostics["series_converged"]

    @given(
        amod=st.floats(min_value=0.0, max_value=0.9),
        aarg=st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True),
        br=st.floats(min_value=-2.5, max_value=2.5),
        bi=st.floats(min_value=-1.0, max_value=1.0),
        theta=st.floats(min_value=0.1, max_value=2 * math.pi - 0.1),
    )
    @settings(max_examples=60)
    def test_matches_closed_form(self, amod, aarg, br, bi, theta):
        beta = complex(br, bi)
        assume(abs(beta - round(br)) > 0.05)
        inst = ProblemInstance(alpha=amod * cmath.exp(1j * aarg), beta=beta, theta=theta)
        series = eval_direct_series(inst).value
        closed = eval_closed_form(inst).value
        assert series == pytest.approx(closed, rel=1e-10, abs=1e-10)


class TestRationalBeta:
    def test_normalisation(self):
        assert (RationalBeta(2, 4).m, RationalBeta(2, 4).n) == (1, 2)
        assert (RationalBeta(1, -2).m, RationalBeta(1, -2).n) == (-1, 2)
        assert (RationalBeta(-9, 6).m, RationalBeta(-9, 6).n) == (-3, 2)
        assert RationalBeta(5, 2).value == 2.5

    def test_integer_rejected(self):
        with pytest.raises(IntegerBeta):
            RationalBeta(4, 2)
        with pytest.raises(IntegerBeta):
            RationalBeta(0, 3)
        with pytest.raises(ValueError):
            RationalBeta(1, 0)


class TestRootsOfUnityFilter:
    def test_exact_values_and_float_agreement(self):
        for n in range(1, 9):
            for d in range(-17, 18):
                want = 1.0 if d % n == 0 else 0.0
                assert roots_of_unity_filter(n, d) == want

    def test_brute_force_comparison(self):
        for n in range(1, 7):
            for d in range(-7, 8):
                brute = sum(cmath.exp(2j * math.pi * j * d / n) for j in range(n)) / n
                assert roots_of_unity_filter(n, d) == pytest.approx(brute, abs=1e-12)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            roots_of_unity_filter(0, 1)


class TestRationalLogSum:
    def test_log3_identity(self):
        # 2F1(1, 1/2; 3/2; 1/4) = log(3): two logs beat an infinite series
        got = hyp2f1_rational(0.25, RationalBeta(1, 2))
        assert got == pytest.approx(math.log(3.0), rel=1e-13)

    def test_z_zero_is_exactly_one(self):
        assert hyp2f1_rational(0.0, RationalBeta(3, 4)) == 1.0

    def test_outside_disk_rejected(self):
        with pytest.raises(ValueError):
            hyp2f1_rational(1.0, RationalBeta(1, 2))
        with pytest.raises(ValueError):
            hyp2f1_rational(1.2j, RationalBeta(1, 2))

    @pytest.mark.parametrize("m,n", [(1, 2), (-1, 2), (2, 3), (7, 2), (-9, 4), (5, 6)])
    def test_matches_series(self, m, n):
        z = 0.55 * cmath.exp(1.1j)
        got = hyp2f1_rational(z, RationalBeta(m, n))
        want = hyp2f1_one_b(m / n, z, tol=1e-14).value
        assert got == pytest.approx(want, rel=1e-9)

    def test_branch_choice_is_irrelevant(self):
        # The rotation is realized as an exact index permutation, so every
        # branch (including negative and wrapped ones) is bit-identical.
        z = 0.3 + 0.4j
        beta = RationalBeta(3, 5)
        base = hyp2f1_rational(z, beta, branch=0)
        for ell in (1, 2, 3, 4, 5, -2, 13):
            assert hyp2f1_rational(z, beta, branch=ell) == base

    @pytest.mark.parametrize(
        "alpha,m,n",
        [
            (0.45 * cmath.exp(1.3j), 1, 2),
            (0.45 * cmath.exp(1.3j), -3, 4),
            (2.2 * cmath.exp(5.1j), 1, 2),
            (2.2 * cmath.exp(5.1j), 5, 3),
        ],
    )
    def test_eval_matches_closed_form(self, alpha, m, n):
        inst = ProblemInstance(alpha=alpha, beta=m / n, theta=2.4)
        got = eval_rational_logsum(inst, RationalBeta(m, n)).value
        want = eval_closed_form(inst, series_tol=1e-15).value
        assert got == pytest.approx(want, rel=1e-11)

    def test_beta_mismatch_is_a_bug(self):
        inst = ProblemInstance(alpha=0.5, beta=0.5, theta=2.0)
        with pytest.raises(ValueError):
            eval_rational_logsum(inst, RationalBeta(1, 3))


class TestReconciliation:
    def test_preconditions(self):
        with pytest.raises(ZeroInput):
            check_reconciliation(ProblemInstance(alpha=0.0, beta=0.5, theta=2.0))
        with pytest.raises(EvaluationError):
            check_reconciliation(ProblemInstance(alpha=1.5, beta=0.5, theta=2.0))
        with pytest.raises(DivergentAtZero):
            check_reconciliation(ProblemInstance(alpha=0.5j, beta=-0.5, theta=2.0))
        with pytest.raises(BetaNonNegativeInteger):
            check_reconciliation(ProblemInstance(alpha=0.5j, beta=2, theta=2.0))
        with pytest.raises(AlphaOnCut):
            check_reconciliation(ProblemInstance(alpha=0.5 * cmath.exp(2.0j), beta=0.5, theta=2.0))

    @pytest.mark.parametrize(
        "alpha,beta,theta",
        [
            (0.3 * cmath.exp(0.8j), 0.5, 2.0),
            (0.7 * cmath.exp(4.0j), 1.5 + 0.3j, 5.0),
            (0.2 * cmath.exp(2.8j), 2.2, math.pi / 2),
        ],
    )
    def test_residual_small(self, alpha, beta, theta):
        inst = ProblemInstance(alpha=alpha, beta=beta, theta=theta)
        assert check_reconciliation(inst) < 1e-8
