"""Tests for the contour-side evaluators and the quadrature engine."""

import cmath
import math

import numpy as np
import pytest

from maassl import (InversePowerSeed, PhiSW, compact_support_value, l_star,
                    l_value, l_value_limit, r_remainder, ray_integral_bend,
                    rhs_integer_value, rhs_main_theorem, rhs_negative_s,
                    synth_harmonic)
from maassl.contour import RegimeError, i_power, lerch_sum
from maassl.ltest import ZeroSeed
from maassl.quadrature import (QuadratureConfig, QuadratureError,
                               integrate_decaying, integrate_segment)
from maassl.specfun import exp_int_E

TWO_PI = 2 * math.pi


# ---------------------------------------------------------------------------
# quadrature engine
# ---------------------------------------------------------------------------

def test_segment_constant():
    seg = integrate_segment(lambda z: np.ones_like(z), 1j, 1j + 1)
    assert seg.value == pytest.approx(1.0, abs=1e-13)


def test_segment_linear():
    seg = integrate_segment(lambda z: z, 1j, 1j + 1)
    assert seg.value == pytest.approx(0.5 + 1j, abs=1e-13)


def test_segment_full_period():
    seg = integrate_segment(lambda z: np.exp(2j * math.pi * z), 1j, 1j + 1)
    assert abs(seg.value) < 1e-13


def test_segment_error_estimate_nonnegative():
    seg = integrate_segment(lambda z: np.exp(z ** 2), 0, 1 + 1j)
    assert seg.est_error >= 0
    assert seg.panels_used >= 2


def test_segment_stall_raises():
    cfg = QuadratureConfig(abs_tol=1e-13, max_depth=3)
    with pytest.raises(QuadratureError):
        integrate_segment(lambda z: np.abs(np.real(z) - 1 / 3) ** 0.1, 0, 1, cfg)


def test_decaying_exponential():
    seg = integrate_decaying(lambda t: np.exp(-np.real(t)), 0.0, 40.0)
    assert seg.value == pytest.approx(1 - math.exp(-40), rel=1e-11)


# ---------------------------------------------------------------------------
# ray bending lemma
# ---------------------------------------------------------------------------

def test_bend_matches_exp_int():
    for a, w in ((0.5, 1j), (-1.0, 2j), (2.0, 1 + 1j)):
        lhs = ray_integral_bend(a, w, 200.0)
        rhs = i_power(a) * exp_int_E(1 - a, w)
        assert abs(lhs - rhs) < 1e-8


def test_bend_real_w_regime():
    # Im(w) = 0 with a < 0 is inside the lemma's hypotheses
    lhs = ray_integral_bend(-1.0, 1.0, 400.0)
    rhs = i_power(-1) * exp_int_E(2, 1.0)
    assert abs(lhs - rhs) < 1e-6


def test_bend_closed_form():
    # a=1, w=2i: integral of e^{iwz} is e^{-2i}/2... i E_0(2i) = e^{-2i}/2
    lhs = ray_integral_bend(1.0, 2j, 100.0)
    assert lhs == pytest.approx(cmath.exp(-2j) / 2, abs=1e-10)


def test_bend_regime_errors():
    with pytest.raises(RegimeError):
        ray_integral_bend(0.5, 1.0, 100.0)  # real w needs a < 0
    with pytest.raises(RegimeError):
        ray_integral_bend(0.5, 1 - 1j, 100.0)
    with pytest.raises(ValueError):
        ray_integral_bend(0.5, 1j, -1.0)


def test_bend_monotone_convergence_without_tail():
    # beyond a threshold the truncation error decreases monotonically in T
    a, w = 0.5, 0.1j
    target = i_power(a) * exp_int_E(1 - a, w)
    errs = [abs(ray_integral_bend(a, w, T, tail_correction=False) - target)
            for T in (50.0, 100.0, 200.0)]
    assert all(e1 > e2 for e1, e2 in zip(errs, errs[1:]))
    assert errs[-1] < 1e-6


# ---------------------------------------------------------------------------
# Lerch sum and the unfolding identity
# ---------------------------------------------------------------------------

def test_lerch_unfolding_identity(J):
    """Integral over K unit translates equals one segment against the
    partial Lerch sum."""
    K = 20
    s, w = 0.7, 0.4 + 0.9j

    def lhs_integrand(z):
        return J.eval_at(z) * np.exp(1j * w * z) * z ** (s - 1.0)

    lhs = integrate_segment(lhs_integrand, 1j, 1j + K).value

    def rhs_integrand(z):
        z = np.asarray(z, dtype=complex)
        partial = np.zeros_like(z)
        for m in range(K):
            partial += np.exp(1j * w * m) * (z + m) ** (s - 1.0)
        return J.eval_at(z) * np.exp(1j * w * z) * partial

    rhs = integrate_segment(rhs_integrand, 1j, 1j + 1).value
    assert abs(lhs - rhs) < 1e-8


def test_lerch_sum_needs_decay():
    with pytest.raises(RegimeError):
        lerch_sum(0.5, 1.0, np.array([1j]))


# ---------------------------------------------------------------------------
# main-theorem right-hand side
# ---------------------------------------------------------------------------

def test_main_theorem_weakly_holomorphic(J):
    for s, w in ((0.5, 0.3 + 0.7j), (2.0, 1j)):
        lhs = l_value(J, PhiSW(s, w)).value
        assert abs(rhs_main_theorem(J, s, w) - lhs) < 1e-8


def test_main_theorem_synth():
    f = synth_harmonic(0, {-1: 1, 1: 2, 2: -1}, {})
    lhs = l_value(f, PhiSW(2, 1j)).value
    assert abs(rhs_main_theorem(f, 2, 1j) - lhs) < 1e-8


def test_main_theorem_harmonic():
    f = synth_harmonic(0, {1: 1}, {-1: 1})
    lhs = l_value(f, PhiSW(1, 0.5 + 1j)).value
    assert abs(rhs_main_theorem(f, 1, 0.5 + 1j) - lhs) < 1e-6


def test_main_theorem_regime(J):
    with pytest.raises(RegimeError):
        rhs_main_theorem(J, 0.5, 1.0)


# ---------------------------------------------------------------------------
# remainder term
# ---------------------------------------------------------------------------

def test_r_remainder_empty(J):
    assert r_remainder(J, 1, 1j, "one_dim") == 0
    assert r_remainder(J, 1, 1j, "double_integral") == 0


def test_r_remainder_forms_agree():
    for f, s, w in ((synth_harmonic(0, {}, {-1: 1}), 1, 0.5 + 1j),
                    (synth_harmonic(-2, {}, {-1: 2 - 1j}), 2, 1j)):
        one = r_remainder(f, s, w, "one_dim")
        two = r_remainder(f, s, w, "double_integral")
        assert abs(one - two) < 1e-6


def test_r_remainder_unknown_form():
    f = synth_harmonic(0, {}, {-1: 1})
    with pytest.raises(ValueError):
        r_remainder(f, 1, 1j, "nope")


# ---------------------------------------------------------------------------
# integer values
# ---------------------------------------------------------------------------

def test_integer_value_central_case(J):
    assert abs(rhs_integer_value(J, 0) - l_star(J, 0)) < 1e-7


def test_integer_value_whf_grid(J):
    for m in range(-3, 4):
        assert abs(rhs_integer_value(J, m) - l_star(J, m)) < 1e-7


def test_integer_value_m1_two_forms(J):
    """At m=1 the zeta* form and i int f z dz agree because int f = 0."""
    rhs = rhs_integer_value(J, 1)

    def g(z):
        return J.eval_at(np.asarray(z, dtype=complex)) * np.asarray(z)

    alt = 1j * integrate_segment(g, 1j, 1j + 1).value
    assert abs(rhs - alt) < 1e-8


def test_integer_value_harmonic_oracle():
    for f in (synth_harmonic(0, {1: 0.5}, {-1: 1}),
              synth_harmonic(-2, {1: 1}, {-1: 2 - 1j})):
        for m in (1, 2):
            lim, lim_err = l_value_limit(f, m)
            assert abs(rhs_integer_value(f, m) - lim) < 1e-5 + lim_err


def test_integer_value_printed_constants_differ():
    """The phase-free printed d-constants disagree with the limit oracle;
    the discrepancy is deliberate and documented."""
    f = synth_harmonic(0, {}, {-1: 1})
    lim, _ = l_value_limit(f, 2)
    assert abs(rhs_integer_value(f, 2) - lim) < 1e-9
    assert abs(rhs_integer_value(f, 2, printed_constants=True) - lim) > 1e-4


def test_integer_value_harmonic_m0_unsupported():
    f = synth_harmonic(0, {}, {-1: 1})
    with pytest.raises(RegimeError):
        rhs_integer_value(f, 0)


def test_real_coefficient_symmetry(J):
    """BFI-convention bookkeeping for real-coefficient forms."""
    from maassl.specfun import cal_EI
    series = 2 * sum(a * cal_EI(TWO_PI * n) for n, a in J.holo.items())
    assert series.real == pytest.approx(2 * rhs_integer_value(J, 0).real,
                                        abs=1e-7)


# ---------------------------------------------------------------------------
# negative s
# ---------------------------------------------------------------------------

def test_negative_s_cross_pipeline(J):
    for s in (-0.5, -1.0):
        assert abs(rhs_negative_s(J, s) - l_star(J, s)) < 1e-8


def test_negative_s_polygamma_form(J):
    v1 = rhs_negative_s(J, -1.0)
    v2 = rhs_negative_s(J, -1.0, use_polygamma=True)
    assert abs(v1 - v2) < 1e-9


def test_negative_s_zero_form():
    f = synth_harmonic(0, {1: 0}, {})
    assert rhs_negative_s(f, -0.5) == 0


def test_negative_s_regime(J):
    with pytest.raises(RegimeError):
        rhs_negative_s(J, 0.5)
    with pytest.raises(RegimeError):
        rhs_negative_s(J, -0.5, use_polygamma=True)  # non-integer s


# ---------------------------------------------------------------------------
# compact support
# ---------------------------------------------------------------------------

def test_compact_support_vs_quadrature(J):
    from maassl import CompactAnalytic, l_value_by_vertical_integral
    for p, (a, b) in ((2.0, (1.0, 2.0)), (3.0, (1.0, 1.5))):
        seed = InversePowerSeed(p)
        lhs = compact_support_value(J, seed, a, b)
        rhs = l_value_by_vertical_integral(J, CompactAnalytic(seed, a, b))
        assert abs(lhs - rhs) < 1e-9


def test_compact_support_zero_seed(J):
    assert compact_support_value(J, ZeroSeed(), 1.0, 2.0) == 0


def test_compact_support_validation(J):
    with pytest.raises(ValueError):
        compact_support_value(J, InversePowerSeed(2), 2.0, 1.0)
