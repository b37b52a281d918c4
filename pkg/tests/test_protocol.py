import math

import numpy as np
import pytest

from ringcat.basis import enumerate_basis
from ringcat.protocol import (
    CAT_HOLD_PHASE,
    BracketError,
    ProtocolResult,
    analytic_P3,
    calibrate_u,
    cattiness,
    cattiness_sweep,
    run_protocol,
    sweep_protocol_probabilities,
    timing_tolerance,
)

def brute_force_probabilities(n, theta):
    """Mode-condensate probabilities by explicit enumeration.

    Independent of the package's vectorized paths: the amplitude for all
    particles in mode k is a multinomial-weighted character sum over the
    occupation triples.
    """
    omega = np.exp(2j * np.pi / 3.0)
    out = []
    for k in range(3):
        total = 0.0 + 0.0j
        for p, q, r in enumerate_basis(n):
            weight = math.factorial(n) / (
                math.factorial(int(p)) * math.factorial(int(q)) * math.factorial(int(r))
            ) / 3.0**n
            counts = p * (p - 1) + q * (q - 1) + r * (r - 1)
            total += weight * omega ** (k * (q + 2 * r)) * np.exp(-0.5j * theta * counts)
        out.append(abs(total) ** 2)
    return tuple(out)


def cattiness_curve(n, thetas):
    probs = sweep_protocol_probabilities(n, thetas)
    return 3.0 * np.cbrt(np.prod(probs, axis=1))


def test_resonant_run_creates_even_cat():
    for n in (3, 30):
        r = run_protocol(n, CAT_HOLD_PHASE)
        assert np.allclose((r.p_alpha, r.p_beta, r.p_gamma), 1.0 / 3.0, atol=1e-12)
        assert r.cattiness == pytest.approx(1.0, abs=1e-10)


def test_zero_hold_returns_ground():
    r = run_protocol(3, 0.0)
    assert (r.p_alpha, r.cattiness) == (pytest.approx(1.0, abs=1e-12), pytest.approx(0.0, abs=1e-15))
    assert r.p_beta < 1e-15 and r.p_gamma < 1e-15


def test_off_multiple_run_matches_brute_force():
    r = run_protocol(4, CAT_HOLD_PHASE)
    expected = brute_force_probabilities(4, CAT_HOLD_PHASE)
    assert r.p_alpha == pytest.approx(expected[0], abs=1e-13)
    assert r.p_alpha == pytest.approx(1.0 / 27.0, abs=1e-13)
    assert r.p_beta < 1e-15 and r.p_gamma < 1e-15
    assert r.cattiness < 1e-10


def test_run_protocol_matches_brute_force_generic_phase():
    for n, theta in ((2, 0.37), (5, 1.92), (6, 2.6)):
        r = run_protocol(n, theta)
        expected = brute_force_probabilities(n, theta)
        assert np.allclose((r.p_alpha, r.p_beta, r.p_gamma), expected, atol=1e-12)


def test_protocol_preserves_norm():
    r = run_protocol(9, 1.234)
    assert abs(r.state.norm - 1.0) < 1e-12


def test_analytic_endpoints():
    pa, pb = analytic_P3(0.0)
    assert pa == pytest.approx(1.0, abs=1e-15)
    assert pb == pytest.approx(0.0, abs=1e-15)
    pa, pb = analytic_P3(CAT_HOLD_PHASE)
    assert pa == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert pb == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_analytic_matches_simulator_on_grid():
    thetas = np.linspace(0.0, 2.0 * np.pi, 211)
    probs = sweep_protocol_probabilities(3, thetas)
    pa, pb = analytic_P3(thetas)
    assert np.max(np.abs(probs[:, 0] - pa)) < 1e-12
    assert np.max(np.abs(probs[:, 1] - pb)) < 1e-12
    assert np.max(np.abs(probs[:, 2] - pb)) < 1e-12


def test_beta_constant_term_pinned_by_brute_force():
    # solve for the constant in 81*P_beta = c - 12 cos t - 6 cos 2t + 4 cos 3t
    # using only the brute-force enumeration; normalization demands c = 14
    thetas = np.linspace(0.0, 2.0 * np.pi, 101)
    residuals = []
    for theta in thetas:
        _, pb, _ = brute_force_probabilities(3, theta)
        residuals.append(
            81.0 * pb + 12.0 * math.cos(theta) + 6.0 * math.cos(2 * theta) - 4.0 * math.cos(3 * theta)
        )
    residuals = np.asarray(residuals)
    assert np.max(np.abs(residuals - 14.0)) < 1e-12
    # and the printed-alpha-style constant 41 is inconsistent with P_beta(0) = 0
    assert abs((41.0 - 12.0 - 6.0 + 4.0) / 81.0) > 0.3


def test_cattiness_values():
    assert cattiness(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0) == pytest.approx(1.0, abs=1e-12)
    assert cattiness(1.0, 0.0, 0.0) == 0.0
    assert cattiness(0.4, 0.3, 0.3) == pytest.approx(3.0 * 0.036 ** (1.0 / 3.0), abs=1e-14)
    with pytest.raises(ValueError):
        cattiness(1.2, 0.0, 0.0)
    with pytest.raises(ValueError):
        cattiness(-0.1, 0.5, 0.5)


def test_cattiness_sweep_comb_pattern():
    results = cattiness_sweep(range(1, 32))
    by_n = {r.n: r for r in results}
    for n in range(3, 31, 3):
        assert by_n[n].cattiness == pytest.approx(1.0, abs=1e-10), f"n={n}"
    for n in range(1, 32):
        if n % 3:
            assert by_n[n].cattiness < 1.0 - 1e-3, f"n={n}"
    # smallest case: a single particle picks up no pair phases at all
    assert by_n[1].p_alpha == pytest.approx(1.0, abs=1e-14)
    assert by_n[1].cattiness == pytest.approx(0.0, abs=1e-15)


def test_cattiness_is_even_and_periodic_in_theta():
    thetas = np.linspace(0.05, 2 * np.pi, 39)
    for n in (3, 6, 9):
        assert np.max(np.abs(cattiness_curve(n, thetas) - cattiness_curve(n, -thetas))) < 1e-12
        assert np.max(np.abs(cattiness_curve(n, thetas) - cattiness_curve(n, thetas + 2 * np.pi))) < 1e-12


def test_cattiness_asymmetry_about_resonance_is_small_but_real():
    # the curve is even in theta but not in the fractional error delta;
    # the asymmetry is a higher-order effect and stays tiny near the peak
    deltas = np.linspace(0.005, 0.12, 24)
    plus = cattiness_curve(6, (1.0 + deltas) * CAT_HOLD_PHASE)
    minus = cattiness_curve(6, (1.0 - deltas) * CAT_HOLD_PHASE)
    gap = np.max(np.abs(plus - minus))
    assert 1e-9 < gap < 1e-3


def test_timing_tolerance_against_analytic_oracle():
    # independent search on the closed three-particle forms
    def c3(theta):
        pa, pb = analytic_P3(theta)
        return 3.0 * np.cbrt(pa * pb * pb)

    lo, hi, step = 0.0, None, 1e-5
    d = 0.0
    while hi is None:
        d += step
        if c3((1.0 + d) * CAT_HOLD_PHASE) < 0.9:
            lo, hi = d - step, d
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if c3((1.0 + mid) * CAT_HOLD_PHASE) >= 0.9:
            lo = mid
        else:
            hi = mid
    oracle = 0.5 * (lo + hi)
    assert timing_tolerance(3) == pytest.approx(oracle, abs=1e-8)


def test_timing_tolerance_basics():
    d0 = timing_tolerance(6)
    assert d0 > 0
    curve = cattiness_curve(6, np.array([(1.0 + d0) * CAT_HOLD_PHASE]))
    assert curve[0] == pytest.approx(0.9, abs=1e-6)
    # delta = 0 always satisfies the target
    assert cattiness_curve(6, np.array([CAT_HOLD_PHASE]))[0] >= 0.9


def test_timing_tolerance_scales_inversely_with_n():
    d6 = timing_tolerance(6)
    d30 = timing_tolerance(30)
    assert 4.0 < d6 / d30 < 6.5


def test_timing_tolerance_rejects_bad_input():
    with pytest.raises(ValueError):
        timing_tolerance(4)
    with pytest.raises(ValueError):
        timing_tolerance(6, c_target=1.5)
    with pytest.raises(ValueError):
        timing_tolerance(6, grid_step=1.0)


def test_calibration_finds_the_resonance():
    # flat-top limit: a value-based search resolves the peak of the
    # quadratic cap only to about sqrt(eps / curvature), a few 1e-9 here
    samples = np.linspace(0.5 * math.pi, 0.85 * math.pi, 101)
    star = calibrate_u(6, samples)
    assert star == pytest.approx(CAT_HOLD_PHASE, abs=1e-7)


def test_calibration_peak_width_matches_timing_tolerance():
    n = 6
    d0 = timing_tolerance(n, c_target=0.9)
    half_width = d0 * CAT_HOLD_PHASE
    value = cattiness_curve(n, np.array([CAT_HOLD_PHASE + half_width]))[0]
    assert value == pytest.approx(0.9, abs=1e-6)


def test_calibration_peak_sharpens_with_n():
    ratio = timing_tolerance(6) / timing_tolerance(30)
    assert ratio == pytest.approx(5.0, rel=0.3)


def test_calibration_rejects_edge_maximum():
    with pytest.raises(BracketError):
        calibrate_u(6, np.linspace(0.1, 0.5, 21))
    with pytest.raises(BracketError):
        calibrate_u(6, [1.0, 2.0])


def test_run_protocol_rejects_zero_particles():
    with pytest.raises(ValueError):
        run_protocol(0, 1.0)


def test_result_invariant_enforced():
    r = run_protocol(3)
    with pytest.raises(ValueError):
        ProtocolResult(r.n, r.theta, r.p_alpha, r.p_beta, r.p_gamma, 0.5, r.state)


def test_sweep_matches_single_runs():
    thetas = np.array([0.0, 0.9, 2.2, 4.4])
    swept = sweep_protocol_probabilities(5, thetas)
    for theta, row in zip(thetas, swept):
        r = run_protocol(5, float(theta))
        assert np.allclose(row, (r.p_alpha, r.p_beta, r.p_gamma), atol=1e-13)
