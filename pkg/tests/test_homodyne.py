import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import complex_quaternions, phases
from qpostulates.errors import EmptySamples, HypercomplexAmplitude
from qpostulates.homodyne import (
    MEAN_CORRECT,
    PHOTON_CORRECT,
    HomodyneModel,
    HomodyneSampleSet,
    calibration,
    detector_difference,
    detector_photon_numbers,
    estimate_mean_photon,
    expected_outcome,
    general_subtracted_current,
    ideal_subtracted_current,
    infer_photon_number,
    miscalibrated_photon_number,
    quaternion_measured_magnitude,
    sample_homodyne,
)
from qpostulates.quaternion import I, J, Quaternion

# 50-digit term-by-term evaluation of both photodiode currents
FROZEN_GAIN_MISMATCH_CURRENT = -29.90005


def test_ideal_model_defaults():
    model = HomodyneModel.ideal(5.0)
    assert model.transmissivity == math.sqrt(0.5)
    assert model.gain_1 == model.gain_2 == 1.0
    assert calibration(model) == pytest.approx(5.0, rel=1e-15)


@pytest.mark.parametrize(
    "kwargs",
    [dict(lo_amplitude=0.0), dict(lo_amplitude=1.0, transmissivity=1.0), dict(lo_amplitude=1.0, gain_2=0.0)],
)
def test_model_validation(kwargs):
    with pytest.raises(ValueError):
        HomodyneModel(**kwargs)


def test_ideal_current_examples():
    assert ideal_subtracted_current(1j, math.pi / 2, 100.0) == pytest.approx(200.0, rel=1e-15)
    assert ideal_subtracted_current(1j, 0.0, 100.0) == 0.0
    assert ideal_subtracted_current(0j, 1.234, 100.0) == 0.0


def test_ideal_current_rejects_quaternions():
    with pytest.raises(HypercomplexAmplitude):
        ideal_subtracted_current(J, math.pi / 2, 1.0)


def test_general_current_reduces_to_ideal(rng):
    worst = 0.0
    for _ in range(1000):
        alpha = complex(*rng.uniform(-3, 3, size=2))
        phi, beta = rng.uniform(0, 2 * math.pi), rng.uniform(1, 1e3)
        model = HomodyneModel(beta, phi)
        ideal = ideal_subtracted_current(alpha, phi, beta)
        # the local-oscillator terms cancel, so compare against the largest surviving scale
        scale = max(abs(ideal), beta * abs(alpha))
        worst = max(worst, abs(general_subtracted_current(alpha, model) - ideal) / scale)
    assert worst <= 1e-10


@pytest.mark.parametrize("t", [0.6, 0.68, 0.75])
def test_vacuum_signal_leaves_lo_imbalance(t):
    beta = 100.0
    got = general_subtracted_current(0j, HomodyneModel(beta, 0.3, t))
    assert got == pytest.approx((1 - 2 * t * t) * beta * beta, rel=1e-12)


def test_gain_mismatch_current_matches_oracle():
    model = HomodyneModel(100.0, math.pi / 2, math.sqrt(0.5), 1.0, 1.01)
    got = general_subtracted_current(0.1j, model)
    assert got == pytest.approx(FROZEN_GAIN_MISMATCH_CURRENT, rel=1e-9)
    _, n2 = detector_photon_numbers(0.1j, model)
    ideal = ideal_subtracted_current(0.1j, math.pi / 2, 100.0)
    assert got - ideal == pytest.approx(-0.01 * n2, rel=1e-9)


def test_detector_difference_agrees_with_photodiode_form(rng):
    for _ in range(200):
        alpha = complex(*rng.uniform(-2, 2, size=2))
        model = HomodyneModel(rng.uniform(1, 50), rng.uniform(0, 6), rng.uniform(0.5, 0.9), rng.uniform(0.8, 1.2), rng.uniform(0.8, 1.2))
        assert detector_difference(alpha, model) == pytest.approx(general_subtracted_current(alpha, model), rel=1e-10, abs=1e-9)


@pytest.mark.parametrize(
    "alpha, expected",
    [(I, 2.0), ((I + J) / math.sqrt(2), 2.0), (J * 0.1, 0.2)],
)
def test_quaternion_magnitude_examples(alpha, expected):
    assert quaternion_measured_magnitude(alpha, math.pi / 2, 1.0) == pytest.approx(expected, rel=1e-15)


@given(complex_quaternions, phases, st.floats(0.1, 1e3))
def test_quaternion_magnitude_matches_complex_current(alpha, phi, beta):
    got = quaternion_measured_magnitude(alpha, phi, beta)
    expected = abs(ideal_subtracted_current(alpha, phi, beta))
    assert got == pytest.approx(expected, rel=1e-12, abs=1e-12 * beta * max(1.0, abs(alpha)))


def test_expected_outcome_quaternion_uses_magnitude():
    assert expected_outcome(Quaternion(0, 0.3, 0.4, 0)) == pytest.approx(1.0, rel=1e-15)
    assert expected_outcome(1j / 3) == pytest.approx(2 / 3, rel=1e-15)
    assert expected_outcome(-1j / 3) == pytest.approx(-2 / 3, rel=1e-15)


def test_sampling_statistics():
    samples = sample_homodyne(1j, math.pi / 2, 10**6, np.random.default_rng(1))
    assert samples.quadrature == "p"
    assert samples.count == 10**6
    assert abs(samples.mean() - 2.0) <= 0.004
    assert np.var(samples.samples) == pytest.approx(1.0, rel=0.01)


def test_vacuum_sampling():
    samples = sample_homodyne(0j, 0.0, 10**6, np.random.default_rng(2))
    assert samples.quadrature == "x"
    assert abs(samples.mean()) <= 0.003


def test_sampling_is_deterministic():
    a = sample_homodyne(1j / 3, math.pi / 2, 1000, np.random.default_rng(7))
    b = sample_homodyne(1j / 3, math.pi / 2, 1000, np.random.default_rng(7))
    np.testing.assert_array_equal(a.samples, b.samples)


def test_sampling_through_imperfect_model_uses_requested_phase():
    model = HomodyneModel(100.0, 0.0, 0.7, 1.0, 1.0)
    s = sample_homodyne(1j, math.pi / 2, 10, np.random.default_rng(0), model=model, noise=0.0)
    expected = expected_outcome(1j, HomodyneModel(100.0, math.pi / 2, 0.7, 1.0, 1.0))
    assert np.all(s.samples == expected)


def test_per_sample_photon_variance_matches_squared_gaussian_form():
    samples = sample_homodyne(1j / 3, math.pi / 2, 10**6, np.random.default_rng(3)).samples
    assert np.var((samples / 2) ** 2, ddof=1) == pytest.approx(17 / 72, rel=0.02)


def test_noise_free_corrections_agree():
    signal = HomodyneSampleSet(np.full(10, 2 / 3))
    background = HomodyneSampleSet(np.zeros(10))
    assert estimate_mean_photon(signal, background, MEAN_CORRECT) == pytest.approx(1 / 9, rel=1e-15)
    assert estimate_mean_photon(signal, background, PHOTON_CORRECT) == pytest.approx(1 / 9, rel=1e-15)


@pytest.mark.parametrize("method", [MEAN_CORRECT, PHOTON_CORRECT])
def test_source_off_estimates_zero(method):
    rng = np.random.default_rng(4)
    estimates = [
        estimate_mean_photon(sample_homodyne(0j, math.pi / 2, 1000, rng), sample_homodyne(0j, math.pi / 2, 1000, rng), method)
        for _ in range(2000)
    ]
    sem = np.std(estimates, ddof=1) / math.sqrt(len(estimates))
    assert abs(np.mean(estimates)) <= 4 * sem + (1 / 2000 if method == MEAN_CORRECT else 0)


def test_photon_correct_estimator_variance_chain():
    """Signal term 17/72 plus the vacuum background term 2/16, both over N."""
    rng = np.random.default_rng(5)
    N, reps = 1000, 2000
    estimates = np.array([
        estimate_mean_photon(sample_homodyne(1j / 3, math.pi / 2, N, rng), sample_homodyne(0j, math.pi / 2, N, rng), PHOTON_CORRECT)
        for _ in range(reps)
    ])
    expected_var = (17 / 72 + 1 / 8) / N
    assert abs(estimates.mean() - 1 / 9) <= 4 * math.sqrt(expected_var / reps)
    assert estimates.var(ddof=1) == pytest.approx(expected_var, rel=0.12)


def test_empty_samples_rejected():
    empty = HomodyneSampleSet(np.array([]))
    with pytest.raises(EmptySamples):
        empty.mean()
    with pytest.raises(EmptySamples):
        estimate_mean_photon(empty, HomodyneSampleSet(np.zeros(3)), MEAN_CORRECT)


def test_unknown_correction_rejected():
    s = HomodyneSampleSet(np.zeros(3))
    with pytest.raises(ValueError):
        estimate_mean_photon(s, s, "median-correct")


def test_miscalibrated_inference_is_exact_at_ideal_settings():
    model = HomodyneModel.ideal(10.0)
    assert miscalibrated_photon_number(1j / 3, model) == pytest.approx(1 / 9, rel=1e-14)


def test_miscalibrated_inference_matches_raw_currents(rng):
    for _ in range(100):
        alpha = complex(*rng.uniform(-0.5, 0.5, size=2))
        model = HomodyneModel(rng.uniform(2, 20), math.pi / 2, rng.uniform(0.6, 0.8), rng.uniform(0.9, 1.1), 1.0)
        raw = infer_photon_number(detector_difference(alpha, model), detector_difference(0j, model), model)
        assert miscalibrated_photon_number(alpha, model) == pytest.approx(raw, rel=1e-9)
