"""Balanced homodyne detection: deterministic response, shot-noise sampling, inference.

Conventions
-----------
* The local oscillator is ``exp(i phi) * beta`` with ``beta > 0`` real.
* Sampled outcomes are expressed in vacuum-noise units: an ideal detector
  returns draws with mean ``2 (alpha_r cos phi + alpha_i sin phi)`` and unit
  variance. For a general detector the raw current is divided by
  :func:`calibration`, i.e. the analyst applies the nominal gain and splitting
  ratio regardless of the detector's true imbalance.
* Quaternionic amplitudes follow the magnitude postulate: the cross term of
  the photocurrent is replaced by ``beta * |exp(i phi) conj(alpha) + exp(-i phi) alpha|``
  with a positive sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySamples, HypercomplexAmplitude
from .quaternion import Quaternion, qconj, qexp, qmul, qnorm

MEAN_CORRECT = "mean-correct"
PHOTON_CORRECT = "photon-correct"
CORRECTION_METHODS = (MEAN_CORRECT, PHOTON_CORRECT)


@dataclass(frozen=True)
class HomodyneModel:
    lo_amplitude: float
    lo_phase: float = math.pi / 2
    transmissivity: float = math.sqrt(0.5)
    gain_1: float = 1.0
    gain_2: float = 1.0

    def __post_init__(self):
        if not self.lo_amplitude > 0:
            raise ValueError(f"lo_amplitude must be positive, got {self.lo_amplitude}")
        if not 0 < self.transmissivity < 1:
            raise ValueError(f"transmissivity must lie in (0, 1), got {self.transmissivity}")
        if not (self.gain_1 > 0 and self.gain_2 > 0):
            raise ValueError("detector gains must be positive")

    @classmethod
    def ideal(cls, lo_amplitude: float = 1.0, lo_phase: float = math.pi / 2) -> HomodyneModel:
        return cls(lo_amplitude, lo_phase, math.sqrt(0.5), 1.0, 1.0)

    @property
    def reflectivity(self) -> float:
        return math.sqrt(1.0 - self.transmissivity**2)


@dataclass(frozen=True)
class HomodyneSampleSet:
    samples: np.ndarray
    phi: float = math.pi / 2

    @property
    def count(self) -> int:
        return int(self.samples.size)

    @property
    def quadrature(self) -> str | None:
        if math.isclose(math.cos(self.phi), 1.0, abs_tol=1e-12):
            return "x"
        if math.isclose(math.sin(self.phi), 1.0, abs_tol=1e-12):
            return "p"
        return None

    def mean(self) -> float:
        if self.count == 0:
            raise EmptySamples("no homodyne samples")
        return float(np.mean(self.samples))


def _as_quaternion(alpha) -> Quaternion:
    return Quaternion.coerce(alpha)


def _require_complex(alpha: Quaternion) -> None:
    if not alpha.is_complex:
        raise HypercomplexAmplitude("amplitude has j/k components; use quaternion_measured_magnitude")


def _rotated_quadrature(alpha: Quaternion, phi: float) -> float:
    return alpha.a * math.cos(phi) + alpha.b * math.sin(phi)


def ideal_subtracted_current(alpha_out, phi: float, beta: float) -> float:
    """``n1 - n2`` for a balanced detector: ``2 beta (alpha_r cos phi + alpha_i sin phi)``."""
    alpha = _as_quaternion(alpha_out)
    _require_complex(alpha)
    return 2.0 * beta * _rotated_quadrature(alpha, phi)


def detector_photon_numbers(alpha_out, model: HomodyneModel) -> tuple[float, float]:
    """Mean photon numbers ``(n1, n2)`` at the two photodiodes."""
    alpha = _as_quaternion(alpha_out)
    _require_complex(alpha)
    t, s, beta = model.transmissivity, model.reflectivity, model.lo_amplitude
    a2 = qnorm(alpha) ** 2
    cross = t * s * beta * 2.0 * _rotated_quadrature(alpha, model.lo_phase)
    n1 = t * t * a2 + s * s * beta * beta + cross
    n2 = s * s * a2 + t * t * beta * beta - cross
    return n1, n2


def general_subtracted_current(alpha_out, model: HomodyneModel) -> float:
    n1, n2 = detector_photon_numbers(alpha_out, model)
    return model.gain_1 * n1 - model.gain_2 * n2


def quaternion_measured_magnitude(alpha_out, phi: float, beta: float) -> float:
    """Magnitude of ``beta (exp(i phi) conj(alpha) + exp(-i phi) alpha)``.

    At ``phi = pi/2`` this is ``2 beta sqrt(alpha_i^2 + alpha_j^2 + alpha_k^2)``.
    The sign of the outcome is not determined, so only the magnitude is returned.
    """
    alpha = _as_quaternion(alpha_out)
    rot = qexp(Quaternion(0.0, phi, 0.0, 0.0))
    counter = qexp(Quaternion(0.0, -phi, 0.0, 0.0))
    return beta * qnorm(qmul(rot, qconj(alpha)) + qmul(counter, alpha))


def _cross_quadrature(alpha: Quaternion, phi: float) -> float:
    # signed 2u for complex amplitudes, positive magnitude otherwise
    if alpha.is_complex:
        return 2.0 * _rotated_quadrature(alpha, phi)
    return quaternion_measured_magnitude(alpha, phi, 1.0)


def calibration(model: HomodyneModel) -> float:
    """Nominal current per unit of normalised outcome; equals ``beta`` for an ideal detector."""
    t, s = model.transmissivity, model.reflectivity
    return model.lo_amplitude * 2.0 * t * s * (model.gain_1 + model.gain_2) / 2.0


def _imbalance(model: HomodyneModel) -> tuple[float, float]:
    t2, s2 = model.transmissivity**2, model.reflectivity**2
    g1, g2 = model.gain_1, model.gain_2
    return g1 * t2 - g2 * s2, g1 * s2 - g2 * t2


def detector_difference(alpha_out, model: HomodyneModel) -> float:
    """``g1 n1 - g2 n2`` for complex or quaternionic amplitudes."""
    alpha = _as_quaternion(alpha_out)
    signal_coeff, lo_coeff = _imbalance(model)
    t, s, beta = model.transmissivity, model.reflectivity, model.lo_amplitude
    cross = (model.gain_1 + model.gain_2) * t * s * beta * _cross_quadrature(alpha, model.lo_phase)
    return signal_coeff * qnorm(alpha) ** 2 + lo_coeff * beta * beta + cross


def expected_outcome(alpha_out, model: HomodyneModel | None = None, phi: float = math.pi / 2) -> float:
    """Mean of the normalised homodyne samples."""
    alpha = _as_quaternion(alpha_out)
    if model is None:
        return _cross_quadrature(alpha, phi)
    return detector_difference(alpha, model) / calibration(model)


def sample_homodyne(
    alpha_out,
    phi: float,
    n: int,
    rng: np.random.Generator,
    *,
    model: HomodyneModel | None = None,
    noise: float = 1.0,
    offset: float = 0.0,
) -> HomodyneSampleSet:
    """Draw ``n`` normalised outcomes with unit shot-noise variance (scaled by ``noise``).

    With ``model`` given, its ``lo_phase`` is replaced by ``phi``.
    """
    if n < 1:
        raise ValueError(f"need at least one sample, got {n}")
    if model is not None and model.lo_phase != phi:
        model = HomodyneModel(model.lo_amplitude, phi, model.transmissivity, model.gain_1, model.gain_2)
    mean = expected_outcome(alpha_out, model, phi) + offset
    draws = rng.standard_normal(n)
    return HomodyneSampleSet(mean + noise * draws, phi)


def estimate_mean_photon(signal: HomodyneSampleSet, background: HomodyneSampleSet, method: str) -> float:
    """Background-corrected mean photon number.

    ``mean-correct`` subtracts the background mean before halving and squaring.
    ``photon-correct`` averages ``(x/2)^2`` over each trace and subtracts the
    background value, which also removes the vacuum contribution of 1/4.
    """
    if signal.count == 0 or background.count == 0:
        raise EmptySamples("signal and background traces must be non-empty")
    if method == MEAN_CORRECT:
        return ((signal.mean() - background.mean()) / 2.0) ** 2
    if method == PHOTON_CORRECT:
        sig = np.mean((signal.samples / 2.0) ** 2)
        bg = np.mean((background.samples / 2.0) ** 2)
        return float(sig - bg)
    raise ValueError(f"unknown correction method {method!r}; expected one of {CORRECTION_METHODS}")


def infer_photon_number(current: float, background_current: float, model: HomodyneModel) -> float:
    """Photon number read off raw currents with the nominal calibration."""
    return ((current - background_current) / (2.0 * calibration(model))) ** 2


def miscalibrated_photon_number(alpha_out, model: HomodyneModel) -> float:
    """Noise-free :func:`infer_photon_number` against an all-off background.

    Algebraically identical to differencing two :func:`detector_difference`
    values, but the local-oscillator term is cancelled analytically so that
    very bright oscillators lose no precision.
    """
    alpha = _as_quaternion(alpha_out)
    signal_coeff, _ = _imbalance(model)
    amplitude = _cross_quadrature(alpha, model.lo_phase) / 2.0
    amplitude += signal_coeff * qnorm(alpha) ** 2 / (2.0 * calibration(model))
    return amplitude * amplitude
