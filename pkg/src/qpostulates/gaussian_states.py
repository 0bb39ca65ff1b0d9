"""Coherent and displaced-squeezed single-mode states.

Units: quadratures are ``x = a + a^dag`` and ``p = -i(a - a^dag)``, so a
coherent state has unit variance in both and mean ``(2 Re alpha, 2 Im alpha)``.
Moment vectors and covariance matrices are always ordered ``(x, p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HypercomplexAmplitude
from .quaternion import Quaternion, qnorm


@dataclass(frozen=True)
class CoherentState:
    amplitude: Quaternion = field(default_factory=Quaternion)

    @classmethod
    def from_complex(cls, alpha: complex) -> CoherentState:
        return cls(Quaternion.from_complex(alpha))


def mean_photon_number(state: CoherentState) -> float:
    return qnorm(state.amplitude) ** 2


def quadrature_mean(state: CoherentState, which: str) -> float:
    """Expected homodyne outcome for the ``"x"`` or ``"p"`` quadrature."""
    amp = state.amplitude
    if not amp.is_complex:
        raise HypercomplexAmplitude(
            "quadrature_mean needs a complex amplitude; use homodyne.quaternion_measured_magnitude"
        )
    if which == "x":
        return 2.0 * amp.a
    if which == "p":
        return 2.0 * amp.b
    raise ValueError(f"unknown quadrature {which!r}")


@dataclass(frozen=True)
class GaussianMoments:
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(2)
        cov = np.asarray(self.covariance, dtype=float).reshape(2, 2)
        if not np.allclose(cov, cov.T, rtol=0, atol=1e-14):
            raise ValueError("covariance must be symmetric")
        if np.any(np.diag(cov) <= 0):
            raise ValueError("covariance diagonal must be positive")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def p_mean(self) -> float:
        return float(self.mean[1])

    @property
    def p_variance(self) -> float:
        return float(self.covariance[1, 1])


@dataclass(frozen=True)
class SplittingBudget:
    """A photon budget ``n_total`` split between displacement (fraction ``f``) and squeezing."""

    n_total: float
    f: float

    def __post_init__(self):
        if not 0.0 <= self.f <= 1.0:
            raise ValueError(f"splitting fraction must lie in [0, 1], got {self.f}")
        if self.n_total < 0:
            raise ValueError(f"photon budget must be non-negative, got {self.n_total}")

    @property
    def alpha_in(self) -> float:
        return math.sqrt(self.f * self.n_total)

    @property
    def r_in(self) -> float:
        return math.asinh(math.sqrt((1.0 - self.f) * self.n_total))


def displaced_squeezed_moments(budget: SplittingBudget, P: float) -> GaussianMoments:
    """Moments reaching the detector when a fraction ``P`` of the probe is transmitted.

    The interferometer acts as pure loss with transmission ``P``; the
    displacement sits in the p quadrature and the p quadrature is squeezed.
    """
    if not 0.0 <= P <= 1.0:
        raise ValueError(f"P must lie in [0, 1], got {P}")
    r = budget.r_in
    mean = (0.0, 2.0 * math.sqrt(P) * budget.alpha_in)
    cov = np.diag([1.0 - P + P * math.exp(2 * r), 1.0 - P + P * math.exp(-2 * r)])
    return GaussianMoments(np.array(mean), cov)
