"""Simulated interferometric tests of Born's rule and complex quantum amplitudes.

Three coherent sources feed a three-arm interferometer read out by balanced
homodyne detection. The package computes the Sorkin (third-order
interference), Peres (hypercomplex amplitude) and Glauber (linearity)
statistics from the eight switch configurations, models detector
imperfections, and compares estimator variances for coherent, single-photon
and displaced-squeezed probes.
"""

from .errors import PostulateError
from .gaussian_states import CoherentState, GaussianMoments, SplittingBudget, displaced_squeezed_moments
from .homodyne import HomodyneModel, sample_homodyne
from .interferometer import PhaseShifts, SourceBank, SwitchPattern, config_photon_numbers
from .postulate_tests import (
    PhotonNumberSet,
    glauber_statistics,
    peres_statistics,
    sorkin_statistics,
)
from .quaternion import Quaternion, qexp, qmul, qnorm

__all__ = [
    "CoherentState",
    "GaussianMoments",
    "HomodyneModel",
    "PhaseShifts",
    "PhotonNumberSet",
    "PostulateError",
    "Quaternion",
    "SourceBank",
    "SplittingBudget",
    "SwitchPattern",
    "config_photon_numbers",
    "displaced_squeezed_moments",
    "glauber_statistics",
    "peres_statistics",
    "qexp",
    "qmul",
    "qnorm",
    "sample_homodyne",
    "sorkin_statistics",
]
