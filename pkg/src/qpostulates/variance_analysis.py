"""Estimator variances for single-photon, coherent and displaced-squeezed probes.

Every analytic variance here carries an explicit ``1/N`` for ``N`` repetitions
(leading order; ``N - 1`` corrections are ignored).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateSqueezing
from .gaussian_states import GaussianMoments, SplittingBudget, displaced_squeezed_moments
from .homodyne import MEAN_CORRECT, PHOTON_CORRECT
from .interferometer import SourceBank, config_photon_numbers, output_amplitudes
from .postulate_tests import PhotonNumberSet, second_order_interference, third_order_interference

SINGLE_PATH = "single-path"
TWO_PATH = "two-path"
THREE_PATH = "three-path"
_PATHS_OPEN = {SINGLE_PATH: 1, TWO_PATH: 2, THREE_PATH: 3}

#: Source amplitude of the probe comparison: one photon shared over three arms.
COMPARISON_AMPLITUDE = 1.0 / math.sqrt(3.0)

SMALL_MEAN = 1e-6
DELTA_FORM = "delta"
EXACT_FORM = "exact"


def binomial_probability_variance(P: float, N: int) -> float:
    """Variance of the click-frequency estimate of ``P`` from ``N`` trials."""
    if not 0 <= P <= 1:
        raise ValueError(f"P must lie in [0, 1], got {P}")
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    return P * (1 - P) / N


def squared_gaussian_variance(mu: float, sigma: float) -> float:
    """Variance of ``X**2`` for ``X ~ Normal(mu, sigma**2)``."""
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    return 2 * sigma**4 + 4 * sigma**2 * mu**2


def coherent_probability_variance(config: str, N: int, amplitude: float = COMPARISON_AMPLITUDE) -> float:
    """Variance of the per-sample photon-number estimator ``mean((x/2)**2)``.

    ``amplitude`` is the (real) amplitude on each source arm.
    """
    try:
        n_open = _PATHS_OPEN[config]
    except KeyError:
        raise ValueError(f"unknown configuration {config!r}") from None
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    alpha_out = n_open * amplitude / math.sqrt(3.0)
    return squared_gaussian_variance(2.0 * alpha_out, 1.0) / 16.0 / N


# --- displaced-squeezed probe ------------------------------------------------


@dataclass(frozen=True)
class SqueezedEstimate:
    p_alpha: float
    p_r: float
    v_alpha: float
    v_r: float
    weight: float = float("nan")
    p_combined: float = float("nan")
    v_combined: float = float("nan")


def _alpha_channel_variance(mu: float, v_mu: float, alpha_in: float, N: int, form: str) -> float:
    if alpha_in == 0:
        return math.inf
    if form == EXACT_FORM or abs(mu) < SMALL_MEAN:
        # squared Gaussian of the sample mean, whose variance is v_mu / N
        return squared_gaussian_variance(mu, math.sqrt(v_mu / N)) / (16.0 * alpha_in**4)
    if form == DELTA_FORM:
        return mu * mu * v_mu / (4.0 * alpha_in**4 * N)
    raise ValueError(f"unknown alpha-channel form {form!r}")


def squeezed_estimators(
    moments: GaussianMoments,
    budget: SplittingBudget,
    N: int,
    *,
    alpha_form: str = DELTA_FORM,
    channels: str = "both",
) -> SqueezedEstimate:
    """Analytic estimates and variances of both probability estimators, then fused.

    ``channels`` selects ``"both"``, ``"alpha"`` (mean only) or ``"r"`` (variance only).
    A channel that carries no information (no displacement, or no squeezing
    at ``f = 1``) gets infinite variance and zero weight.
    """
    if channels not in ("both", "alpha", "r"):
        raise ValueError(f"unknown channel selection {channels!r}")
    # a sample variance needs two samples; the mean channel alone works from one
    if N < (1 if channels == "alpha" else 2):
        raise ValueError(f"N = {N} is too small for channels={channels!r}")
    mu, V = moments.p_mean, moments.p_variance
    alpha_in, r = budget.alpha_in, budget.r_in
    squeeze = 1.0 - math.exp(-2.0 * r)

    if channels == "r" and squeeze == 0:
        raise DegenerateSqueezing("no squeezing at f = 1; the variance channel is undefined")

    p_alpha, v_alpha = math.nan, math.inf
    if channels != "r" and alpha_in > 0:
        p_alpha = (mu / (2.0 * alpha_in)) ** 2
        v_alpha = _alpha_channel_variance(mu, V, alpha_in, N, alpha_form)

    p_r, v_r = math.nan, math.inf
    if channels != "alpha" and squeeze > 0:
        p_r = (1.0 - V) / squeeze
        v_r = 2.0 * V * V / (squeeze * squeeze * N)

    return combine_estimates(SqueezedEstimate(p_alpha, p_r, v_alpha, v_r))


def combine_estimates(e: SqueezedEstimate) -> SqueezedEstimate:
    """Inverse-variance weighting of the two channels.

    A zero-variance channel takes all the weight; so does the only finite one.
    """
    va, vr = e.v_alpha, e.v_r
    if va == 0 or (math.isinf(vr) and not math.isinf(va)):
        weight = 1.0
    elif vr == 0 or (math.isinf(va) and not math.isinf(vr)):
        weight = 0.0
    elif math.isinf(va) and math.isinf(vr):
        raise ValueError("neither estimator carries information")
    else:
        weight = vr / (va + vr)

    if weight == 1.0:
        return replace(e, weight=1.0, p_combined=e.p_alpha, v_combined=va)
    if weight == 0.0:
        return replace(e, weight=0.0, p_combined=e.p_r, v_combined=vr)
    p = weight * e.p_alpha + (1.0 - weight) * e.p_r
    v = weight**2 * va + (1.0 - weight) ** 2 * vr
    return replace(e, weight=weight, p_combined=p, v_combined=v)


def squeezed_estimators_from_samples(
    samples: np.ndarray,
    budget: SplittingBudget,
    weight: float,
    *,
    bias_correct: bool = False,
) -> tuple[float, float, float]:
    """Empirical ``(p_alpha, p_r, p_combined)`` from one trace of p-quadrature outcomes.

    ``weight`` is normally the analytic optimum from :func:`squeezed_estimators`.
    With ``bias_correct`` the known noise floor ``V/N`` is removed from the
    squared mean before it is rescaled.
    """
    samples = np.asarray(samples, dtype=float)
    n = samples.size
    mean = float(np.mean(samples))
    var = float(np.var(samples, ddof=1))
    alpha_in, r = budget.alpha_in, budget.r_in
    squeeze = 1.0 - math.exp(-2.0 * r)

    p_alpha = math.nan
    if alpha_in > 0:
        sq = mean * mean - (var / n if bias_correct else 0.0)
        p_alpha = sq / (4.0 * alpha_in**2)
    p_r = (1.0 - var) / squeeze if squeeze > 0 else math.nan

    if weight == 1.0:
        return p_alpha, p_r, p_alpha
    if weight == 0.0:
        return p_alpha, p_r, p_r
    return p_alpha, p_r, weight * p_alpha + (1.0 - weight) * p_r


@dataclass(frozen=True)
class SplittingSweep:
    f: np.ndarray
    mse: np.ndarray
    v_alpha: np.ndarray
    v_r: np.ndarray
    weight: np.ndarray
    f_opt: float
    mse_opt: float
    alpha_form: str


def optimal_splitting_sweep(n_T: float, P: float, f_grid, N: int, *, alpha_form: str = DELTA_FORM) -> SplittingSweep:
    """Fused-estimator MSE at each splitting fraction in ``f_grid``.

    The estimators are (leading-order) unbiased, so MSE equals the fused variance.
    """
    f_grid = np.asarray(f_grid, dtype=float)
    if np.any((f_grid < 0) | (f_grid > 1)):
        raise ValueError("splitting fractions must lie in [0, 1]")
    rows = []
    for f in f_grid:
        budget = SplittingBudget(n_T, float(f))
        est = squeezed_estimators(displaced_squeezed_moments(budget, P), budget, N, alpha_form=alpha_form)
        rows.append((est.v_combined, est.v_alpha, est.v_r, est.weight))
    mse, v_alpha, v_r, weight = (np.array(col) for col in zip(*rows))
    best = int(np.argmin(mse))
    return SplittingSweep(f_grid, mse, v_alpha, v_r, weight, float(f_grid[best]), float(mse[best]), alpha_form)


# --- error propagation for the Sorkin statistic -----------------------------

_SIGNS = np.array([0, 1, 1, 1, -1, -1, -1, 1], dtype=float)
_PAIRS = ((4, 1, 2), (5, 1, 3), (6, 2, 3))


def kappa_gradient(ns: PhotonNumberSet) -> np.ndarray:
    """Gradient of kappa with respect to the eight canonical photon numbers."""
    values = ns.as_tuple()
    eps = third_order_interference(ns)
    delta = second_order_interference(ns)
    d_delta = np.zeros(8)
    for pair, i, j in _PAIRS:
        sign = math.copysign(1.0, values[pair] - values[i] - values[j])
        d_delta[pair] += sign
        d_delta[i] -= sign
        d_delta[j] -= sign
    return (_SIGNS * delta - eps * d_delta) / delta**2


def kappa_standard_deviation(bank: SourceBank, N: int, method: str, noise: float = 1.0) -> float:
    """First-order standard deviation of one run's kappa.

    Each configuration (background included) is sampled ``N`` times on the p
    quadrature with an ideal detector; every estimate shares the same
    background trace, which is what correlates them.
    """
    ns = config_photon_numbers(bank)
    grad_n = kappa_gradient(ns)
    grad_n[0] = 0.0
    means = np.array([2.0 * a.b for a in output_amplitudes(bank)])

    if method == PHOTON_CORRECT:
        var = np.array([squared_gaussian_variance(m, noise) for m in means]) / 16.0 / N
        grad = grad_n.copy()
        grad[0] = -grad_n.sum()
    elif method == MEAN_CORRECT:
        var = np.full(8, noise**2 / N)
        u = (means - means[0]) / 2.0
        grad = grad_n * u
        grad[0] = -grad.sum()
    else:
        raise ValueError(f"unknown correction method {method!r}")
    return float(math.sqrt(np.sum(grad**2 * var)))
