"""Monte Carlo oracles for the closed-form estimator variances.

These draw directly from the defining distributions (Gaussian homodyne
outcomes, Bernoulli clicks) and never call the analytic formulas they check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..gaussian_states import SplittingBudget, displaced_squeezed_moments
from ..variance_analysis import (
    COMPARISON_AMPLITUDE,
    DELTA_FORM,
    SINGLE_PATH,
    TWO_PATH,
    binomial_probability_variance,
    coherent_probability_variance,
    squeezed_estimators,
)


@dataclass(frozen=True)
class OracleRow:
    name: str
    closed_form: float
    empirical: float
    tolerance: float

    @property
    def relative_error(self) -> float:
        return abs(self.empirical - self.closed_form) / abs(self.closed_form)

    @property
    def passed(self) -> bool:
        return self.relative_error <= self.tolerance


def per_sample_photon_variance(mean: float, n_samples: int, rng: np.random.Generator) -> float:
    """Empirical variance of ``(x/2)**2`` for ``x ~ Normal(mean, 1)``."""
    x = rng.normal(mean, 1.0, size=n_samples)
    return float(np.var((x / 2.0) ** 2, ddof=1))


def click_estimator_variance(P: float, n_trials: int, rng: np.random.Generator) -> float:
    """Variance of ``clicks / n_trials`` inferred from one simulated click record."""
    clicks = rng.random(n_trials) < P
    return float(np.var(clicks, ddof=1)) / n_trials


def variance_oracle_table(n_samples: int = 1_000_000, seed: int = 0) -> list[OracleRow]:
    """Closed form vs empirical per-configuration variances of the probe comparison.

    Coherent rows report the per-sample variance (N = 1); click rows report
    the estimator variance for ``n_samples`` trials, rescaled to N = 1.
    """
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(4)]
    rows = []
    for (config, n_open), rng in zip(((SINGLE_PATH, 1), (TWO_PATH, 2)), streams[:2]):
        alpha_out = n_open * COMPARISON_AMPLITUDE / math.sqrt(3.0)
        rows.append(
            OracleRow(
                f"coherent {config}",
                coherent_probability_variance(config, 1),
                per_sample_photon_variance(2.0 * alpha_out, n_samples, rng),
                0.02,
            )
        )
    for (label, P), rng in zip((("single-path", 1 / 9), ("two-path", 4 / 9)), streams[2:]):
        rows.append(
            OracleRow(
                f"single-photon {label}",
                binomial_probability_variance(P, 1),
                click_estimator_variance(P, n_samples, rng) * n_samples,
                0.03,
            )
        )
    return rows


@dataclass(frozen=True)
class SqueezedMonteCarlo:
    f: float
    mse_alpha: float
    mse_r: float
    mse_combined: float
    v_combined: float


def squeezed_monte_carlo(
    n_T: float,
    P: float,
    f: float,
    N: int,
    repetitions: int,
    rng: np.random.Generator,
    *,
    alpha_form: str = DELTA_FORM,
) -> SqueezedMonteCarlo:
    """Empirical MSE (times N) of each estimator over repeated N-sample experiments."""
    budget = SplittingBudget(n_T, f)
    moments = displaced_squeezed_moments(budget, P)
    analytic = squeezed_estimators(moments, budget, N, alpha_form=alpha_form)

    samples = rng.normal(moments.p_mean, math.sqrt(moments.p_variance), size=(repetitions, N))
    mean = samples.mean(axis=1)
    var = samples.var(axis=1, ddof=1)

    def mse(estimates):
        return float(np.mean((estimates - P) ** 2)) * N

    mse_alpha = mse_r = math.nan
    p_alpha = p_r = None
    if budget.alpha_in > 0:
        p_alpha = mean**2 / (4.0 * budget.alpha_in**2)
        mse_alpha = mse(p_alpha)
    squeeze = 1.0 - math.exp(-2.0 * budget.r_in)
    if squeeze > 0:
        p_r = (1.0 - var) / squeeze
        mse_r = mse(p_r)

    w = analytic.weight
    if w == 1.0:
        fused = p_alpha
    elif w == 0.0:
        fused = p_r
    else:
        fused = w * p_alpha + (1.0 - w) * p_r
    return SqueezedMonteCarlo(f, mse_alpha, mse_r, mse(fused), analytic.v_combined * N)


def squeezed_monte_carlo_sweep(
    n_T: float, P: float, f_grid, N: int = 100, repetitions: int = 4000, seed: int = 0
) -> list[SqueezedMonteCarlo]:
    """One independent stream per grid point, derived from ``seed`` in grid order."""
    children = np.random.SeedSequence(seed).spawn(len(f_grid))
    return [
        squeezed_monte_carlo(n_T, P, float(f), N, repetitions, np.random.default_rng(child))
        for f, child in zip(f_grid, children)
    ]
