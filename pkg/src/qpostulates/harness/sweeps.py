"""Noise-free detector-imperfection sweep and the splitting-fraction sweep."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..homodyne import HomodyneModel, miscalibrated_photon_number
from ..interferometer import SourceBank, output_amplitudes
from ..postulate_tests import PhotonNumberSet, sorkin_statistics
from ..quaternion import qnorm
from ..variance_analysis import DELTA_FORM, SplittingSweep, optimal_splitting_sweep
from .config import ExperimentConfig

SWEEP_PARAMETERS = ("t", "g1")


@dataclass(frozen=True)
class ImperfectionPoint:
    parameter: str
    value: float
    beta_ratio: float
    kappa: float


def _scaled_bank(bank: SourceBank, magnitude: float) -> SourceBank:
    return SourceBank(*(a * (magnitude / qnorm(a)) for a in bank.as_tuple()))


def apparent_kappa(bank: SourceBank, model: HomodyneModel) -> float:
    """Kappa an analyst would report from noise-free currents of an imperfect detector."""
    ns = [miscalibrated_photon_number(a, model) for a in output_amplitudes(bank)]
    return sorkin_statistics(PhotonNumberSet(*ns, n_T=bank.total_photons)).kappa


def imperfection_sweep(
    base: ExperimentConfig,
    parameter: str,
    grid,
    beta_ratios=(1e3, 1e4),
    alpha: float = 0.1,
) -> list[ImperfectionPoint]:
    """Apparent kappa over a grid of splitter transmissivity ``t`` or gain ``g1``.

    Every source is rescaled to magnitude ``alpha`` and the local oscillator
    is set to ``ratio * alpha``. Parameters not being swept come from ``base``.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ValueError(f"parameter must be one of {SWEEP_PARAMETERS}, got {parameter!r}")
    bank = _scaled_bank(base.bank(), alpha)
    points = []
    for ratio in beta_ratios:
        for value in grid:
            value = float(value)
            t, g1, g2 = base.transmissivity, base.gain_1, base.gain_2
            if parameter == "t":
                t, g1 = value, g2
            else:
                g1 = value
            model = HomodyneModel(ratio * alpha, base.lo_phase, t, g1, g2)
            points.append(ImperfectionPoint(parameter, value, float(ratio), apparent_kappa(bank, model)))
    return points


def squeezing_sweep(n_T: float, P: float, f_grid, N: int, alpha_form: str = DELTA_FORM) -> SplittingSweep:
    return optimal_splitting_sweep(n_T, P, f_grid, N, alpha_form=alpha_form)


def squeezing_sweep_table(sweep: SplittingSweep) -> dict:
    return {
        "alpha_form": sweep.alpha_form,
        "f_opt": sweep.f_opt,
        "mse_opt": sweep.mse_opt,
        "mse_coherent": float(sweep.mse[-1]) if sweep.f[-1] == 1.0 else None,
        "rows": [
            {"f": float(f), "mse": _finite(m), "v_alpha": _finite(a), "v_r": _finite(r), "weight": float(w)}
            for f, m, a, r, w in zip(sweep.f, sweep.mse, sweep.v_alpha, sweep.v_r, sweep.weight)
        ],
    }


def _finite(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None
