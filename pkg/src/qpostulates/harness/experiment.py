"""One simulated run of the eight-configuration measurement, and campaigns of runs.

Random streams: every run derives its own :class:`numpy.random.SeedSequence`
from ``(seed, run_index)``; child 0 drives run-level events (lock loss, offset,
drift) and children 1..8 drive the homodyne trace of each configuration in
canonical order. Runs are therefore independent of execution order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DegenerateNormalization, ZeroDenominator, ZeroPathPower
from ..homodyne import estimate_mean_photon, sample_homodyne
from ..interferometer import output_amplitudes
from ..postulate_tests import (
    GlauberResult,
    PeresResult,
    PhotonNumberSet,
    SorkinResult,
    glauber_statistics,
    peres_statistics,
    sorkin_statistics,
)
from .config import ExperimentConfig


@dataclass(frozen=True)
class RunRecord:
    run_index: int
    means: tuple[float, ...]
    photon_numbers: tuple[float, ...] | None
    sorkin: SorkinResult | None
    peres: PeresResult | None
    glauber: GlauberResult | None
    lock_lost: bool = False
    reasons: tuple[str, ...] = ()

    @property
    def failed(self) -> bool:
        return self.lock_lost or bool(self.reasons)

    def statistic(self, name: str) -> float | None:
        """Look up a scalar statistic (``kappa``, ``F``, ``G_AB``...) or ``None`` if absent."""
        for result in (self.sorkin, self.peres, self.glauber):
            if result is not None and hasattr(result, name):
                return getattr(result, name)
        return None


def _run_streams(cfg: ExperimentConfig, run_index: int) -> list[np.random.Generator]:
    if cfg.seed is None:
        raise ConfigError("a seed is required to run experiments")
    root = np.random.SeedSequence(cfg.seed, spawn_key=(run_index,))
    return [np.random.default_rng(child) for child in root.spawn(9)]


def _photon_numbers(traces, method: str, n_T: float) -> PhotonNumberSet:
    background = traces[0]
    return PhotonNumberSet(*(estimate_mean_photon(t, background, method) for t in traces), n_T=n_T)


def run_experiment(cfg: ExperimentConfig, run_index: int) -> RunRecord:
    streams = _run_streams(cfg, run_index)
    run_rng = streams[0]

    lock_lost = bool(run_rng.random() < cfg.lock_loss_probability)
    offset = run_rng.normal(0.0, cfg.offset_std)
    drift = np.cumsum(run_rng.normal(0.0, cfg.drift_std, size=8))
    phase_error = run_rng.uniform(-math.pi, math.pi)
    phi = cfg.lo_phase + (phase_error if lock_lost else 0.0)

    bank = cfg.bank()
    model = cfg.homodyne_model()
    noise = 0.0 if cfg.noise_free else 1.0
    traces = [
        sample_homodyne(alpha, phi, cfg.samples_per_config, rng, model=model, noise=noise, offset=offset + d)
        for alpha, rng, d in zip(output_amplitudes(bank), streams[1:], drift)
    ]
    means = tuple(t.mean() for t in traces)
    if lock_lost:
        return RunRecord(run_index, means, None, None, None, None, lock_lost=True, reasons=("lock-loss",))

    n_T = bank.total_photons
    ns = _photon_numbers(traces, cfg.correction, n_T)
    peres_ns = ns if cfg.peres_correction == cfg.correction else _photon_numbers(traces, cfg.peres_correction, n_T)

    reasons = []
    sorkin = peres = glauber = None
    try:
        sorkin = sorkin_statistics(ns)
    except DegenerateNormalization:
        reasons.append("degenerate-normalization")
    try:
        peres = peres_statistics(peres_ns)
    except ZeroPathPower:
        reasons.append("zero-path-power")
    try:
        glauber = glauber_statistics(means)
    except ZeroDenominator:
        reasons.append("zero-denominator")
    return RunRecord(run_index, means, ns.as_tuple(), sorkin, peres, glauber, reasons=tuple(reasons))


def _run_one(args):
    cfg, index = args
    return run_experiment(cfg, index)


def run_campaign(cfg: ExperimentConfig, workers: int = 1) -> list[RunRecord]:
    """All ``cfg.runs`` runs, returned in run-index order whatever ``workers`` is."""
    indices = range(cfg.runs)
    if workers <= 1:
        return [run_experiment(cfg, i) for i in indices]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, ((cfg, i) for i in indices), chunksize=max(1, cfg.runs // (4 * workers))))
