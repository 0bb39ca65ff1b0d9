"""Exact-algebra self checks that need no Monte Carlo."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from ..homodyne import HomodyneModel, general_subtracted_current, ideal_subtracted_current
from ..interferometer import PhaseShifts, SourceBank, apply_phase_shifts, config_photon_numbers
from ..postulate_tests import PhotonNumberSet, peres_cosines, peres_F, sorkin_statistics, third_order_interference
from ..quaternion import ONE, I, J, K, Quaternion, qexp, qmul, qnorm
from ..variance_analysis import (
    SINGLE_PATH,
    TWO_PATH,
    binomial_probability_variance,
    coherent_probability_variance,
    optimal_splitting_sweep,
)
from .config import ExperimentConfig
from .sweeps import imperfection_sweep


def _random_quaternion(rng: random.Random) -> Quaternion:
    return Quaternion(*(rng.uniform(-2, 2) for _ in range(4)))


def check_born_closure(rng: random.Random) -> str:
    worst = 0.0
    for _ in range(1000):
        bank = SourceBank(*(Quaternion.from_complex(complex(rng.gauss(0, 1), rng.gauss(0, 1))) for _ in range(3)))
        ns = config_photon_numbers(bank)
        worst = max(worst, abs(third_order_interference(ns)) / ns.n_T)
    assert worst <= 1e-12, worst
    canonical = PhotonNumberSet.from_sequence(
        [Fraction(1, 9)] * 3 + [Fraction(4, 9)] * 3 + [Fraction(1)], n_T=Fraction(1)
    )
    assert sorkin_statistics(canonical).kappa == 0
    return f"max |eps|/n_T = {worst:.1e}; canonical kappa = 0"


def check_peres_closure(rng: random.Random) -> str:
    worst = 0.0
    for _ in range(1000):
        a, b = rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi, math.pi)
        phases = (a, b, -a - b)
        bank = apply_phase_shifts(SourceBank.canonical(), PhaseShifts.complex(*phases))
        worst = max(worst, abs(peres_F(*peres_cosines(config_photon_numbers(bank))) - 1.0))
    assert worst <= 1e-10, worst
    bank = apply_phase_shifts(
        SourceBank.uniform(ONE), PhaseShifts(I * (math.pi / 2), J * (math.pi / 2), K * (math.pi / 2))
    )
    cosines = peres_cosines(config_photon_numbers(bank))
    assert all(abs(c) <= 1e-15 for c in cosines), cosines
    quaternion_F = peres_F(*cosines)
    assert abs(quaternion_F) <= 1e-15, quaternion_F
    return f"max |F - 1| = {worst:.1e}; quaternion bank F = {quaternion_F:.1e}"


def check_variance_closed_forms(rng: random.Random) -> str:
    c1, c2 = coherent_probability_variance(SINGLE_PATH, 1), coherent_probability_variance(TWO_PATH, 1)
    b1, b2 = binomial_probability_variance(1 / 9, 1), binomial_probability_variance(4 / 9, 1)
    for got, want in ((c1, 17 / 72), (c2, 41 / 72), (b1, 8 / 81), (b2, 20 / 81), (c1 / b1, 153 / 64), (c2 / b2, 369 / 160)):
        assert abs(got - want) <= 1e-12 * want, (got, want)
    return "17/72, 41/72, 8/81, 20/81, 153/64, 369/160"


def check_homodyne_reduction(rng: random.Random) -> str:
    worst = 0.0
    for _ in range(1000):
        alpha = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        phi, beta = rng.uniform(0, 2 * math.pi), rng.uniform(1, 1e3)
        gain = rng.uniform(0.5, 2)
        model = HomodyneModel(beta, phi, math.sqrt(0.5), gain, gain)
        ideal = gain * ideal_subtracted_current(alpha, phi, beta)
        scale = max(abs(ideal), gain * beta * abs(alpha), 1e-300)
        worst = max(worst, abs(general_subtracted_current(alpha, model) - ideal) / scale)
    assert worst <= 1e-10, worst
    return f"max relative deviation {worst:.1e}"


def check_imperfection_sweep(rng: random.Random) -> str:
    base = ExperimentConfig()
    ideal = imperfection_sweep(base, "t", [math.sqrt(0.5)])
    assert all(abs(p.kappa) <= 1e-12 for p in ideal), ideal
    grid = [0.68 + 0.001 * k for k in range(51)]
    points = imperfection_sweep(base, "t", grid)
    curves = {}
    for p in points:
        curves.setdefault(p.beta_ratio, []).append(p.kappa)
    low, high = curves[1e3], curves[1e4]
    assert all(k != 0 for k in low + high)
    assert all(abs(a - b) > 0 for a, b in zip(low, high))
    return f"kappa(t=0.68) = {low[0]:.3e} / {high[0]:.3e}"


def check_squeezing_sweep(rng: random.Random) -> str:
    grid = [k / 100 for k in range(101)]
    sweep = optimal_splitting_sweep(1.0, 4 / 9, grid, 1000)
    assert 0 < sweep.f_opt < 1 and sweep.mse_opt < sweep.mse[-1]
    return f"f* = {sweep.f_opt:.2f}, MSE(f*)/MSE(1) = {sweep.mse_opt / sweep.mse[-1]:.3f}"


def check_quaternion_algebra(rng: random.Random) -> str:
    minus_one = Quaternion(-1.0, 0.0, 0.0, 0.0)
    assert qmul(I, I) == qmul(J, J) == qmul(K, K) == qmul(qmul(I, J), K) == minus_one
    worst = 0.0
    for _ in range(10_000):
        p, q = _random_quaternion(rng), _random_quaternion(rng)
        expected = qnorm(p) * qnorm(q)
        worst = max(worst, abs(qnorm(qmul(p, q)) - expected) / expected)
    assert worst <= 1e-12, worst
    for unit in (I, J, K):
        got = qexp(unit * (math.pi / 2))
        assert qnorm(got - unit) <= 1e-15, got
    return f"max relative norm error {worst:.1e}"


CHECKS = (
    ("born-closure", check_born_closure),
    ("peres-closure", check_peres_closure),
    ("variance-closed-forms", check_variance_closed_forms),
    ("homodyne-reduction", check_homodyne_reduction),
    ("imperfection-sweep", check_imperfection_sweep),
    ("squeezing-sweep", check_squeezing_sweep),
    ("quaternion-algebra", check_quaternion_algebra),
)


def run_selftest(seed: int = 0) -> list[tuple[str, bool, str]]:
    results = []
    for name, check in CHECKS:
        rng = random.Random(seed)
        try:
            results.append((name, True, check(rng)))
        except AssertionError as exc:
            results.append((name, False, f"failed: {exc}"))
    return results
