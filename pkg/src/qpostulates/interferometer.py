"""The open three-arm interferometer with switchable coherent sources.

The two-beamsplitter cascade is represented by its closed form: the output
amplitude is ``(c_A alpha_A + c_B alpha_B + c_C alpha_C) / sqrt(3)``. Only
addition and real scaling are involved, so the same expression serves
quaternionic amplitudes without any ordering ambiguity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonUnitaryPhase
from .postulate_tests import PATTERNS, PhotonNumberSet
from .quaternion import Quaternion, qexp, qmul, qnorm

_INV_SQRT3 = 1.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class SourceBank:
    alpha_A: Quaternion
    alpha_B: Quaternion
    alpha_C: Quaternion

    def __post_init__(self):
        for name in ("alpha_A", "alpha_B", "alpha_C"):
            object.__setattr__(self, name, Quaternion.coerce(getattr(self, name)))

    @classmethod
    def uniform(cls, alpha) -> SourceBank:
        alpha = Quaternion.coerce(alpha)
        return cls(alpha, alpha, alpha)

    @classmethod
    def canonical(cls) -> SourceBank:
        """``alpha = i/sqrt(3)`` on every arm, giving one input photon in total."""
        return cls.uniform(Quaternion(0.0, _INV_SQRT3, 0.0, 0.0))

    def as_tuple(self) -> tuple[Quaternion, Quaternion, Quaternion]:
        return (self.alpha_A, self.alpha_B, self.alpha_C)

    @property
    def total_photons(self) -> float:
        return sum(qnorm(a) ** 2 for a in self.as_tuple())

    @property
    def is_complex(self) -> bool:
        return all(a.is_complex for a in self.as_tuple())


@dataclass(frozen=True)
class SwitchPattern:
    c_A: int
    c_B: int
    c_C: int

    def __post_init__(self):
        for flag in (self.c_A, self.c_B, self.c_C):
            if flag not in (0, 1):
                raise ValueError(f"switch flags must be 0 or 1, got {flag!r}")

    @classmethod
    def all(cls) -> tuple[SwitchPattern, ...]:
        """The eight patterns in canonical order."""
        return tuple(cls(*p) for p in PATTERNS)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c_A, self.c_B, self.c_C)


@dataclass(frozen=True)
class PhaseShifts:
    phi_A: Quaternion
    phi_B: Quaternion
    phi_C: Quaternion

    def __post_init__(self):
        for name in ("phi_A", "phi_B", "phi_C"):
            phi = Quaternion.coerce(getattr(self, name))
            if phi.a != 0:
                raise NonUnitaryPhase(f"{name} has scalar part {phi.a!r}; phase shifts must be pure imaginary")
            object.__setattr__(self, name, phi)

    @classmethod
    def complex(cls, phi_A: float, phi_B: float, phi_C: float) -> PhaseShifts:
        """Ordinary phases about the ``i`` axis."""
        return cls(Quaternion(0, phi_A, 0, 0), Quaternion(0, phi_B, 0, 0), Quaternion(0, phi_C, 0, 0))

    def as_tuple(self) -> tuple[Quaternion, Quaternion, Quaternion]:
        return (self.phi_A, self.phi_B, self.phi_C)


def apply_phase_shifts(bank: SourceBank, phases: PhaseShifts) -> SourceBank:
    """Left-multiply each amplitude by ``exp(phi)``."""
    return SourceBank(*(qmul(qexp(phi), alpha) for phi, alpha in zip(phases.as_tuple(), bank.as_tuple())))


def output_amplitude(bank: SourceBank, sw: SwitchPattern) -> Quaternion:
    total = Quaternion()
    for flag, alpha in zip(sw.as_tuple(), bank.as_tuple()):
        if flag:
            total = total + alpha
    return total * _INV_SQRT3


def output_amplitudes(bank: SourceBank) -> tuple[Quaternion, ...]:
    """Output amplitude for each of the eight patterns, canonical order."""
    return tuple(output_amplitude(bank, sw) for sw in SwitchPattern.all())


def config_photon_numbers(bank: SourceBank) -> PhotonNumberSet:
    ns = [qnorm(a) ** 2 for a in output_amplitudes(bank)]
    return PhotonNumberSet(*ns, n_T=bank.total_photons)
