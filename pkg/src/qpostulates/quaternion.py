"""Scalar quaternion arithmetic.

A :class:`Quaternion` ``a + ib + jc + kd`` doubles as a complex amplitude when
``c == d == 0``; every operation here then agrees with ordinary complex
arithmetic, so the same code path serves standard and hypercomplex sources.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

_SMALL_VECTOR = 1e-8


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Quaternion ``a + ib + jc + kd`` with real components."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> Quaternion:
        z = complex(z)
        return cls(z.real, z.imag, 0.0, 0.0)

    @classmethod
    def coerce(cls, value) -> Quaternion:
        """Accept a Quaternion, a real or a complex number."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, Real):
            return cls(value, 0, 0, 0)
        if isinstance(value, complex):
            return cls.from_complex(value)
        raise TypeError(f"cannot interpret {value!r} as a quaternion")

    @property
    def is_complex(self) -> bool:
        return self.c == 0 and self.d == 0

    @property
    def scalar(self) -> float:
        return self.a

    @property
    def vector(self) -> Quaternion:
        """The pure-imaginary part ``ib + jc + kd``."""
        return Quaternion(0.0, self.b, self.c, self.d)

    def to_complex(self) -> complex:
        if not self.is_complex:
            raise ValueError(f"{self!r} has j/k components")
        return complex(self.a, self.b)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return qmul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self * other
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return qmul(other, self)

    def __truediv__(self, other):
        if not isinstance(other, Real):
            return NotImplemented
        return Quaternion(self.a / other, self.b / other, self.c / other, self.d / other)

    def __abs__(self) -> float:
        return qnorm(self)


def _maybe(value) -> Quaternion | None:
    try:
        return Quaternion.coerce(value)
    except TypeError:
        return None


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q`` (order matters)."""
    return Quaternion(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )


def qconj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a, -q.b, -q.c, -q.d)


def qnorm(q: Quaternion) -> float:
    return math.hypot(q.a, q.b, q.c, q.d)


def qexp(q: Quaternion) -> Quaternion:
    """Quaternion exponential ``e^a (cos|v| + v/|v| sin|v|)``.

    Below ``|v| = 1e-8`` the factor ``sin|v|/|v|`` is replaced by its series,
    so pure scalars and near-scalars are continuous with the general case.
    """
    v = q.vector
    nv = qnorm(v)
    scale = math.exp(q.a)
    if nv < _SMALL_VECTOR:
        sinc = 1.0 - nv * nv / 6.0
    else:
        sinc = math.sin(nv) / nv
    return Quaternion(scale * math.cos(nv), scale * sinc * v.b, scale * sinc * v.c, scale * sinc * v.d)
