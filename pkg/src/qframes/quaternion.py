"""Quaternion scalars and the array kernels the linear algebra is built on.

Component order is always ``(w, x, y, z)`` for ``w + x i + y j + z k``, both
for :class:`Quaternion` and for float arrays whose trailing axis has length 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DivisionByZero, NonFiniteError

DEFAULT_ATOL = 1e-12
DEFAULT_RTOL = 1e-12

# |q| below this is treated as zero when inverting
_INV_FLOOR = 1e-300


@dataclass(frozen=True)
class Quaternion:
    """Immutable quaternion ``w + x i + y j + z k``."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        vals = (float(self.w), float(self.x), float(self.y), float(self.z))
        if not all(map(math.isfinite, vals)):
            bad = next(n for n, v in zip("wxyz", vals) if not math.isfinite(v))
            raise NonFiniteError(f"quaternion component {bad} is not finite")
        setter = object.__setattr__
        setter(self, "w", vals[0])
        setter(self, "x", vals[1])
        setter(self, "y", vals[2])
        setter(self, "z", vals[3])

    @classmethod
    def from_array(cls, a: Iterable[float]) -> "Quaternion":
        w, x, y, z = (float(v) for v in a)
        return cls(w, x, y, z)

    @classmethod
    def real(cls, r: float) -> "Quaternion":
        return cls(r, 0.0, 0.0, 0.0)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Quaternion.real(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return qadd(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = Quaternion.real(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return qadd(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return qmul(self, other)

    def __rmul__(self, other):
        # real scalars commute with everything
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __abs__(self):
        return qnorm(self)

    def conj(self) -> "Quaternion":
        return qconj(self)

    def inv(self) -> "Quaternion":
        return qinv(self)

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
ZERO = Quaternion()


def qadd(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion(a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a b`` (not commutative)."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def qconj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def qnorm(q: Quaternion) -> float:
    return math.hypot(q.w, q.x, q.y, q.z)


def qinv(q: Quaternion) -> Quaternion:
    n = qnorm(q)
    if n < _INV_FLOOR:
        raise DivisionByZero("cannot invert a zero quaternion")
    # divide by n twice instead of n**2 so tiny but valid inputs do not underflow
    c = qconj(q)
    return Quaternion(c.w / n / n, c.x / n / n, c.y / n / n, c.z / n / n)


def approx_equal(a: Quaternion, b: Quaternion, atol: float = DEFAULT_ATOL,
                 rtol: float = DEFAULT_RTOL) -> bool:
    """Componentwise ``|a - b| <= atol + rtol * |b|``."""
    return all(abs(p - q) <= atol + rtol * abs(q) for p, q in zip(a, b))


# ---------------------------------------------------------------------------
# array kernels: quaternions stored along a trailing axis of length 4


def hamilton(a, b) -> np.ndarray:
    """Broadcasting Hamilton product of ``(..., 4)`` arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


_CONJ_SIGN = np.array([1.0, -1.0, -1.0, -1.0])


def conj_array(a) -> np.ndarray:
    return np.asarray(a, dtype=float) * _CONJ_SIGN


def modulus(a) -> np.ndarray:
    """Quaternion modulus along the trailing axis."""
    return np.sqrt(np.sum(np.square(np.asarray(a, dtype=float)), axis=-1))


def as_array(q) -> np.ndarray:
    """Accept a Quaternion, a real number, or a 4-sequence; return shape ``(4,)``."""
    if isinstance(q, Quaternion):
        return q.to_array()
    if isinstance(q, (int, float, np.floating, np.integer)):
        return np.array([float(q), 0.0, 0.0, 0.0])
    a = np.asarray(q, dtype=float)
    if a.shape != (4,):
        raise ValueError(f"expected 4 quaternion components, got shape {a.shape}")
    return a
