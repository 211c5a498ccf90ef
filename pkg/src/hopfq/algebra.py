"""Quaternion and octonion arithmetic.

Quaternions are ``x0 + x1 i + x2 j + x3 k``; equivalently a pair of complex
numbers ``c1 + c2 j`` with ``c1 = x0 + x1 i`` and ``c2 = x2 + x3 i``.

Octonions are ``sum(u_l e_l)`` with ``e1, e2, e3 = i, j, k``, ``e4 = e`` and
``e5, e6, e7 = ie, je, ke``; equivalently a pair of quaternions ``a' + a'' e``.
Products follow the fixed table in :data:`OCTONION_TABLE`.

Python's built-in ``complex`` plays the role of the complex field throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ZeroDivisorError

__all__ = [
    "Quaternion",
    "Octonion",
    "OCTONION_TABLE",
    "OCTONION_TABLE_TEXT",
    "parse_octonion_table",
    "structure_constants",
    "quat_mul",
    "quat_mul_pairs",
    "quat_inv",
    "quat_exp_decompose",
    "oct_mul",
    "oct_mul_pairs",
    "oct_inv",
]


@dataclass(frozen=True)
class Quaternion:
    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def from_complex_pair(cls, c1: complex, c2: complex) -> Quaternion:
        """Build ``c1 + c2 j``."""
        c1, c2 = complex(c1), complex(c2)
        return cls(c1.real, c1.imag, c2.real, c2.imag)

    @classmethod
    def from_array(cls, values: Sequence[float]) -> Quaternion:
        x0, x1, x2, x3 = (float(v) for v in values)
        return cls(x0, x1, x2, x3)

    def complex_pair(self) -> tuple[complex, complex]:
        return complex(self.x0, self.x1), complex(self.x2, self.x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3])

    @property
    def scalar(self) -> float:
        return self.x0

    @property
    def vector(self) -> Quaternion:
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def conj(self) -> Quaternion:
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm2(self) -> float:
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.x0 - other.x0, self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 * other, self.x1 * other, self.x2 * other, self.x3 * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        return NotImplemented


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    a0, a1, a2, a3 = p.x0, p.x1, p.x2, p.x3
    b0, b1, b2, b3 = q.x0, q.x1, q.x2, q.x3
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def quat_mul_pairs(p: Quaternion, q: Quaternion) -> Quaternion:
    """Product through the complex-pair rule ``(c1 d1 - c2 conj(d2), c1 d2 + c2 conj(d1))``."""
    c1, c2 = p.complex_pair()
    d1, d2 = q.complex_pair()
    return Quaternion.from_complex_pair(
        c1 * d1 - c2 * d2.conjugate(),
        c1 * d2 + c2 * d1.conjugate(),
    )


def quat_inv(q: Quaternion) -> Quaternion:
    n = q.norm()
    if n == 0.0:
        raise ZeroDivisorError("quaternion inverse of zero")
    # divide twice by the norm so tiny operands do not underflow norm**2
    return q.conj() / n / n


def quat_exp_decompose(q: Quaternion) -> tuple[float, float, Quaternion]:
    """Split ``q`` as ``|q| (cos(phi) + sin(phi) t)``.

    Returns ``(|q|, phi, t)`` with ``phi`` in ``[0, pi]`` and ``t`` a unit pure
    imaginary quaternion. Real inputs have no preferred axis; ``t = i`` is
    returned for them so complex numbers stay a special case.
    """
    n = q.norm()
    if n == 0.0:
        raise ZeroDivisorError("exponential form of zero is undefined")
    v = math.sqrt(q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3)
    phi = math.atan2(v, q.x0)
    if v == 0.0:
        return n, phi, Quaternion(0.0, 1.0, 0.0, 0.0)
    return n, phi, Quaternion(0.0, q.x1 / v, q.x2 / v, q.x3 / v)


# Rows are the left factor e_i, columns the right factor e_j.
OCTONION_TABLE_TEXT = """
 e0  e1  e2  e3  e4  e5  e6  e7
 e1 -e0  e3 -e2  e5 -e4 -e7  e6
 e2 -e3 -e0  e1  e6  e7 -e4 -e5
 e3  e2 -e1 -e0  e7 -e6  e5 -e4
 e4 -e5 -e6 -e7 -e0  e1  e2  e3
 e5  e4 -e7  e6 -e1 -e0 -e3  e2
 e6  e7  e4 -e5 -e2  e3 -e0 -e1
 e7 -e6  e5  e4 -e3 -e2  e1 -e0
"""


def parse_octonion_table(text: str) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Parse an 8x8 table of ``[-]e<l>`` entries into ``(sign, index)`` pairs."""
    rows = []
    for line in text.strip().splitlines():
        entries = line.split()
        if len(entries) != 8:
            raise ValueError(f"octonion table row needs 8 entries: {line!r}")
        row = []
        for entry in entries:
            sign = -1 if entry.startswith("-") else 1
            row.append((sign, int(entry.lstrip("+-")[1:])))
        rows.append(tuple(row))
    if len(rows) != 8:
        raise ValueError("octonion table needs 8 rows")
    return tuple(rows)


OCTONION_TABLE = parse_octonion_table(OCTONION_TABLE_TEXT)


def structure_constants(table=OCTONION_TABLE) -> np.ndarray:
    """Tensor ``M`` with ``e_i e_j = sum_k M[i, j, k] e_k``."""
    m = np.zeros((8, 8, 8))
    for i, row in enumerate(table):
        for j, (sign, k) in enumerate(row):
            m[i, j, k] = sign
    return m


_STRUCTURE = structure_constants()
_STRUCTURE.setflags(write=False)


@dataclass(frozen=True)
class Octonion:
    """Octonion with coefficients ``(u0, ..., u7)`` on ``e0..e7``."""

    coeffs: tuple[float, ...] = (0.0,) * 8

    def __post_init__(self):
        values = tuple(float(c) for c in self.coeffs)
        if len(values) != 8:
            raise ValueError("an octonion has exactly 8 coefficients")
        object.__setattr__(self, "coeffs", values)

    @classmethod
    def basis(cls, index: int) -> Octonion:
        values = [0.0] * 8
        values[index] = 1.0
        return cls(tuple(values))

    @classmethod
    def real(cls, value: float) -> Octonion:
        return cls((value,) + (0.0,) * 7)

    @classmethod
    def from_quaternion_pair(cls, first: Quaternion, second: Quaternion) -> Octonion:
        """Build ``first + second e``."""
        return cls((first.x0, first.x1, first.x2, first.x3, second.x0, second.x1, second.x2, second.x3))

    def quaternion_pair(self) -> tuple[Quaternion, Quaternion]:
        u = self.coeffs
        return Quaternion(*u[:4]), Quaternion(*u[4:])

    def __getitem__(self, index: int) -> float:
        return self.coeffs[index]

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs)

    @property
    def scalar(self) -> float:
        return self.coeffs[0]

    def conj(self) -> Octonion:
        u = self.coeffs
        return Octonion((u[0],) + tuple(-c for c in u[1:]))

    def norm2(self) -> float:
        return math.fsum(c * c for c in self.coeffs)

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def __add__(self, other: Octonion) -> Octonion:
        return Octonion(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Octonion) -> Octonion:
        return Octonion(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Octonion:
        return Octonion(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        if isinstance(other, (int, float)):
            return Octonion(tuple(a * other for a in self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        return NotImplemented


def oct_mul(a: Octonion, b: Octonion, table=None) -> Octonion:
    """Table-driven octonion product ``a b``.

    ``table`` replaces :data:`OCTONION_TABLE`; it exists so self-checks can be
    run against a deliberately corrupted table.
    """
    m = _STRUCTURE if table is None else structure_constants(table)
    out = np.einsum("i,j,ijk->k", np.array(a.coeffs), np.array(b.coeffs), m)
    return Octonion(tuple(out.tolist()))


def oct_mul_pairs(a: Octonion, b: Octonion) -> Octonion:
    """Product through the quaternion-pair rule
    ``(a' b' - conj(b'') a'') + (b'' a' + a'' conj(b')) e``."""
    a1, a2 = a.quaternion_pair()
    b1, b2 = b.quaternion_pair()
    return Octonion.from_quaternion_pair(
        quat_mul(a1, b1) - quat_mul(b2.conj(), a2),
        quat_mul(b2, a1) + quat_mul(a2, b1.conj()),
    )


def oct_inv(a: Octonion) -> Octonion:
    n = a.norm()
    if n == 0.0:
        raise ZeroDivisorError("octonion inverse of zero")
    return a.conj() / n / n
