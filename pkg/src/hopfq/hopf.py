"""The S3, S7 and S15 Hopf maps and the stereographic maps around them.

Each Hopf map is the composition of a ratio map ``conj(num * den^-1)`` into
``R^d + {inf}`` and an inverse stereographic projection onto the unit ``S^d``
with the projection pole at ``x0 = +1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .algebra import Octonion, Quaternion, oct_inv, oct_mul, quat_inv, quat_mul
from .entanglement import generalized_concurrences
from .errors import ConsistencyError, ValidationError
from .states import (
    SIGMA_Y,
    Grouping,
    PureState,
    encode_three_qubit,
    encode_two_qubit,
)

BASE_NORM_TOL = 1e-10
CROSS_PATH_TOL = 1e-10

_ALGEBRA_DIM = {complex: 2, Quaternion: 4, Octonion: 8}


@dataclass(frozen=True)
class Infinity:
    """The point at infinity of ``R^dim``."""

    dim: int

    def __repr__(self) -> str:
        return f"Infinity(dim={self.dim})"


ExtendedPoint = Union[complex, Quaternion, Octonion, Infinity]


@dataclass(frozen=True)
class BasePoint:
    dim: int
    coords: tuple[float, ...]

    def __post_init__(self):
        if self.dim not in (2, 4, 8):
            raise ValidationError(f"base spheres are S2, S4 or S8, not S{self.dim}")
        coords = tuple(float(c) for c in self.coords)
        if len(coords) != self.dim + 1:
            raise ValidationError(f"S{self.dim} points need {self.dim + 1} coordinates")
        err = abs(math.fsum(c * c for c in coords) - 1.0)
        if err > BASE_NORM_TOL:
            raise ValidationError(f"base point is off the unit sphere ({err:.3g})")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_coords(cls, coords: Sequence[float], normalize: bool = False) -> BasePoint:
        x = np.asarray(coords, dtype=float)
        if normalize:
            x = x / np.linalg.norm(x)
        return cls(len(x) - 1, tuple(x.tolist()))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)

    def __getitem__(self, index: int) -> float:
        return self.coords[index]

    @property
    def theta(self) -> float:
        """Polar angle ``arccos(x0)`` in ``[0, pi]``."""
        return math.atan2(self.sin_theta, self.coords[0])

    @property
    def sin_theta(self) -> float:
        """``sin(theta)`` read from the equatorial coordinates (stable near poles)."""
        return math.sqrt(math.fsum(c * c for c in self.coords[1:]))


def _components(p) -> np.ndarray:
    if isinstance(p, complex):
        return np.array([p.real, p.imag])
    return p.as_array()


def h1_ratio(numerator, denominator) -> ExtendedPoint:
    """``conj(numerator * denominator^-1)``, or infinity when the denominator vanishes.

    Octonion products are taken in the written order; with non-associative
    operands the order matters.
    """
    if isinstance(numerator, (int, float)):
        numerator = complex(numerator)
    if isinstance(denominator, (int, float)):
        denominator = complex(denominator)
    if type(numerator) is not type(denominator) or type(numerator) not in _ALGEBRA_DIM:
        raise ValidationError("h1_ratio operands must come from the same algebra")
    dim = _ALGEBRA_DIM[type(numerator)]
    if isinstance(numerator, complex):
        if denominator == 0:
            return Infinity(dim)
        return (numerator / denominator).conjugate()
    if denominator.norm() == 0.0:
        return Infinity(dim)
    if isinstance(numerator, Quaternion):
        return quat_mul(numerator, quat_inv(denominator)).conj()
    return oct_mul(numerator, oct_inv(denominator)).conj()


def inverse_stereographic(p: ExtendedPoint) -> BasePoint:
    """Map ``R^d + {inf}`` onto the unit ``S^d``; infinity goes to ``(1, 0, ..., 0)``."""
    if isinstance(p, Infinity):
        return BasePoint(p.dim, (1.0,) + (0.0,) * p.dim)
    if isinstance(p, (int, float)):
        p = complex(p)
    comps = _components(p)
    r = float(np.linalg.norm(comps))
    if r <= 1.0:
        r2 = r * r
        x0 = (r2 - 1.0) / (r2 + 1.0)
        rest = 2.0 * comps / (1.0 + r2)
    else:
        s = 1.0 / r
        x0 = (1.0 - s * s) / (1.0 + s * s)
        rest = 2.0 * (comps * s) * s / (1.0 + s * s)
    return BasePoint(len(comps), (x0,) + tuple(rest.tolist()))


def _require(s: PureState, n: int) -> None:
    if s.n_qubits != n:
        raise ValidationError(f"expected a {n}-qubit state, got {s.n_qubits} qubits")


def hopf_s3(s: PureState) -> BasePoint:
    """One-qubit Hopf map; the image is the Bloch vector ordered ``(Z, X, Y)``."""
    _require(s, 1)
    alpha, beta = s.amplitudes
    return inverse_stereographic(h1_ratio(alpha, beta))


def bloch_coordinates(s: PureState) -> BasePoint:
    """Direct ``(|a|^2 - |b|^2, 2 Re(conj(a) b), 2 Im(conj(a) b))``."""
    _require(s, 1)
    alpha, beta = s.amplitudes
    z = 2 * alpha.conjugate() * beta
    return BasePoint(2, (abs(alpha) ** 2 - abs(beta) ** 2, z.real, z.imag))


def hopf_s7(s: PureState, grouping: Grouping | str = Grouping.STANDARD) -> BasePoint:
    """Two-qubit Hopf map ``(q1, q2) -> S4``.

    With the standard grouping the coordinates are
    ``(|q1|^2 - |q2|^2, 2 Re C1, 2 Im C1, 2 Re C2, 2 Im C2)`` where
    ``C1 = conj(alpha) gamma + conj(beta) delta`` and
    ``C2 = alpha delta - beta gamma``.
    """
    _require(s, 2)
    pair = encode_two_qubit(s, grouping)
    return inverse_stereographic(h1_ratio(pair.q1, pair.q2))


# sigma_y (x) sigma_y
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


def entanglor_expectation(s: PureState) -> complex:
    """``<E>`` for the antilinear entanglor ``E = -J (sigma_y (x) sigma_y)``.

    ``J`` conjugates the bra side of the scalar product, so the result is
    ``-sum_i psi_i (sigma_y sigma_y psi)_i``.
    """
    _require(s, 2)
    psi = s.vector
    flipped = SIGMA_YY @ psi
    # vdot conjugates its first argument; J conjugates it back
    return complex(-np.vdot(np.conj(psi), flipped))


def hopf_s15_octonion(s: PureState) -> BasePoint:
    """Three-qubit Hopf map evaluated through octonion arithmetic."""
    _require(s, 3)
    pair = encode_three_qubit(s)
    return inverse_stereographic(h1_ratio(pair.a, pair.b))


def hopf_s15_formula(s: PureState) -> BasePoint:
    """Three-qubit Hopf map evaluated from the generalized concurrences."""
    _require(s, 3)
    t = s.amplitudes
    g = generalized_concurrences(s)
    x0 = math.fsum(abs(a) ** 2 for a in t[:4]) - math.fsum(abs(a) ** 2 for a in t[4:])
    z12 = 2 * sum(t[l].conjugate() * t[l + 4] for l in range(4))
    z34 = 2 * (g.t05_14 + g.t27_36.conjugate())
    z56 = 2 * (g.t06_24 + g.t35_17.conjugate())
    z78 = 2 * (g.t16_25 + g.t07_34.conjugate())
    coords = [x0]
    for z in (z12, z34, z56, z78):
        coords += [z.real, z.imag]
    return BasePoint(8, tuple(coords))


def hopf_s15(s: PureState, verify: bool = False) -> BasePoint:
    """Three-qubit Hopf map onto S8.

    With ``verify=True`` the generalized-concurrence formula is evaluated as
    well and a :class:`ConsistencyError` is raised if the two disagree.
    """
    point = hopf_s15_octonion(s)
    if verify:
        other = hopf_s15_formula(s)
        gap = float(np.max(np.abs(point.as_array() - other.as_array())))
        if gap > CROSS_PATH_TOL:
            raise ConsistencyError(f"S15 octonion and formula paths differ by {gap:.3g}")
    return point


# -- rendering S3 into R3 ---------------------------------------------------

DEFAULT_POLE = (1.0, 0.0, 0.0, 0.0)


def projection_frame(pole: Sequence[float]) -> np.ndarray:
    """Orthonormal frame ``(j p, k p, i p)`` of the complement of the unit quaternion ``p``.

    The third axis is tangent to the phase orbit through the pole, so the
    fiber through the pole projects onto the vertical axis.
    """
    p = Quaternion.from_array(pole)
    axes = [Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1), Quaternion(0, 1, 0, 0)]
    return np.array([quat_mul(u, p).as_array() for u in axes])


def _unit_pole(pole: Sequence[float]) -> np.ndarray:
    pole = np.asarray(pole, dtype=float)
    if pole.shape != (4,) or abs(np.linalg.norm(pole) - 1.0) > 1e-10:
        raise ValidationError("pole must be a unit vector in R4")
    return pole


def stereo_project_s3(p: Sequence[float], pole: Sequence[float] = DEFAULT_POLE) -> np.ndarray | Infinity:
    """Stereographic projection of ``S3`` from ``pole`` onto ``R3``.

    Returns ``Infinity(3)`` when ``p`` is the pole itself.
    """
    pole = _unit_pole(pole)
    p = np.asarray(p, dtype=float)
    height = float(p @ pole)
    if 1.0 - height <= 0.0:
        return Infinity(3)
    return projection_frame(pole) @ (p - height * pole) / (1.0 - height)


def inverse_stereo_s3(y: Sequence[float], pole: Sequence[float] = DEFAULT_POLE) -> np.ndarray:
    """Inverse of :func:`stereo_project_s3`."""
    pole = _unit_pole(pole)
    y = np.asarray(y, dtype=float)
    r2 = float(y @ y)
    return pole * (r2 - 1.0) / (r2 + 1.0) + projection_frame(pole).T @ y * (2.0 / (r2 + 1.0))
