"""Entanglement functionals and the foliation leaves they define."""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConsistencyError, ValidationError
from .states import PureState

DEFAULT_TOL = 1e-9
CLAMP_SLACK = 1e-8


def default_tol() -> float:
    """Classification tolerance; ``HOPFQ_TOL`` overrides the 1e-9 default."""
    raw = os.environ.get("HOPFQ_TOL")
    if raw is None or raw == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise ValidationError(f"HOPFQ_TOL is not a number: {raw!r}") from exc
    if not tol >= 0:
        raise ValidationError("HOPFQ_TOL must be non-negative")
    return tol


def _clamp_unit(value: float, what: str) -> float:
    if value < -CLAMP_SLACK or value > 1.0 + CLAMP_SLACK:
        raise ConsistencyError(f"{what} = {value!r} lies outside [0, 1]")
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class DensityMatrix2:
    rho00: complex
    rho01: complex
    rho10: complex
    rho11: complex

    def __post_init__(self):
        if abs(self.rho10 - self.rho01.conjugate()) > 1e-12:
            raise ValidationError("density matrix is not Hermitian")
        if abs(self.rho00.imag) > 1e-12 or abs(self.rho11.imag) > 1e-12:
            raise ValidationError("density matrix diagonal is not real")
        if abs(self.trace - 1.0) > 1e-10:
            raise ValidationError(f"density matrix trace is {self.trace!r}")
        if np.linalg.eigvalsh(self.matrix).min() < -1e-10:
            raise ValidationError("density matrix has a negative eigenvalue")

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> DensityMatrix2:
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.rho00, self.rho01], [self.rho10, self.rho11]])

    @property
    def trace(self) -> float:
        return (self.rho00 + self.rho11).real

    @property
    def det(self) -> float:
        return (self.rho00 * self.rho11 - self.rho01 * self.rho10).real

    @property
    def bloch_vector(self) -> tuple[float, float, float]:
        """``(<sigma_x>, <sigma_y>, <sigma_z>)``."""
        return 2 * self.rho10.real, 2 * self.rho10.imag, (self.rho00 - self.rho11).real


class LeafLabel(str, enum.Enum):
    SEPARABLE_S2xS2 = "SEPARABLE_S2xS2"
    INTERMEDIATE_S2xSO3 = "INTERMEDIATE_S2xSO3"
    MES_SO3 = "MES_SO3"


@dataclass(frozen=True)
class LeafDescriptor:
    concurrence: float
    shell_radius: float
    label: LeafLabel


@dataclass(frozen=True)
class BlochRadii:
    r1: float
    r2: float
    r3: float

    @property
    def average(self) -> float:
        return (self.r1 + self.r2 + self.r3) / 3.0

    def as_tuple(self) -> tuple[float, float, float]:
        return self.r1, self.r2, self.r3


class GeneralizedConcurrences(NamedTuple):
    """The six ``T_ij,kl = t_i t_j - t_k t_l`` entering the S8 coordinates."""

    t05_14: complex
    t27_36: complex
    t06_24: complex
    t35_17: complex
    t16_25: complex
    t07_34: complex


def _require(s: PureState, n: int) -> None:
    if s.n_qubits != n:
        raise ValidationError(f"expected a {n}-qubit state, got {s.n_qubits} qubits")


def concurrence(s: PureState) -> float:
    """``c = 2 |alpha delta - beta gamma|``, clamped to ``[0, 1]``."""
    _require(s, 2)
    a, b, c, d = s.amplitudes
    return _clamp_unit(2.0 * abs(a * d - b * c), "concurrence")


def concurrence_batch(vectors: np.ndarray) -> np.ndarray:
    """Concurrences of a ``(count, 4)`` array of normalized amplitude vectors."""
    v = np.asarray(vectors)
    c = 2.0 * np.abs(v[:, 0] * v[:, 3] - v[:, 1] * v[:, 2])
    if c.size and c.max() > 1.0 + CLAMP_SLACK:
        raise ConsistencyError(f"concurrence {c.max()!r} exceeds 1")
    return np.clip(c, 0.0, 1.0)


def reduced_density_matrix(vector: np.ndarray, which: int, n_qubits: int) -> np.ndarray:
    """Reduced ``2x2`` matrix of qubit ``which`` (1-based), tracing out the rest.

    ``vector`` may carry leading batch axes.
    """
    v = np.asarray(vector)
    batch = v.shape[:-1]
    psi = np.moveaxis(v.reshape(batch + (2,) * n_qubits), len(batch) + which - 1, -1)
    psi = psi.reshape(batch + (-1, 2))
    return np.einsum("...ki,...kj->...ij", psi, psi.conj())


def reduced_density(s: PureState, which: int) -> DensityMatrix2:
    """Partial trace of a two-qubit state, keeping qubit ``which``."""
    _require(s, 2)
    if which not in (1, 2):
        raise ValidationError(f"qubit index must be 1 or 2, got {which}")
    return DensityMatrix2.from_matrix(reduced_density_matrix(s.vector, which, 2))


def generalized_concurrences(s: PureState) -> GeneralizedConcurrences:
    _require(s, 3)
    t = s.amplitudes

    def T(i, j, k, l):
        return t[i] * t[j] - t[k] * t[l]

    return GeneralizedConcurrences(
        T(0, 5, 1, 4), T(2, 7, 3, 6), T(0, 6, 2, 4), T(3, 5, 1, 7), T(1, 6, 2, 5), T(0, 7, 3, 4)
    )


def bloch_radii_batch(vectors: np.ndarray) -> np.ndarray:
    """Partial Bloch radii of a ``(count, 8)`` array, shape ``(count, 3)``."""
    v = np.asarray(vectors)
    out = np.empty(v.shape[:-1] + (3,))
    for k in (1, 2, 3):
        rho = reduced_density_matrix(v, k, 3)
        x = 2 * rho[..., 1, 0].real
        y = 2 * rho[..., 1, 0].imag
        z = (rho[..., 0, 0] - rho[..., 1, 1]).real
        out[..., k - 1] = np.sqrt(x * x + y * y + z * z)
    if out.size and out.max() > 1.0 + CLAMP_SLACK:
        raise ConsistencyError(f"partial Bloch radius {out.max()!r} exceeds 1")
    return np.minimum(out, 1.0)


def partial_bloch_radii(s: PureState) -> BlochRadii:
    """Norms of the three one-qubit Bloch vectors of a three-qubit state."""
    _require(s, 3)
    r1, r2, r3 = bloch_radii_batch(s.vector[None, :])[0]
    return BlochRadii(float(r1), float(r2), float(r3))


def leaf_label(c: float, tol: float) -> LeafLabel:
    if c <= tol:
        return LeafLabel.SEPARABLE_S2xS2
    if c >= 1.0 - tol:
        return LeafLabel.MES_SO3
    return LeafLabel.INTERMEDIATE_S2xSO3


def classify_leaf(s: PureState, tol: float | None = None) -> LeafDescriptor:
    """Place a two-qubit state on its equal-concurrence leaf."""
    tol = default_tol() if tol is None else tol
    c = concurrence(s)
    return LeafDescriptor(c, math.sqrt(max(0.0, 1.0 - c * c)), leaf_label(c, tol))


def separability_check(s: PureState, qubit: int, tol: float | None = None) -> bool:
    """Whether ``qubit`` (1-based) factors out of the rest of the state."""
    tol = default_tol() if tol is None else tol
    if s.n_qubits == 2:
        if qubit not in (1, 2):
            raise ValidationError(f"invalid partition: qubit {qubit} of 2")
        a, b, c, d = s.amplitudes
        return abs(a * d - b * c) < tol
    if s.n_qubits == 3:
        if qubit not in (1, 2, 3):
            raise ValidationError(f"invalid partition: qubit {qubit} of 3")
        r = partial_bloch_radii(s).as_tuple()[qubit - 1]
        return abs(r - 1.0) < tol
    raise ValidationError("separability needs at least two qubits")
