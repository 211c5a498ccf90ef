"""Pure-state containers and their quaternion / octonion encodings.

Amplitudes are stored in binary-counting basis order with qubit 1 as the most
significant bit: ``|00>, |01>, |10>, |11>`` for two qubits and ``|l>``,
``l = 0..7`` for three.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .algebra import Octonion, Quaternion
from .errors import ValidationError

NORM_TOL = 1e-10
PARSE_NORM_TOL = 1e-6

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


class Grouping(str, enum.Enum):
    STANDARD = "standard"
    ALTERNATE = "alternate"


@dataclass(frozen=True)
class PureState:
    n_qubits: int
    amplitudes: tuple[complex, ...]

    def __post_init__(self):
        if self.n_qubits not in (1, 2, 3):
            raise ValidationError(f"unsupported qubit count {self.n_qubits}")
        amps = tuple(complex(a) for a in self.amplitudes)
        if len(amps) != 2**self.n_qubits:
            raise ValidationError(
                f"{self.n_qubits} qubits need {2**self.n_qubits} amplitudes, got {len(amps)}"
            )
        if not all(math.isfinite(a.real) and math.isfinite(a.imag) for a in amps):
            raise ValidationError("amplitudes must be finite")
        err = abs(math.fsum(abs(a) ** 2 for a in amps) - 1.0)
        if err > NORM_TOL:
            raise ValidationError(f"state is not normalized (|norm^2 - 1| = {err:.3g})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, vector: Sequence[complex], normalize: bool = False) -> PureState:
        v = np.asarray(vector, dtype=complex).ravel()
        if normalize:
            n = np.linalg.norm(v)
            if n == 0:
                raise ValidationError("cannot normalize the zero vector")
            v = v / n
        n_qubits = int(round(math.log2(len(v)))) if len(v) else 0
        if 2**n_qubits != len(v):
            raise ValidationError(f"amplitude count {len(v)} is not a power of two")
        return cls(n_qubits, tuple(v.tolist()))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __getitem__(self, index: int) -> complex:
        return self.amplitudes[index]


@dataclass(frozen=True)
class QuaternionPair:
    q1: Quaternion
    q2: Quaternion
    grouping: Grouping = Grouping.STANDARD

    def __post_init__(self):
        err = abs(self.q1.norm2() + self.q2.norm2() - 1.0)
        if err > NORM_TOL:
            raise ValidationError(f"quaternion pair is not on the unit S7 ({err:.3g})")


@dataclass(frozen=True)
class OctonionPair:
    a: Octonion
    b: Octonion

    def __post_init__(self):
        err = abs(self.a.norm2() + self.b.norm2() - 1.0)
        if err > NORM_TOL:
            raise ValidationError(f"octonion pair is not on the unit S15 ({err:.3g})")


def _require(s: PureState, n: int) -> None:
    if s.n_qubits != n:
        raise ValidationError(f"expected a {n}-qubit state, got {s.n_qubits} qubits")


def swap_middle(s: PureState) -> PureState:
    """Exchange the two qubits of a two-qubit state (beta <-> gamma)."""
    _require(s, 2)
    a, b, c, d = s.amplitudes
    return PureState(2, (a, c, b, d))


def encode_two_qubit(s: PureState, grouping: Grouping | str = Grouping.STANDARD) -> QuaternionPair:
    """Standard: ``q1 = alpha + beta j``, ``q2 = gamma + delta j``.

    Alternate: ``q1 = alpha + gamma j``, ``q2 = beta + delta j``.
    """
    _require(s, 2)
    grouping = Grouping(grouping)
    a, b, c, d = s.amplitudes
    if grouping is Grouping.ALTERNATE:
        b, c = c, b
    return QuaternionPair(Quaternion.from_complex_pair(a, b), Quaternion.from_complex_pair(c, d), grouping)


def decode_two_qubit(pair: QuaternionPair) -> PureState:
    a, b = pair.q1.complex_pair()
    c, d = pair.q2.complex_pair()
    if pair.grouping is Grouping.ALTERNATE:
        b, c = c, b
    return PureState(2, (a, b, c, d))


def encode_three_qubit(s: PureState) -> OctonionPair:
    """``a = (t0 + t1 j) + (t2 + conj(t3) j) e`` and likewise ``b`` from ``t4..t7``.

    The conjugation of ``t3`` and ``t7`` comes from writing ``j t3 = conj(t3) j``.
    """
    _require(s, 3)
    t = s.amplitudes
    a = Octonion.from_quaternion_pair(
        Quaternion.from_complex_pair(t[0], t[1]),
        Quaternion.from_complex_pair(t[2], t[3].conjugate()),
    )
    b = Octonion.from_quaternion_pair(
        Quaternion.from_complex_pair(t[4], t[5]),
        Quaternion.from_complex_pair(t[6], t[7].conjugate()),
    )
    return OctonionPair(a, b)


def _octonion_amplitudes(x: Octonion) -> tuple[complex, complex, complex, complex]:
    first, second = x.quaternion_pair()
    t0, t1 = first.complex_pair()
    t2, t3c = second.complex_pair()
    return t0, t1, t2, t3c.conjugate()


def decode_three_qubit(pair: OctonionPair) -> PureState:
    return PureState(3, _octonion_amplitudes(pair.a) + _octonion_amplitudes(pair.b))


def _splitmix64(x: int) -> int:
    mask = (1 << 64) - 1
    z = x & mask
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """The ``index``-th output of a splitmix64 stream started at ``seed``.

    Used to hand each independent work item its own seed, so batched and
    parallel runs reproduce a serial run bit for bit.
    """
    return _splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15)


def random_state_vectors(n: int, count: int, seed: int) -> np.ndarray:
    """``count`` Haar-random ``n``-qubit amplitude vectors, shape ``(count, 2**n)``."""
    if n not in (1, 2, 3):
        raise ValidationError(f"unsupported qubit count {n}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, 2, 2**n))
    v = g[:, 0, :] + 1j * g[:, 1, :]
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_pure_state(n: int, seed: int) -> PureState:
    """Haar-random pure state: ``2 * 2**n`` standard normals, normalized."""
    return PureState(n, tuple(random_state_vectors(n, 1, seed)[0].tolist()))


def random_pure_states(n: int, count: int, seed: int) -> list[PureState]:
    return [PureState(n, tuple(v.tolist())) for v in random_state_vectors(n, count, seed)]


def product_state(*factors: PureState) -> PureState:
    v = np.array([1.0 + 0j])
    for f in factors:
        v = np.kron(v, f.vector)
    return PureState.from_vector(v, normalize=True)


def local_operator(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Embed a one-qubit operator acting on ``qubit`` (1-based) into ``n_qubits``."""
    mats = [op if k == qubit else IDENTITY for k in range(1, n_qubits + 1)]
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def expectation(s: PureState, op: np.ndarray) -> complex:
    v = s.vector
    return complex(np.vdot(v, op @ v))


# -- JSON state format ------------------------------------------------------


def state_from_json(data: dict[str, Any], renormalize: bool = False) -> PureState:
    """Parse ``{"n": int, "amplitudes": [[re, im], ...]}``.

    Norm errors up to ``PARSE_NORM_TOL`` are silently normalized away; larger
    ones are rejected unless ``renormalize`` is set.
    """
    try:
        n = int(data["n"])
        raw = data["amplitudes"]
        amps = np.array([complex(float(re), float(im)) for re, im in raw])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed state JSON: {exc}") from exc
    if n not in (1, 2, 3):
        raise ValidationError(f"unsupported qubit count {n}")
    if len(amps) != 2**n:
        raise ValidationError(f"{n} qubits need {2**n} amplitudes, got {len(amps)}")
    if not np.all(np.isfinite(amps)):
        raise ValidationError("amplitudes must be finite")
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if abs(norm2 - 1.0) > PARSE_NORM_TOL and not renormalize:
        raise ValidationError(
            f"state norm^2 is {norm2!r}; pass --renormalize to accept unnormalized input"
        )
    if norm2 == 0.0:
        raise ValidationError("zero vector is not a state")
    return PureState(n, tuple((amps / math.sqrt(norm2)).tolist()))


def state_to_json(s: PureState) -> dict[str, Any]:
    return {"n": s.n_qubits, "amplitudes": [[a.real, a.imag] for a in s.amplitudes]}
