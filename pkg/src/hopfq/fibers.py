"""Explicit state families lying over a given base point (inverse Hopf maps)."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Octonion, Quaternion, oct_mul, quat_exp_decompose, quat_mul
from .errors import PoleError, ValidationError
from .hopf import BasePoint
from .states import OctonionPair, PureState, decode_three_qubit

UNIT_TOL = 1e-10
POLE_EXACT = 1e-12


class Ray(str, enum.Enum):
    X_RAY = "x"
    Z_RAY = "z"


@dataclass(frozen=True)
class FiberFrame:
    """Base-space data ``theta``, ``phi``, ``t`` and ``Q' = u + v j`` of an S4 point."""

    theta: float
    phi: float
    t: Quaternion
    u: complex
    v: complex

    @property
    def q_prime(self) -> Quaternion:
        return Quaternion.from_complex_pair(self.u, self.v)


def _require_dim(base: BasePoint, dim: int) -> None:
    if base.dim != dim:
        raise ValidationError(f"expected a point on S{dim}, got S{base.dim}")


def fiber_frame(base: BasePoint, tol: float = 1e-12) -> FiberFrame:
    """Decompose an S4 base point into ``theta`` and the unit quaternion ``Q'``.

    ``Q' = (x1 + x2 i + x3 j + x4 k) / sin(theta) = exp(phi t)``.
    Raises :class:`PoleError` when ``sin(theta) <= tol``.
    """
    _require_dim(base, 4)
    sin_theta = base.sin_theta
    if sin_theta <= tol:
        raise PoleError(f"sin(theta) = {sin_theta:.3g} is at a pole of S4")
    x = base.coords
    u = complex(x[1], x[2]) / sin_theta
    v = complex(x[3], x[4]) / sin_theta
    _, phi, t = quat_exp_decompose(Quaternion.from_complex_pair(u, v))
    return FiberFrame(base.theta, phi, t, u, v)


def _unit_complex_pair(f_a: complex, f_b: complex) -> tuple[complex, complex]:
    f_a, f_b = complex(f_a), complex(f_b)
    if abs(abs(f_a) ** 2 + abs(f_b) ** 2 - 1.0) > UNIT_TOL:
        raise ValidationError("fiber coordinates (f_a, f_b) must satisfy |f_a|^2 + |f_b|^2 = 1")
    return f_a, f_b


def _as_unit_quaternion(q: Quaternion) -> Quaternion:
    if abs(q.norm2() - 1.0) > UNIT_TOL:
        raise ValidationError("fiber coordinate must be a unit quaternion")
    return q


def fiber_point_s7(base: BasePoint, q: Quaternion) -> PureState:
    """The state ``(cos(theta/2) q, sin(theta/2) Q' q)`` over ``base``.

    With ``q = a + b j`` the amplitudes are
    ``(c a, c b, s (u a - v conj(b)), s (u b + v conj(a)))``. ``v`` stays
    complex, so every S4 point is reachable without fixing a phase gauge.
    ``Q' = 1`` is used at the poles.
    """
    _require_dim(base, 4)
    q = _as_unit_quaternion(q)
    a, b = q.complex_pair()
    half = base.theta / 2.0
    c, s = math.cos(half), math.sin(half)
    sin_theta = base.sin_theta
    if sin_theta <= POLE_EXACT:
        u, v = 1.0 + 0j, 0j
    else:
        x = base.coords
        u = complex(x[1], x[2]) / sin_theta
        v = complex(x[3], x[4]) / sin_theta
    amps = (c * a, c * b, s * (u * a - v * b.conjugate()), s * (u * b + v * a.conjugate()))
    return PureState.from_vector(amps, normalize=True)


def fiber_point_s7_spinor(base: BasePoint, q: Quaternion) -> PureState:
    """Same fiber as :func:`fiber_point_s7`, parametrized as
    ``(cos(theta/2) exp(-phi t/2) q, sin(theta/2) exp(phi t/2) q)``.

    The two parametrizations differ by the fiber relabelling
    ``q -> exp(-phi t/2) q``.
    """
    frame = fiber_frame(base)
    q = _as_unit_quaternion(q)
    h = frame.phi / 2.0
    minus = Quaternion(math.cos(h)) - frame.t * math.sin(h)
    plus = Quaternion(math.cos(h)) + frame.t * math.sin(h)
    first = quat_mul(minus, q) * math.cos(frame.theta / 2.0)
    second = quat_mul(plus, q) * math.sin(frame.theta / 2.0)
    a, b = first.complex_pair()
    c, d = second.complex_pair()
    return PureState.from_vector((a, b, c, d), normalize=True)


def mes_state(f_a: complex, f_b: complex) -> PureState:
    """Maximally entangled state ``(a, b, -conj(b), conj(a)) / sqrt(2)``."""
    a, b = _unit_complex_pair(f_a, f_b)
    r = 1.0 / math.sqrt(2.0)
    return PureState.from_vector((r * a, r * b, -r * b.conjugate(), r * a.conjugate()), normalize=True)


def epsilon_path(eps: float, f_a: complex, f_b: complex, ray: Ray | str = Ray.X_RAY) -> PureState:
    """States with concurrence ``sin(eps)`` along a straight ray of the B3 ball.

    ``X_RAY`` runs from ``(x0, x1, x2) = (0, 1, 0)`` to the centre,
    ``Z_RAY`` from ``(1, 0, 0)`` to the centre; ``eps`` lies in ``[0, pi/2]``.
    """
    if not 0.0 <= eps <= math.pi / 2:
        raise ValidationError(f"eps = {eps!r} outside [0, pi/2]")
    a, b = _unit_complex_pair(f_a, f_b)
    ray = Ray(ray)
    if ray is Ray.X_RAY:
        r = 1.0 / math.sqrt(2.0)
        ce, se = math.cos(eps), math.sin(eps)
        amps = (r * a, r * b, r * (a * ce - b.conjugate() * se), r * (b * ce + a.conjugate() * se))
    else:
        ch, sh = math.cos(eps / 2.0), math.sin(eps / 2.0)
        amps = (ch * a, ch * b, -sh * b.conjugate(), sh * a.conjugate())
    return PureState.from_vector(amps, normalize=True)


def fiber_point_s15(base: BasePoint, c: Octonion, tol: float = 0.0) -> PureState:
    """A three-qubit state over an S8 base point, labelled by a unit octonion ``c``.

    Takes ``a = cos(theta/2) (conj(P') c)`` and ``b = sin(theta/2) c`` where
    ``P'`` is the unit direction of ``(x1, ..., x8)``. Right alternativity gives
    ``a b^-1 = cot(theta/2) conj(P')``, so the Hopf image is ``base`` for every
    ``c``. At the poles (``sin(theta) < 1e-12``) the fiber is ``{(c, 0)}`` or
    ``{(0, c)}``; ``tol`` above that raises :class:`PoleError` instead.
    """
    _require_dim(base, 8)
    if abs(c.norm2() - 1.0) > UNIT_TOL:
        raise ValidationError("fiber coordinate must be a unit octonion")
    sin_theta = base.sin_theta
    zero = Octonion()
    if sin_theta < POLE_EXACT:
        pair = (c, zero) if base.coords[0] > 0 else (zero, c)
    elif sin_theta <= tol:
        raise PoleError(f"sin(theta) = {sin_theta:.3g} is within {tol} of a pole of S8")
    else:
        p_unit = Octonion(tuple(x / sin_theta for x in base.coords[1:]))
        half = base.theta / 2.0
        pair = (oct_mul(p_unit.conj(), c) * math.cos(half), c * math.sin(half))
    a, b = pair
    scale = math.sqrt(a.norm2() + b.norm2())
    return decode_three_qubit(OctonionPair(a / scale, b / scale))


def projective_equal(s1: PureState, s2: PureState, tol: float = 1e-10) -> bool:
    """``|<s1|s2>| > 1 - tol``: equal up to a global phase."""
    if s1.n_qubits != s2.n_qubits:
        raise ValidationError("states have different qubit counts")
    return abs(np.vdot(s1.vector, s2.vector)) > 1.0 - tol


def global_phase(s: PureState, omega: float) -> PureState:
    """``exp(i omega) s``."""
    w = cmath.exp(1j * omega)
    return PureState(s.n_qubits, tuple(w * a for a in s.amplitudes))
