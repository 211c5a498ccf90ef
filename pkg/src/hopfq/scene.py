"""Sampled S3 fibers, stereographically projected into R3 for plotting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import ValidationError
from .hopf import DEFAULT_POLE, _unit_pole, hopf_s3, inverse_stereo_s3, stereo_project_s3
from .states import PureState

BASE_INPUT_TOL = 1e-6


@dataclass(frozen=True)
class Fiber:
    base: tuple[float, float, float]
    samples: np.ndarray
    closed: bool


@dataclass(frozen=True)
class FibrationScene:
    pole: tuple[float, float, float, float]
    fibers: tuple[Fiber, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "pole": list(self.pole),
            "fibers": [
                {"base": list(f.base), "closed": f.closed, "samples": f.samples.tolist()}
                for f in self.fibers
            ],
        }

    def to_rows(self) -> list[dict[str, Any]]:
        rows = []
        for i, f in enumerate(self.fibers):
            for k, (x, y, z) in enumerate(f.samples.tolist()):
                rows.append({"fiber": i, "sample": k, "closed": f.closed, "x": x, "y": y, "z": z})
        return rows


def preimage(base: Sequence[float]) -> tuple[complex, complex]:
    """One point ``(alpha, beta)`` of S3 whose Bloch vector ``(Z, X, Y)`` is ``base``."""
    z, x, y = base
    if z >= 0:
        alpha = math.sqrt((1.0 + z) / 2.0)
        return complex(alpha), complex(x, y) / (2.0 * alpha)
    beta = math.sqrt((1.0 - z) / 2.0)
    return complex(x, -y) / (2.0 * beta), complex(beta)


def latitude_bases(latitudes: Sequence[float], per_latitude: int) -> list[tuple[float, float, float]]:
    """Evenly spaced base points on circles of constant ``x0``."""
    bases = []
    for z in latitudes:
        if not -1.0 < z < 1.0:
            raise ValidationError(f"latitude x0 = {z!r} must lie strictly inside (-1, 1)")
        rho = math.sqrt(1.0 - z * z)
        for k in range(per_latitude):
            ang = 2.0 * math.pi * k / per_latitude
            bases.append((z, rho * math.cos(ang), rho * math.sin(ang)))
    return bases


def pole_base(pole: Sequence[float] = DEFAULT_POLE) -> tuple[float, float, float]:
    """Base point of the fiber running through the projection pole."""
    p0, p1, p2, p3 = pole
    return hopf_s3(PureState(1, (complex(p0, p1), complex(p2, p3)))).coords


def render_fibration_scene(
    bases: Sequence[Sequence[float]],
    samples_per_fiber: int,
    pole: Sequence[float] = DEFAULT_POLE,
) -> FibrationScene:
    """Sample the phase orbit over each base point and project it into R3.

    Every fiber is a circle in S3; its image is a circle, except for the
    fiber through ``pole``, which becomes a straight line (``closed=False``).
    That fiber is sampled at half-step offsets so no sample lands on the pole.
    """
    if samples_per_fiber < 3:
        raise ValidationError("samples_per_fiber must be at least 3")
    pole = _unit_pole(pole)
    through_pole = np.array(pole_base(pole))
    fibers = []
    for base in bases:
        b = np.asarray(base, dtype=float)
        if b.shape != (3,) or abs(np.linalg.norm(b) - 1.0) > BASE_INPUT_TOL:
            raise ValidationError(f"base {list(base)} is not on the unit S2")
        b = b / np.linalg.norm(b)
        is_line = np.max(np.abs(b - through_pole)) < 1e-12
        if is_line:
            alpha, beta = complex(pole[0], pole[1]), complex(pole[2], pole[3])
            offset = 0.5
        else:
            alpha, beta = preimage(b)
            offset = 0.0
        omegas = 2.0 * math.pi * (np.arange(samples_per_fiber) + offset) / samples_per_fiber
        phases = np.exp(1j * omegas)
        a, bb = alpha * phases, beta * phases
        points = np.stack([a.real, a.imag, bb.real, bb.imag], axis=1)
        samples = np.array([stereo_project_s3(p, pole) for p in points])
        fibers.append(Fiber(tuple(b.tolist()), samples, closed=not is_line))
    return FibrationScene(tuple(pole.tolist()), tuple(fibers))


def circle_fit(points: np.ndarray) -> tuple[np.ndarray, float, float]:
    """Least-squares circle through 3D points.

    Returns ``(center, radius, residual)`` where the residual is the largest
    of the off-plane distance and the radial deviation.
    """
    pts = np.asarray(points, dtype=float)
    mean = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - mean)
    e1, e2, normal = vt
    off_plane = np.abs((pts - mean) @ normal).max()
    uv = np.stack([(pts - mean) @ e1, (pts - mean) @ e2], axis=1)
    # |p - c|^2 = R^2  <=>  2 p.c + (R^2 - |c|^2) = |p|^2
    lhs = np.column_stack([2 * uv, np.ones(len(uv))])
    sol, *_ = np.linalg.lstsq(lhs, (uv**2).sum(axis=1), rcond=None)
    c2 = sol[:2]
    radius = math.sqrt(sol[2] + c2 @ c2)
    radial = np.abs(np.linalg.norm(uv - c2, axis=1) - radius).max()
    return mean + c2[0] * e1 + c2[1] * e2, radius, float(max(off_plane, radial))


def line_residual(points: np.ndarray) -> float:
    """Largest distance of the points from their best-fit line."""
    pts = np.asarray(points, dtype=float)
    centered = pts - pts.mean(axis=0)
    direction = np.linalg.svd(centered)[2][0]
    perp = centered - np.outer(centered @ direction, direction)
    return float(np.linalg.norm(perp, axis=1).max())


def base_residual(fiber: Fiber, pole: Sequence[float]) -> float:
    """Largest distance between the fiber's base and the Bloch image of its samples."""
    worst = 0.0
    target = np.array(fiber.base)
    for y in fiber.samples:
        p = inverse_stereo_s3(y, pole)
        state = PureState.from_vector([complex(p[0], p[1]), complex(p[2], p[3])], normalize=True)
        worst = max(worst, float(np.abs(hopf_s3(state).as_array() - target).max()))
    return worst


def scene_residuals(scene: FibrationScene) -> dict[str, float]:
    circle = line = back = 0.0
    for f in scene.fibers:
        if f.closed:
            circle = max(circle, circle_fit(f.samples)[2])
        else:
            line = max(line, line_residual(f.samples))
        back = max(back, base_residual(f, scene.pole))
    return {"circle": circle, "line": line, "base": back}
