import math

import numpy as np
import pytest

from hopfq.errors import ValidationError
from hopfq.scene import (
    circle_fit,
    latitude_bases,
    line_residual,
    pole_base,
    preimage,
    render_fibration_scene,
    scene_residuals,
)
from hopfq.hopf import hopf_s3
from hopfq.states import PureState


def circumcircle(a, b, c):
    """Center, radius and unit normal of the circle through three 3D points."""
    ab, ac = b - a, c - a
    n = np.cross(ab, ac)
    center = a + (np.dot(ac, ac) * np.cross(n, ab) + np.dot(ab, ab) * np.cross(ac, n)) / (2 * np.dot(n, n))
    return center, np.linalg.norm(a - center), n / np.linalg.norm(n)


def profile_circle(points):
    """Circle through the (distance-from-z-axis, height) profile of the points."""
    rho, h = np.hypot(points[:, 0], points[:, 1]), points[:, 2]
    a = np.column_stack([2 * rho, 2 * h, np.ones(len(rho))])
    sol = np.linalg.lstsq(a, rho**2 + h**2, rcond=None)[0]
    radius = math.sqrt(sol[2] + sol[0] ** 2 + sol[1] ** 2)
    return sol[:2], radius, np.abs(np.hypot(rho - sol[0], h - sol[1]) - radius).max()


@pytest.fixture(scope="module")
def scene():
    bases = latitude_bases([-0.5, 0.0, 0.5], 12) + [pole_base()]
    return render_fibration_scene(bases, 64)


def test_shape(scene):
    assert len(scene.fibers) == 37
    assert all(f.samples.shape == (64, 3) for f in scene.fibers)
    assert [f.closed for f in scene.fibers].count(False) == 1


def test_fibers_are_circles(scene):
    for f in scene.fibers:
        if not f.closed:
            continue
        pts = f.samples
        center, radius, normal = circumcircle(pts[0], pts[21], pts[42])
        assert np.abs(np.linalg.norm(pts - center, axis=1) - radius).max() < 1e-9
        assert np.abs((pts - center) @ normal).max() < 1e-9


def test_pole_fiber_is_the_vertical_axis(scene):
    line = [f for f in scene.fibers if not f.closed][0]
    np.testing.assert_allclose(line.samples[:, :2], 0, atol=1e-12)
    assert np.all(np.isfinite(line.samples))


def test_samples_map_back_to_base(scene):
    for f in scene.fibers:
        for y in f.samples[::7]:
            r2 = y @ y
            p = np.concatenate([[(r2 - 1) / (r2 + 1)], 2 * y / (r2 + 1)])
            # undo the (j, k, i) frame for the default pole
            alpha, beta = complex(p[0], p[3]), complex(p[1], p[2])
            np.testing.assert_allclose(hopf_s3(PureState(1, (alpha, beta))).coords, f.base, atol=1e-10)


def test_latitudes_give_nested_tori(scene):
    circles = []
    for k in range(3):
        pts = np.concatenate([f.samples for f in scene.fibers[12 * k:12 * (k + 1)]])
        center, radius, residual = profile_circle(pts)
        assert residual < 1e-9
        assert abs(center[1]) < 1e-9
        circles.append((center, radius))
    for (c_in, r_in), (c_out, r_out) in zip(circles, circles[1:]):
        assert np.linalg.norm(c_in - c_out) + r_in < r_out


def test_residual_helpers(scene):
    res = scene_residuals(scene)
    assert res["circle"] < 1e-8 and res["line"] < 1e-8 and res["base"] < 1e-8


def test_circle_fit_known_circle():
    t = np.linspace(0, 2 * math.pi, 10, endpoint=False)
    pts = np.column_stack([1 + 2 * np.cos(t), 2 * np.sin(t), np.full_like(t, 3.0)])
    center, radius, residual = circle_fit(pts)
    np.testing.assert_allclose(center, [1, 0, 3], atol=1e-12)
    assert radius == pytest.approx(2)
    assert residual < 1e-12


def test_line_residual():
    pts = np.outer(np.arange(5.0), [1, 2, 3])
    assert line_residual(pts) < 1e-12
    assert line_residual(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0.0]])) > 0.1


@pytest.mark.parametrize("base", [(1, 0, 0), (-1, 0, 0), (0, 0.6, 0.8), (-0.6, 0, -0.8)])
def test_preimage(base):
    np.testing.assert_allclose(hopf_s3(PureState(1, preimage(base))).coords, base, atol=1e-15)


def test_other_pole():
    pole = np.array([1, 2, 3, 4.0]) / math.sqrt(30)
    scene = render_fibration_scene(latitude_bases([0.2], 5) + [pole_base(pole)], 32, pole)
    res = scene_residuals(scene)
    assert max(res.values()) < 1e-8


@pytest.mark.parametrize(
    "kwargs",
    [
        {"bases": [(1, 0, 0)], "samples_per_fiber": 2},
        {"bases": [(2, 0, 0)], "samples_per_fiber": 8},
        {"bases": [(1, 0, 0)], "samples_per_fiber": 8, "pole": (1, 1, 0, 0)},
    ],
)
def test_validation(kwargs):
    with pytest.raises(ValidationError):
        render_fibration_scene(**kwargs)


@pytest.mark.parametrize("lat", [1.0, -1.5])
def test_latitude_range(lat):
    with pytest.raises(ValidationError):
        latitude_bases([lat], 3)


def test_json_and_rows(scene):
    data = scene.to_json()
    assert data["pole"] == [1, 0, 0, 0]
    assert len(data["fibers"][0]["samples"]) == 64
    rows = scene.to_rows()
    assert len(rows) == 37 * 64
    assert set(rows[0]) == {"fiber", "sample", "closed", "x", "y", "z"}
