"""Self-check suite: every module invariant evaluated on random samples.

Each check returns the number of cases it evaluated and the largest
residual it saw; it passes when that residual is within its tolerance.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import Any, Callable

import numpy as np

from .algebra import (
    OCTONION_TABLE,
    Octonion,
    Quaternion,
    oct_mul,
    oct_mul_pairs,
    quat_mul,
    quat_mul_pairs,
)
from .entanglement import concurrence, partial_bloch_radii, reduced_density
from .fibers import epsilon_path, fiber_point_s7, fiber_point_s15, global_phase, mes_state
from .hopf import (
    bloch_coordinates,
    entanglor_expectation,
    hopf_s3,
    hopf_s7,
    hopf_s15_formula,
    hopf_s15_octonion,
)
from .scene import latitude_bases, pole_base, render_fibration_scene, scene_residuals
from .states import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    Grouping,
    PureState,
    QuaternionPair,
    decode_two_qubit,
    encode_three_qubit,
    decode_three_qubit,
    encode_two_qubit,
    expectation,
    local_operator,
    product_state,
    random_pure_states,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    count: int
    max_residual: float
    tolerance: float


@dataclass(frozen=True)
class CheckReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_residual(self) -> float:
        return max((r.max_residual for r in self.results), default=0.0)

    def to_json(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "checks": [asdict(r) for r in self.results],
        }


class _Context:
    def __init__(self, samples: int, seed: int, table):
        self.samples = samples
        self.rng = np.random.default_rng(seed)
        self.seed = seed
        self.table = table

    def states(self, n: int, offset: int = 0) -> list[PureState]:
        return random_pure_states(n, self.samples, self.seed * 7919 + 31 * n + offset)

    def quaternion(self, unit: bool = False) -> Quaternion:
        v = self.rng.standard_normal(4)
        return Quaternion.from_array(v / np.linalg.norm(v) if unit else v)

    def octonion(self, unit: bool = False) -> Octonion:
        v = self.rng.standard_normal(8)
        return Octonion(tuple(v / np.linalg.norm(v) if unit else v))

    def phase(self) -> float:
        return float(self.rng.uniform(0, 2 * math.pi))

    def unit_pair(self) -> tuple[complex, complex]:
        return self.quaternion(unit=True).complex_pair()


def _gap(x, y) -> float:
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y))))


# -- algebra ------------------------------------------------------------------


def _quaternion_composition(ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        p, q = ctx.quaternion(), ctx.quaternion()
        worst = max(worst, abs(quat_mul(p, q).norm() - p.norm() * q.norm()))
    return ctx.samples, worst


def _octonion_composition(ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        a, b = ctx.octonion(), ctx.octonion()
        worst = max(worst, abs(oct_mul(a, b, ctx.table).norm() - a.norm() * b.norm()))
    return ctx.samples, worst


def _octonion_alternativity(ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        a, b = ctx.octonion(), ctx.octonion()
        mul = lambda x, y: oct_mul(x, y, ctx.table)  # noqa: E731
        worst = max(
            worst,
            _gap(mul(mul(a, a), b).coeffs, mul(a, mul(a, b)).coeffs),
            _gap(mul(mul(b, a), a).coeffs, mul(b, mul(a, a)).coeffs),
        )
    return ctx.samples, worst


def _quaternion_conjugation(ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        p, q = ctx.quaternion(), ctx.quaternion()
        worst = max(worst, _gap(quat_mul(p, q).conj().as_array(), quat_mul(q.conj(), p.conj()).as_array()))
    return ctx.samples, worst


def _pair_rules(ctx):
    worst = 0.0
    for i in range(8):
        for j in range(8):
            a, b = Octonion.basis(i), Octonion.basis(j)
            worst = max(worst, _gap(oct_mul(a, b, ctx.table).coeffs, oct_mul_pairs(a, b).coeffs))
    for _ in range(ctx.samples):
        p, q = ctx.quaternion(), ctx.quaternion()
        worst = max(worst, _gap(quat_mul(p, q).as_array(), quat_mul_pairs(p, q).as_array()))
        a, b = ctx.octonion(), ctx.octonion()
        worst = max(worst, _gap(oct_mul(a, b, ctx.table).coeffs, oct_mul_pairs(a, b).coeffs))
    return 64 + ctx.samples, worst


# -- states -------------------------------------------------------------------


def _encoding_roundtrip(ctx):
    worst = 0.0
    for s in ctx.states(2):
        for g in Grouping:
            pair = encode_two_qubit(s, g)
            worst = max(worst, _gap(decode_two_qubit(pair).vector, s.vector))
            worst = max(worst, abs(pair.q1.norm2() + pair.q2.norm2() - 1.0))
    for s in ctx.states(3):
        pair = encode_three_qubit(s)
        worst = max(worst, _gap(decode_three_qubit(pair).vector, s.vector))
        worst = max(worst, abs(pair.a.norm2() + pair.b.norm2() - 1.0))
    return 2 * ctx.samples, worst


# -- hopf ---------------------------------------------------------------------


def _s3_fiber_invariance(ctx):
    worst = 0.0
    for s in ctx.states(1):
        base = hopf_s3(s).as_array()
        worst = max(worst, _gap(hopf_s3(global_phase(s, ctx.phase())).as_array(), base))
        worst = max(worst, _gap(bloch_coordinates(s).as_array(), base))
    return ctx.samples, worst


def _s7_fiber_invariance(ctx):
    worst = 0.0
    for s in ctx.states(2):
        pair = encode_two_qubit(s)
        q = ctx.quaternion(unit=True)
        moved = decode_two_qubit(QuaternionPair(quat_mul(pair.q1, q), quat_mul(pair.q2, q)))
        worst = max(worst, _gap(hopf_s7(moved).as_array(), hopf_s7(s).as_array()))
    return ctx.samples, worst


def _base_normalization(ctx):
    worst = 0.0
    for n, hopf in ((1, hopf_s3), (2, hopf_s7), (3, hopf_s15_octonion)):
        for s in ctx.states(n, offset=1):
            worst = max(worst, abs(float(np.sum(hopf(s).as_array() ** 2)) - 1.0))
    return 3 * ctx.samples, worst


def _s7_separable_flattening(ctx):
    worst = 0.0
    singles = ctx.states(1, offset=2)
    for s1, s2 in zip(singles, singles[1:] + singles[:1]):
        x = hopf_s7(product_state(s1, s2)).coords
        worst = max(worst, abs(x[3]), abs(x[4]))
    return ctx.samples, worst


def _s7_grouping_invariance(ctx):
    worst = 0.0
    for s in ctx.states(2):
        a = hopf_s7(s, Grouping.STANDARD).coords
        b = hopf_s7(s, Grouping.ALTERNATE).coords
        worst = max(worst, abs(a[3] - b[3]), abs(a[4] - b[4]))
    return ctx.samples, worst


def _s15_cross_path(ctx):
    worst = 0.0
    for s in ctx.states(3):
        worst = max(worst, _gap(hopf_s15_octonion(s).as_array(), hopf_s15_formula(s).as_array()))
    return ctx.samples, worst


def _expectation_identities(ctx):
    worst = 0.0
    paulis = (SIGMA_Z, SIGMA_X, SIGMA_Y)
    for n, hopf in ((1, hopf_s3), (2, hopf_s7), (3, hopf_s15_octonion)):
        for s in ctx.states(n, offset=3):
            x = hopf(s).coords
            for l, op in enumerate(paulis):
                worst = max(worst, abs(x[l] - expectation(s, local_operator(op, 1, n)).real))
    for s in ctx.states(2, offset=3):
        e = entanglor_expectation(s)
        a, b, c, d = s.amplitudes
        x = hopf_s7(s).coords
        worst = max(worst, abs(e - 2 * (a * d - b * c)), abs(e - complex(x[3], x[4])))
    return 4 * ctx.samples, worst


# -- entanglement -------------------------------------------------------------


def _determinant_law(ctx):
    worst = 0.0
    for s in ctx.states(2):
        c = concurrence(s)
        worst = max(worst, abs(reduced_density(s, 1).det - c * c / 4), abs(reduced_density(s, 2).det - c * c / 4))
    return ctx.samples, worst


def _equal_radii(ctx):
    worst = 0.0
    singles = ctx.states(1, offset=4)
    for s1, s23 in zip(singles, ctx.states(2, offset=4)):
        r = partial_bloch_radii(product_state(s1, s23))
        worst = max(worst, abs(r.r1 - 1.0), abs(r.r2 - r.r3))
    return ctx.samples, worst


def _concurrence_invariance(ctx):
    worst = 0.0
    for s in ctx.states(2):
        c = concurrence(s)
        worst = max(worst, abs(concurrence(global_phase(s, ctx.phase())) - c))
        a, b, g, d = s.amplitudes
        worst = max(worst, abs(concurrence(PureState(2, (a, g, b, d))) - c))
        x = hopf_s7(s).coords
        worst = max(worst, abs(math.sqrt(max(0.0, 1 - c * c)) - math.sqrt(x[0] ** 2 + x[1] ** 2 + x[2] ** 2)))
    return ctx.samples, worst


# -- fibers -------------------------------------------------------------------


def _s7_round_trip(ctx):
    worst = 0.0
    for s in ctx.states(2, offset=5):
        base = hopf_s7(s)
        state = fiber_point_s7(base, ctx.quaternion(unit=True))
        worst = max(worst, _gap(hopf_s7(state).as_array(), base.as_array()))
    return ctx.samples, worst


def _s15_round_trip(ctx):
    worst = 0.0
    for s in ctx.states(3, offset=5):
        base = hopf_s15_octonion(s)
        state = fiber_point_s15(base, ctx.octonion(unit=True))
        worst = max(worst, _gap(hopf_s15_octonion(state).as_array(), base.as_array()))
    return ctx.samples, worst


def _mes_double_cover(ctx):
    worst = 0.0
    for _ in range(ctx.samples):
        s = mes_state(*ctx.unit_pair())
        omega = ctx.phase()
        before = hopf_s7(s).coords
        after = hopf_s7(global_phase(s, omega)).coords
        expected = complex(before[3], before[4]) * cmath.exp(2j * omega)
        worst = max(worst, abs(complex(after[3], after[4]) - expected))
        f_a, f_b = ctx.unit_pair()
        overlap = abs(np.vdot(mes_state(f_a, f_b).vector, mes_state(-f_a, -f_b).vector))
        worst = max(worst, 1.0 - overlap)
    return ctx.samples, worst


def _epsilon_concurrence(ctx):
    worst = 0.0
    # linspace hits pi/2 exactly; k * (pi/2) / n can round past it
    for eps in np.linspace(0.0, math.pi / 2, ctx.samples).tolist():
        f_a, f_b = ctx.unit_pair()
        for ray in ("x", "z"):
            worst = max(worst, abs(concurrence(epsilon_path(eps, f_a, f_b, ray)) - math.sin(eps)))
    return ctx.samples, worst


def _scene_geometry(ctx):
    bases = latitude_bases((-0.5, 0.0, 0.5), 12) + [pole_base()]
    res = scene_residuals(render_fibration_scene(bases, 64))
    return len(bases), max(res.values())


CHECKS: tuple[tuple[str, Callable, float], ...] = (
    ("quaternion_composition", _quaternion_composition, 1e-12),
    ("octonion_composition", _octonion_composition, 1e-12),
    ("octonion_alternativity", _octonion_alternativity, 1e-12),
    ("quaternion_conjugation", _quaternion_conjugation, 1e-12),
    ("pair_rules_match_tables", _pair_rules, 1e-12),
    ("encoding_round_trip", _encoding_roundtrip, 1e-12),
    ("s3_fiber_invariance", _s3_fiber_invariance, 1e-10),
    ("s7_fiber_invariance", _s7_fiber_invariance, 1e-10),
    ("base_normalization", _base_normalization, 1e-10),
    ("s7_separable_flattening", _s7_separable_flattening, 1e-10),
    ("s7_grouping_invariance", _s7_grouping_invariance, 1e-12),
    ("s15_cross_path", _s15_cross_path, 1e-10),
    ("expectation_identities", _expectation_identities, 1e-12),
    ("determinant_law", _determinant_law, 1e-12),
    ("separated_qubit_equal_radii", _equal_radii, 1e-10),
    ("concurrence_invariance", _concurrence_invariance, 1e-10),
    ("s7_fiber_round_trip", _s7_round_trip, 1e-10),
    ("s15_fiber_round_trip", _s15_round_trip, 1e-10),
    ("mes_double_cover", _mes_double_cover, 1e-10),
    ("epsilon_path_concurrence", _epsilon_concurrence, 1e-10),
    ("fibration_scene_geometry", _scene_geometry, 1e-8),
)


def check_suite(samples: int = 1000, seed: int = 0, octonion_table=None) -> CheckReport:
    """Run every invariant check.

    ``octonion_table`` swaps in a different multiplication table for the
    octonion checks; a corrupted table must make them fail.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    table = OCTONION_TABLE if octonion_table is None else octonion_table
    results = []
    for index, (name, fn, tol) in enumerate(CHECKS):
        ctx = _Context(samples, seed + index, table)
        count, residual = fn(ctx)
        results.append(CheckResult(name, bool(residual <= tol), count, float(residual), tol))
    return CheckReport(tuple(results))
