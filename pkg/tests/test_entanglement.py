import math

import numpy as np
import pytest

from conftest import R2, basis_state, random_vectors
from hopfq.entanglement import (
    BlochRadii,
    DensityMatrix2,
    LeafLabel,
    bloch_radii_batch,
    classify_leaf,
    concurrence,
    concurrence_batch,
    default_tol,
    generalized_concurrences,
    leaf_label,
    partial_bloch_radii,
    reduced_density,
    reduced_density_matrix,
    separability_check,
)
from hopfq.errors import ConsistencyError, ValidationError
from hopfq.fibers import Ray, epsilon_path
from hopfq.states import PureState, product_state


def loop_partial_trace(v, keep, n):
    """Reference partial trace by explicit index sums."""
    rho = np.zeros((2, 2), complex)
    for i in range(2**n):
        for j in range(2**n):
            bi = [(i >> (n - 1 - k)) & 1 for k in range(n)]
            bj = [(j >> (n - 1 - k)) & 1 for k in range(n)]
            if all(bi[k] == bj[k] for k in range(n) if k != keep - 1):
                rho[bi[keep - 1], bj[keep - 1]] += v[i] * np.conj(v[j])
    return rho


class TestConcurrence:
    @pytest.mark.parametrize(
        "amps, expected",
        [
            ((1, 0, 0, 0), 0.0),
            ((R2, 0, 0, R2), 1.0),
            ((0, R2, -R2, 0), 1.0),
            ((0.5, 0.5, 0.5, 0.5), 0.0),
            ((math.cos(0.3), 0, 0, math.sin(0.3)), math.sin(0.6)),
        ],
    )
    def test_examples(self, amps, expected):
        assert concurrence(PureState(2, amps)) == pytest.approx(expected, abs=1e-15)

    def test_batch_matches_scalar(self, rng):
        v = random_vectors(rng, 2, 100)
        expected = [concurrence(PureState.from_vector(x)) for x in v]
        np.testing.assert_allclose(concurrence_batch(v), expected, atol=1e-15)

    def test_batch_rejects_unphysical(self):
        with pytest.raises(ConsistencyError):
            concurrence_batch(np.array([[2, 0, 0, 2]], complex))

    def test_epsilon_rays(self):
        for eps in np.linspace(0, math.pi / 2, 11):
            for ray in Ray:
                s = epsilon_path(eps, 0.6, 0.8j, ray)
                assert concurrence(s) == pytest.approx(math.sin(eps), abs=1e-12)


class TestReducedDensity:
    def test_bell_is_maximally_mixed(self, bell):
        rho = reduced_density(bell, 1)
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-15)
        assert rho.det == pytest.approx(0.25)

    def test_product_is_pure(self):
        rho = reduced_density(basis_state(2, 1), 2)
        np.testing.assert_allclose(rho.matrix, [[0, 0], [0, 1]], atol=1e-15)
        assert rho.bloch_vector == (0, 0, -1)

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_loop_oracle(self, rng, n):
        for v in random_vectors(rng, n, 20):
            for keep in range(1, n + 1):
                np.testing.assert_allclose(reduced_density_matrix(v, keep, n), loop_partial_trace(v, keep, n), atol=1e-14)

    def test_determinant_law(self, rng):
        for v in random_vectors(rng, 2, 500):
            s = PureState.from_vector(v)
            c = concurrence(s)
            for k in (1, 2):
                assert reduced_density(s, k).det == pytest.approx(c * c / 4, abs=1e-14)

    def test_bad_qubit(self, bell):
        with pytest.raises(ValidationError):
            reduced_density(bell, 3)

    @pytest.mark.parametrize(
        "m",
        [
            [[0.5, 0.1], [0.2, 0.5]],
            [[0.6, 0], [0, 0.6]],
            [[1.5, 0], [0, -0.5]],
        ],
    )
    def test_validation(self, m):
        with pytest.raises(ValidationError):
            DensityMatrix2.from_matrix(np.array(m, complex))


class TestThreeQubit:
    def test_w_radii(self, w_state):
        np.testing.assert_allclose(partial_bloch_radii(w_state).as_tuple(), (1 / 3, 1 / 3, 1 / 3), atol=1e-15)

    def test_ghz_radii(self, ghz):
        np.testing.assert_allclose(partial_bloch_radii(ghz).as_tuple(), (0, 0, 0), atol=1e-15)

    def test_product_radii(self):
        assert partial_bloch_radii(basis_state(3, 6)).as_tuple() == (1, 1, 1)

    def test_radii_from_oracle(self, rng):
        for v in random_vectors(rng, 3, 20):
            expected = []
            for k in (1, 2, 3):
                rho = loop_partial_trace(v, k, 3)
                expected.append(math.hypot(2 * abs(rho[1, 0]), (rho[0, 0] - rho[1, 1]).real))
            np.testing.assert_allclose(bloch_radii_batch(v[None])[0], expected, atol=1e-14)

    def test_separable_first_qubit(self, rng):
        for _ in range(100):
            s1 = PureState.from_vector(random_vectors(rng, 1, 1)[0])
            s23 = PureState.from_vector(random_vectors(rng, 2, 1)[0])
            r = partial_bloch_radii(product_state(s1, s23))
            assert r.r1 == pytest.approx(1, abs=1e-12)
            assert r.r2 == pytest.approx(r.r3, abs=1e-12)

    def test_radius_of_qubit_two_follows_concurrence(self, rng):
        # for s1 (x) s23, r2 = r3 = sqrt(1 - c(s23)^2)
        s23 = PureState.from_vector(random_vectors(rng, 2, 1)[0])
        s = product_state(PureState(1, (1, 0)), s23)
        c = concurrence(s23)
        assert partial_bloch_radii(s).r2 == pytest.approx(math.sqrt(1 - c * c), abs=1e-12)

    def test_generalized_concurrences_ghz(self, ghz):
        g = generalized_concurrences(ghz)
        assert g.t07_34 == pytest.approx(0.5)
        assert all(x == 0 for x in g[:5])

    def test_generalized_concurrences_w(self, w_state):
        g = generalized_concurrences(w_state)
        assert g.t05_14 == pytest.approx(-1 / 3)
        assert g.t06_24 == pytest.approx(-1 / 3)
        assert g.t16_25 == pytest.approx(0)

    def test_average(self):
        assert BlochRadii(0.3, 0.6, 0.9).average == pytest.approx(0.6)


class TestClassification:
    @pytest.mark.parametrize(
        "c, label",
        [(0.0, LeafLabel.SEPARABLE_S2xS2), (0.5, LeafLabel.INTERMEDIATE_S2xSO3), (1.0, LeafLabel.MES_SO3)],
    )
    def test_labels(self, c, label):
        assert leaf_label(c, 1e-9) is label

    def test_bell_leaf(self, bell):
        leaf = classify_leaf(bell)
        assert leaf.label is LeafLabel.MES_SO3
        assert leaf.shell_radius == pytest.approx(0, abs=1e-7)

    def test_intermediate_shell(self):
        s = epsilon_path(math.pi / 6, 1, 0)
        leaf = classify_leaf(s)
        assert leaf.concurrence == pytest.approx(0.5)
        assert leaf.shell_radius == pytest.approx(math.sqrt(3) / 2)
        assert leaf.label is LeafLabel.INTERMEDIATE_S2xSO3

    def test_env_tolerance(self, monkeypatch):
        s = epsilon_path(1e-6, 1, 0)
        assert classify_leaf(s).label is LeafLabel.INTERMEDIATE_S2xSO3
        monkeypatch.setenv("HOPFQ_TOL", "1e-3")
        assert default_tol() == 1e-3
        assert classify_leaf(s).label is LeafLabel.SEPARABLE_S2xS2

    def test_explicit_tol_wins(self, monkeypatch):
        monkeypatch.setenv("HOPFQ_TOL", "1e-3")
        assert classify_leaf(epsilon_path(1e-6, 1, 0), tol=1e-9).label is LeafLabel.INTERMEDIATE_S2xSO3

    @pytest.mark.parametrize("raw", ["abc", "-1"])
    def test_bad_env_tolerance(self, monkeypatch, raw):
        monkeypatch.setenv("HOPFQ_TOL", raw)
        with pytest.raises(ValidationError):
            default_tol()


class TestSeparability:
    def test_two_qubit(self, bell):
        assert separability_check(basis_state(2, 3), 1)
        assert not separability_check(bell, 2)

    def test_three_qubit(self, ghz):
        s = product_state(PureState(1, (R2, R2)), PureState(2, (R2, 0, 0, R2)))
        assert separability_check(s, 1)
        assert not separability_check(s, 2)
        assert not separability_check(ghz, 3)

    def test_w_is_not_separable(self, w_state):
        assert not any(separability_check(w_state, k) for k in (1, 2, 3))

    @pytest.mark.parametrize("n, qubit", [(2, 3), (3, 0)])
    def test_invalid_partition(self, n, qubit):
        with pytest.raises(ValidationError):
            separability_check(basis_state(n, 0), qubit)

    def test_single_qubit_rejected(self):
        with pytest.raises(ValidationError):
            separability_check(PureState(1, (1, 0)), 1)
