import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coinwalk import (
    DegenerateCoin,
    DegenerateDispersion,
    NormalizationError,
    QuadratureGrid,
    U2Params,
    WalkSpec,
    c_local,
    c_local_u2,
    c_of_k_u2,
    c_separable,
    characteristic_at_k,
    line_walk,
    swap_matrix,
)
from conftest import random_interior_params
from test_linalg import HADAMARD_C_AT_HALF_PI

PI = np.pi
HADAMARD_PARAMS = U2Params(PI / 4, PI / 2, PI / 2)

interior_theta = st.floats(min_value=0.05, max_value=PI / 2 - 0.05)
phase = st.floats(min_value=-PI, max_value=PI)


class TestQuadratureGrid:
    def test_weights_sum_to_one(self):
        g = QuadratureGrid(128, 2)
        assert g.node_count == 128 * 128
        assert g.node_count * g.weight == pytest.approx(1.0)

    def test_nodes_exclude_duplicate_endpoint(self):
        g = QuadratureGrid(8, 1)
        nodes = g.nodes[:, 0]
        assert nodes[0] == pytest.approx(-PI)
        assert nodes[-1] < PI

    def test_defaults(self):
        assert QuadratureGrid.default(1).points_per_axis == 4096
        assert QuadratureGrid.default(2).points_per_axis == 256


class TestPointwise:
    def test_hadamard_at_half_pi_closed(self):
        c = c_of_k_u2(HADAMARD_PARAMS, PI / 2)
        assert np.max(np.abs(c.matrix - HADAMARD_C_AT_HALF_PI)) <= 1e-14

    def test_hadamard_at_half_pi_numeric(self):
        c = characteristic_at_k(line_walk(HADAMARD_PARAMS), PI / 2)
        assert np.max(np.abs(c.matrix - HADAMARD_C_AT_HALF_PI)) <= 1e-12

    def test_diagonal_coin(self):
        coin = np.diag([np.exp(0.3j), np.exp(-0.9j)])
        spec = WalkSpec(lattice_dim=1, coin_dim=2, shifts=[[1], [-1]], coin=coin)
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = expected[3, 3] = 1.0
        for k in (0.123, -2.5):
            c = characteristic_at_k(spec, k)
            assert np.max(np.abs(c.matrix - expected)) <= 1e-12

    def test_partial_traces_are_identity(self, rng):
        from coinwalk import partial_trace

        for _ in range(10):
            p = random_interior_params(rng)
            c = characteristic_at_k(line_walk(p), rng.uniform(-PI, PI)).matrix
            assert np.max(np.abs(partial_trace(c, "first") - np.eye(2))) <= 1e-10
            assert np.max(np.abs(partial_trace(c, "second") - np.eye(2))) <= 1e-10

    def test_closed_form_matches_numeric_on_random_draws(self, rng):
        worst = 0.0
        for _ in range(100):
            p = random_interior_params(rng)
            k = rng.uniform(-PI, PI)
            diff = c_of_k_u2(p, k).matrix - characteristic_at_k(line_walk(p), k).matrix
            worst = max(worst, float(np.max(np.abs(diff))))
        assert worst <= 1e-10

    def test_closed_form_at_k_equals_alpha(self):
        p = U2Params(0.7, 0.4, -1.0)
        c = c_of_k_u2(p, p.alpha).matrix
        ell = c[1, 1].real
        assert ell == pytest.approx(0.5)
        assert c[1, 0] == pytest.approx(0.0)  # F vanishes at k = alpha
        assert c[3, 0] == pytest.approx(-0.5 * np.exp(2j * (p.alpha - p.beta)))

    def test_degenerate_dispersion_raises(self):
        with pytest.raises(DegenerateDispersion):
            c_of_k_u2(U2Params(0.0, 0.0, 0.0), 0.0)

    @given(theta=interior_theta, alpha=phase, beta=phase, k=phase)
    def test_structural_invariants(self, theta, alpha, beta, k):
        c = characteristic_at_k(line_walk(U2Params(theta, alpha, beta)), k).matrix
        assert np.max(np.abs(c - c.conj().T)) <= 1e-10
        s = swap_matrix(2)
        assert np.max(np.abs(s @ c @ s - c)) <= 1e-10
        assert np.max(np.abs(c)) <= 1 + 1e-12
        assert np.trace(c).real == pytest.approx(2.0, abs=1e-8)


class TestIntegratedLocal:
    def test_closed_form_frozen_values(self):
        # theta = pi/4, alpha = beta: f and g evaluated by direct substitution
        c = c_local_u2(U2Params(PI / 4, 0.3, 0.3)).matrix
        assert c[1, 0] == pytest.approx(0.29289321881345254 / 2)
        assert c[3, 0] == pytest.approx(-0.12132034355964258 / 2)
        assert np.allclose(
            np.diag(c).real,
            [0.6464466094067263, 0.35355339059327373, 0.35355339059327373, 0.6464466094067263],
        )

    def test_quadrature_matches_closed_form(self):
        grid = QuadratureGrid(4096, 1)
        diff = c_local(line_walk(HADAMARD_PARAMS), grid).matrix - c_local_u2(HADAMARD_PARAMS).matrix
        assert np.max(np.abs(diff)) <= 1e-8

    def test_first_diagonal_entry(self, rng):
        grid = QuadratureGrid(2048, 1)
        for _ in range(5):
            p = random_interior_params(rng)
            c = c_local(line_walk(p), grid).matrix
            assert c[0, 0].real == pytest.approx(1 - np.sin(p.theta) / 2, abs=1e-8)

    def test_trace_is_coin_dim(self, rng):
        grid = QuadratureGrid(1024, 1)
        p = random_interior_params(rng)
        c = c_local(line_walk(p), grid).matrix
        assert np.trace(c).real == pytest.approx(2.0, abs=1e-8)

    def test_depends_on_phase_difference_only(self, rng):
        p = random_interior_params(rng)
        delta = 0.83
        shifted = U2Params(p.theta, p.alpha + delta, p.beta + delta)
        closed = c_local_u2(p).matrix - c_local_u2(shifted).matrix
        assert np.max(np.abs(closed)) <= 1e-12
        grid = QuadratureGrid(2048, 1)
        numeric = c_local(line_walk(p), grid).matrix - c_local(line_walk(shifted), grid).matrix
        assert np.max(np.abs(numeric)) <= 1e-8

    def test_quadrature_converges(self):
        p = U2Params(0.3, 0.5, -0.2)
        target = c_local_u2(p).matrix
        residuals = [
            float(np.max(np.abs(c_local(line_walk(p), QuadratureGrid(n, 1)).matrix - target)))
            for n in (4, 8, 16, 32, 64)
        ]
        for coarse, fine in zip(residuals, residuals[1:]):
            assert fine <= coarse * 1.01 + 1e-12

    def test_degenerate_coin_rejected(self):
        for theta in (0.0, PI / 2):
            with pytest.raises(DegenerateCoin):
                c_local(line_walk(U2Params(theta, 0.0, 0.0)), QuadratureGrid(64, 1))


class TestIntegratedSeparable:
    def test_uniform_weight_reduces_to_local(self):
        grid = QuadratureGrid(512, 1)
        spec = line_walk(HADAMARD_PARAMS)
        a = c_separable(spec, lambda k: 1.0, grid).matrix
        b = c_local(spec, grid).matrix
        assert np.max(np.abs(a - b)) == 0.0

    def test_cosine_weight_reproduces_reference_state(self):
        from coinwalk import rho_distributed_example_closed, rho_from_characteristic

        grid = QuadratureGrid(4096, 1)
        cs = c_separable(line_walk(HADAMARD_PARAMS), lambda k: 2 * np.cos(k) ** 2, grid)
        got = rho_from_characteristic([1, 0], cs, "numeric_quadrature").rho.matrix
        want = rho_distributed_example_closed(HADAMARD_PARAMS).rho.matrix
        assert np.max(np.abs(got - want)) <= 1e-8

    def test_sine_weight_against_direct_integration(self):
        # independent oracle: Riemann sum of q2(k) * closed-form C(k)
        p = U2Params(0.8, 0.25, -0.6)
        n = 4096
        grid = QuadratureGrid(n, 1)
        got = c_separable(line_walk(p), lambda k: 2 * np.sin(k) ** 2, grid).matrix
        ks = grid.nodes[:, 0]
        want = sum(2 * np.sin(k) ** 2 * c_of_k_u2(p, k).matrix for k in ks) / n
        assert np.max(np.abs(got - want)) <= 1e-10

    def test_bad_normalization_rejected(self):
        grid = QuadratureGrid(256, 1)
        with pytest.raises(NormalizationError):
            c_separable(line_walk(HADAMARD_PARAMS), lambda k: 2.0, grid)
        with pytest.raises(NormalizationError):
            c_separable(line_walk(HADAMARD_PARAMS), lambda k: np.cos(k), grid)

    def test_kind_tags(self):
        grid = QuadratureGrid(64, 1)
        spec = line_walk(HADAMARD_PARAMS)
        assert c_local(spec, grid).kind == "integrated_local"
        assert c_separable(spec, lambda k: 1.0, grid).kind == "integrated_separable"
        assert characteristic_at_k(spec, 0.1).kind == "pointwise"
