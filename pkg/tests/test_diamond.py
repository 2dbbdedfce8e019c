import math

import numpy as np
import pytest

from ancrelay import (
    DegenerateAsymmetryError,
    ScalingVector,
    beta_max,
    destination_snr,
    diamond_gap_bounds,
    diamond_optimal,
    diamond_snr,
    empirical_gap,
    feasibility_check,
    harmonic_number,
    hyperplane_solution,
    unconstrained_hyperplane_snr,
)
from ancrelay.network import LayeredNetwork
from ancrelay.oracle import grid_search, refine_ascent
from ancrelay.rate import rate_from_snr
from ancrelay.verify import random_beta, random_network

from conftest import random_diamond, rel_close, symmetric_diamond


class TestDiamondSnr:
    def test_zero_vector(self):
        net = symmetric_diamond(3)
        assert diamond_snr(net, ScalingVector.zeros_like(net)) == 0.0

    def test_hand_value(self):
        net = LayeredNetwork(
            layer_sizes=[2],
            gains=[np.array([[1.0, 2.0]]), np.array([[3.0], [4.0]])],
            source_power=1.0,
            noise_variance=1.0,
            relay_powers=[[1.0, 1.0]],
        )
        assert diamond_snr(net, ScalingVector([[1.0, 1.0]])) == pytest.approx(121 / 26)

    def test_equals_general_snr_exactly(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            net = random_network(rng, [int(rng.integers(1, 5))], signed=True)
            beta = random_beta(rng, net)
            assert diamond_snr(net, beta) == destination_snr(net, beta).snr

    def test_cancelling_vector_is_global_minimum(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            net = random_network(rng, [3])
            coeff = net.gains[0][0, :] * net.gains[1][:, 0]
            b = rng.uniform(0.1, 0.5, 3)
            b[0] = -(coeff[1:] @ b[1:]) / coeff[0]
            zeroed = diamond_snr(net, ScalingVector([b]))
            assert zeroed <= 1e-25
            assert zeroed <= diamond_snr(net, random_beta(rng, net))

    def test_requires_single_layer(self, rng):
        net = random_network(rng, [2, 2])
        with pytest.raises(ValueError, match="single-layer"):
            diamond_snr(net, ScalingVector.zeros_like(net))


class TestHyperplaneSolution:
    def test_symmetric_closed_form(self):
        h, g, p, ps, s2 = 1.3, 0.8, 2.0, 1.7, 1.1
        net = symmetric_diamond(3, h=h, g=g, p=p, ps=ps, s2=s2)
        cap = math.sqrt(p / (h**2 * ps + s2))
        point = hyperplane_solution(net, 1)
        expected_off = (1.0 + cap**2 * g**2) / (cap * g**2)
        assert point.rows[0][1] == pytest.approx(cap, rel=1e-15)
        assert point.rows[0][0] == pytest.approx(expected_off, rel=1e-12)
        assert point.rows[0][2] == pytest.approx(expected_off, rel=1e-12)

    def test_single_relay_is_cap(self):
        net = symmetric_diamond(1)
        point = hyperplane_solution(net, 0)
        assert point.rows[0][0] == pytest.approx(beta_max(net, None, 1)[0], rel=1e-15)

    def test_gradient_vanishes_off_pivot(self):
        # derived oracle: central finite differences, step 1e-6 * cap
        rng = np.random.default_rng(3)
        for _ in range(5):
            net = random_network(rng, [3])
            caps = beta_max(net, None, 1)
            for u in range(3):
                point = hyperplane_solution(net, u)
                snr0 = diamond_snr(net, point)
                for i in range(3):
                    if i == u:
                        continue
                    h = 1e-6 * caps[i]
                    hi = [point.rows[0].copy()]
                    hi[0][i] += h
                    lo = [point.rows[0].copy()]
                    lo[0][i] -= h
                    grad = (diamond_snr(net, ScalingVector(hi))
                            - diamond_snr(net, ScalingVector(lo))) / (2 * h)
                    assert abs(grad) * caps[i] / snr0 <= 1e-9

    def test_zero_destination_gain_reported(self):
        net = LayeredNetwork(
            layer_sizes=[2],
            gains=[np.array([[1.0, 1.0]]), np.array([[1.0], [0.0]])],
            source_power=1.0,
            noise_variance=1.0,
            relay_powers=[[1.0, 1.0]],
        )
        with pytest.raises(ValueError, match=r"relays \[1\]"):
            hyperplane_solution(net, 0)

    def test_degenerate_pivot_rejected(self):
        net = LayeredNetwork(
            layer_sizes=[2],
            gains=[np.array([[0.0, 1.0]]), np.array([[1.0], [1.0]])],
            source_power=1.0,
            noise_variance=1.0,
            relay_powers=[[1.0, 1.0]],
        )
        from ancrelay import DegenerateRelayError

        with pytest.raises(DegenerateRelayError):
            hyperplane_solution(net, 0)


class TestUnconstrainedSnr:
    def test_symmetric_closed_form(self):
        h, g, p, ps, s2 = 0.9, 1.4, 1.5, 2.0, 0.7
        n = 4
        net = symmetric_diamond(n, h=h, g=g, p=p, ps=ps, s2=s2)
        cap_sq = p / (h**2 * ps + s2)
        expected = (ps / s2) * (n * h**2 - h**2 / (1.0 + cap_sq * g**2))
        assert unconstrained_hyperplane_snr(net, 2) == pytest.approx(expected, rel=1e-12)

    def test_single_relay_unit_parameters(self):
        net = symmetric_diamond(1)
        assert unconstrained_hyperplane_snr(net, 0) == pytest.approx(1.0 / 3.0)

    def test_below_total_received_power(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            net = random_network(rng, [3])
            cap = net.snr_scale() * float(np.sum(net.gains[0][0, :] ** 2))
            for u in range(3):
                assert unconstrained_hyperplane_snr(net, u) < cap

    def test_matches_direct_evaluation_at_hyperplane_point(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            net = random_network(rng, [int(rng.integers(1, 5))])
            for u in range(net.layer_sizes[0]):
                closed = unconstrained_hyperplane_snr(net, u)
                direct = diamond_snr(net, hyperplane_solution(net, u))
                assert rel_close(closed, direct, 1e-9)


class TestDiamondOptimal:
    def test_high_power_saturates_all_caps(self):
        net = symmetric_diamond(4, ps=1e6)
        sol = diamond_optimal(net)
        caps = beta_max(net, None, 1)
        np.testing.assert_allclose(sol.beta.rows[0], caps, rtol=1e-12)
        assert sol.clipped == tuple(i for i in range(4) if i != sol.u_star)

    def test_low_power_approaches_hyperplane_bound(self):
        # relays rich in power: the clipped point loses almost nothing
        net = symmetric_diamond(2, p=100.0, ps=1e-6)
        sol = diamond_optimal(net)
        assert sol.snr <= sol.unconstrained_snr
        assert (sol.unconstrained_snr - sol.snr) / sol.unconstrained_snr < 0.01

    def test_matches_refined_grid_oracle(self):
        for seed in range(20):
            net = random_diamond(seed, 2)
            sol = diamond_optimal(net)
            grid = grid_search(net, resolution=32)
            refined = refine_ascent(net, grid.best_beta)
            assert rel_close(sol.snr, refined.best_snr, 1e-6)

    def test_solution_is_feasible_and_pivot_at_cap(self):
        for seed in range(10):
            net = random_diamond(seed, 4, ps=[1e-3, 1.0, 1e3][seed % 3])
            sol = diamond_optimal(net)
            assert feasibility_check(net, sol.beta).feasible
            caps = beta_max(net, None, 1)
            assert sol.beta.rows[0][sol.u_star] == caps[sol.u_star]
            assert sol.snr <= sol.unconstrained_snr * (1 + 1e-12)

    def test_signed_gains_match_oracle(self):
        from ancrelay import hybrid_search

        for seed in range(10):
            rng = np.random.default_rng(10_000 + seed)
            net = random_network(rng, [seed % 4 + 1], signed=True,
                                 source_power=[1e-3, 1.0, 1e3][seed % 3])
            sol = diamond_optimal(net)
            oracle = hybrid_search(net, resolution=32, seed=seed)
            assert rel_close(sol.snr, oracle.best_snr, 1e-6)

    def test_inactive_relays_pinned_to_zero(self):
        from ancrelay import hybrid_search

        rng = np.random.default_rng(17)
        g0 = rng.uniform(0.5, 2.0, size=(1, 4))
        g0[0, 1] = 0.0  # no source link
        g1 = rng.uniform(0.5, 2.0, size=(4, 1))
        powers = rng.uniform(0.5, 2.0, 4)
        powers[3] = 0.0  # no transmit power
        net = LayeredNetwork([4], [g0, g1], 1.0, 1.0, [powers])
        sol = diamond_optimal(net)
        assert sol.beta.rows[0][1] == 0.0
        assert sol.beta.rows[0][3] == 0.0
        oracle = hybrid_search(net, resolution=32, seed=0)
        assert rel_close(sol.snr, oracle.best_snr, 1e-6)

    def test_all_degenerate_returns_zero_rate_flag(self):
        net = LayeredNetwork(
            layer_sizes=[2],
            gains=[np.array([[0.0, 1.0]]), np.array([[1.0], [0.0]])],
            source_power=1.0,
            noise_variance=1.0,
            relay_powers=[[1.0, 1.0]],
        )
        sol = diamond_optimal(net)
        assert sol.degenerate
        assert sol.u_star is None
        assert sol.snr == 0.0

    def test_tie_break_prefers_smaller_index(self):
        sol = diamond_optimal(symmetric_diamond(3))
        assert sol.u_star == 0


class TestGapBounds:
    def test_symmetric_constants_are_one(self):
        bounds = diamond_gap_bounds(symmetric_diamond(4), 2)
        assert bounds.alpha1 == pytest.approx(1.0)
        assert bounds.alpha2 == pytest.approx(1.0)

    def test_symmetric_four_relays_k1(self):
        bounds = diamond_gap_bounds(symmetric_diamond(4), 1)
        assert bounds.additive_direct == pytest.approx(2.0, rel=1e-12)
        expected_indirect = harmonic_number(3) / math.log(2)
        assert bounds.additive_indirect == pytest.approx(expected_indirect, rel=1e-12)
        assert bounds.additive == pytest.approx(2.0, rel=1e-12)

    def test_keep_all_relays(self):
        net = symmetric_diamond(5)
        bounds = diamond_gap_bounds(net, 5)
        assert bounds.additive == 0.0
        assert bounds.multiplicative == pytest.approx(
            bounds.alpha2 * (1.0 + bounds.gamma / 5)
        )
        assert bounds.multiplicative >= 1.0

    def test_gamma_definition(self):
        net = random_diamond(3, 3)
        bounds = diamond_gap_bounds(net, 2)
        caps = beta_max(net, None, 1)
        expected = 1.0 / (caps.max() * np.abs(net.gains[1][:, 0]).max()) ** 2
        assert bounds.gamma == pytest.approx(expected, rel=1e-12)

    def test_degenerate_gains_rejected(self):
        net = LayeredNetwork(
            layer_sizes=[2],
            gains=[np.array([[0.0, 1.0]]), np.array([[1.0], [1.0]])],
            source_power=1.0,
            noise_variance=1.0,
            relay_powers=[[1.0, 1.0]],
        )
        with pytest.raises(DegenerateAsymmetryError):
            diamond_gap_bounds(net, 1)

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            diamond_gap_bounds(symmetric_diamond(3), 0)
        with pytest.raises(ValueError):
            diamond_gap_bounds(symmetric_diamond(3), 4)


class TestEmpiricalGap:
    def test_keeping_everything_costs_nothing(self):
        net = random_diamond(1, 3)
        report = empirical_gap(net, 3)
        assert report.additive_worst == pytest.approx(0.0, abs=1e-12)
        assert report.ratio_worst == pytest.approx(1.0, rel=1e-12)

    def test_symmetric_half_selection_within_a_bit(self):
        net = symmetric_diamond(4, ps=1e4)
        report = empirical_gap(net, 2)
        assert report.additive_worst <= math.log2(4 / 2)

    def test_measured_gaps_below_bounds_across_seeds(self):
        # exhaustive sweep is the oracle: every subset of every seeded net
        for seed in range(100):
            net = random_diamond(seed, 4, ps=1e6)
            for k in (1, 2, 3):
                bounds = diamond_gap_bounds(net, k)
                report = empirical_gap(net, k)
                assert report.additive_worst <= bounds.additive + 1e-9

    def test_given_mode_checks_subsets(self):
        net = random_diamond(2, 4)
        report = empirical_gap(net, 2, mode="given", subsets=[(0, 1), (2, 3)])
        assert len(report.subsets) == 2
        with pytest.raises(ValueError, match="invalid subset"):
            empirical_gap(net, 2, mode="given", subsets=[(0, 0)])
