import math

import numpy as np
import pytest

from ancrelay import LayeredNetwork, ScalingVector, destination_snr, feasibility_check
from ancrelay.network import beta_max
from ancrelay.rate import rate_from_snr
from ancrelay.verify import random_beta, random_network

from conftest import rel_close, symmetric_diamond


def test_single_relay_substitution():
    net = symmetric_diamond(1)
    rep = destination_snr(net, ScalingVector([[1.0]]))
    assert rep.snr == pytest.approx(0.5)
    assert rep.rate == pytest.approx(0.5 * math.log2(1.5))


def test_zero_scaling_gives_zero_rate():
    net = symmetric_diamond(3)
    rep = destination_snr(net, ScalingVector.zeros_like(net))
    assert rep.snr == 0.0
    assert rep.rate == 0.0


def test_two_relay_hand_value():
    net = LayeredNetwork(
        layer_sizes=[2],
        gains=[np.array([[1.0, 2.0]]), np.array([[3.0], [4.0]])],
        source_power=1.0,
        noise_variance=1.0,
        relay_powers=[[1.0, 1.0]],
    )
    rep = destination_snr(net, ScalingVector([[1.0, 1.0]]))
    assert rep.snr == pytest.approx(121.0 / 26.0, rel=1e-15)
    assert rep.signal_gain_sq == pytest.approx(121.0)
    assert rep.noise_amp == pytest.approx(26.0)


def test_report_invariants(rng):
    net = random_network(rng, [2, 3])
    rep = destination_snr(net, random_beta(rng, net))
    assert rep.snr == pytest.approx(
        net.snr_scale() * rep.signal_gain_sq / rep.noise_amp, rel=1e-15
    )
    assert rep.rate == pytest.approx(0.5 * math.log2(1.0 + rep.snr), rel=1e-15)
    assert rep.rate >= 0.0


class TestFeasibility:
    def test_zero_vector_feasible_with_full_slack(self, rng):
        net = random_network(rng, [2, 2])
        rep = feasibility_check(net, ScalingVector.zeros_like(net))
        assert rep.feasible
        for slack, cap in zip(rep.slack, rep.caps):
            np.testing.assert_allclose(slack, cap**2, rtol=1e-15)

    def test_boundary_is_feasible_with_zero_slack(self, rng):
        net = random_network(rng, [2])
        cap = beta_max(net, None, 1)
        rep = feasibility_check(net, ScalingVector([cap]))
        assert rep.feasible
        np.testing.assert_allclose(rep.slack[0], 0.0, atol=1e-18)

    def test_small_relative_violation_detected(self, rng):
        net = random_network(rng, [2])
        cap = beta_max(net, None, 1)
        bumped = cap.copy()
        bumped[1] *= 1.0 + 1e-6
        rep = feasibility_check(net, ScalingVector([bumped]))
        assert not rep.feasible
        assert rep.slack[0][1] < 0.0

    def test_sequential_dependence(self, rng):
        # inflating layer 1 shrinks layer 2 caps, flipping its feasibility
        net = random_network(rng, [2, 2])
        caps1 = beta_max(net, None, 1)
        modest = ScalingVector([0.5 * caps1, np.zeros(2)])
        caps2 = beta_max(net, modest, 2)
        beta = ScalingVector([0.5 * caps1, caps2])
        assert feasibility_check(net, beta).feasible
        inflated = ScalingVector([caps1, caps2])
        assert not feasibility_check(net, inflated).feasible


def test_sign_flip_leaves_snr_unchanged(rng):
    net = random_network(rng, [3, 2], signed=True)
    beta = random_beta(rng, net)
    base = destination_snr(net, beta).snr
    gains = [g.copy() for g in net.gains]
    gains[1][2, :] *= -1.0  # outgoing links of relay (1, 2)
    rows = [r.copy() for r in beta.rows]
    rows[0][2] *= -1.0
    flipped = LayeredNetwork(net.layer_sizes, gains, net.source_power,
                             net.noise_variance, net.relay_powers)
    assert rel_close(destination_snr(flipped, ScalingVector(rows)).snr, base, 1e-12)


def test_rate_monotone_in_snr():
    snrs = np.logspace(-6, 6, 50)
    rates = [rate_from_snr(s) for s in snrs]
    assert all(a < b for a, b in zip(rates, rates[1:]))


def test_rate_and_snr_argmax_agree(rng):
    net = random_network(rng, [2, 2])
    reports = [destination_snr(net, random_beta(rng, net)) for _ in range(50)]
    assert max(range(50), key=lambda i: reports[i].snr) == max(
        range(50), key=lambda i: reports[i].rate
    )
