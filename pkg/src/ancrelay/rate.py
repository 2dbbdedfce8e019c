"""Destination SNR and achievable rate for a given scaling vector.

The equivalent one-shot channel is ``y = h_s x + sum h_lj z_lj + z_t``, so
the destination SNR is ``(P_s / sigma^2) * h_s^2 / (1 + sum h_lj^2)`` and
the achievable rate with Gaussian input is ``0.5 * log2(1 + SNR)`` bits per
channel use.  Maximising the rate and maximising the SNR are the same
problem; solvers elsewhere work on the SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .network import (
    LayeredNetwork,
    ScalingVector,
    modified_gains,
    sequential_beta_caps,
)

__all__ = ["SnrReport", "FeasibilityReport", "snr_from_gains", "rate_from_snr",
           "destination_snr", "feasibility_check"]

# relative headroom on beta^2 <= beta_max^2 so boundary solutions survive
# recomputation noise while a 1e-6 relative violation is still rejected
_FEAS_REL_EPS = 1e-9


@dataclass(frozen=True)
class SnrReport:
    """Destination SNR decomposition.

    ``snr = (P_s / sigma^2) * signal_gain_sq / noise_amp`` and
    ``rate = 0.5 * log2(1 + snr)``.
    """

    signal_gain_sq: float
    noise_amp: float
    snr: float
    rate: float


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    slack: tuple[np.ndarray, ...]
    caps: tuple[np.ndarray, ...]


def rate_from_snr(snr: float) -> float:
    """Achievable rate in bits per channel use."""
    return 0.5 * math.log2(1.0 + snr)


def snr_from_gains(net: LayeredNetwork, gains_h_s: float, noise_amp: float) -> float:
    return net.snr_scale() * gains_h_s**2 / noise_amp


def destination_snr(net: LayeredNetwork, beta: ScalingVector) -> SnrReport:
    """SNR and rate at the destination for an arbitrary scaling vector."""
    mg = modified_gains(net, beta)
    signal_gain_sq = mg.h_s**2
    noise_amp = mg.noise_amplification()
    snr = net.snr_scale() * signal_gain_sq / noise_amp
    return SnrReport(
        signal_gain_sq=signal_gain_sq,
        noise_amp=noise_amp,
        snr=snr,
        rate=rate_from_snr(snr),
    )


def feasibility_check(net: LayeredNetwork, beta: ScalingVector) -> FeasibilityReport:
    """Check the per-relay power constraints layer by layer.

    The cap of every node depends on the scaling factors of earlier layers,
    so the caps are evaluated sequentially with ``beta`` itself as prefix.
    Slack is reported as ``beta_max^2 - beta^2`` per node.
    """
    caps = sequential_beta_caps(net, beta)
    slack = []
    feasible = True
    for row, cap in zip(beta.rows, caps):
        cap_sq = cap**2
        slack.append(cap_sq - row**2)
        with np.errstate(invalid="ignore"):
            ok = row**2 <= cap_sq * (1.0 + _FEAS_REL_EPS)
        ok = np.where(np.isinf(cap), True, ok)
        if not np.all(ok):
            feasible = False
    return FeasibilityReport(feasible=feasible, slack=tuple(slack), caps=tuple(caps))
