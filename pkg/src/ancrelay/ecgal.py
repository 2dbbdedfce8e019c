"""Symmetric layered networks with equal gains between adjacent layers.

In an ECGAL network every link between layer ``l`` and ``l+1`` carries the
same gain ``h_l`` (``h_0`` from the source), all relays share one power cap
``P``, and the optimal solution puts every relay of a layer at its common
scaling cap.  That cap obeys a forward recursion, which makes the optimal
destination SNR, the SNR ratio between using all ``N`` relays per layer
and only ``k`` of them, and the regime limits of that ratio all available
in closed form.

A note on the ratio's leading power: writing ``Q_l = m * beta_l * h_l``
and prefix products ``G_l = Q_1 .. Q_{l-1}``, the optimal SNR collapses to

    SNR_m = m * (P_s / sigma^2) * h_s^2 / B_m,
    B_m   = sum_{l=1..L} 1/G_l^2 + m / G_{L+1}^2

so the exact N-vs-k ratio is ``(N/k) * B_k / B_N``.  The bracket terms
``B_m`` match the familiar closed-form expansion, but the leading factor
is ``(N/k)`` for every depth: at high source power the SNR saturates at
the final hop's coherent-combining limit ``m^2 P h_L^2 / sigma^2``, so the
ratio approaches ``(N/k)^2`` there and ``(N/k)`` at low power, regardless
of L.  The regime helpers below follow that exact behaviour (the
correction brackets in ``a`` and ``b`` are unchanged).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .network import LayeredNetwork, ScalingVector

__all__ = [
    "EcgalSpec",
    "EcgalGapBounds",
    "ecgal_betas",
    "ecgal_snr",
    "ecgal_snr_ratio",
    "two_layer_ratio",
    "asymptotic_ratio",
    "ecgal_gap_bounds",
    "gap_constants",
    "to_layered_network",
    "uniform_scaling",
]


@dataclass(frozen=True)
class EcgalSpec:
    """Parameters of an ECGAL network.

    ``hop_gains`` lists ``h_0 .. h_L`` where ``h_0`` connects the source to
    layer 1 and ``h_L`` the last layer to the destination; ``relays`` is
    the number of relays actually used in every layer.
    """

    layers: int
    relays: int
    hop_gains: tuple[float, ...]
    relay_power: float
    source_power: float
    noise_variance: float

    def __init__(self, layers, relays, hop_gains, relay_power, source_power, noise_variance):
        object.__setattr__(self, "layers", int(layers))
        object.__setattr__(self, "relays", int(relays))
        object.__setattr__(self, "hop_gains", tuple(float(h) for h in hop_gains))
        object.__setattr__(self, "relay_power", float(relay_power))
        object.__setattr__(self, "source_power", float(source_power))
        object.__setattr__(self, "noise_variance", float(noise_variance))
        if self.layers < 1:
            raise ValueError("need at least one relay layer")
        if self.relays < 1:
            raise ValueError("need at least one relay per layer")
        if len(self.hop_gains) != self.layers + 1:
            raise ValueError(
                f"expected {self.layers + 1} hop gains, got {len(self.hop_gains)}"
            )
        if self.noise_variance <= 0:
            raise ValueError("noise_variance must be > 0")
        if self.relay_power < 0 or self.source_power < 0:
            raise ValueError("powers must be >= 0")

    def with_relays(self, m: int) -> "EcgalSpec":
        return EcgalSpec(
            self.layers, m, self.hop_gains, self.relay_power,
            self.source_power, self.noise_variance,
        )

    def with_source_power(self, p_s: float) -> "EcgalSpec":
        return EcgalSpec(
            self.layers, self.relays, self.hop_gains, self.relay_power,
            p_s, self.noise_variance,
        )


@dataclass(frozen=True)
class EcgalGapBounds:
    """Asymptotic gap bounds for using k of N relays per layer.

    ``a = h_L^2 * sum_{i=1..L-1} 1/h_i^2`` and ``b`` collects the inverse
    squared gains of the first and last hops scaled by ``sigma^2 / P``
    (the lone hop counted once when L = 1).  ``additive_*`` are in bits;
    the ``*_loose`` fields drop the 1/k - 1/N structure.
    """

    n_relays: int
    k: int
    a: float
    b: float
    additive_bound: float
    additive_loose: float
    multiplicative_bound: float
    multiplicative_loose: float


def _check_pair(spec_n: EcgalSpec, spec_k: EcgalSpec) -> None:
    same = (
        spec_n.layers == spec_k.layers
        and spec_n.hop_gains == spec_k.hop_gains
        and spec_n.relay_power == spec_k.relay_power
        and spec_n.source_power == spec_k.source_power
        and spec_n.noise_variance == spec_k.noise_variance
    )
    if not same:
        raise ValueError("specs must be identical apart from the relay count")


def ecgal_betas(spec: EcgalSpec) -> np.ndarray:
    """Common per-layer scaling caps, computed by the forward recursion.

    Layer l's squared cap is ``(P/sigma^2)`` divided by the received power
    (in noise units) accumulated through the earlier layers:

        beta_l^2 = (P/sigma^2) / (sig_l^2 * P_s/sigma^2 + m * noise_l + 1)

    where ``sig_l = h_0 * prod_{i<l} (m beta_i h_i)`` and ``noise_l`` sums
    the squared amplitudes of earlier relays' noise (empty products are 1,
    empty sums 0, so layer 1 reduces to ``P / (h_0^2 P_s + sigma^2)``).
    """
    m = spec.relays
    ps = spec.source_power / spec.noise_variance
    p_ratio = spec.relay_power / spec.noise_variance
    betas = np.zeros(spec.layers)
    sig = spec.hop_gains[0]
    noise = 0.0
    for l in range(spec.layers):
        beta_sq = p_ratio / (sig**2 * ps + m * noise + 1.0)
        betas[l] = math.sqrt(beta_sq)
        step = betas[l] * spec.hop_gains[l + 1]
        noise = noise * (m * step) ** 2 + step**2
        sig = sig * m * step
    return betas


def ecgal_snr(spec: EcgalSpec) -> float:
    """Optimal destination SNR with every layer at its common cap."""
    m = spec.relays
    ps = spec.source_power / spec.noise_variance
    betas = ecgal_betas(spec)
    sig = spec.hop_gains[0]
    noise = 0.0
    for l in range(spec.layers):
        step = betas[l] * spec.hop_gains[l + 1]
        noise = noise * (m * step) ** 2 + step**2
        sig = sig * m * step
    return ps * sig**2 / (1.0 + m * noise)


def _bracket(spec: EcgalSpec) -> float:
    """B_m = sum_l 1/G_l^2 + m/G_{L+1}^2 with G_l = prod_{j<l} (m beta_j h_j)."""
    m = spec.relays
    betas = ecgal_betas(spec)
    total = 0.0
    g = 1.0
    for l in range(spec.layers):
        total += 1.0 / g**2
        g *= m * betas[l] * spec.hop_gains[l + 1]
    return total + m / g**2


def ecgal_snr_ratio(spec_n: EcgalSpec, spec_k: EcgalSpec) -> float:
    """Closed-form ratio of optimal SNRs with N versus k relays per layer.

    Evaluates ``(N/k) * B_k / B_N`` (see the module docstring); identical
    to ``ecgal_snr(spec_n) / ecgal_snr(spec_k)`` up to rounding.
    """
    _check_pair(spec_n, spec_k)
    n, k = spec_n.relays, spec_k.relays
    return (n / k) * _bracket(spec_k) / _bracket(spec_n)


def two_layer_ratio(spec_n: EcgalSpec, spec_k: EcgalSpec, regime: str) -> float:
    """Source-power limits of the SNR ratio for two relay layers.

    ``regime='high_ps'`` gives the P_s -> infinity limit

        (N/k)^2 * (1 + h2^2/(k h1^2) + s2/(k^2 h1^2 P))
                / (1 + h2^2/(N h1^2) + s2/(N^2 h1^2 P))

    and ``'low_ps'`` the P_s -> 0 limit

        (N/k) * (1 + (s2/(k^2 P)) (1/h1^2 + 1/h2^2 + s2/(k h1^2 h2^2 P)))
              / (same with N)
    """
    _check_pair(spec_n, spec_k)
    if spec_n.layers != 2:
        raise ValueError("two-layer closed forms require exactly 2 relay layers")
    n, k = spec_n.relays, spec_k.relays
    h1, h2 = spec_n.hop_gains[1], spec_n.hop_gains[2]
    p = spec_n.relay_power
    s2 = spec_n.noise_variance

    if regime == "high_ps":
        def term(m):
            return 1.0 + h2**2 / (m * h1**2) + s2 / (m**2 * h1**2 * p)

        return (n / k) ** 2 * term(k) / term(n)
    if regime == "low_ps":
        def term(m):
            inner = 1.0 / h1**2 + 1.0 / h2**2 + s2 / (m * h1**2 * h2**2 * p)
            return 1.0 + s2 / (m**2 * p) * inner

        return (n / k) * term(k) / term(n)
    raise ValueError(f"unknown regime {regime!r}")


def gap_constants(spec: EcgalSpec) -> tuple[float, float]:
    """The (a, b) constants of the regime limits.

    ``a`` sums the inverse squared interior hops scaled by the final hop;
    ``b`` adds the first- and last-hop terms (once, when they coincide at
    L = 1, matching the single-layer limit).
    """
    h = spec.hop_gains
    L = spec.layers
    a = h[L] ** 2 * sum(1.0 / h[i] ** 2 for i in range(1, L))
    s2_over_p = spec.noise_variance / spec.relay_power
    if L == 1:
        b = s2_over_p / h[1] ** 2
    else:
        b = s2_over_p * (1.0 / h[1] ** 2 + 1.0 / h[L] ** 2)
    return a, b


def asymptotic_ratio(spec_n: EcgalSpec, spec_k: EcgalSpec, regime: str) -> float:
    """Large-N, large-k limit of the SNR ratio in the two power regimes.

    high_ps: (N/k)^2 * (1 + a (1/k - 1/N))
    low_ps:  (N/k)   * (1 + b (1/k^2 - 1/N^2))
    """
    _check_pair(spec_n, spec_k)
    n, k = spec_n.relays, spec_k.relays
    a, b = gap_constants(spec_n)
    if regime == "high_ps":
        return (n / k) ** 2 * (1.0 + a * (1.0 / k - 1.0 / n))
    if regime == "low_ps":
        return (n / k) * (1.0 + b * (1.0 / k**2 - 1.0 / n**2))
    raise ValueError(f"unknown regime {regime!r}")


def ecgal_gap_bounds(spec_n: EcgalSpec, k: int) -> EcgalGapBounds:
    """Layer-count-scaled upper bounds on the relay-selection gaps.

    additive (bits):  (2L ln(N/k) + ln(1 + a (1/k - 1/N))) / (2 ln 2)
    multiplicative:   (N/k)^(2L-1) * (1 + b (1/k^2 - 1/N^2))

    with the looser forms replacing the bracketed corrections by
    ``1 + a`` and ``1 + b``.  These are conservative: the exact ratio's
    leading power is lower (see the module docstring), so they hold with
    growing slack as L increases.
    """
    n = spec_n.relays
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    L = spec_n.layers
    a, b = gap_constants(spec_n)
    ln2_2 = 2.0 * math.log(2.0)
    additive = (2.0 * L * math.log(n / k) + math.log1p(a * (1.0 / k - 1.0 / n))) / ln2_2
    additive_loose = (2.0 * L * math.log(n / k) + math.log1p(a)) / ln2_2
    mult = (n / k) ** (2 * L - 1) * (1.0 + b * (1.0 / k**2 - 1.0 / n**2))
    mult_loose = (n / k) ** (2 * L - 1) * (1.0 + b)
    return EcgalGapBounds(
        n_relays=n,
        k=k,
        a=a,
        b=b,
        additive_bound=additive,
        additive_loose=additive_loose,
        multiplicative_bound=mult,
        multiplicative_loose=mult_loose,
    )


def to_layered_network(spec: EcgalSpec) -> LayeredNetwork:
    """Expand the symmetric description into an explicit layered network."""
    m, L = spec.relays, spec.layers
    gains = [np.full((1, m), spec.hop_gains[0])]
    for l in range(1, L):
        gains.append(np.full((m, m), spec.hop_gains[l]))
    gains.append(np.full((m, 1), spec.hop_gains[L]))
    return LayeredNetwork(
        layer_sizes=[m] * L,
        gains=gains,
        source_power=spec.source_power,
        noise_variance=spec.noise_variance,
        relay_powers=[np.full(m, spec.relay_power) for _ in range(L)],
    )


def uniform_scaling(spec: EcgalSpec, betas=None) -> ScalingVector:
    """Scaling vector with each layer's common value broadcast to its relays."""
    if betas is None:
        betas = ecgal_betas(spec)
    return ScalingVector([np.full(spec.relays, b) for b in betas])
