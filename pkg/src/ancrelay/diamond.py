"""Single-relay-layer ("diamond") network: exact solver and gap bounds.

For one layer of N parallel relays the destination SNR for a scaling
vector ``b`` is

    SNR = (P_s / sigma^2) * (sum_i h_si b_i h_it)^2 / (1 + sum_i b_i^2 h_it^2)

The interior stationarity conditions have no feasible solution except the
zero-signal global minimum, so the maximum lies on one of the N
hyperplanes ``b_u = beta_max_u``.  On each hyperplane the remaining
coordinates have the closed form of :func:`hyperplane_solution`; the
constrained optimum is obtained by clipping that point into the feasible
box and running exact coordinate ascent, then taking the best hyperplane.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .network import (
    LayeredNetwork,
    ScalingVector,
    beta_max,
    induced_subnetwork,
)
from .rate import rate_from_snr

__all__ = [
    "DiamondSolution",
    "DiamondGapBounds",
    "EmpiricalGapReport",
    "SubsetRate",
    "DegenerateRelayError",
    "DegenerateAsymmetryError",
    "diamond_snr",
    "hyperplane_solution",
    "unconstrained_hyperplane_snr",
    "diamond_optimal",
    "diamond_gap_bounds",
    "empirical_gap",
    "harmonic_number",
]

ASCENT_TOL = 1e-10
_TIE_REL = 1e-12


class DegenerateRelayError(ValueError):
    """A hyperplane pivot relay has zero source gain, destination gain, or cap."""


class DegenerateAsymmetryError(ValueError):
    """Zero minimum gains make the asymmetry constants undefined."""


@dataclass(frozen=True)
class DiamondSolution:
    """Constrained optimum returned by :func:`diamond_optimal`.

    ``u_star`` is the selected boundary relay (``None`` if every relay is
    degenerate), ``unconstrained_snr`` the hyperplane optimum ignoring the
    other relays' caps (an upper bound on ``snr``), and ``clipped`` the
    relays whose hyperplane value violated its cap and was clipped.
    """

    u_star: int | None
    beta: ScalingVector
    snr: float
    unconstrained_snr: float
    clipped: tuple[int, ...]
    degenerate: bool = False


@dataclass(frozen=True)
class DiamondGapBounds:
    """Relay-selection gap bounds for using k of N relays.

    ``alpha1``/``alpha2`` quantify gain asymmetry (1 for symmetric
    networks), ``gamma = 1 / (max beta_max * max |h_it|)^2``.  Additive
    bounds are in bits; ``additive`` is the minimum of the direct and
    indirect forms.
    """

    n_relays: int
    k: int
    alpha1: float
    alpha2: float
    gamma: float
    additive_direct: float
    additive_indirect: float
    additive: float
    multiplicative: float


@dataclass(frozen=True)
class SubsetRate:
    indices: tuple[int, ...]
    snr: float
    rate: float


@dataclass(frozen=True)
class EmpiricalGapReport:
    """Measured rate loss from restricting a diamond to k-relay subsets."""

    k: int
    mode: str
    snr_full: float
    rate_full: float
    subsets: tuple[SubsetRate, ...]
    additive_worst: float
    additive_best: float
    ratio_worst: float
    ratio_best: float


def _components(net: LayeredNetwork):
    if net.num_layers != 1:
        raise ValueError("network is not single-layer")
    hs = net.gains[0][0, :]
    ht = net.gains[1][:, 0]
    return hs, ht


def diamond_snr(net: LayeredNetwork, beta: ScalingVector) -> float:
    """Destination SNR from the explicit single-layer formula."""
    hs, _ = _components(net)
    b = beta.rows[0]
    if len(b) != len(hs):
        raise ValueError("scaling vector length does not match relay count")
    # evaluated with the same primitive ops as the general forward sweep so
    # the closed form and destination_snr agree bitwise
    signal = float(((b * hs) @ net.gains[1])[0])
    noise_col = (np.diag(b) @ net.gains[1])[:, 0]
    return net.snr_scale() * signal**2 / (1.0 + float(np.dot(noise_col, noise_col)))


def _check_pivot(hs, ht, caps, u):
    n = len(hs)
    if not 0 <= u < n:
        raise ValueError(f"relay index {u} out of range 0..{n - 1}")
    if hs[u] * ht[u] == 0.0:
        raise DegenerateRelayError(
            f"relay {u} is degenerate: h_s{u} * h_{u}t == 0"
        )
    if caps[u] <= 0.0:
        raise DegenerateRelayError(f"relay {u} has a zero scaling cap")


def hyperplane_solution(net: LayeredNetwork, u: int) -> ScalingVector:
    """Stationary point on the hyperplane ``b_u = beta_max_u``.

    The pivot relay transmits at its cap; every other relay i is set to

        b_i = (h_si / h_it) * (1 + beta_max_u^2 h_ut^2) / (h_su beta_max_u h_ut)

    No feasibility clipping is applied, so entries may exceed their caps.
    """
    hs, ht = _components(net)
    caps = beta_max(net, None, 1)
    _check_pivot(hs, ht, caps, u)
    zero_ht = [i for i in range(len(hs)) if i != u and ht[i] == 0.0]
    if zero_ht:
        raise ValueError(
            f"zero destination gain at relays {zero_ht}: off-hyperplane "
            "coordinates are undefined"
        )
    bu = caps[u]
    common = (1.0 + bu**2 * ht[u] ** 2) / (hs[u] * bu * ht[u])
    b = hs / ht * common
    b[u] = bu
    return ScalingVector([b])


def unconstrained_hyperplane_snr(net: LayeredNetwork, u: int) -> float:
    """SNR achieved at :func:`hyperplane_solution` if no other cap binds.

    Equals ``(P_s/sigma^2) * (sum_i h_si^2 - h_su^2 / (1 + beta_max_u^2 h_ut^2))``
    and upper-bounds the constrained optimum on every hyperplane.
    """
    hs, ht = _components(net)
    caps = beta_max(net, None, 1)
    _check_pivot(hs, ht, caps, u)
    zero_ht = [i for i in range(len(hs)) if i != u and ht[i] == 0.0]
    if zero_ht:
        raise ValueError(
            f"zero destination gain at relays {zero_ht}: hyperplane point is undefined"
        )
    return _unconstrained_snr(net, hs, ht, caps, u, range(len(hs)))


def _unconstrained_snr(net, hs, ht, caps, u, indices) -> float:
    total = sum(hs[i] ** 2 for i in indices)
    return net.snr_scale() * (
        total - hs[u] ** 2 / (1.0 + caps[u] ** 2 * ht[u] ** 2)
    )


def _ascent_sweeps(hs, ht, caps, scale, b, sweep, tol, max_sweeps=500):
    """Exact coordinate ascent for the single-layer SNR on the cap box.

    Holding the others fixed, the SNR as a function of one coordinate is
    (a + c*b_i)^2 / (d + e*b_i^2), whose maximiser over the reals is
    b* = c*d / (e*a); the box optimum is b* or a box endpoint.
    """
    def snr_of(vec):
        a = float(np.dot(hs * vec, ht))
        d = 1.0 + float(np.dot(vec * ht, vec * ht))
        return scale * a * a / d

    current = snr_of(b)
    for _ in range(max_sweeps):
        previous = current
        for i in sweep:
            a = float(np.dot(hs * b, ht)) - hs[i] * b[i] * ht[i]
            d = 1.0 + float(np.dot(b * ht, b * ht)) - (b[i] * ht[i]) ** 2
            c = hs[i] * ht[i]
            e = ht[i] ** 2
            candidates = [b[i], caps[i], -caps[i]]
            if a != 0.0 and e > 0.0:
                star = c * d / (e * a)
                if -caps[i] <= star <= caps[i]:
                    candidates.append(star)

            def local(x):
                return scale * (a + c * x) ** 2 / (d + e * x * x)

            best_x, best_val = b[i], local(b[i])
            for x in candidates[1:]:
                val = local(x)
                if val > best_val:
                    best_x, best_val = x, val
            b[i] = best_x
        current = snr_of(b)
        if current - previous <= tol * max(1.0, current):
            break
    return b, current


def diamond_optimal(net: LayeredNetwork) -> DiamondSolution:
    """Constrained SNR maximiser for the diamond network.

    Tries every non-degenerate relay u as the boundary pivot: takes the
    hyperplane solution, clips violating coordinates to their caps (sign
    preserved), runs coordinate ascent on the remaining coordinates to
    stationarity, and keeps the best hyperplane.  Ties within 1e-12
    relative SNR resolve to the smaller pivot index.
    """
    hs, ht = _components(net)
    caps = beta_max(net, None, 1)
    n = len(hs)
    active = [i for i in range(n) if hs[i] != 0.0 and ht[i] != 0.0 and caps[i] > 0.0]
    scale = net.snr_scale()

    if not active:
        return DiamondSolution(
            u_star=None,
            beta=ScalingVector.zeros_like(net),
            snr=0.0,
            unconstrained_snr=0.0,
            clipped=(),
            degenerate=True,
        )

    best: DiamondSolution | None = None
    for u in active:
        b = np.zeros(n)
        b[u] = caps[u]
        common = (1.0 + caps[u] ** 2 * ht[u] ** 2) / (hs[u] * caps[u] * ht[u])
        clipped = []
        for i in active:
            if i == u:
                continue
            raw = hs[i] / ht[i] * common
            if abs(raw) > caps[i]:
                clipped.append(i)
                raw = math.copysign(caps[i], raw)
            b[i] = raw
        sweep = [i for i in active if i != u]
        b, achieved = _ascent_sweeps(hs, ht, caps, scale, b, sweep, ASCENT_TOL)
        if best is None or achieved > best.snr * (1.0 + _TIE_REL):
            best = DiamondSolution(
                u_star=u,
                beta=ScalingVector([b]),
                snr=achieved,
                unconstrained_snr=_unconstrained_snr(net, hs, ht, caps, u, active),
                clipped=tuple(clipped),
            )
    return best


def harmonic_number(n: int) -> float:
    """H_n = sum_{i=1}^{n} 1/i, with H_0 = 0."""
    return sum(1.0 / i for i in range(1, n + 1))


def diamond_gap_bounds(net: LayeredNetwork, k: int) -> DiamondGapBounds:
    """Upper bounds on the rate loss from using any k of the N relays.

    The additive bound (bits, high source power) is the minimum of

        direct:   (2 ln(N/k) + ln alpha1) / (2 ln 2)
        indirect: (2 (H_{N-1} - H_{k-1}) + (N - k) ln alpha1) / (2 ln 2)

    and the multiplicative bound (low source power) is
    ``(N/k) * alpha2 * (1 + gamma/k)``.  The asymmetry constants use gain
    magnitudes; the derivation assumes a common relay power cap.
    """
    hs, ht = _components(net)
    n = len(hs)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    hs_abs = np.abs(hs)
    ht_abs = np.abs(ht)
    if hs_abs.min() == 0.0 or ht_abs.min() == 0.0:
        raise DegenerateAsymmetryError("degenerate asymmetry constants: zero minimum gain")
    caps = beta_max(net, None, 1)
    sigma2 = net.noise_variance

    alpha1 = (hs_abs.max() ** 2 * ht_abs.max()) ** 2 / (hs_abs.min() ** 2 * ht_abs.min()) ** 2
    alpha2 = (
        (hs_abs.max() * ht_abs.max()) ** 2
        / (hs_abs.min() * ht_abs.min()) ** 2
        * (hs_abs.max() ** 2 + sigma2)
        / (hs_abs.min() ** 2 + sigma2)
    )
    gamma = 1.0 / (caps.max() * ht_abs.max()) ** 2

    ln2_2 = 2.0 * math.log(2.0)
    direct = (2.0 * math.log(n / k) + math.log(alpha1)) / ln2_2
    indirect = (
        2.0 * (harmonic_number(n - 1) - harmonic_number(k - 1))
        + (n - k) * math.log(alpha1)
    ) / ln2_2
    return DiamondGapBounds(
        n_relays=n,
        k=k,
        alpha1=alpha1,
        alpha2=alpha2,
        gamma=gamma,
        additive_direct=direct,
        additive_indirect=indirect,
        additive=min(direct, indirect),
        multiplicative=(n / k) * alpha2 * (1.0 + gamma / k),
    )


def _ratio(full_rate: float, sub_rate: float) -> float:
    if sub_rate > 0.0:
        return full_rate / sub_rate
    return 1.0 if full_rate == 0.0 else math.inf


def empirical_gap(
    net: LayeredNetwork,
    k: int,
    mode: str = "exhaustive",
    subsets: list[tuple[int, ...]] | None = None,
) -> EmpiricalGapReport:
    """Measured additive and multiplicative gaps against k-relay subnetworks.

    ``exhaustive`` evaluates every C(N, k) subset; ``given`` evaluates the
    provided index tuples.  Worst/best figures are over the evaluated
    subsets (the bounds of :func:`diamond_gap_bounds` must hold for all of
    them).
    """
    hs, _ = _components(net)
    n = len(hs)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    if mode == "exhaustive":
        chosen = [tuple(c) for c in itertools.combinations(range(n), k)]
    elif mode == "given":
        if not subsets:
            raise ValueError("mode='given' requires explicit subsets")
        chosen = []
        for s in subsets:
            s = tuple(sorted(int(i) for i in s))
            if len(s) != k or len(set(s)) != k or not all(0 <= i < n for i in s):
                raise ValueError(f"invalid subset {s} for k={k}, N={n}")
            chosen.append(s)
    else:
        raise ValueError(f"unknown subset mode {mode!r}")

    full = diamond_optimal(net)
    rate_full = rate_from_snr(full.snr)
    results = []
    for s in chosen:
        sub = induced_subnetwork(net, (s,))
        sol = diamond_optimal(sub)
        results.append(SubsetRate(indices=s, snr=sol.snr, rate=rate_from_snr(sol.snr)))
    rates = [r.rate for r in results]
    return EmpiricalGapReport(
        k=k,
        mode=mode,
        snr_full=full.snr,
        rate_full=rate_full,
        subsets=tuple(results),
        additive_worst=rate_full - min(rates),
        additive_best=rate_full - max(rates),
        ratio_worst=_ratio(rate_full, min(rates)),
        ratio_best=_ratio(rate_full, max(rates)),
    )
