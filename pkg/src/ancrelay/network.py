"""Layered amplify-and-forward relay network model.

A network has a single source (layer 0), ``L`` layers of relays, and a
single destination (layer ``L+1``).  Every source-to-destination path
crosses each relay layer exactly once, so all signal copies arrive with
the same delay and the stationary end-to-end channel is characterised by
*modified* channel gains: the sum, over all equal-delay paths, of the
products of link gains and relay scaling factors along the path.

This module holds the network/scaling-vector data types, the dynamic
program that computes modified gains in one forward sweep, the explicit
path-enumeration reference used to cross-check it, and the per-node
scaling caps ``beta_max`` implied by relay transmit-power limits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LayeredNetwork",
    "ScalingVector",
    "ModifiedGains",
    "PathBudgetError",
    "validate_network",
    "modified_gains",
    "enumerate_paths",
    "beta_max",
    "sequential_beta_caps",
    "total_path_count",
    "induced_subnetwork",
]

DEFAULT_PATH_CAP = 1_000_000


class PathBudgetError(RuntimeError):
    """Raised when explicit path enumeration would exceed its cap."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)  # always copy so callers' arrays stay writable
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class LayeredNetwork:
    """Directed layered network with real amplitude gains.

    Parameters
    ----------
    layer_sizes : relay counts ``n_1 .. n_L`` (source/destination are
        implicit singleton layers).
    gains : ``L+1`` matrices; ``gains[l]`` has shape ``(n_l, n_{l+1})``
        with ``n_0 = n_{L+1} = 1``.  Zero entries model absent links.
    source_power : transmit power of the source symbol.
    noise_variance : per-node Gaussian noise variance (> 0).
    relay_powers : per-layer arrays of per-relay transmit power caps.
    """

    layer_sizes: tuple[int, ...]
    gains: tuple[np.ndarray, ...]
    source_power: float
    noise_variance: float
    relay_powers: tuple[np.ndarray, ...]

    def __init__(self, layer_sizes, gains, source_power, noise_variance, relay_powers):
        object.__setattr__(self, "layer_sizes", tuple(int(n) for n in layer_sizes))
        object.__setattr__(
            self, "gains", tuple(_freeze(np.atleast_2d(g)) for g in gains)
        )
        object.__setattr__(self, "source_power", float(source_power))
        object.__setattr__(self, "noise_variance", float(noise_variance))
        object.__setattr__(
            self, "relay_powers", tuple(_freeze(np.atleast_1d(p)) for p in relay_powers)
        )

    @property
    def num_layers(self) -> int:
        """Number of relay layers L."""
        return len(self.layer_sizes)

    @property
    def num_relays(self) -> int:
        """Total relay count M."""
        return sum(self.layer_sizes)

    def snr_scale(self) -> float:
        """P_s / sigma^2."""
        return self.source_power / self.noise_variance


@dataclass(frozen=True)
class ScalingVector:
    """Per-relay amplification factors, one row per relay layer."""

    rows: tuple[np.ndarray, ...]

    def __init__(self, rows):
        object.__setattr__(self, "rows", tuple(_freeze(np.atleast_1d(r)) for r in rows))

    @classmethod
    def zeros_like(cls, net: LayeredNetwork) -> "ScalingVector":
        return cls([np.zeros(n) for n in net.layer_sizes])

    @classmethod
    def uniform(cls, net: LayeredNetwork, per_layer) -> "ScalingVector":
        """One common value per layer, broadcast across the layer's relays."""
        per_layer = np.atleast_1d(per_layer)
        return cls([np.full(n, per_layer[l]) for l, n in enumerate(net.layer_sizes)])

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def to_lists(self) -> list[list[float]]:
        return [[float(v) for v in r] for r in self.rows]


@dataclass(frozen=True)
class ModifiedGains:
    """End-to-end amplitude gains of the equivalent one-shot channel.

    ``h_s`` multiplies the source symbol; ``h_noise[l][j]`` multiplies the
    noise injected at relay ``j`` of layer ``l+1`` (0-indexed rows), each
    already including that relay's own scaling factor.
    """

    h_s: float
    h_noise: tuple[np.ndarray, ...]

    def noise_amplification(self) -> float:
        """1 + sum of squared per-relay noise gains."""
        return 1.0 + sum(float(np.dot(r, r)) for r in self.h_noise)


def validate_network(net: LayeredNetwork) -> list[str]:
    """Check structural invariants; returns a list of violations (empty if valid)."""
    violations: list[str] = []
    L = net.num_layers
    if L < 1:
        violations.append("network must have at least one relay layer")
        return violations
    if any(n < 1 for n in net.layer_sizes):
        violations.append("layer sizes must be positive")
    if len(net.gains) != L + 1:
        violations.append(
            f"expected {L + 1} gain matrices for {L} relay layers, got {len(net.gains)}"
        )
    else:
        dims = (1,) + net.layer_sizes + (1,)
        for l, g in enumerate(net.gains):
            if g.shape != (dims[l], dims[l + 1]):
                violations.append(
                    f"dimension chain break at layer {l}: gain matrix is "
                    f"{g.shape[0]}x{g.shape[1]}, expected {dims[l]}x{dims[l + 1]}"
                )
            if not np.all(np.isfinite(g)):
                violations.append(f"non-finite gain in matrix {l}")
    if not net.noise_variance > 0:
        violations.append("noise_variance must be > 0")
    if net.source_power < 0 or not math.isfinite(net.source_power):
        violations.append("source_power must be finite and >= 0")
    if len(net.relay_powers) != L:
        violations.append(
            f"expected {L} relay power rows, got {len(net.relay_powers)}"
        )
    else:
        for l, (p, n) in enumerate(zip(net.relay_powers, net.layer_sizes)):
            if len(p) != n:
                violations.append(
                    f"relay power row {l} has {len(p)} entries, expected {n}"
                )
            if np.any(p < 0) or not np.all(np.isfinite(p)):
                violations.append(f"relay powers in layer {l + 1} must be finite and >= 0")
    return violations


def _check_beta_shape(net: LayeredNetwork, beta: ScalingVector) -> None:
    if beta.shape != net.layer_sizes:
        raise ValueError(
            f"scaling vector shape {beta.shape} does not match layers {net.layer_sizes}"
        )


def _layer_inputs(net: LayeredNetwork, rows, upto: int):
    """Amplitudes arriving at the inputs of layer ``upto`` (1-based; L+1 = destination).

    Returns ``(s, Z)`` where ``s[j]`` is the accumulated source amplitude at
    node ``j`` and row ``r`` of ``Z`` is the amplitude of the r-th upstream
    relay's injected noise (relays counted in layer-major order).  Only
    ``rows[0 .. upto-2]`` are read.
    """
    s = net.gains[0][0, :].copy()
    Z = np.zeros((0, net.layer_sizes[0]))
    for l in range(1, upto):
        b = np.asarray(rows[l - 1], dtype=float)
        H = net.gains[l]
        # outputs of layer l: scaled signal front plus one fresh noise row per relay
        W = np.vstack([Z * b, np.diag(b)])
        s = (b * s) @ H
        Z = W @ H
    return s, Z


def modified_gains(net: LayeredNetwork, beta: ScalingVector) -> ModifiedGains:
    """Forward-sweep computation of all modified channel gains.

    One pass over the layers propagates the source amplitude and, for every
    relay, the amplitude its injected noise has accumulated so far; the cost
    is O(M * sum_l n_l n_{l+1}).  The result equals the explicit path sums
    of :func:`enumerate_paths`.
    """
    _check_beta_shape(net, beta)
    s, Z = _layer_inputs(net, beta.rows, net.num_layers + 1)
    flat = Z[:, 0]
    rows = []
    offset = 0
    for n in net.layer_sizes:
        rows.append(flat[offset : offset + n])
        offset += n
    return ModifiedGains(h_s=float(s[0]), h_noise=tuple(rows))


def total_path_count(net: LayeredNetwork) -> int:
    """Number of path products the explicit enumeration visits."""
    sizes = net.layer_sizes
    count = math.prod(sizes)
    for l in range(len(sizes)):
        count += sizes[l] * math.prod(sizes[l + 1 :])
    return count


def enumerate_paths(
    net: LayeredNetwork, beta: ScalingVector, max_paths: int = DEFAULT_PATH_CAP
) -> ModifiedGains:
    """Reference implementation of the modified gains by explicit path sums.

    Deliberately naive: iterates every source-to-destination tuple and every
    relay-to-destination tuple, multiplying link gains and scaling factors
    along the way.  Used as the independent oracle for :func:`modified_gains`.

    Raises
    ------
    PathBudgetError
        if the total number of paths exceeds ``max_paths``.
    """
    _check_beta_shape(net, beta)
    count = total_path_count(net)
    if count > max_paths:
        raise PathBudgetError(f"{count} paths exceed enumeration cap {max_paths}")

    sizes = net.layer_sizes
    L = net.num_layers
    rows = beta.rows

    h_s = 0.0
    for path in itertools.product(*(range(n) for n in sizes)):
        p = net.gains[0][0, path[0]] * rows[0][path[0]]
        for l in range(1, L):
            p *= net.gains[l][path[l - 1], path[l]] * rows[l][path[l]]
        p *= net.gains[L][path[L - 1], 0]
        h_s += p

    h_noise = []
    for l in range(1, L + 1):
        layer_gains = np.zeros(sizes[l - 1])
        for j in range(sizes[l - 1]):
            acc = 0.0
            for tail in itertools.product(*(range(n) for n in sizes[l:])):
                p = rows[l - 1][j]
                prev = j
                for off, node in enumerate(tail):
                    p *= net.gains[l + off][prev, node] * rows[l + off][node]
                    prev = node
                p *= net.gains[L][prev, 0]
                acc += p
            layer_gains[j] = acc
        h_noise.append(layer_gains)
    return ModifiedGains(h_s=float(h_s), h_noise=tuple(h_noise))


def received_powers(net: LayeredNetwork, rows, layer: int) -> np.ndarray:
    """Received power at each node of ``layer`` given scaling rows for earlier layers."""
    s, Z = _layer_inputs(net, rows, layer)
    return (
        net.source_power * s**2
        + net.noise_variance * (1.0 + np.sum(Z**2, axis=0))
    )


def beta_max(
    net: LayeredNetwork, beta_prefix: ScalingVector | None, layer: int
) -> np.ndarray:
    """Scaling caps for the nodes of ``layer`` (1-based).

    The cap of node i is ``sqrt(P_i / P_R,i)`` where ``P_R,i`` is the power
    it receives given the scaling factors already fixed for layers before
    ``layer``.  A node receiving nothing at all (zero power) is reported as
    unconstrained via ``+inf``.
    """
    if not 1 <= layer <= net.num_layers:
        raise ValueError(f"layer {layer} out of range 1..{net.num_layers}")
    if layer == 1:
        rows: tuple = ()
    else:
        if beta_prefix is None:
            raise ValueError("beta_prefix required for layers beyond the first")
        rows = beta_prefix.rows
        if len(rows) < layer - 1:
            raise ValueError(
                f"incomplete prefix: need layers 1..{layer - 1}, got {len(rows)}"
            )
        for l in range(layer - 1):
            if len(rows[l]) != net.layer_sizes[l]:
                raise ValueError(f"prefix row {l} has wrong length")
    p_r = received_powers(net, rows, layer)
    powers = net.relay_powers[layer - 1]
    caps = np.full_like(p_r, np.inf)
    positive = p_r > 0
    caps[positive] = np.sqrt(powers[positive] / p_r[positive])
    return caps


def sequential_beta_caps(net: LayeredNetwork, beta: ScalingVector) -> list[np.ndarray]:
    """Caps for every layer, computed in order using ``beta`` itself as prefix."""
    _check_beta_shape(net, beta)
    return [beta_max(net, beta, l) for l in range(1, net.num_layers + 1)]


def induced_subnetwork(
    net: LayeredNetwork, keep: tuple[tuple[int, ...], ...]
) -> LayeredNetwork:
    """Restrict the network to the selected relay indices of each layer."""
    if len(keep) != net.num_layers:
        raise ValueError("need one index tuple per relay layer")
    keep = tuple(tuple(sorted(k)) for k in keep)
    gains = []
    for l, g in enumerate(net.gains):
        rows = keep[l - 1] if l >= 1 else (0,)
        cols = keep[l] if l < net.num_layers else (0,)
        gains.append(g[np.ix_(rows, cols)])
    powers = [net.relay_powers[l][list(keep[l])] for l in range(net.num_layers)]
    return LayeredNetwork(
        layer_sizes=[len(k) for k in keep],
        gains=gains,
        source_power=net.source_power,
        noise_variance=net.noise_variance,
        relay_powers=powers,
    )
