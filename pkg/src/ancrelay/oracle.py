"""Independent brute-force maximisers used to validate the closed-form solvers.

Nothing here shares code with the solvers beyond the SNR evaluation
itself: the grid search enumerates the feasible box directly (handling the
layer-by-layer dependence of the scaling caps by nesting), and the ascent
refiner maximises one coordinate at a time using only generic
ratio-of-quadratics algebra.  The hybrid search (grid, then ascent from
the grid optimum plus seeded random restarts) is the reference optimum for
small networks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .diamond import diamond_optimal
from .network import (
    LayeredNetwork,
    ScalingVector,
    beta_max,
    induced_subnetwork,
    modified_gains,
)
from .rate import destination_snr, rate_from_snr

__all__ = [
    "OracleResult",
    "OracleBudgetError",
    "SubsetChoice",
    "SubsetSearchReport",
    "grid_search",
    "refine_ascent",
    "hybrid_search",
    "best_subset",
    "DEFAULT_GRID_BUDGET",
]

DEFAULT_GRID_BUDGET = 2**30
DEFAULT_SUBSET_BUDGET = 100_000
_CHUNK = 1 << 22


class OracleBudgetError(RuntimeError):
    """Raised when a brute-force search would exceed its evaluation budget."""


@dataclass(frozen=True)
class OracleResult:
    best_beta: ScalingVector
    best_snr: float
    evaluations: int
    method: str
    seed: int | None = None
    history: tuple[float, ...] = ()


def _is_signed(net: LayeredNetwork) -> bool:
    return any(float(g.min()) < 0.0 for g in net.gains)


def _axis(lo_signed: bool, cap: float, resolution: int) -> np.ndarray:
    lo = -cap if lo_signed else 0.0
    return np.linspace(lo, cap, resolution)


def grid_search(
    net: LayeredNetwork,
    resolution: int = 32,
    budget: int = DEFAULT_GRID_BUDGET,
) -> OracleResult:
    """Exhaustive grid over the feasible box, best point returned.

    Each node is gridded over ``[0, beta_max]`` (``[-beta_max, beta_max]``
    when the network has negative gains), with the caps of deeper layers
    re-evaluated for the current prefix, which is exactly the sequential
    feasible set of the power constraints.  Cost is ``resolution**M``.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    cost = resolution**net.num_relays
    if cost > budget:
        raise OracleBudgetError(
            f"grid of {cost} points exceeds oracle budget {budget}"
        )
    signed = _is_signed(net)
    if net.num_layers == 1:
        rows, snr = _grid_single_layer(net, resolution, signed)
    else:
        rows, snr = _grid_layered(net, resolution, signed)
    return OracleResult(
        best_beta=ScalingVector(rows),
        best_snr=snr,
        evaluations=cost,
        method="grid",
    )


def _grid_single_layer(net, resolution, signed):
    hs = net.gains[0][0, :]
    ht = net.gains[1][:, 0]
    caps = beta_max(net, None, 1)
    n = len(hs)
    scale = net.snr_scale()
    c = hs * ht
    e = ht**2
    axes = [_axis(signed, cap, resolution) for cap in caps]

    # broadcast the trailing axes jointly, loop scalar combos of the rest
    rem = max(1, min(n, int(math.log(_CHUNK, resolution))))
    lead = n - rem
    shape = [resolution] * rem
    a_rem = np.zeros(shape)
    d_rem = np.zeros(shape)
    for j in range(rem):
        view = [1] * rem
        view[j] = resolution
        ax = axes[lead + j].reshape(view)
        a_rem = a_rem + c[lead + j] * ax
        d_rem = d_rem + e[lead + j] * ax**2

    best_snr = -1.0
    best_point = None
    for combo in itertools.product(*axes[:lead]):
        a0 = sum(c[i] * combo[i] for i in range(lead))
        d0 = 1.0 + sum(e[i] * combo[i] ** 2 for i in range(lead))
        snr = scale * (a0 + a_rem) ** 2 / (d0 + d_rem)
        idx = int(np.argmax(snr))
        val = float(snr.flat[idx])
        if val > best_snr:
            best_snr = val
            tail = np.unravel_index(idx, shape)
            best_point = list(combo) + [axes[lead + j][tail[j]] for j in range(rem)]
    return [np.array(best_point)], best_snr


def _grid_layered(net, resolution, signed):
    from .network import _layer_inputs

    L = net.num_layers
    ht = net.gains[L][:, 0]
    scale = net.snr_scale()
    best = {"snr": -1.0, "rows": None}
    prefix: list[np.ndarray] = []

    def recurse(layer: int) -> None:
        caps = beta_max(net, ScalingVector(prefix) if prefix else None, layer)
        axes = [_axis(signed, cap, resolution) for cap in caps]
        if layer < L:
            for combo in itertools.product(*axes):
                prefix.append(np.array(combo))
                recurse(layer + 1)
                prefix.pop()
            return
        # last layer: vectorise over the whole layer grid
        s, z = _layer_inputs(net, prefix, L)
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(caps))
        y = mesh * ht
        signal = y @ s
        noise = 1.0 + np.sum(y**2, axis=1)
        if z.shape[0]:
            noise = noise + np.sum((y @ z.T) ** 2, axis=1)
        snr = scale * signal**2 / noise
        idx = int(np.argmax(snr))
        val = float(snr[idx])
        if val > best["snr"]:
            best["snr"] = val
            best["rows"] = [r.copy() for r in prefix] + [mesh[idx].copy()]
    recurse(1)
    return best["rows"], best["snr"]


def _clamp_downstream(net, rows, from_layer):
    for l in range(from_layer, net.num_layers + 1):
        caps = beta_max(net, ScalingVector(rows[: l - 1]), l)
        rows[l - 1] = np.clip(rows[l - 1], -caps, caps)


def refine_ascent(
    net: LayeredNetwork,
    start: ScalingVector,
    tol: float = 1e-10,
    max_sweeps: int = 200,
) -> OracleResult:
    """Coordinate-wise exact maximisation from a feasible starting point.

    As a function of one scaling factor the SNR is a ratio of quadratics
    (p + q*b)^2 / (r + s*b + t*b^2); its stationary maximiser is the root
    of a linear equation, so each coordinate step is exact.  Moves are
    accepted only when the full SNR improves (deeper layers are re-clipped
    to their shifted caps first), giving a monotone sweep history.
    """
    rows = [np.array(r, dtype=float) for r in start.rows]
    _clamp_downstream(net, rows, 1)
    evals = 0

    def true_snr(r):
        nonlocal evals
        evals += 1
        return destination_snr(net, ScalingVector(r)).snr

    snr = true_snr(rows)
    history = [snr]
    L = net.num_layers
    scale = net.snr_scale()
    for _ in range(max_sweeps):
        prev = snr
        for l in range(1, L + 1):
            caps = beta_max(net, ScalingVector(rows[: l - 1]) if l > 1 else None, l)
            for i in range(net.layer_sizes[l - 1]):
                lo, hi = -caps[i], caps[i]
                saved = rows[l - 1][i]

                def probe(x):
                    nonlocal evals
                    rows[l - 1][i] = x
                    mg = modified_gains(net, ScalingVector(rows))
                    evals += 1
                    return mg.h_s, mg.noise_amplification()

                p, r0 = probe(0.0)
                h1, t1 = probe(1.0)
                hm, tm = probe(-1.0)
                rows[l - 1][i] = saved
                q = h1 - p
                s_lin = (t1 - tm) / 2.0
                t_quad = (t1 + tm) / 2.0 - r0

                def fit(x):
                    den = r0 + s_lin * x + t_quad * x * x
                    return scale * (p + q * x) ** 2 / den if den > 0 else -math.inf

                candidates = [hi, lo]  # ties (sign-symmetric nets) prefer +cap
                denom = q * s_lin - 2.0 * p * t_quad
                if q != 0.0 and denom != 0.0:
                    star = (p * s_lin - 2.0 * q * r0) / denom
                    if lo <= star <= hi:
                        candidates.append(star)
                elif q == 0.0 and t_quad > 0.0:
                    vertex = -s_lin / (2.0 * t_quad)
                    if lo <= vertex <= hi:
                        candidates.append(vertex)
                for cand in sorted(candidates, key=fit, reverse=True):
                    if fit(cand) <= fit(saved):
                        break
                    trial = [r.copy() for r in rows]
                    trial[l - 1][i] = cand
                    if l < L:
                        _clamp_downstream(net, trial, l + 1)
                    cand_snr = true_snr(trial)
                    if cand_snr > snr:
                        rows = trial
                        snr = cand_snr
                        break
        history.append(snr)
        if snr - prev <= tol * max(1.0, snr):
            break
    return OracleResult(
        best_beta=ScalingVector(rows),
        best_snr=snr,
        evaluations=evals,
        method="ascent",
        history=tuple(history),
    )


def hybrid_search(
    net: LayeredNetwork,
    resolution: int = 32,
    budget: int = DEFAULT_GRID_BUDGET,
    seed: int = 0,
    starts: int = 8,
    tol: float = 1e-10,
) -> OracleResult:
    """Grid search refined by ascent, plus seeded random restarts."""
    grid = grid_search(net, resolution, budget)
    evals = grid.evaluations
    best = refine_ascent(net, grid.best_beta, tol)
    evals += best.evaluations
    if grid.best_snr > best.best_snr:  # ascent is monotone; defensive only
        best = grid

    signed = _is_signed(net)
    rng = np.random.default_rng(seed)
    for _ in range(starts):
        rows: list[np.ndarray] = []
        for l in range(1, net.num_layers + 1):
            caps = beta_max(net, ScalingVector(rows) if rows else None, l)
            lo = -caps if signed else np.zeros_like(caps)
            rows.append(rng.uniform(lo, caps))
        restart = refine_ascent(net, ScalingVector(rows), tol)
        evals += restart.evaluations
        if restart.best_snr > best.best_snr:
            best = restart
    return OracleResult(
        best_beta=best.best_beta,
        best_snr=best.best_snr,
        evaluations=evals,
        method="hybrid",
        seed=seed,
    )


@dataclass(frozen=True)
class SubsetChoice:
    per_layer: tuple[tuple[int, ...], ...]
    snr: float
    rate: float


@dataclass(frozen=True)
class SubsetSearchReport:
    mode: str
    k: int
    choices: tuple[SubsetChoice, ...]
    best: SubsetChoice
    worst: SubsetChoice
    trace: tuple[str, ...] = ()


def _subnet_rate(net, per_layer, resolution, budget, seed):
    sub = induced_subnetwork(net, per_layer)
    if sub.num_layers == 1:
        snr = diamond_optimal(sub).snr
    else:
        snr = hybrid_search(sub, resolution=resolution, budget=budget, seed=seed).best_snr
    return SubsetChoice(per_layer=per_layer, snr=snr, rate=rate_from_snr(snr))


def best_subset(
    net: LayeredNetwork,
    k: int,
    mode: str = "exhaustive",
    max_subsets: int = DEFAULT_SUBSET_BUDGET,
    resolution: int = 16,
    budget: int = DEFAULT_GRID_BUDGET,
    seed: int = 0,
) -> SubsetSearchReport:
    """Search over k-relay-per-layer selections.

    ``exhaustive`` evaluates every per-layer combination (budget-guarded);
    the greedy modes build a single-layer selection by adding the most
    valuable relay (or dropping the least costly one) at a time and record
    their decision trace.
    """
    if not all(1 <= k <= n for n in net.layer_sizes):
        raise ValueError(f"k={k} must fit every layer of {net.layer_sizes}")

    if mode == "exhaustive":
        count = math.prod(math.comb(n, k) for n in net.layer_sizes)
        if count > max_subsets:
            raise OracleBudgetError(
                f"{count} subset combinations exceed cap {max_subsets}"
            )
        layer_combos = [
            [tuple(c) for c in itertools.combinations(range(n), k)]
            for n in net.layer_sizes
        ]
        choices = [
            _subnet_rate(net, per_layer, resolution, budget, seed)
            for per_layer in itertools.product(*layer_combos)
        ]
        best = max(choices, key=lambda c: c.rate)
        worst = min(choices, key=lambda c: c.rate)
        return SubsetSearchReport(mode=mode, k=k, choices=tuple(choices),
                                  best=best, worst=worst)

    if mode not in ("greedy_add", "greedy_drop"):
        raise ValueError(f"unknown subset mode {mode!r}")
    if net.num_layers != 1:
        raise ValueError("greedy selection is defined for single-layer networks")

    n = net.layer_sizes[0]
    trace: list[str] = []
    if mode == "greedy_add":
        selected: list[int] = []
        while len(selected) < k:
            scored = [
                (_subnet_rate(net, (tuple(sorted(selected + [j])),),
                              resolution, budget, seed), j)
                for j in range(n) if j not in selected
            ]
            choice, j = max(scored, key=lambda cj: cj[0].rate)
            selected.append(j)
            trace.append(f"add relay {j}: rate {choice.rate:.6g}")
        final = _subnet_rate(net, (tuple(sorted(selected)),), resolution, budget, seed)
    else:
        selected = list(range(n))
        while len(selected) > k:
            scored = [
                (_subnet_rate(net, (tuple(sorted(s for s in selected if s != j)),),
                              resolution, budget, seed), j)
                for j in selected
            ]
            choice, j = max(scored, key=lambda cj: cj[0].rate)
            selected.remove(j)
            trace.append(f"drop relay {j}: rate {choice.rate:.6g}")
        final = _subnet_rate(net, (tuple(sorted(selected)),), resolution, budget, seed)
    return SubsetSearchReport(
        mode=mode, k=k, choices=(final,), best=final, worst=final, trace=tuple(trace)
    )
