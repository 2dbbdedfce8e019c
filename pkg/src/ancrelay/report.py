"""Row construction and CSV/JSON-lines serialisation for scenario runs.

Gap rows use a fixed column order so downstream plotting can rely on it;
cells that do not apply to a model (asymmetry constants for symmetric
specs, layer constants for diamonds) are left empty.  All numeric cells
are written with ``repr`` so they round-trip exactly and output is
byte-identical for a given (config, seed).
"""

from __future__ import annotations

import dataclasses
import json

import numpy as np

from .config import ConfigError, ScenarioConfig
from .diamond import (
    DegenerateAsymmetryError,
    diamond_gap_bounds,
    diamond_optimal,
    empirical_gap,
)
from .ecgal import ecgal_gap_bounds, ecgal_snr, uniform_scaling
from .network import LayeredNetwork
from .oracle import DEFAULT_GRID_BUDGET, hybrid_search
from .rate import rate_from_snr

__all__ = ["GAP_COLUMNS", "RATE_COLUMNS", "rate_rows", "gap_rows",
           "render_csv", "render_jsonl"]

GAP_COLUMNS = [
    "scenario_id", "L", "N", "k", "Ps_over_sigma2",
    "snr_N", "snr_k", "rate_N_bits", "rate_k_bits",
    "add_gap_bits", "mult_gap", "add_bound_bits", "mult_bound",
    "bound_add_ok", "bound_mult_ok",
    "alpha1", "alpha2", "gamma", "a", "b",
    "solver", "seed",
]

RATE_COLUMNS = [
    "scenario_id", "L", "N", "Ps_over_sigma2",
    "snr", "rate_bits", "solver", "seed", "beta",
]


def _with_source_power(net: LayeredNetwork, ps: float) -> LayeredNetwork:
    return dataclasses.replace(net, source_power=ps)


def _ps_list(cfg: ScenarioConfig) -> list[float]:
    if cfg.ps_values is not None:
        return list(cfg.ps_values)
    if cfg.ecgal is not None:
        return [cfg.ecgal.source_power]
    return [cfg.network.source_power]


def _noise_variance(cfg: ScenarioConfig) -> float:
    return cfg.ecgal.noise_variance if cfg.ecgal is not None else cfg.network.noise_variance


def _solve_network(cfg: ScenarioConfig, net: LayeredNetwork):
    """Best scaling vector and SNR for one network at its configured power."""
    if net.num_layers == 1:
        sol = diamond_optimal(net)
        return sol.beta, sol.snr, "diamond"
    if cfg.seed is None:
        raise ConfigError("scenario: field 'seed' is required for oracle-based solving")
    res = hybrid_search(
        net,
        resolution=cfg.oracle_resolution,
        budget=cfg.oracle_budget or DEFAULT_GRID_BUDGET,
        seed=cfg.seed,
    )
    return res.best_beta, res.best_snr, "hybrid"


def rate_rows(cfg: ScenarioConfig) -> list[dict]:
    """One row per source power: optimal SNR, rate, and the scaling vector."""
    rows = []
    for ps in _ps_list(cfg):
        if cfg.ecgal is not None:
            spec = cfg.ecgal.with_source_power(ps)
            snr = ecgal_snr(spec)
            beta = uniform_scaling(spec).to_lists()
            n, L, solver = spec.relays, spec.layers, "ecgal"
        else:
            net = _with_source_power(cfg.network, ps)
            vec, snr, solver = _solve_network(cfg, net)
            beta = vec.to_lists()
            n, L = max(net.layer_sizes), net.num_layers
        rows.append({
            "scenario_id": cfg.scenario_id,
            "L": L,
            "N": n,
            "Ps_over_sigma2": ps / _noise_variance(cfg),
            "snr": snr,
            "rate_bits": rate_from_snr(snr),
            "solver": solver,
            "seed": cfg.seed,
            "beta": json.dumps(beta),
        })
    return rows


def _diamond_gap_row(cfg, net, k, ps):
    gap = empirical_gap(net, k, mode="exhaustive")
    try:
        bounds = diamond_gap_bounds(net, k)
        add_bound, mult_bound = bounds.additive, bounds.multiplicative
        alpha1, alpha2, gamma = bounds.alpha1, bounds.alpha2, bounds.gamma
    except DegenerateAsymmetryError:
        add_bound = mult_bound = alpha1 = alpha2 = gamma = None
    rate_k = min(s.rate for s in gap.subsets)
    snr_k = min(s.snr for s in gap.subsets)
    return {
        "scenario_id": cfg.scenario_id,
        "L": 1,
        "N": net.layer_sizes[0],
        "k": k,
        "Ps_over_sigma2": ps / net.noise_variance,
        "snr_N": gap.snr_full,
        "snr_k": snr_k,
        "rate_N_bits": gap.rate_full,
        "rate_k_bits": rate_k,
        "add_gap_bits": gap.additive_worst,
        "mult_gap": gap.ratio_worst,
        "add_bound_bits": add_bound,
        "mult_bound": mult_bound,
        "bound_add_ok": None if add_bound is None else gap.additive_worst <= add_bound,
        "bound_mult_ok": None if mult_bound is None else gap.ratio_worst <= mult_bound,
        "alpha1": alpha1,
        "alpha2": alpha2,
        "gamma": gamma,
        "a": None,
        "b": None,
        "solver": "diamond",
        "seed": cfg.seed,
    }


def _ecgal_gap_row(cfg, spec, k, ps):
    spec_n = spec.with_source_power(ps)
    spec_k = spec_n.with_relays(k)
    snr_n = ecgal_snr(spec_n)
    snr_k = ecgal_snr(spec_k)
    rate_n, rate_k = rate_from_snr(snr_n), rate_from_snr(snr_k)
    bounds = ecgal_gap_bounds(spec_n, k)
    add_gap = rate_n - rate_k
    mult_gap = rate_n / rate_k if rate_k > 0 else (1.0 if rate_n == 0 else float("inf"))
    return {
        "scenario_id": cfg.scenario_id,
        "L": spec.layers,
        "N": spec.relays,
        "k": k,
        "Ps_over_sigma2": ps / spec.noise_variance,
        "snr_N": snr_n,
        "snr_k": snr_k,
        "rate_N_bits": rate_n,
        "rate_k_bits": rate_k,
        "add_gap_bits": add_gap,
        "mult_gap": mult_gap,
        "add_bound_bits": bounds.additive_bound,
        "mult_bound": bounds.multiplicative_bound,
        "bound_add_ok": add_gap <= bounds.additive_bound,
        "bound_mult_ok": mult_gap <= bounds.multiplicative_bound,
        "alpha1": None,
        "alpha2": None,
        "gamma": None,
        "a": bounds.a,
        "b": bounds.b,
        "solver": "ecgal",
        "seed": cfg.seed,
    }


def gap_rows(cfg: ScenarioConfig, sweep: bool = False) -> list[dict]:
    """Gap rows per (P_s, k); ``sweep`` iterates the configured P_s grid."""
    if not cfg.k_values:
        raise ConfigError("scenario: field 'k' is required for gap reports")
    if cfg.network is not None and cfg.network.num_layers != 1:
        raise ConfigError(
            "scenario: gap bounds need a single-layer network or an ecgal spec"
        )
    if sweep:
        if cfg.ps_values is None:
            raise ConfigError("scenario: field 'ps_grid' is required for sweeps")
        ps_list = list(cfg.ps_values)
    else:
        base = cfg.ecgal.source_power if cfg.ecgal is not None else cfg.network.source_power
        ps_list = [base]

    rows = []
    for ps in ps_list:
        for k in cfg.k_values:
            if cfg.ecgal is not None:
                rows.append(_ecgal_gap_row(cfg, cfg.ecgal, k, ps))
            else:
                net = _with_source_power(cfg.network, ps)
                rows.append(_diamond_gap_row(cfg, net, k, ps))
    return rows


def _plain(value):
    """Coerce numpy scalars to builtins so repr/json round-trip cleanly."""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _cell(value) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(rows: list[dict], columns: list[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            text = _cell(row.get(col))
            if "," in text or '"' in text:
                text = '"' + text.replace('"', '""') + '"'
            cells.append(text)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_jsonl(rows: list[dict]) -> str:
    return "".join(
        json.dumps({k: _plain(v) for k, v in row.items()},
                   sort_keys=True, separators=(",", ":")) + "\n"
        for row in rows
    )
