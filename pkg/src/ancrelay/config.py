"""JSON-compatible description files for networks, ECGAL specs, and scenarios.

Network file (all fields required, unknown fields rejected):

    {
      "layers": [2],                   relay counts per layer
      "gains": [[[1.0, 2.0]],          L+1 row-major matrices
                [[3.0], [4.0]]],
      "source_power": 1.0,
      "noise_variance": 1.0,
      "relay_powers": [[1.0, 1.0]]     per layer, per relay
    }

An ECGAL file uses the same schema with a ``"type": "ecgal"`` discriminator
and a ``hop_gains`` list (h_0 .. h_L) replacing the full matrices; the
layer sizes and relay powers must then be uniform.

A scenario file wraps one ``network`` or ``ecgal`` object together with
command parameters: ``k`` (list), ``ps_grid`` ({start, stop, points, log}),
``oracle_budget``, ``oracle_resolution``, ``seed``, ``scenario_id``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .ecgal import EcgalSpec, to_layered_network
from .network import LayeredNetwork, validate_network

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "parse_network",
    "parse_ecgal",
    "parse_model",
    "parse_scenario",
    "load_scenario",
]


class ConfigError(ValueError):
    """Malformed description file; the message names the offending field."""


def _require_fields(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = set(obj) - required - optional
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"{where}: missing field(s) {sorted(missing)}")


def _number(obj, field, where):
    v = obj[field]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}: field '{field}' must be a number")
    return float(v)


def parse_network(obj: dict, where: str = "network") -> LayeredNetwork:
    _require_fields(
        obj,
        {"layers", "gains", "source_power", "noise_variance", "relay_powers"},
        {"type"},
        where,
    )
    if obj.get("type", "network") != "network":
        raise ConfigError(f"{where}: field 'type' must be 'network'")
    try:
        net = LayeredNetwork(
            layer_sizes=obj["layers"],
            gains=[np.asarray(g, dtype=float) for g in obj["gains"]],
            source_power=_number(obj, "source_power", where),
            noise_variance=_number(obj, "noise_variance", where),
            relay_powers=[np.asarray(p, dtype=float) for p in obj["relay_powers"]],
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    return net


def parse_ecgal(obj: dict, where: str = "ecgal") -> EcgalSpec:
    _require_fields(
        obj,
        {"type", "layers", "hop_gains", "source_power", "noise_variance",
         "relay_powers"},
        set(),
        where,
    )
    if obj["type"] != "ecgal":
        raise ConfigError(f"{where}: field 'type' must be 'ecgal'")
    layers = obj["layers"]
    if (not isinstance(layers, list) or not layers
            or any(not isinstance(n, int) or n < 1 for n in layers)):
        raise ConfigError(f"{where}: field 'layers' must be a list of positive ints")
    if len(set(layers)) != 1:
        raise ConfigError(f"{where}: field 'layers' must be uniform for an ECGAL network")
    powers = obj["relay_powers"]
    shape_ok = (
        isinstance(powers, list)
        and len(powers) == len(layers)
        and all(isinstance(row, list) and len(row) == layers[0] for row in powers)
    )
    if not shape_ok:
        raise ConfigError(
            f"{where}: field 'relay_powers' must be a {len(layers)}x{layers[0]} list of lists"
        )
    try:
        flat = [float(p) for row in powers for p in row]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: field 'relay_powers' must hold numbers") from exc
    if len(set(flat)) != 1:
        raise ConfigError(f"{where}: field 'relay_powers' must be uniform for an ECGAL network")
    try:
        spec = EcgalSpec(
            layers=len(layers),
            relays=layers[0],
            hop_gains=obj["hop_gains"],
            relay_power=flat[0],
            source_power=_number(obj, "source_power", where),
            noise_variance=_number(obj, "noise_variance", where),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    if not all(math.isfinite(h) for h in spec.hop_gains):
        raise ConfigError(f"{where}: field 'hop_gains' must hold finite numbers")
    if not (math.isfinite(spec.relay_power) and math.isfinite(spec.source_power)
            and math.isfinite(spec.noise_variance)):
        raise ConfigError(f"{where}: powers and noise_variance must be finite")
    return spec


def parse_model(obj: dict, where: str = "model"):
    """Dispatch on the ``type`` discriminator (default: plain network)."""
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    if obj.get("type") == "ecgal":
        return parse_ecgal(obj, where)
    return parse_network(obj, where)


@dataclass(frozen=True)
class ScenarioConfig:
    """One scenario: a model plus the command parameters."""

    scenario_id: str
    network: LayeredNetwork | None
    ecgal: EcgalSpec | None
    k_values: tuple[int, ...]
    ps_values: tuple[float, ...] | None
    oracle_budget: int | None
    oracle_resolution: int
    seed: int | None

    def model_network(self) -> LayeredNetwork:
        """The scenario's network, expanding an ECGAL spec when needed."""
        if self.network is not None:
            return self.network
        return to_layered_network(self.ecgal)


def _parse_ps_grid(obj: dict) -> tuple[float, ...]:
    _require_fields(obj, {"start", "stop", "points"}, {"log"}, "ps_grid")
    start = _number(obj, "start", "ps_grid")
    stop = _number(obj, "stop", "ps_grid")
    points = obj["points"]
    if not isinstance(points, int) or points < 1:
        raise ConfigError("ps_grid: field 'points' must be a positive int")
    log = obj.get("log", True)
    if not isinstance(log, bool):
        raise ConfigError("ps_grid: field 'log' must be a boolean")
    if points == 1:
        return (start,)
    if log:
        if start <= 0 or stop <= 0:
            raise ConfigError("ps_grid: log spacing requires positive start/stop")
        values = np.logspace(math.log10(start), math.log10(stop), points)
    else:
        values = np.linspace(start, stop, points)
    return tuple(float(v) for v in values)


def parse_scenario(obj: dict) -> ScenarioConfig:
    _require_fields(
        obj,
        set(),
        {"scenario_id", "network", "ecgal", "k", "ps_grid", "oracle_budget",
         "oracle_resolution", "seed"},
        "scenario",
    )
    if ("network" in obj) == ("ecgal" in obj):
        raise ConfigError("scenario: provide exactly one of 'network' or 'ecgal'")

    net = parse_network(obj["network"]) if "network" in obj else None
    spec = parse_ecgal(obj["ecgal"]) if "ecgal" in obj else None
    if net is not None:
        violations = validate_network(net)
        if violations:
            raise ConfigError("network: " + "; ".join(violations))
        n_min = min(net.layer_sizes)
    else:
        n_min = spec.relays

    k_values: tuple[int, ...] = ()
    if "k" in obj:
        ks = obj["k"]
        if isinstance(ks, int):
            ks = [ks]
        if not isinstance(ks, list) or not ks or any(not isinstance(k, int) for k in ks):
            raise ConfigError("scenario: field 'k' must be an int or list of ints")
        for k in ks:
            if not 1 <= k <= n_min:
                raise ConfigError(f"scenario: k={k} outside [1, {n_min}]")
        k_values = tuple(ks)

    ps_values = _parse_ps_grid(obj["ps_grid"]) if "ps_grid" in obj else None

    budget = obj.get("oracle_budget")
    if budget is not None and (not isinstance(budget, int) or budget < 1):
        raise ConfigError("scenario: field 'oracle_budget' must be a positive int")
    resolution = obj.get("oracle_resolution", 32)
    if not isinstance(resolution, int) or resolution < 2:
        raise ConfigError("scenario: field 'oracle_resolution' must be an int >= 2")
    seed = obj.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int) or seed < 0):
        raise ConfigError("scenario: field 'seed' must be a non-negative int")
    scenario_id = obj.get("scenario_id", "scenario")
    if not isinstance(scenario_id, str):
        raise ConfigError("scenario: field 'scenario_id' must be a string")

    return ScenarioConfig(
        scenario_id=scenario_id,
        network=net,
        ecgal=spec,
        k_values=k_values,
        ps_values=ps_values,
        oracle_budget=budget,
        oracle_resolution=resolution,
        seed=seed,
    )


def load_scenario(path: str) -> ScenarioConfig:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_scenario(obj)
