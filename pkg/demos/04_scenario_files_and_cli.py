#!/usr/bin/env python3
"""Scenario files and the command-line runner.

Writes two description files (an explicit diamond and a symmetric layered
spec), runs the CLI commands in-process, and shows the CSV/JSON-lines
output they produce.
"""

import json
import pathlib
import tempfile

from ancrelay.cli import main

workdir = pathlib.Path(tempfile.mkdtemp(prefix="ancrelay-demo-"))

diamond_scenario = {
    "scenario_id": "asymmetric-diamond",
    "network": {
        "layers": [3],
        "gains": [[[1.0, 1.5, 0.7]], [[1.2], [0.6], [1.0]]],
        "source_power": 100.0,
        "noise_variance": 1.0,
        "relay_powers": [[1.0, 1.0, 1.0]],
    },
    "k": [1, 2],
    "ps_grid": {"start": 1e-3, "stop": 1e3, "points": 5, "log": True},
    "seed": 0,
}

ecgal_scenario = {
    "scenario_id": "two-layer-symmetric",
    "ecgal": {
        "type": "ecgal",
        "layers": [6, 6],
        "hop_gains": [1.0, 1.2, 0.8],
        "source_power": 1.0,
        "noise_variance": 1.0,
        "relay_powers": [[1.0] * 6, [1.0] * 6],
    },
    "k": [2, 3],
    "ps_grid": {"start": 1e-4, "stop": 1e4, "points": 5, "log": True},
    "seed": 0,
}

diamond_path = workdir / "diamond.json"
diamond_path.write_text(json.dumps(diamond_scenario, indent=2))
ecgal_path = workdir / "ecgal.json"
ecgal_path.write_text(json.dumps(ecgal_scenario, indent=2))

print(f"scenario files in {workdir}\n")

print("== rate: optimal SNR and rate per source power ==")
main(["rate", "--config", str(diamond_path)])

print("\n== gaps: selection cost at the configured source power ==")
main(["gaps", "--config", str(ecgal_path)])

print("\n== sweep: gaps over the source-power grid (CSV + JSON mirror) ==")
out = workdir / "sweep.csv"
main(["sweep", "--config", str(ecgal_path), "--out", str(out), "--json"])
print(f"rows written to {out}")
for line in out.read_text().splitlines()[:4]:
    print(" ", line)
print("  ...")
mirror = out.with_suffix(".jsonl")
print(f"JSON-lines mirror {mirror}, first row:")
print(" ", mirror.read_text().splitlines()[0])

print("\n== verify: cross-check suite, solver vs oracle on this model first ==")
code = main(["verify", "--config", str(diamond_path)])
print(f"verify exit code: {code}")
