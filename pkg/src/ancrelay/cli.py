"""Scenario runner: rate, gaps, sweep, and verify commands.

Exit codes: 0 success, 1 verification failure, 2 config or validation
error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import report, verify
from .config import ConfigError, ScenarioConfig, load_scenario
from .network import PathBudgetError, validate_network
from .oracle import OracleBudgetError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ancrelay",
        description="Relay-network rate and simplification-gap scenario runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "rate": "optimal SNR and rate per source power",
        "gaps": "relay-selection gaps and bounds at the configured source power",
        "sweep": "gaps over the configured source-power grid",
        "verify": "run the cross-check suite",
    }
    for name, help_text in specs.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="scenario description file (JSON)",
                         required=name != "verify")
        cmd.add_argument("--out", help="write CSV rows to this path")
        cmd.add_argument("--json", action="store_true",
                         help="emit JSON-lines (next to --out, or instead of CSV on stdout)")
        cmd.add_argument("--seed", type=int, help="override the config seed")
        cmd.add_argument("--oracle-budget", type=int,
                         help="override the oracle evaluation budget")
    return parser


def _apply_overrides(cfg: ScenarioConfig, args) -> ScenarioConfig:
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.oracle_budget is not None:
        updates["oracle_budget"] = args.oracle_budget
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _emit(rows: list[dict], columns: list[str], args) -> None:
    csv_text = report.render_csv(rows, columns)
    if args.out:
        Path(args.out).write_text(csv_text)
        if args.json:
            Path(args.out).with_suffix(".jsonl").write_text(report.render_jsonl(rows))
    elif args.json:
        sys.stdout.write(report.render_jsonl(rows))
    else:
        sys.stdout.write(csv_text)


def _run_verify(args) -> int:
    cfg = None
    if args.config:
        cfg = _apply_overrides(load_scenario(args.config), args)
    results = verify.run_suite(seed=cfg.seed if cfg and cfg.seed is not None else 0,
                               config=cfg)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _run_verify(args)
        cfg = _apply_overrides(load_scenario(args.config), args)
        if cfg.network is not None:
            violations = validate_network(cfg.network)
            if violations:
                print("invalid network: " + "; ".join(violations), file=sys.stderr)
                return EXIT_CONFIG
        if args.command == "rate":
            _emit(report.rate_rows(cfg), report.RATE_COLUMNS, args)
        elif args.command == "gaps":
            _emit(report.gap_rows(cfg, sweep=False), report.GAP_COLUMNS, args)
        elif args.command == "sweep":
            _emit(report.gap_rows(cfg, sweep=True), report.GAP_COLUMNS, args)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OracleBudgetError, PathBudgetError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
