import json
import math

import pytest

from ancrelay.cli import main


def write_config(tmp_path, obj, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def single_relay_ecgal(ps=1.0):
    return {
        "scenario_id": "one-relay",
        "ecgal": {
            "type": "ecgal",
            "layers": [1],
            "hop_gains": [1.0, 1.0],
            "source_power": ps,
            "noise_variance": 1.0,
            "relay_powers": [[1.0]],
        },
    }


def read_rows(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestRateCommand:
    def test_unit_single_relay_rate(self, tmp_path, capsys):
        cfg = write_config(tmp_path, single_relay_ecgal())
        assert main(["rate", "--config", cfg]) == 0
        out = capsys.readouterr().out
        header, row = out.strip().split("\n")
        cells = dict(zip(header.split(","), row.split(",")))
        # unit parameters: cap^2 = 1/2, SNR = 1/3
        assert float(cells["snr"]) == pytest.approx(1.0 / 3.0, rel=1e-12)
        assert float(cells["rate_bits"]) == pytest.approx(
            0.5 * math.log2(1 + 1.0 / 3.0), rel=1e-12
        )
        assert cells["solver"] == "ecgal"

    def test_zero_source_power(self, tmp_path, capsys):
        cfg = write_config(tmp_path, single_relay_ecgal(ps=0.0))
        assert main(["rate", "--config", cfg]) == 0
        out = capsys.readouterr().out
        row = out.strip().split("\n")[1]
        assert float(row.split(",")[5]) == 0.0  # rate_bits column

    def test_malformed_field_names_field(self, tmp_path, capsys):
        obj = single_relay_ecgal()
        obj["ecgal"]["hop_gain"] = obj["ecgal"].pop("hop_gains")
        cfg = write_config(tmp_path, obj)
        assert main(["rate", "--config", cfg]) == 2
        err = capsys.readouterr().err
        assert "hop_gain" in err

    def test_network_rate_uses_diamond_solver(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "network": {
                "layers": [2],
                "gains": [[[1.0, 2.0]], [[3.0], [4.0]]],
                "source_power": 1.0,
                "noise_variance": 1.0,
                "relay_powers": [[1.0, 1.0]],
            },
        })
        assert main(["rate", "--config", cfg]) == 0
        cells = capsys.readouterr().out.strip().split("\n")[1].split(",")
        assert cells[6] == "diamond"


class TestGapsCommand:
    def test_keep_all_row(self, tmp_path):
        obj = {
            "scenario_id": "sym",
            "ecgal": {
                "type": "ecgal",
                "layers": [4],
                "hop_gains": [1.0, 1.0],
                "source_power": 1e6,
                "noise_variance": 1.0,
                "relay_powers": [[1.0] * 4],
            },
            "k": [2, 4],
        }
        cfg = write_config(tmp_path, obj)
        out = tmp_path / "gaps.csv"
        assert main(["gaps", "--config", cfg, "--out", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 2
        keep_all = rows[1]
        assert float(keep_all["add_gap_bits"]) == pytest.approx(0.0, abs=1e-12)
        assert float(keep_all["mult_gap"]) == pytest.approx(1.0, rel=1e-12)
        assert keep_all["bound_add_ok"] == "true"
        assert keep_all["bound_mult_ok"] == "true"
        assert keep_all["alpha1"] == ""  # inapplicable for symmetric specs
        half = rows[0]
        assert float(half["add_gap_bits"]) <= float(half["add_bound_bits"])
        assert half["bound_add_ok"] == "true"

    def test_diamond_gaps_report_constants(self, tmp_path):
        cfg = write_config(tmp_path, {
            "network": {
                "layers": [3],
                "gains": [[[1.0, 1.5, 2.0]], [[1.0], [0.8], [1.2]]],
                "source_power": 100.0,
                "noise_variance": 1.0,
                "relay_powers": [[1.0, 1.0, 1.0]],
            },
            "k": [1, 2],
        })
        out = tmp_path / "gaps.csv"
        assert main(["gaps", "--config", cfg, "--out", str(out)]) == 0
        rows = read_rows(out)
        assert all(float(r["alpha1"]) >= 1.0 for r in rows)
        assert all(r["a"] == "" for r in rows)
        assert all(r["solver"] == "diamond" for r in rows)

    def test_symmetric_diamond_bound_satisfied_high_power(self, tmp_path):
        cfg = write_config(tmp_path, {
            "network": {
                "layers": [4],
                "gains": [[[1.0] * 4], [[1.0]] * 4],
                "source_power": 1e6,
                "noise_variance": 1.0,
                "relay_powers": [[1.0] * 4],
            },
            "k": [2],
        })
        out = tmp_path / "sym.csv"
        assert main(["gaps", "--config", cfg, "--out", str(out)]) == 0
        row = read_rows(out)[0]
        assert row["bound_add_ok"] == "true"
        assert float(row["alpha1"]) == 1.0

    def test_multilayer_network_rejected(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "network": {
                "layers": [2, 2],
                "gains": [[[1.0, 1.0]], [[1.0, 1.0], [1.0, 1.0]], [[1.0], [1.0]]],
                "source_power": 1.0,
                "noise_variance": 1.0,
                "relay_powers": [[1.0, 1.0], [1.0, 1.0]],
            },
            "k": [1],
        })
        assert main(["gaps", "--config", cfg]) == 2
        assert "ecgal" in capsys.readouterr().err


class TestSweepCommand:
    def sweep_config(self, tmp_path):
        return write_config(tmp_path, {
            "scenario_id": "sweep",
            "ecgal": {
                "type": "ecgal",
                "layers": [3, 3],
                "hop_gains": [1.0, 1.1, 0.9],
                "source_power": 1.0,
                "noise_variance": 1.0,
                "relay_powers": [[1.0] * 3, [1.0] * 3],
            },
            "k": [1, 2],
            "ps_grid": {"start": 1e-4, "stop": 1e4, "points": 5},
            "seed": 11,
        })

    def test_rows_cover_grid_and_k(self, tmp_path):
        cfg = self.sweep_config(tmp_path)
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 10
        assert len({r["Ps_over_sigma2"] for r in rows}) == 5

    def test_byte_identical_reruns(self, tmp_path):
        cfg = self.sweep_config(tmp_path)
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        assert main(["sweep", "--config", cfg, "--out", str(out_a)]) == 0
        assert main(["sweep", "--config", cfg, "--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_json_mirror(self, tmp_path):
        cfg = self.sweep_config(tmp_path)
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--config", cfg, "--out", str(out), "--json"]) == 0
        mirror = tmp_path / "sweep.jsonl"
        lines = mirror.read_text().strip().split("\n")
        assert len(lines) == 10
        parsed = json.loads(lines[0])
        assert parsed["scenario_id"] == "sweep"
        assert isinstance(parsed["add_gap_bits"], float)

    def test_sweep_requires_grid(self, tmp_path, capsys):
        obj = single_relay_ecgal()
        obj["k"] = [1]
        cfg = write_config(tmp_path, obj)
        assert main(["sweep", "--config", cfg]) == 2
        assert "ps_grid" in capsys.readouterr().err

    def test_low_power_ratio_row_matches_two_layer_limit(self, tmp_path):
        import math

        from ancrelay import EcgalSpec, two_layer_ratio

        obj = {
            "scenario_id": "limit",
            "ecgal": {
                "type": "ecgal",
                "layers": [8, 8],
                "hop_gains": [1.0, 1.2, 0.8],
                "source_power": 1.0,
                "noise_variance": 1.0,
                "relay_powers": [[1.0] * 8, [1.0] * 8],
            },
            "k": [2],
            "ps_grid": {"start": 1e-8, "stop": 1e-8, "points": 1},
        }
        cfg = write_config(tmp_path, obj)
        out = tmp_path / "limit.csv"
        assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
        row = read_rows(out)[0]
        spec = EcgalSpec(2, 8, [1.0, 1.2, 0.8], 1.0, 1e-8, 1.0)
        limit = two_layer_ratio(spec, spec.with_relays(2), "low_ps")
        # at vanishing source power the rate ratio approaches the SNR-ratio limit
        assert math.isclose(float(row["mult_gap"]), limit, rel_tol=0.01)


class TestVerifyCommand:
    def test_corrupted_gain_matrix_exits_2(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "network": {
                "layers": [2],
                "gains": [[[1.0, float("nan")]], [[1.0], [1.0]]],
                "source_power": 1.0,
                "noise_variance": 1.0,
                "relay_powers": [[1.0, 1.0]],
            },
        })
        assert main(["verify", "--config", cfg]) == 2
        assert "non-finite" in capsys.readouterr().err

    def test_failed_check_exits_1(self, monkeypatch, capsys):
        from ancrelay import cli
        from ancrelay.verify import CheckResult

        def failing_suite(seed=0, config=None):
            return [CheckResult("forced-failure", False, 1.0, 0.0)]

        monkeypatch.setattr(cli.verify, "run_suite", failing_suite)
        assert main(["verify"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_oversized_oracle_request_exits_3(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "network": {
                "layers": [6],
                "gains": [[[1.0] * 6], [[1.0]] * 6],
                "source_power": 1.0,
                "noise_variance": 1.0,
                "relay_powers": [[1.0] * 6],
            },
            "oracle_resolution": 64,
        })
        assert main(["verify", "--config", cfg]) == 3
        assert "budget" in capsys.readouterr().err


def test_unwritable_output_path(tmp_path, capsys):
    cfg = write_config(tmp_path, single_relay_ecgal())
    missing = tmp_path / "no" / "such" / "dir" / "out.csv"
    assert main(["rate", "--config", cfg, "--out", str(missing)]) == 2
    assert "cannot write output" in capsys.readouterr().err


def test_seed_override_changes_row(tmp_path, capsys):
    cfg = write_config(tmp_path, {
        "network": {
            "layers": [2],
            "gains": [[[1.0, 1.0]], [[1.0], [1.0]]],
            "source_power": 1.0,
            "noise_variance": 1.0,
            "relay_powers": [[1.0, 1.0]],
        },
        "seed": 3,
    })
    assert main(["rate", "--config", cfg, "--seed", "9"]) == 0
    row = capsys.readouterr().out.strip().split("\n")[1]
    assert row.split(",")[7] == "9"  # seed column
