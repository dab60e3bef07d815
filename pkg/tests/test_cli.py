import json
import os
import subprocess
import sys

import pytest

from geopotent.cli import PROFILE_HEADER, PULSE_HEADER, main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
GOLDEN = os.path.join(ROOT, "tests", "golden")

GOLDEN_CASES = {
    "direct.csv": ["direct", "--config", "tests/fixtures/earth_config.json"],
    "direct.json": ["direct", "--config", "tests/fixtures/earth_config.json",
                    "--format", "json"],
    "inverse.csv": ["inverse", "--u-inf", "111652000",
                    "--config", "tests/fixtures/earth_config.json"],
    "inverse.json": ["inverse", "--u-inf", "111652000",
                     "--config", "tests/fixtures/earth_config.json",
                     "--format", "json"],
    "profile.csv": ["profile", "--profile", "tests/fixtures/prem20.csv"],
    "anomaly.csv": ["anomaly", "--depth", "5000", "--radius", "500",
                    "--density-contrast", "-2700", "--offsets", "5000,10000",
                    "--u0", "6.258e7", "--g0", "9.823",
                    "--u-inf", "11.1652e7"],
    "pulse.csv": ["pulse", "--schedule",
                  "tests/fixtures/growth_schedule.json",
                  "--times", "0,43200,64800,86400"],
    "pulse.json": ["pulse", "--schedule",
                   "tests/fixtures/growth_schedule.json",
                   "--times", "0,43200,64800,86400", "--format", "json"],
}


def run_to_file(argv, out_path):
    rc = main(argv + ["--out", str(out_path)])
    with open(out_path, "rb") as fh:
        return rc, fh.read()


def parse_csv_report(text):
    """Split a CSV report into (preamble_dict, field_dict, tables)."""
    meta, fields, tables = {}, {}, []
    section = None
    for line in text.splitlines():
        if line.startswith("# "):
            if "=" in line:
                key, value = line[2:].split("=", 1)
                meta[key] = value
            continue
        cells = line.split(",")
        if cells[0] == "field":
            section = "fields"
            continue
        if section == "fields" and len(cells) == 2:
            fields[cells[0]] = cells[1]
            continue
        if section != "table" or not tables or \
                len(cells) != len(tables[-1]["columns"]):
            tables.append({"columns": cells, "rows": []})
            section = "table"
            continue
        tables[-1]["rows"].append(cells)
    return meta, fields, tables


class TestGolden:
    @pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
    def test_matches_frozen_output(self, name, tmp_path, monkeypatch):
        monkeypatch.chdir(ROOT)
        rc, produced = run_to_file(GOLDEN_CASES[name], tmp_path / name)
        assert rc == 0
        with open(os.path.join(GOLDEN, name), "rb") as fh:
            assert produced == fh.read()

    @pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
    def test_byte_stable_across_runs(self, name, tmp_path, monkeypatch):
        monkeypatch.chdir(ROOT)
        _, first = run_to_file(GOLDEN_CASES[name], tmp_path / "a")
        _, second = run_to_file(GOLDEN_CASES[name], tmp_path / "b")
        assert first == second


class TestFormatConsistency:
    @pytest.mark.parametrize("csv_name,json_name", [
        ("direct.csv", "direct.json"), ("inverse.csv", "inverse.json")])
    def test_csv_values_are_rounded_json_values(self, csv_name, json_name,
                                                tmp_path, monkeypatch):
        monkeypatch.chdir(ROOT)
        _, csv_bytes = run_to_file(GOLDEN_CASES[csv_name], tmp_path / "r.csv")
        _, json_bytes = run_to_file(GOLDEN_CASES[json_name], tmp_path / "r.json")
        _, fields, _ = parse_csv_report(csv_bytes.decode())
        report = json.loads(json_bytes)
        for key, cell in fields.items():
            value = report["result"][key]
            if isinstance(value, str):
                assert cell == value
            else:
                assert float(cell) == float(f"{value:.10g}")

    def test_pulse_rows_consistent(self, tmp_path, monkeypatch):
        monkeypatch.chdir(ROOT)
        _, csv_bytes = run_to_file(GOLDEN_CASES["pulse.csv"], tmp_path / "p.csv")
        _, json_bytes = run_to_file(GOLDEN_CASES["pulse.json"], tmp_path / "p.json")
        report = json.loads(json_bytes)
        lines = [l for l in csv_bytes.decode().splitlines()
                 if not l.startswith("#")]
        assert lines[0] == PULSE_HEADER
        for line, row in zip(lines[1:], report["rows"]):
            for cell, key in zip(line.split(","), PULSE_HEADER.split(",")):
                assert float(cell) == float(f"{row[key]:.10g}")


class TestDirect:
    def test_reproduces_reported_u_infinity(self, capsys):
        assert main(["direct", "--p-g", "2.7230e11"]) == 0
        _, fields, _ = parse_csv_report(capsys.readouterr().out)
        assert abs(float(fields["u_infinity_j_kg"]) / 11.1652e7 - 1.0) < 0.01

    def test_profile_pressure_source(self, capsys, monkeypatch):
        monkeypatch.chdir(ROOT)
        assert main(["direct", "--profile", "tests/fixtures/prem20.csv"]) == 0
        meta, fields, _ = parse_csv_report(capsys.readouterr().out)
        assert meta["inputs.p_g_source"] == "profile_grad_p_max"
        assert float(meta["inputs.p_g"]) == pytest.approx(1.7026e11, rel=1e-3)

    def test_missing_pressure_source(self, capsys):
        assert main(["direct"]) == 2
        assert "pressure source" in capsys.readouterr().err

    def test_flag_beats_config_override(self, capsys, monkeypatch):
        monkeypatch.chdir(ROOT)
        assert main(["direct", "--config", "tests/fixtures/earth_config.json",
                     "--p-g", "1.36e11"]) == 0
        meta, _, _ = parse_csv_report(capsys.readouterr().out)
        assert meta["inputs.p_g_source"] == "flag"
        assert float(meta["inputs.p_g"]) == 1.36e11


class TestInverse:
    def test_reported_value(self, capsys):
        assert main(["inverse", "--u-inf", "11.1652e7"]) == 0
        _, fields, tables = parse_csv_report(capsys.readouterr().out)
        assert float(fields["r0_m"]) == pytest.approx(3.5710e6, rel=1e-3)
        assert fields["trend"] == "decreasing_outward"
        cmb = next(r for r in tables[0]["rows"] if r[0] == "CMB")
        assert cmb[3] == "true"

    def test_homogeneous_identity_run(self, capsys):
        assert main(["inverse", "--u-inf", "6.258e7"]) == 0
        _, fields, _ = parse_csv_report(capsys.readouterr().out)
        assert float(fields["r0_m"]) == pytest.approx(6.371e6, rel=1e-4)

    def test_exact_homogeneous_value_classified_uniform(self, capsys):
        gm = 6.6743e-11 * 5.9737e24
        assert main(["inverse", "--u-inf", repr(gm / 6.371e6)]) == 0
        _, fields, _ = parse_csv_report(capsys.readouterr().out)
        assert fields["trend"] == "uniform"

    def test_negative_rejected(self, capsys):
        assert main(["inverse", "--u-inf", "-1"]) == 2
        assert "positive" in capsys.readouterr().err


class TestProfileCommand:
    def test_fixture_report(self, capsys, monkeypatch):
        monkeypatch.chdir(ROOT)
        assert main(["profile", "--profile", "tests/fixtures/prem20.csv"]) == 0
        _, fields, tables = parse_csv_report(capsys.readouterr().out)
        assert float(fields["mean_density_kg_m3"]) == pytest.approx(5515.0,
                                                                    rel=0.01)
        assert fields["homogeneity_holds"] == "false"
        icb = next(r for r in tables[0]["rows"] if r[0] == "ICB")
        assert float(icb[2]) == pytest.approx(1.05, abs=0.05)

    def test_malformed_header_names_expected(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("radius,rho,p\n0,1,1\n")
        assert main(["profile", "--profile", str(bad)]) == 2
        err = capsys.readouterr().err
        assert PROFILE_HEADER in err
        assert ":1:" in err

    def test_row_errors_carry_line_numbers(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text(PROFILE_HEADER
                       + "\n0,5515,10\n1e6,5515,9\nbogus,5515,8\n2e6,5515,7\n")
        assert main(["profile", "--profile", str(bad)]) == 2
        assert ":4:" in capsys.readouterr().err

    def test_non_monotonic_row_line_number(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text(PROFILE_HEADER
                       + "\n0,5515,10\n2e6,5515,9\n1e6,5515,8\n3e6,5515,7\n")
        assert main(["profile", "--profile", str(bad)]) == 2
        assert ":4:" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert main(["profile", "--profile", "no_such.csv"]) == 2


class TestAnomalyCommand:
    def test_rows_and_crossover(self, capsys):
        assert main(["anomaly", "--depth", "5000", "--radius", "500",
                     "--density-contrast", "-2700",
                     "--offsets", "1000,5000"]) == 2  # 1000 < depth
        capsys.readouterr()
        assert main(["anomaly", "--depth", "5000", "--radius", "500",
                     "--density-contrast", "-2700",
                     "--offsets", "5000,10000"]) == 0
        _, _, tables = parse_csv_report(capsys.readouterr().out)
        rows = tables[0]["rows"]
        columns = tables[0]["columns"]
        ratio = columns.index("k_ratio")
        dvs = columns.index("delta_v_s_m_s")
        assert float(rows[0][ratio]) == pytest.approx(5.0, rel=1e-12)
        assert float(rows[1][ratio]) == pytest.approx(10.0, rel=1e-12)
        assert float(rows[0][dvs]) > 0.0

    def test_unburied_source_rejected(self, capsys):
        assert main(["anomaly", "--depth", "400", "--radius", "500",
                     "--density-contrast", "-2700", "--offsets", "5000"]) == 2

    def test_domain_error_exit_code(self, capsys):
        assert main(["anomaly", "--depth", "1000", "--radius", "999",
                     "--density-contrast", "1e12", "--offsets", "1000"]) == 3
        assert "domain error" in capsys.readouterr().err


class TestPulseCommand:
    def test_exact_header_after_preamble(self, capsys, monkeypatch):
        monkeypatch.chdir(ROOT)
        assert main(["pulse", "--schedule",
                     "tests/fixtures/growth_schedule.json",
                     "--num-samples", "5"]) == 0
        lines = [l for l in capsys.readouterr().out.splitlines()
                 if not l.startswith("#")]
        assert lines[0] == PULSE_HEADER
        assert len(lines) == 6

    def test_schedule_error_names_segment(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({
            "source_mass": 1e12, "observer_radius": 5000.0,
            "host_density_contrast": -2700.0,
            "segments": [
                {"t_start": 0, "t_end": 10, "kind": "constant",
                 "params": {"radius": 500.0}},
                {"t_start": 20, "t_end": 30, "kind": "constant",
                 "params": {"radius": 500.0}},
            ]}))
        assert main(["pulse", "--schedule", str(bad)]) == 2
        assert "segment 1" in capsys.readouterr().err

    def test_unknown_segment_kind(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({
            "source_mass": 1e12, "observer_radius": 5000.0,
            "host_density_contrast": -2700.0,
            "segments": [{"t_start": 0, "t_end": 10, "kind": "wobble",
                          "params": {"radius": 500.0}}]}))
        assert main(["pulse", "--schedule", str(bad)]) == 2
        assert "segment 0" in capsys.readouterr().err

    def test_times_outside_span_rejected(self, capsys, monkeypatch):
        monkeypatch.chdir(ROOT)
        assert main(["pulse", "--schedule",
                     "tests/fixtures/growth_schedule.json",
                     "--times", "0,1e9"]) == 2


class TestConfigHandling:
    def test_env_var_supplies_config(self, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"p_g_override": 1.5e11}))
        monkeypatch.setenv("GEOPOTENT_CONFIG", str(cfg))
        assert main(["direct"]) == 0
        meta, _, _ = parse_csv_report(capsys.readouterr().out)
        assert float(meta["inputs.p_g"]) == 1.5e11

    def test_flag_wins_over_env(self, tmp_path, capsys, monkeypatch):
        env_cfg = tmp_path / "env.json"
        env_cfg.write_text(json.dumps({"p_g_override": 1.5e11}))
        flag_cfg = tmp_path / "flag.json"
        flag_cfg.write_text(json.dumps({"p_g_override": 2.5e11}))
        monkeypatch.setenv("GEOPOTENT_CONFIG", str(env_cfg))
        assert main(["direct", "--config", str(flag_cfg)]) == 0
        meta, _, _ = parse_csv_report(capsys.readouterr().out)
        assert float(meta["inputs.p_g"]) == 2.5e11

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"p_g_override": 1e11, "typo_key": 1}))
        assert main(["direct", "--config", str(cfg)]) == 2
        assert "typo_key" in capsys.readouterr().err

    def test_inconsistent_gm_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"earth": {"mass": 5.9737e24,
                                             "gm": 4.2e14}}))
        assert main(["direct", "--config", str(cfg), "--p-g", "1e11"]) == 2

    def test_config_sets_output_format(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"p_g_override": 1e11,
                                   "output_format": "json"}))
        assert main(["direct", "--config", str(cfg)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "direct"


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "geopotent", "direct", "--p-g", "2.723e11"],
            capture_output=True, text=True, cwd=ROOT)
        assert proc.returncode == 0
        assert "u_infinity_j_kg" in proc.stdout

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "geopotent", "unknowncmd"],
            capture_output=True, text=True, cwd=ROOT)
        assert proc.returncode == 2
