import json
import math
from pathlib import Path

import pytest

from rotocool import Scheme, build_plan, get_species, step_count
from rotocool.cli import main
from rotocool.reports import population_from_row, read_table, steps_from_rows

CSF_PI_JMAX10 = """
[species]
name = "CsF"

[plan]
scheme = "pi"
jmax_x2 = 20

[simulate]
temperature_k = 1.0
"""

CSF_REFERENCE = """
[species]
name = "CsF"

[cavity]
q_factor = 1e6

[plan]
scheme = "pi"
jmax_x2 = 10

[simulate]
temperature_k = 1.0
"""

OH_PI = """
[species]
name = "OH"

[cavity]
q_factor = 1e3

[plan]
scheme = "pi"
jmax_x2 = 19

[simulate]
temperature_k = 10.0
"""


def run(tmp_path: Path, command: str, config_text: str, *extra: str) -> int:
    config = tmp_path / "run.toml"
    config.write_text(config_text)
    out = tmp_path / "out"
    return main([command, "--config", str(config), "--out", str(out), *extra])


class TestLevels:
    def test_csf_table(self, tmp_path):
        assert run(tmp_path, "levels", CSF_PI_JMAX10) == 0
        rows = read_table(tmp_path / "out" / "levels.csv")
        assert len(rows) == 121  # sum of 2J+1 for J = 0..10
        weights = [float(r["thermal_weight"]) for r in rows]
        assert sum(weights) == pytest.approx(1.0, abs=1e-9)
        assert (tmp_path / "out" / "levels.png").exists()

    def test_oh_half_integer_rows(self, tmp_path):
        config = OH_PI.replace("jmax_x2 = 19", "jmax_x2 = 9")
        assert run(tmp_path, "levels", config) == 0
        rows = read_table(tmp_path / "out" / "levels.csv")
        assert len(rows) == 2 + 4 + 6 + 8 + 10
        assert all(int(r["two_j"]) % 2 == 1 for r in rows)

    def test_missing_species_exits_1(self, tmp_path, capsys):
        bad = CSF_PI_JMAX10.replace('name = "CsF"', 'name = "XYZ"')
        assert run(tmp_path, "levels", bad) == 1
        assert "XYZ" in capsys.readouterr().err

    def test_no_plot_flag(self, tmp_path):
        assert run(tmp_path, "levels", CSF_PI_JMAX10, "--no-plot") == 0
        assert not (tmp_path / "out" / "levels.png").exists()


class TestPlan:
    def test_csf_pi_jmax10(self, tmp_path):
        assert run(tmp_path, "plan", CSF_PI_JMAX10) == 0
        rows = read_table(tmp_path / "out" / "plan.csv")
        assert len(rows) == 10
        fields = [float(r["e_field_v_per_m"]) for r in rows]
        assert 1e7 <= max(fields) < 1e8
        summary = json.loads((tmp_path / "out" / "plan_summary.json").read_text())
        assert summary["step_count"] == 10
        assert summary["validation_flags"] == []
        assert (tmp_path / "out" / "plan_fields.png").exists()

    def test_oh_fields_warn_but_pass(self, tmp_path):
        assert run(tmp_path, "plan", OH_PI) == 0
        rows = read_table(tmp_path / "out" / "plan.csv")
        fields = [float(r["e_field_v_per_m"]) for r in rows]
        assert 1e9 <= max(fields) < 1e11
        summary = json.loads((tmp_path / "out" / "plan_summary.json").read_text())
        assert any(flag.startswith("warn:field_feasibility") for flag in summary["validation_flags"])

    def test_oh_hard_limit_exits_3(self, tmp_path):
        config = OH_PI.replace("jmax_x2 = 19", "jmax_x2 = 19\nefield_max_v_per_m = 1e8")
        assert run(tmp_path, "plan", config) == 3

    def test_manual_cavity_infeasible_exits_2(self, tmp_path, capsys):
        config = """
[species]
name = "CsF"

[cavity]
mode = "manual"
lambda_m = 5.44e-3

[plan]
scheme = "A"
jmax_x2 = 10
"""
        assert run(tmp_path, "plan", config) == 2
        assert "infeasible" in capsys.readouterr().err

    def test_plan_csv_round_trips(self, tmp_path, csf):
        assert run(tmp_path, "plan", CSF_REFERENCE) == 0
        rows = read_table(tmp_path / "out" / "plan.csv")
        rebuilt = steps_from_rows(rows, csf)
        plan = build_plan(csf, Scheme.PI_ONLY, 10, q_factor=1e6)
        assert rebuilt == plan.steps

    def test_json_format(self, tmp_path, csf):
        assert run(tmp_path, "plan", CSF_REFERENCE, "--format", "json") == 0
        rows = read_table(tmp_path / "out" / "plan.json")
        rebuilt = steps_from_rows(rows, csf)
        plan = build_plan(csf, Scheme.PI_ONLY, 10, q_factor=1e6)
        assert rebuilt == plan.steps


class TestSimulate:
    def test_csf_reference_total_time(self, tmp_path):
        assert run(tmp_path, "simulate", CSF_REFERENCE) == 0
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["total_time_s"] == pytest.approx(148.3, rel=5e-2)
        assert summary["scheme"] == "pi"
        assert len(summary["per_stage_residuals"]) == 5
        assert (tmp_path / "out" / "timeline.png").exists()

    def test_stage_cycles_doubling_squares_residuals(self, tmp_path):
        run(tmp_path, "simulate", CSF_REFERENCE)
        base = json.loads((tmp_path / "out" / "summary.json").read_text())
        config8 = CSF_REFERENCE + "\nstage_cycles = 8.0\n"
        other = tmp_path / "other"
        config_path = tmp_path / "run8.toml"
        config_path.write_text(config8)
        assert main(["simulate", "--config", str(config_path), "--out", str(other)]) == 0
        doubled = json.loads((other / "summary.json").read_text())
        for a, b in zip(base["per_stage_residuals"], doubled["per_stage_residuals"]):
            assert b == pytest.approx(a**2, abs=1e-9)

    def test_planck_reduces_ground_fraction(self, tmp_path):
        run(tmp_path, "simulate", CSF_REFERENCE)
        cold = json.loads((tmp_path / "out" / "summary.json").read_text())
        warm_cfg = CSF_REFERENCE + "\nnbar = \"planck\"\n"
        config_path = tmp_path / "warm.toml"
        config_path.write_text(warm_cfg.replace("temperature_k = 1.0", "temperature_k = 4.0"))
        other = tmp_path / "warm"
        assert main(["simulate", "--config", str(config_path), "--out", str(other)]) == 0
        warm = json.loads((other / "summary.json").read_text())
        assert warm["ground_fraction"] < cold["ground_fraction"]

    def test_timeline_rows_are_populations(self, tmp_path, csf):
        run(tmp_path, "simulate", CSF_REFERENCE)
        rows = read_table(tmp_path / "out" / "timeline.csv")
        for row in (rows[0], rows[-1]):
            weights = population_from_row(row, two_omega=0)
            assert sum(weights.values()) == pytest.approx(1.0, abs=1e-9)
        assert float(rows[0]["time_s"]) == 0.0
        times = [float(r["time_s"]) for r in rows]
        assert times == sorted(times)


class TestSweep:
    def test_q_factor_scaling(self, tmp_path):
        config = CSF_REFERENCE + "\n[sweep]\naxis = \"q_factor\"\nvalues = [1e4, 1e5, 1e6]\n"
        assert run(tmp_path, "sweep", config) == 0
        rows = read_table(tmp_path / "out" / "sweep.csv")
        times = [float(r["total_time_s"]) for r in rows]
        assert times[0] / times[1] == pytest.approx(10.0, rel=1e-9)
        assert times[1] / times[2] == pytest.approx(10.0, rel=1e-9)
        assert (tmp_path / "out" / "sweep.png").exists()

    def test_jmax_step_counts(self, tmp_path, csf):
        config = CSF_REFERENCE + "\n[sweep]\naxis = \"jmax_x2\"\nvalues = [4, 6, 8, 10]\n"
        assert run(tmp_path, "sweep", config) == 0
        rows = read_table(tmp_path / "out" / "sweep.csv")
        for row in rows:
            expected = step_count(Scheme.PI_ONLY, int(float(row["value"])), 0)
            assert int(row["step_count"]) == expected

    def test_missing_sweep_section_exits_1(self, tmp_path, capsys):
        assert run(tmp_path, "sweep", CSF_REFERENCE) == 1
        assert "sweep" in capsys.readouterr().err

    def test_empty_values_exit_1(self, tmp_path):
        config = CSF_REFERENCE + "\n[sweep]\naxis = \"q_factor\"\nvalues = []\n"
        assert run(tmp_path, "sweep", config) == 1


class TestDeterminismAndEnv:
    def test_identical_config_identical_bytes(self, tmp_path):
        config = tmp_path / "run.toml"
        config.write_text(CSF_REFERENCE)
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        for out in (out_a, out_b):
            assert main(["simulate", "--config", str(config), "--out", str(out), "--no-plot"]) == 0
            assert main(["plan", "--config", str(config), "--out", str(out), "--no-plot"]) == 0
        for name in ("timeline.csv", "summary.json", "plan.csv", "plan_summary.json"):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_out_env_override(self, tmp_path, monkeypatch):
        config = tmp_path / "run.toml"
        config.write_text(CSF_REFERENCE)
        env_dir = tmp_path / "from-env"
        monkeypatch.setenv("ROTOCOOL_OUT", str(env_dir))
        assert main(["levels", "--config", str(config), "--out", str(tmp_path / "ignored")]) == 0
        assert (env_dir / "levels.csv").exists()
        assert not (tmp_path / "ignored").exists()

    def test_config_file_missing_exits_1(self, tmp_path, capsys):
        assert main(["levels", "--config", str(tmp_path / "nope.toml")]) == 1
        assert "config error" in capsys.readouterr().err
