"""Scenario parsing, report rendering, and command exit codes."""

import json

import numpy as np
import pytest

from shipload import LoadingOrder
from shipload.cli import (
    Scenario,
    ScenarioError,
    bundled_scenario_names,
    load_bundled_scenario,
    main,
    parse_scenario,
    scenario_to_json,
)


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    rows = {}
    for line in text.splitlines()[1:]:
        key, _, value = line.partition(",")
        rows[key] = value.strip('"')
    return rows


def table_scalars(text):
    entries = {}
    for line in text.splitlines():
        if not line or line.startswith(" "):
            continue
        parts = line.split(maxsplit=1)
        if len(parts) == 2:
            entries[parts[0]] = parts[1]
    return entries


class TestParseScenario:
    def test_bundled_case_study(self):
        scenario = load_bundled_scenario("clarkson3500.json")
        assert scenario.vessel.beam == 25.0
        assert len(scenario.cargoes) == 4
        assert scenario.include_ballast is True
        assert scenario.mu == 4.0
        assert scenario.water_density == 1.0
        assert scenario.order == LoadingOrder.normal()

    def test_bundled_names(self):
        assert bundled_scenario_names() == ["clarkson3500.json", "coastal_feeder.json"]

    def test_missing_vessel_field(self):
        doc = json.loads(scenario_to_json(load_bundled_scenario("clarkson3500.json")))
        del doc["vessel"]["beam"]
        with pytest.raises(ScenarioError, match="beam"):
            parse_scenario(json.dumps(doc))

    def test_zero_density_cites_positivity(self):
        doc = json.loads(scenario_to_json(load_bundled_scenario("clarkson3500.json")))
        doc["cargoes"][0]["density"] = 0.0
        with pytest.raises(ScenarioError, match=r"cargoes\[0\].*positive"):
            parse_scenario(json.dumps(doc))

    def test_unknown_field_with_location(self):
        with pytest.raises(ScenarioError, match="vessel.beem"):
            parse_scenario('{"vessel": {"beem": 3}, "cargoes": []}')

    def test_syntax_error_reports_position(self):
        with pytest.raises(ScenarioError, match="line 1 column"):
            parse_scenario('{"vessel": }')

    def test_defaults_applied(self):
        text = json.dumps(
            {
                "vessel": {
                    "length": 80.0,
                    "beam": 14.0,
                    "deadweight": 3000.0,
                    "volume_capacity": 4500.0,
                    "light_mass": 1200.0,
                    "light_kg": 1.5,
                },
                "cargoes": [{"label": "grain", "density": 0.75, "freight_rate": 12.0}],
            }
        )
        scenario = parse_scenario(text)
        assert scenario.water_density == 1.0
        assert scenario.include_ballast is True
        assert scenario.order == LoadingOrder.normal()
        assert scenario.mu is None
        assert scenario.solver.multistart_count == 32

    def test_explicit_order_array(self):
        doc = json.loads(scenario_to_json(load_bundled_scenario("clarkson3500.json")))
        doc["order"] = [2, 1, 3, 4]
        scenario = parse_scenario(json.dumps(doc))
        assert scenario.order == LoadingOrder.explicit([1, 0, 2, 3])

    def test_order_length_mismatch(self):
        doc = json.loads(scenario_to_json(load_bundled_scenario("clarkson3500.json")))
        doc["order"] = [1, 2]
        with pytest.raises(ScenarioError, match="4 cargo types"):
            parse_scenario(json.dumps(doc))

    def test_solver_options_parsed(self):
        doc = json.loads(scenario_to_json(load_bundled_scenario("clarkson3500.json")))
        doc["solver"]["multistart_count"] = 8
        doc["solver"]["rng_seed"] = 5
        scenario = parse_scenario(json.dumps(doc))
        assert scenario.solver.multistart_count == 8
        assert scenario.solver.rng_seed == 5

    def test_solver_count_must_be_integer(self):
        doc = json.loads(scenario_to_json(load_bundled_scenario("clarkson3500.json")))
        doc["solver"]["multistart_count"] = 2.5
        with pytest.raises(ScenarioError, match="multistart_count"):
            parse_scenario(json.dumps(doc))

    def test_round_trip_bundled(self):
        for name in bundled_scenario_names():
            scenario = load_bundled_scenario(name)
            assert parse_scenario(scenario_to_json(scenario)) == scenario

    def test_round_trip_variants(self):
        base = load_bundled_scenario("clarkson3500.json")
        import dataclasses

        variants = [
            dataclasses.replace(base, mu=None),
            dataclasses.replace(base, order=LoadingOrder.reverse()),
            dataclasses.replace(base, order=LoadingOrder.explicit([3, 1, 0, 2])),
            dataclasses.replace(base, include_ballast=False),
        ]
        for scenario in variants:
            assert parse_scenario(scenario_to_json(scenario)) == scenario


class TestSolveCommand:
    def test_table_row_matches_case1(self, capsys):
        code, out, err = run_cli(
            capsys, "solve", "clarkson3500.json", "--mu", "4", "--format", "csv"
        )
        assert code == 0
        rows = csv_rows(out)
        assert float(rows["revenue"]) == pytest.approx(234461.89, rel=1e-6)
        assert float(rows["total_load"]) == pytest.approx(45000.0, rel=1e-6)
        assert float(rows["volume_used"]) == pytest.approx(86690.0, rel=1e-3)
        assert rows["status"] == "Optimal"
        assert rows["binding.deadweight"] == "true"
        assert rows["binding.stability"] == "true"
        assert rows["binding.volume"] == "false"
        assert float(rows["multipliers.stability"]) == pytest.approx(0.164, rel=0.1)
        assert "solving" in err

    def test_results_go_to_stdout_errors_to_stderr(self, capsys, tmp_path):
        code, out, err = run_cli(capsys, "solve", str(tmp_path / "missing.json"))
        assert code == 1
        assert out == ""
        assert "error" in err

    def test_mu_required_when_absent(self, capsys, tmp_path):
        doc = json.loads(scenario_to_json(load_bundled_scenario("clarkson3500.json")))
        del doc["mu"]
        path = tmp_path / "nomu.json"
        path.write_text(json.dumps(doc))
        code, out, err = run_cli(capsys, "solve", str(path))
        assert code == 1
        assert "stability margin" in err

    def test_no_ballast_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "clarkson3500.json", "--no-ballast", "--format", "csv"
        )
        assert code == 0
        rows = csv_rows(out)
        assert "loads[3].load" in rows
        assert "loads[4].load" not in rows

    def test_kilotons_scaling(self, capsys):
        _, plain, _ = run_cli(capsys, "solve", "clarkson3500.json", "--format", "csv")
        _, scaled, _ = run_cli(
            capsys, "solve", "clarkson3500.json", "--kilotons", "--format", "csv"
        )
        a, b = csv_rows(plain), csv_rows(scaled)
        assert float(b["total_load"]) == pytest.approx(float(a["total_load"]) / 1000.0)
        assert b["mass_unit"] == "kt"

    def test_explicit_order_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "clarkson3500.json", "--order", "perm=4,3,2,1", "--format", "csv"
        )
        assert code in (0, 2)
        rows = csv_rows(out)
        assert rows["loads[0].label"] == "ballast"
        assert rows["loads[1].label"] == "type4"


class TestClassifyCommand:
    def test_reverse_golden_diagonal(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "clarkson3500.json", "--order", "reverse", "--format", "csv"
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows["definiteness"] == "Indefinite"
        head = [float(rows[f"congruent_diagonal[{i}]"]) for i in range(4)]
        assert np.allclose(head, [1.2222, -0.2222, -0.3333, -0.4167], atol=5e-5)

    def test_normal_is_psd(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "clarkson3500.json", "--format", "csv")
        assert code == 0
        assert csv_rows(out)["definiteness"] == "PositiveSemidefinite"


class TestSensitivityCommand:
    def test_golden_numbers(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "sensitivity",
            "clarkson3500.json",
            "--mu",
            "4",
            "--delta",
            "0.1",
            "--format",
            "csv",
        )
        assert code == 0
        rows = csv_rows(out)
        assert float(rows["predicted_drop"]) == pytest.approx(984.0, rel=0.01)
        assert float(rows["actual_drop"]) == pytest.approx(1001.0, rel=0.02)
        assert float(rows["relative_gap"]) < 0.05


class TestLpCommand:
    def test_lp_baseline(self, capsys):
        code, out, _ = run_cli(capsys, "lp", "clarkson3500.json", "--format", "csv")
        assert code == 0
        rows = csv_rows(out)
        assert float(rows["revenue"]) == pytest.approx(247500.0, rel=1e-9)
        assert rows["stability_satisfied_at_vertex"] == "false"


class TestOracleCommand:
    def test_certified_run(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "coastal_feeder.json", "--step", "50", "--format", "csv"
        )
        assert code == 0
        rows = csv_rows(out)
        assert rows["certification.certified"] == "true"
        assert float(rows["certification.lattice_revenue"]) <= float(rows["revenue"]) + 1e-6

    def test_uncertified_local_trap(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "oracle",
            "clarkson3500.json",
            "--order",
            "reverse",
            "--no-ballast",
            "--starts",
            "1",
            "--seed",
            "17",
            "--step",
            "500",
            "--format",
            "csv",
        )
        assert code == 2
        rows = csv_rows(out)
        assert rows["certification.certified"] == "false"
        assert float(rows["revenue"]) == pytest.approx(197165.94, rel=1e-6)


class TestFormats:
    def test_json_output_parses(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "clarkson3500.json", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["command"] == "solve"
        assert report["status"] == "Optimal"
        assert len(report["loads"]) == 5

    def test_csv_and_table_agree_to_four_digits(self, capsys):
        _, csv_text, _ = run_cli(capsys, "solve", "clarkson3500.json", "--format", "csv")
        _, table_text, _ = run_cli(capsys, "solve", "clarkson3500.json", "--format", "table")
        rows = csv_rows(csv_text)
        scalars = table_scalars(table_text)
        compared = 0
        for key, value in rows.items():
            if key.startswith("loads["):
                continue
            try:
                expected = float(value)
            except ValueError:
                continue
            shown = float(scalars[key])
            assert shown == pytest.approx(expected, rel=5.1e-4, abs=5e-10), key
            compared += 1
        assert compared >= 15

    def test_table_load_grid_matches_csv(self, capsys):
        _, csv_text, _ = run_cli(capsys, "solve", "clarkson3500.json", "--format", "csv")
        _, table_text, _ = run_cli(capsys, "solve", "clarkson3500.json", "--format", "table")
        rows = csv_rows(csv_text)
        lines = iter(table_text.splitlines())
        grid = {}
        for line in lines:
            if line.lstrip().startswith("pos"):
                for row in lines:
                    if not row.strip():
                        break
                    cells = row.split()
                    grid[cells[1]] = float(cells[4])
        for i in range(5):
            label = rows[f"loads[{i}].label"]
            expected = float(rows[f"loads[{i}].load"])
            assert grid[label] == pytest.approx(expected, rel=5.1e-4, abs=5e-10)


class TestExitCodes:
    def test_input_error_codes(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"vessel": {"beem": 3}}')
        assert run_cli(capsys, "solve", str(bad))[0] == 1
        assert run_cli(capsys, "solve", "clarkson3500.json", "--order", "sideways")[0] == 1
        assert run_cli(capsys, "solve", "clarkson3500.json", "--starts", "0")[0] == 1

    def test_infeasible_is_three(self, capsys):
        assert run_cli(capsys, "solve", "clarkson3500.json", "--mu", "40")[0] == 3

    def test_local_only_is_two(self, capsys):
        assert run_cli(capsys, "solve", "clarkson3500.json", "--order", "reverse")[0] == 2

    def test_optimal_is_zero(self, capsys):
        assert run_cli(capsys, "solve", "clarkson3500.json")[0] == 0
        assert run_cli(capsys, "lp", "clarkson3500.json")[0] == 0
        assert run_cli(capsys, "classify", "clarkson3500.json")[0] == 0


class TestConsoleScript:
    def test_installed_entry_point(self):
        import subprocess

        result = subprocess.run(
            ["shipload", "classify", "clarkson3500.json", "--format", "json"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert json.loads(result.stdout)["definiteness"] == "PositiveSemidefinite"
