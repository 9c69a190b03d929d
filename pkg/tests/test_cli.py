import json
import math
from pathlib import Path

import pytest

import holeburn as hb
from holeburn.cli import main
from holeburn.output import fmt, read_config_echo

SQRT2 = math.sqrt(2.0)


def write_config(tmp_path, name="config.json", **overrides):
    data = {
        "protocol": {"burn": {"omega_max": 15.0}},
        "grid": {"delta": {"start": -10.0, "stop": 10.0, "step": 5.0}},
        "output": {"csv": str(tmp_path / "sweep.csv"),
                   "json": str(tmp_path / "sweep.json")},
    }
    data.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path, data


def body_lines(path):
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [ln for ln in lines if ln and not ln.startswith("#")]


class TestRunCommand:
    def test_writes_contract_columns(self, tmp_path):
        config_path, _ = write_config(tmp_path)
        assert main(["run", str(config_path)]) == 0
        rows = body_lines(tmp_path / "sweep.csv")
        assert rows[0] == "delta,P1,P2,P3,max_P2,converged"
        assert len(rows) == 1 + 5
        # every numeric cell is 12-significant-digit formatted
        for row in rows[1:]:
            cells = row.split(",")
            for cell in cells[:-1]:
                assert cell == fmt(float(cell))
            assert cells[-1] in ("0", "1")

    def test_json_mirror(self, tmp_path):
        config_path, _ = write_config(tmp_path)
        main(["run", str(config_path)])
        payload = json.loads((tmp_path / "sweep.json").read_text(encoding="utf-8"))
        assert len(payload["points"]) == 5
        assert payload["config"]["protocol"]["burn"]["omega_max"] == 15.0
        assert all(p["converged"] for p in payload["points"])

    def test_deterministic_body(self, tmp_path):
        config_path, _ = write_config(tmp_path)
        main(["run", str(config_path)])
        first = body_lines(tmp_path / "sweep.csv")
        main(["run", str(config_path)])
        assert body_lines(tmp_path / "sweep.csv") == first

    def test_config_echo_round_trips(self, tmp_path):
        config_path, data = write_config(tmp_path)
        main(["run", str(config_path)])
        echoed = read_config_echo(tmp_path / "sweep.csv")
        assert echoed == hb.ExperimentConfig.from_dict(data)

    def test_tolerance_override_recorded_in_echo(self, tmp_path):
        config_path, _ = write_config(tmp_path)
        main(["run", str(config_path), "--tolerance", "1e-6"])
        assert read_config_echo(tmp_path / "sweep.csv").integrator.tolerance == 1e-6

    def test_workers_flag_gives_identical_output(self, tmp_path):
        config_path, _ = write_config(tmp_path)
        main(["run", str(config_path)])
        serial = body_lines(tmp_path / "sweep.csv")
        main(["run", str(config_path), "--workers", "4"])
        assert body_lines(tmp_path / "sweep.csv") == serial

    def test_validation_error_exits_2_and_leaves_no_output(self, tmp_path, capsys):
        config_path, _ = write_config(tmp_path, system={"Gamma": -1.0})
        assert main(["run", str(config_path)]) == 2
        err = capsys.readouterr().err
        assert "system.Gamma" in err
        assert not (tmp_path / "sweep.csv").exists()

    def test_unburn_validation_names_segment(self, tmp_path, capsys):
        config_path, _ = write_config(
            tmp_path,
            protocol={"burn": {"omega_max": 10.0},
                      "unburn": [{"omega_max": 12.0, "offset": 0.0}]})
        assert main(["run", str(config_path)]) == 2
        assert "protocol.unburn[0].omega_max" in capsys.readouterr().err

    def test_missing_file_exits_2(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "nope.json")]) == 2
        assert "no such file" in capsys.readouterr().err

    def test_missing_config_echo_reported(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("delta,P1\n0,1\n", encoding="utf-8")
        with pytest.raises(ValueError, match="no config echo"):
            read_config_echo(path)

    def test_secondary_axis_column_prepended(self, tmp_path):
        config_path, _ = write_config(
            tmp_path,
            grid={"delta": [0.0, 4.0],
                  "secondary": {"name": "omega_max", "values": [10.0, 12.0]}})
        main(["run", str(config_path)])
        rows = body_lines(tmp_path / "sweep.csv")
        assert rows[0] == "omega_max,delta,P1,P2,P3,max_P2,converged"
        assert len(rows) == 1 + 4


class TestReproduceCommand:
    def test_fig3b_coarse(self, tmp_path):
        assert main(["reproduce", "fig3b", "--out", str(tmp_path),
                     "--delta-step", "25"]) == 0
        for om in (10, 15, 20):
            rows = body_lines(tmp_path / f"fig3b_omega{om}.csv")
            assert rows[0] == "delta,P1,P2,P3,max_P2,converged"
            assert len(rows) == 1 + 9
        script = (tmp_path / "fig3b.gp").read_text(encoding="utf-8")
        assert "fig3b_omega10.csv" in script

    def test_unknown_figure_id_rejected(self):
        with pytest.raises(SystemExit):
            main(["reproduce", "fig9z"])

    def test_preset_table_complete(self):
        from holeburn.figures import FIGURE_IDS, get_preset
        for figure_id in FIGURE_IDS:
            preset = get_preset(figure_id, delta_step=5.0)
            assert preset.runs
            assert preset.gnuplot.strip()

    def test_preset_parameters_pinned(self):
        from holeburn.figures import get_preset
        fig2c = get_preset("fig2c")
        assert fig2c.runs[0].protocol.burn_omega_max == 10.0
        assert fig2c.runs[0].grid.secondary_name == "tau"
        assert fig2c.runs[0].grid.secondary_values[0] == 0.0
        assert fig2c.runs[0].grid.secondary_values[-1] == 4.0
        assert fig2c.runs[0].grid.delta_values[0] == -50.0

        fig4 = get_preset("fig4")
        assert [r.system.omega13 for r in fig4.runs[1:]] == [50.0, 100.0, 400.0]
        assert all(r.system.cross_coupling for r in fig4.runs[1:])
        assert not fig4.runs[0].system.cross_coupling
        assert all(r.protocol.burn_omega_max == 20.0 for r in fig4.runs)

        fig6b = get_preset("fig6b")
        proto = fig6b.runs[0].protocol
        assert proto.burn_omega_max == 100.0
        assert proto.unburn == tuple((5.0, n * 500.0) for n in (-2, -1, 0, 1, 2))

        fig5c = get_preset("fig5c")
        assert [r.system.Gamma for r in fig5c.runs] == [0.0, 0.5]


class TestAnalyticCommand:
    def test_writes_edge_table(self, tmp_path):
        config_path, _ = write_config(tmp_path)
        assert main(["analytic", str(config_path)]) == 0
        out = tmp_path / "sweep_analytic.csv"
        text = out.read_text(encoding="utf-8")
        assert "# delta_edge: " in text
        rows = body_lines(out)
        assert rows[0] == "delta,P3_analytic,adiabaticity_margin"
        assert len(rows) == 1 + 5
        # symmetric detuning column gives symmetric values
        values = [float(r.split(",")[1]) for r in rows[1:]]
        assert values[0] == values[-1]
        assert values[1] == values[-2]

    def test_edge_value_for_amplitude_20(self, tmp_path):
        config_path, _ = write_config(
            tmp_path, protocol={"burn": {"omega_max": 20.0}})
        main(["analytic", str(config_path)])
        text = (tmp_path / "sweep_analytic.csv").read_text(encoding="utf-8")
        assert "# delta_edge: 40.0597671233" in text

    def test_no_plateau_warns_but_succeeds(self, tmp_path, capsys):
        config_path, _ = write_config(
            tmp_path, protocol={"burn": {"omega_max": 3.0}})
        assert main(["analytic", str(config_path), "--out",
                     str(tmp_path / "table.csv")]) == 0
        assert "no adiabatic plateau" in capsys.readouterr().err
        text = (tmp_path / "table.csv").read_text(encoding="utf-8")
        assert "# delta_edge: 0" in text

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit):
            main(["--version"])
        assert hb.__version__ in capsys.readouterr().out
