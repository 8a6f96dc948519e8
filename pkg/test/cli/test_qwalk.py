import csv
import io
import json
import math

# noinspection PyPackageRequirements
import pytest

from src.cli.cli_base import run_command
from src.cli.escape_prob import EscapeProbCli
from src.cli.qwalk import COMMANDS, dispatch
from test.test_base import A, TestBase


class TestQwalk(TestBase):
    def test_escape_prob(self, capsys):
        assert dispatch(["escape-prob", "--alpha", "pi/2", "--beta", "pi", "--m", "1"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["value"] == 0.0
        assert result["method"] == "closed"
        assert result["m"] == "1"

    def test_escape_prob_methods(self, capsys):
        assert dispatch(["escape-prob", "-alpha", "0", "-m", "1", "-method", "quadrature"]) == 0
        assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(A, abs=1e-9)
        assert dispatch(["escape-prob", "-alpha", "0", "-m", "inf"]) == 0
        assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(1.5 - 2 / math.pi, abs=1e-11)

    def test_domain_error_exits_one(self, capsys):
        assert dispatch(["escape-prob", "--alpha", "0", "--m", "0"]) == 1
        err = capsys.readouterr().err
        assert err.startswith("escape-prob: M must be equal to or greater than 1")
        assert len(err.strip().splitlines()) == 1
        assert dispatch(["escape-prob", "--alpha", "4", "--m", "1"]) == 1

    def test_usage_errors_exit_two(self, capsys):
        assert dispatch(["teleport"]) == 2
        assert dispatch([]) == 2
        assert dispatch(["escape-prob", "--m", "1"]) == 2
        assert dispatch(["escape-prob", "--alpha", "0", "--m", "1", "--bogus"]) == 2
        assert dispatch(["grid", "-quantity", "F_beta"]) == 2
        assert dispatch(["fisher", "-alpha", "1", "-format", "csv"]) == 2
        assert dispatch(["fisher", "-alpha", "1", "-format", "xml"]) == 2
        assert "grid: -m is required for F_beta" in capsys.readouterr().err

    def test_help(self, capsys):
        assert dispatch(["grid", "-h"]) == 0
        assert "usage: grid" in capsys.readouterr().out
        assert set(COMMANDS) == {"escape-prob", "simulate", "grid", "fisher", "hot-spots", "estimate",
                                 "compare-tomo", "reproduce-figures", "batch"}

    def test_grid_csv(self, tmp_path):
        out = tmp_path / "p_e.csv"
        assert dispatch(["grid", "--quantity", "P_E", "--m", "2", "--res", "100x100", "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha,beta,value,tag"
        assert len(lines) == 1 + 100 * 100

    def test_grid_json(self, capsys):
        assert dispatch(["grid", "-quantity", "detF_tot", "-res", "6x4", "-placements", "1,inf", "-format", "json"]) == 0
        envelope = json.loads(capsys.readouterr().out)
        assert envelope["quantity"] == "detF_tot"
        assert envelope["placements"] == ["1", "inf"]
        assert len(envelope["values"]) == 4 and len(envelope["values"][0]) == 6

    def test_simulate(self, capsys):
        assert dispatch(["simulate", "-alpha", "pi", "-m", "1", "-steps", "50"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0] == ["t", "absorbed_step", "absorbed_cum", "survival"]
        assert len(rows) == 51
        assert float(rows[1][1]) == pytest.approx(0.5, abs=1e-15)
        assert dispatch(["simulate", "-alpha", "pi", "-m", "1", "-steps", "50", "-format", "json",
                         "-window", "10"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["steps_run"] == 50
        assert summary["tail_window"] == 10

    def test_fisher(self, capsys):
        assert dispatch(["fisher", "-alpha", "pi/4", "-beta", "pi/3", "-placements", "1,2", "-numeric"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["qfi"]["H_alpha"] == 1.0
        assert [p["m"] for p in result["placements"]] == ["1", "2"]
        assert result["placements"][0]["F_beta"]["tag"] == "regular"
        assert "numeric" in result["placements"][1]
        assert result["total"]["rank"] == 2

    def test_fisher_tags(self, capsys):
        assert dispatch(["fisher", "-alpha", "0", "-m", "1"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["placements"][0]["eta_beta"] == {"value": None, "tag": "undefined"}
        assert result["placements"][0]["eta_alpha"]["value"] == pytest.approx(math.pi / 2 - 1, abs=1e-9)

    def test_hot_spots(self, capsys):
        assert dispatch(["hot-spots", "-m", "inf", "-res", "32"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["m"] == "inf"
        assert len(result["hot_spots"]) >= 2
        assert result["hot_spots"][0]["P_E"] == pytest.approx(0.77, abs=0.02)

    def test_estimate(self, capsys):
        argv = ["estimate", "-alpha", "pi/4", "-beta", "pi/3", "-trials", "100000", "-seed", "5"]
        assert dispatch(argv) == 0
        first = json.loads(capsys.readouterr().out)
        assert first["n_replicates"] == 1
        assert first["flags"]["rank_deficient"] is False
        assert first["counts"]["trials"] == [100_000, 100_000]
        assert first["mle_primary"]["alpha"] == pytest.approx(math.pi / 4, abs=0.05)
        assert first["crb"]["matrix_bound"] is True
        assert dispatch(argv) == 0
        assert json.loads(capsys.readouterr().out) == first

    def test_estimate_replicates(self, capsys):
        assert dispatch(["estimate", "-alpha", "1", "-replicates", "50"]) == 1
        assert "replicates must be equal to or greater than 100" in capsys.readouterr().err

    def test_compare_tomo(self, capsys):
        assert dispatch(["compare-tomo", "-steps", "50", "-placements", "2"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert (result["modes"], result["settings_tomo"], result["settings_abs"]) == (101, 303, 2)
        assert result["ratio"] == 151.5

    def test_run_command_directly(self, capsys):
        assert run_command(EscapeProbCli, ["-alpha", "0", "-m", "2", "-method", "simulate", "-steps", "500"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["method"] == "simulate"
        assert result["tolerance"] > 0.0
