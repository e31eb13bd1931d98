import csv
import io
import json

import pytest

from supercurv import cli
from supercurv.config import DEFAULT_SEED, SEED_ENV, resolve_seed
from supercurv.errors import ConfigError
from supercurv.report import CSV_COLUMNS, flatten, format_float


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    monkeypatch.setenv("SUPERCURV_LOG_LEVEL", "ERROR")
    monkeypatch.delenv(SEED_ENV, raising=False)


def run(*argv):
    return cli.main(list(argv))


def first_point(path):
    return json.loads(path.read_text(encoding="utf-8"))["checks"][0]["samples"][0]["point"]


class TestArgumentGrammar:
    @pytest.mark.parametrize("text, values", [("3", [3]), ("2..5", [2, 3, 4, 5]), ("2,4", [2, 4])])
    def test_parse_n(self, text, values):
        assert cli.parse_n(text) == values

    def test_parse_k(self):
        assert cli.parse_k("all") is None
        assert cli.parse_k("0,2") == [0, 2]

    @pytest.mark.parametrize("text, value", [("1", 1), ("0.5-2i", 0.5 - 2j), ("3j", 3j), ("-i", -1j)])
    def test_parse_complex(self, text, value):
        assert cli.parse_complex(text) == value

    def test_parse_complex_rejects_garbage(self):
        with pytest.raises(ConfigError):
            cli.parse_complex("one")

    def test_parse_orders(self):
        assert cli.parse_orders("auto") == "auto"
        assert cli.parse_orders("5") == (5, 5)
        assert cli.parse_orders("6,4") == (6, 4)

    def test_parse_tolerances(self):
        tol = cli.parse_tolerances(["residual=1e-6", "negative=0.01"])
        assert tol.residual == 1e-6
        assert tol.negative == 0.01
        with pytest.raises(ConfigError):
            cli.parse_tolerances(["bogus=1"])
        with pytest.raises(ConfigError):
            cli.parse_tolerances(["residual"])


class TestSeed:
    def test_cli_seed_wins(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "7")
        assert resolve_seed(3) == 3

    def test_environment_seed(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "7")
        assert resolve_seed(None) == 7

    def test_default_seed(self):
        assert resolve_seed(None) == DEFAULT_SEED


class TestExitCodes:
    def test_unknown_command(self):
        assert run("bogus") == 2

    def test_k_out_of_range(self):
        assert run("curvature", "--n", "3", "--k", "5") == 2

    def test_bad_tolerance(self):
        assert run("sphere", "--n", "2", "--tol", "nope=1") == 2

    def test_n_and_n_max_together(self):
        assert run("sphere", "--n", "2", "--n-max", "3") == 2

    def test_jet_order_too_small(self):
        assert run("curvature", "--n", "3", "--k", "0", "--samples", "1", "--jet-order", "1") == 2

    def test_passing_run(self, capsys):
        assert run("sphere", "--n", "2", "--samples", "2") == 0
        out = capsys.readouterr().out
        assert "| sphere |" in out

    def test_failing_run(self):
        assert run("curvature", "--n", "3", "--k", "0", "--curve", "random", "--samples", "2") == 1

    def test_negative_controls_count_as_success(self):
        assert run("g2n", "--n", "3", "--samples", "1") == 0

    def test_suite_up_to_five(self, tmp_path):
        path = tmp_path / "suite.json"
        assert run("suite", "--n-max", "5", "--samples", "1", "--workers", "4", "--format", "json", "-o", str(path)) == 0
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert doc["ok"] is True
        assert {check["params"]["N"] for check in doc["checks"] if "N" in check["params"]} == {2, 3, 4, 5}


class TestOutputs:
    def test_json_document(self, tmp_path):
        path = tmp_path / "report.json"
        assert run("curvature", "--n", "2", "--k", "0", "--samples", "2", "--format", "json", "-o", str(path)) == 0
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert doc["version"] == "1.0"
        assert doc["ok"] is True
        assert doc["config"]["seed"] == DEFAULT_SEED
        (check,) = doc["checks"]
        assert check["name"] == "curvature"
        assert check["verdict"] == "pass"
        assert check["wall_time_s"] is None
        assert check["samples"][0]["curvature"]["expected"] == 4.0

    def test_json_is_byte_identical_across_runs(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["el", "--n", "3", "--k", "1", "--samples", "2", "--curve", "gsv", "--xi", "1,0.5i", "--format", "json"]
        assert run(*args, "-o", str(first)) == 0
        assert run(*args, "-o", str(second)) == 0
        assert first.read_bytes() == second.read_bytes()
        assert "output_path" not in json.loads(first.read_text(encoding="utf-8"))["config"]

    def test_floats_carry_17_significant_digits(self, tmp_path):
        path = tmp_path / "r.json"
        assert run("sphere", "--n", "2", "--samples", "1", "--format", "json", "-o", str(path)) == 0
        text = path.read_text(encoding="utf-8")
        point = first_point(path)
        assert f'"re": {format(point["re"], ".17g")}' in text
        assert '"residual": 1.0000000000000001e-09' in text

    @pytest.mark.parametrize(
        "value, text",
        [(0.1, "0.10000000000000001"), (4.0, "4"), (float("nan"), "NaN"), (float("-inf"), "-Infinity")],
    )
    def test_format_float(self, value, text):
        assert format_float(value) == text

    def test_sphere_reports_the_norm(self, tmp_path):
        path = tmp_path / "sphere.json"
        assert run("sphere", "--n", "2", "--samples", "2", "--format", "json", "-o", str(path)) == 0
        (check,) = json.loads(path.read_text(encoding="utf-8"))["checks"]
        for sample in check["samples"]:
            assert sample["embedding"]["norm2"] == pytest.approx(0.25)

    def test_seed_changes_the_points(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["sphere", "--n", "2", "--samples", "1", "--format", "json"]
        run(*args, "--seed", "1", "-o", str(first))
        run(*args, "--seed", "2", "-o", str(second))
        assert first_point(first) != first_point(second)

    def test_csv_matches_json(self, tmp_path):
        json_path, csv_path = tmp_path / "r.json", tmp_path / "r.csv"
        args = ["curvature", "--n", "2,3", "--k", "0", "--samples", "2"]
        assert run(*args, "--format", "json", "-o", str(json_path)) == 0
        assert run(*args, "--format", "csv", "-o", str(csv_path)) == 0
        rows = list(csv.DictReader(io.StringIO(csv_path.read_text(encoding="utf-8"))))
        assert list(rows[0]) == CSV_COLUMNS
        assert rows == flatten(json.loads(json_path.read_text(encoding="utf-8")))
        assert len(rows) == 4

    def test_timing_is_opt_in(self, tmp_path):
        path = tmp_path / "timed.json"
        assert run("sphere", "--n", "2", "--samples", "1", "--timing", "--format", "json", "-o", str(path)) == 0
        assert json.loads(path.read_text())["checks"][0]["wall_time_s"] >= 0
