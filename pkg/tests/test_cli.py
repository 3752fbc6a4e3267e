# type: ignore

import json
import math

import pytest
from utils import load_fixture, spec_from, square_space, write_config

from olspace.cli import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    build_parser,
    format_norm,
    fundamental_table,
    main,
    table_grid,
)
from olspace.domain import Kind
from olspace.spaces import Side

SQUARE = {"orlicz": {"family": "power", "p": 2}, "weight": {"family": "constant"}}
SQUARE_SEQUENCE = {**SQUARE, "kind": "sequence"}


@pytest.fixture
def square_config(tmp_path):
    return write_config(tmp_path, SQUARE)


@pytest.fixture
def indicator_csv(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("length,value\n4,1\n", encoding="utf-8")
    return path


class TestFormatting:
    @pytest.mark.parametrize(
        ("value", "expected"), [(0.0, "0"), (math.inf, "inf"), (2.0, "2.000000000000"), (1 / 3, "0.333333333333")]
    )
    def test_format_norm(self, value, expected):
        assert format_norm(value) == expected

    def test_grid_needs_two_points(self):
        with pytest.raises(UsageError):
            table_grid(square_space(), 1.0, 2.0, 1)

    @pytest.mark.parametrize(("t_min", "t_max"), [(0.0, 1.0), (2.0, 1.0)])
    def test_grid_range(self, t_min, t_max):
        with pytest.raises(UsageError):
            table_grid(square_space(), t_min, t_max, 5)

    def test_sequence_grid_is_integral(self):
        spec = spec_from(SQUARE_SEQUENCE)
        assert spec.kind is Kind.SEQUENCE
        assert table_grid(spec, 1.0, 3.0, 7).tolist() == [1.0, 2.0, 3.0]

    def test_table_from_either_side(self):
        grid = [1.0, 4.0]
        from_lambda = fundamental_table(square_space(), grid)
        from_m = fundamental_table(square_space().dual(), grid)
        assert [row["phi_Lambda"] for row in from_lambda] == ["1", "2"]
        assert square_space().dual().side is Side.M
        for left, right in zip(from_lambda, from_m):
            assert float(left["phi_Lambda"]) == pytest.approx(float(right["phi_Lambda"]), rel=1e-9)
            assert float(left["phi_M"]) == pytest.approx(float(right["phi_M"]), rel=1e-9)


class TestNorm:
    def test_luxemburg(self, square_config, indicator_csv, capsys):
        assert main(["norm", "--config", str(square_config), "--input", str(indicator_csv)]) == EXIT_OK
        assert capsys.readouterr().out == "2.000000000000\n"

    def test_orlicz(self, square_config, indicator_csv, capsys):
        argv = ["norm", "--config", str(square_config), "--input", str(indicator_csv), "--norm", "orlicz"]
        assert main(argv) == EXIT_OK
        assert float(capsys.readouterr().out) == pytest.approx(4.0, rel=1e-8)

    def test_bad_csv(self, square_config, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("a,b\n1,1\n", encoding="utf-8")
        assert main(["norm", "--config", str(square_config), "--input", str(path)]) == EXIT_USAGE

    def test_missing_csv(self, square_config, tmp_path):
        assert main(["norm", "--config", str(square_config), "--input", str(tmp_path / "missing.csv")]) == EXIT_USAGE

    def test_two_piece_function_fixture(self, tmp_path, capsys):
        fixture = load_fixture("two_piece_norm.json")
        config = write_config(tmp_path, fixture["config"])
        csv = tmp_path / "f.csv"
        csv.write_text(fixture["csv"], encoding="utf-8")
        assert main(["norm", "--config", str(config), "--input", str(csv)]) == EXIT_OK
        assert capsys.readouterr().out == fixture["luxemburg"] + "\n"
        assert main(["norm", "--config", str(config), "--input", str(csv), "--norm", "orlicz"]) == EXIT_OK
        assert float(capsys.readouterr().out) == pytest.approx(fixture["orlicz"], rel=1e-9)


class TestTable:
    def test_csv(self, square_config, capsys):
        argv = ["table", "--config", str(square_config), "--tmin", "1", "--tmax", "4", "--points", "2"]
        assert main(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "t,phi_Lambda,phi_M"
        assert [line.split(",")[:2] for line in lines[1:]] == [["1", "1"], ["4", "2"]]

    def test_out_file(self, square_config, tmp_path):
        out = tmp_path / "table.csv"
        argv = ["table", "--config", str(square_config), "--tmin", "1", "--tmax", "4", "--out", str(out)]
        assert main(argv) == EXIT_OK
        assert len(out.read_text(encoding="utf-8").splitlines()) == 51

    def test_single_point(self, square_config):
        argv = ["table", "--config", str(square_config), "--tmin", "1", "--tmax", "4", "--points", "1"]
        assert main(argv) == EXIT_USAGE


class TestClassify:
    def test_json(self, square_config, capsys):
        assert main(["classify", "--config", str(square_config)]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        verdicts = {entry["property"]: entry["verdict"] for entry in report["entries"]}
        assert verdicts["RNP"] == "holds"
        assert verdicts["SD2P"] == "fails"

    def test_table(self, square_config, capsys):
        assert main(["classify", "--config", str(square_config), "--format", "table"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.splitlines()[1].split()[:2] == ["property", "verdict"]
        assert any(line.split()[:2] == ["RNP", "holds"] for line in out.splitlines())

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "space.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["classify", "--config", str(path)]) == EXIT_USAGE

    def test_invalid_space(self, tmp_path):
        path = write_config(tmp_path, {"orlicz": {"family": "power", "p": 0.5}, "weight": {"family": "constant"}})
        assert main(["classify", "--config", str(path)]) == EXIT_USAGE


class TestVerify:
    def test_classifier_suite(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(["verify", "--suite", "classifier", "--out", str(out)]) == EXIT_OK
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["passed"] is True
        assert report["suite"] == "classifier"

    def test_reports_are_byte_identical(self, tmp_path):
        reports = []
        for run, jobs in enumerate(["1", "1", "2"]):
            out = tmp_path / f"report-{run}.json"
            argv = ["verify", "--suite", "all", "--seed", "42", "--budget", "0.02", "--jobs", jobs, "--out", str(out)]
            assert main(argv) in (EXIT_OK, EXIT_FAILED)
            reports.append(out.read_bytes())
        assert reports[0] == reports[1] == reports[2]
        names = [result["name"] for result in json.loads(reports[0])["results"]]
        for prefix in ["pq_indicators[", "p_below_q[", "fundamental_m[", "nonsquare_witness[", "classifier"]:
            assert any(name.startswith(prefix) for name in names), prefix

    def test_failure_exit_code(self, tmp_path, monkeypatch):
        from olspace import cli
        from olspace.verify import CheckResult, SuiteReport

        failed = CheckResult(name="x", cases_run=1, max_abs_err=1.0, max_rel_err=1.0, tolerance=0.0, passed=False)
        monkeypatch.setattr(
            cli, "run_suite", lambda *args, **kwargs: SuiteReport(suite="pq", seed=1, budget=1.0, results=(failed,))
        )
        assert main(["verify", "--suite", "pq", "--out", str(tmp_path / "r.json")]) == EXIT_FAILED

    @pytest.mark.parametrize(
        "argv",
        [["verify", "--suite", "bogus"], ["verify", "--budget", "0"], ["verify", "--jobs", "0"], []],
        ids=["suite", "budget", "jobs", "no command"],
    )
    def test_usage_errors(self, argv):
        assert main(argv) == EXIT_USAGE


class TestParser:
    def test_help(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "classify" in capsys.readouterr().out

    def test_defaults(self):
        args = build_parser().parse_args(["verify"])
        assert (args.suite, args.seed, args.budget, args.tol_scale, args.jobs) == ("all", 42, 1.0, 1.0, 1)
