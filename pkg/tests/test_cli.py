import json
import subprocess
import sys

import pytest

from cyclo.cli import (
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    main,
)
from cyclo.config import TOOL_VERSION


@pytest.fixture(autouse=True)
def _no_ambient_cache(monkeypatch):
    monkeypatch.delenv("CYCLO_CACHE", raising=False)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCoeff:
    def test_single_value(self, capsys):
        code, out, _ = run_cli(capsys, "coeff", "--n", "105", "--k", "7")
        assert code == EXIT_OK
        assert out == "-2\n"

    def test_negative_k_is_zero(self, capsys):
        code, out, _ = run_cli(capsys, "coeff", "--n", "105", "--k", "-1")
        assert code == EXIT_OK
        assert out == "0\n"

    def test_method_both(self, capsys):
        code, out, _ = run_cli(
            capsys, "coeff", "--n", "385", "--k", "119", "--method", "both"
        )
        assert code == EXIT_OK
        assert out == "-3\n"

    def test_full_profile_human(self, capsys):
        code, out, _ = run_cli(capsys, "coeff", "--n", "12")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "n=12 degree=4 height=1"
        assert lines[1] == "1 0 -1 0 1"

    def test_full_profile_csv(self, capsys):
        code, out, _ = run_cli(capsys, "coeff", "--n", "6", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines() == ["k,value", "0,1", "1,-1", "2,1"]

    def test_single_value_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "coeff", "--n", "105", "--k", "7", "--format", "csv"
        )
        assert code == EXIT_OK
        assert out.splitlines() == ["n,k,value", "105,7,-2"]

    def test_json_envelope(self, capsys):
        code, out, _ = run_cli(
            capsys, "coeff", "--n", "105", "--k", "7", "--format", "json", "--seed", "42"
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert set(payload) == {"tool_version", "seed", "config", "results"}
        assert payload["tool_version"] == TOOL_VERSION
        assert payload["seed"] == 42
        assert set(payload["config"]) == {"degree_cap", "cache"}
        assert payload["results"] == [
            {"n": 105, "k": 7, "method": "chi", "value": -2}
        ]

    def test_json_byte_stable(self, capsys):
        _, first, _ = run_cli(capsys, "coeff", "--n", "385", "--format", "json")
        _, second, _ = run_cli(capsys, "coeff", "--n", "385", "--format", "json")
        assert first == second


class TestTable1:
    def test_human_all_ok(self, capsys):
        code, out, err = run_cli(capsys, "table1")
        assert code == EXIT_OK
        assert err == ""
        lines = out.splitlines()
        assert len(lines) == 7
        assert all(line.endswith("ok") for line in lines[1:])

    def test_chi_method_agrees(self, capsys):
        code, out, _ = run_cli(capsys, "table1", "--method", "chi", "--format", "csv")
        assert code == EXIT_OK
        rows = out.splitlines()
        assert rows[0] == "p,n,smallest_k,value,height,match"
        assert len(rows) == 7
        assert all(row.endswith("True") for row in rows[1:])
        assert rows[6].startswith("19,865013,318742,-12,12")


class TestMpq:
    def test_human_output(self, capsys):
        code, out, _ = run_cli(capsys, "mpq", "--p", "3", "--q", "7")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "M(3;7) = 2"
        assert lines[1] == "residue-only bound m = 2 (saturated)"
        assert lines[2] == "attained in class 4 by r = 17 at k = 59 (value -2)"

    def test_per_class_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "mpq", "--p", "3", "--q", "7", "--per-class", "--format", "csv"
        )
        assert code == EXIT_OK
        rows = out.splitlines()
        assert rows[0] == "residue,witness,height,smallest_k,value_at_k"
        assert len(rows) == 7

    def test_json_independent_of_parallelism(self, capsys):
        base = ["mpq", "--p", "3", "--q", "7", "--format", "json", "--per-class"]
        _, serial, _ = run_cli(capsys, *base, "--parallelism", "1")
        _, parallel, _ = run_cli(capsys, *base, "--parallelism", "2")
        assert serial == parallel
        payload = json.loads(serial)
        result = payload["results"][0]
        assert result["value"] == 2
        assert result["saturated"] is True
        assert len(result["classes"]) == 6

    def test_cache_file_written(self, capsys, tmp_path):
        path = tmp_path / "cli-cache.jsonl"
        code, _, _ = run_cli(
            capsys, "mpq", "--p", "3", "--q", "7", "--cache", str(path)
        )
        assert code == EXIT_OK
        assert len(path.read_text().splitlines()) == 6


class TestVerify:
    def test_bounds_table2(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--suite", "bounds-table2")
        assert code == EXIT_OK
        assert err == ""
        assert out.splitlines()[0] == "bounds-table2: PASS (32 checks)"

    def test_binary_oracle_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--suite", "binary-oracle", "--format", "json"
        )
        assert code == EXIT_OK
        report = json.loads(out)["results"][0]
        assert report["passed"] is True
        assert report["name"] == "binary-oracle"
        assert report["checks"] == 136

    def test_trials_respected(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--suite",
            "sum-zero",
            "--trials",
            "5",
            "--format",
            "json",
        )
        assert code == EXIT_OK
        report = json.loads(out)["results"][0]
        assert report["checks"] == 5

    def test_unknown_suite_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--suite", "nope")
        assert code == EXIT_USAGE
        assert "invalid choice" in err


class TestAnalyze:
    def test_default_index_human(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--p", "3", "--q", "5", "--r", "7")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "p=3 q=5 r=7 i=7 j=3 q*=2 r*=1"
        assert "sizes: S=1 P+=1 P-=1 N=0  |S|-|N|=1" in lines
        assert "v0=0 S0=[0]" in lines

    def test_json_structure(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "analyze",
            "--p", "3", "--q", "5", "--r", "7", "--i", "7",
            "--format", "json",
        )
        assert code == EXIT_OK
        result = json.loads(out)["results"][0]
        assert result["i"] == 7 and result["j"] == 3
        assert [row["kind"] for row in result["rows"]] == [
            "special",
            "plain-plus",
            "plain-minus",
        ]
        assert result["chain_ok"] is True
        assert result["cancellation"]["tail_sum"] == -2
        assert {e["status"] for e in result["battery"]} == {"passed"}
        assert result["tail_diagnostic"] == {
            "max_abs": 2,
            "best_j": 2,
            "tail_at_j": -2,
        }

    def test_csv_rows(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "analyze",
            "--p", "5", "--q", "7", "--r", "11", "--i", "119",
            "--format", "csv",
        )
        assert code == EXIT_OK
        rows = out.splitlines()
        assert rows[0] == "v,kind,low,bracket_v,bracket_v_shift,h,h_q"
        assert len(rows) == 6


class TestExitCodes:
    def test_bad_input(self, capsys):
        code, _, err = run_cli(capsys, "coeff", "--n", "0", "--k", "1")
        assert code == EXIT_USAGE
        assert "bad input" in err

    def test_resource_cap(self, capsys):
        code, _, err = run_cli(
            capsys, "coeff", "--n", "865013", "--degree-cap", "10"
        )
        assert code == EXIT_RESOURCE
        assert "resource cap" in err

    def test_missing_required_flag(self, capsys):
        code, _, _ = run_cli(capsys, "coeff")
        assert code == EXIT_USAGE

    def test_no_subcommand(self, capsys):
        code, _, _ = run_cli(capsys)
        assert code == EXIT_USAGE

    def test_help_is_success(self, capsys):
        code, out, _ = run_cli(capsys, "--help")
        assert code == EXIT_OK
        assert "coeff" in out


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        out = subprocess.run(
            [sys.executable, "-m", "cyclo", "coeff", "--n", "105", "--k", "7"],
            capture_output=True,
            text=True,
        )
        assert out.returncode == 0
        assert out.stdout.strip() == "-2"
