import json

import pytest

from main import EXIT_AT_POLE, EXIT_OK, EXIT_USAGE, parse_complex, run


def records(capsys):
    out = capsys.readouterr().out
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def rational(payload):
    return f"{payload['num']}/{payload['den']}"


@pytest.mark.parametrize("text, expected", [
    ("2", 2 + 0j),
    ("-3", -3 + 0j),
    ("1.5+2i", complex(1.5, 2)),
    ("2 - 1.5i", complex(2, -1.5)),
    ("  0.5 + 14.1i ", complex(0.5, 14.1)),
    ("1e-3-2e2i", complex(1e-3, -200)),
    ("3i", 3j),
    ("1-i", complex(1, -1)),
])
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1+2", "2ii", "nan", "inf", "1+2j+3"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_coeffs_row(capsys):
    assert run(["coeffs", "--k", "3"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["kind"] == "coeff"
    assert [rational(c) for c in record["payload"]["coeffs"]] == ["0/1", "0/1", "2/1"]


def test_coeffs_all_methods(capsys):
    assert run(["coeffs", "--k", "4", "--method", "all"]) == EXIT_OK
    (record,) = records(capsys)
    assert [rational(c) for c in record["payload"]["coeffs"]] == ["0/1", "-1/2", "0/1", "2/1"]
    assert record["payload"]["methods_agree"] is True


def test_coeffs_csv(capsys):
    assert run(["coeffs", "--k", "2", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split(",") == ["kind", "k", "method", "index", "value"]
    assert lines[2].endswith(",1,2/1")


def test_coeffs_rejects_small_k():
    assert run(["coeffs", "--k", "1"]) == EXIT_USAGE


def test_eval_point(capsys):
    assert run(["eval", "--space", "sphere", "--k", "2", "--s", "2"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["payload"]["status"] == "ok"
    assert record["payload"]["value"]["re"] == pytest.approx(1.0, abs=1e-10)


def test_eval_at_pole(capsys):
    assert run(["eval", "--space", "sphere", "--k", "2", "--s", "1"]) == EXIT_AT_POLE
    (record,) = records(capsys)
    assert record["payload"]["status"] == "at-pole"
    assert rational(record["payload"]["residue"]) == "1/1"


def test_eval_truncated_reports_unbounded_error(capsys):
    assert run(["eval", "--k", "5", "--s", "4", "--max-l", "2"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["payload"]["error_bound"] == "inf"
    assert "truncated" in record["payload"]["flags"]


def test_eval_exact_routed(capsys):
    assert run(["eval", "--space", "projective", "--k", "3", "--s", "0"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["payload"]["value"]["re"] == -1.0
    assert "exact-routed" in record["payload"]["flags"]
    assert rational(record["payload"]["exact"]) == "-1/1"


@pytest.mark.parametrize("args", [
    ["eval", "--k", "2", "--s", "two"],
    ["eval", "--k", "2", "--s", "2", "--tol", "-1"],
    ["eval", "--k", "2", "--s", "2", "--em-order", "5"],
    ["eval", "--k", "2"],
    ["eval", "--space", "torus", "--k", "2", "--s", "2"],
])
def test_eval_usage_errors(args):
    assert run(args) == EXIT_USAGE


def test_residues(capsys):
    assert run(["residues", "--space", "sphere", "--k", "3", "--n-max", "1"]) == EXIT_OK
    found = {rational(r["payload"]["pole"]): rational(r["payload"]["residue"]) for r in records(capsys)}
    assert found == {"3/2": "1/2", "1/2": "1/4"}


def test_special_values(capsys):
    assert run(["special", "--space", "sphere", "--k", "5", "--n-max", "2"]) == EXIT_OK
    found = {r["payload"]["s"]: rational(r["payload"]["value"]) for r in records(capsys)}
    assert found == {"0": "-1/1", "-1": "0/1", "-2": "0/1"}


def test_special_unsupported(capsys):
    assert run(["special", "--space", "projective", "--k", "4", "--n-max", "0"]) == EXIT_OK
    (record,) = records(capsys)
    assert record["payload"]["status"] == "unsupported: no closed form in source"


def test_verify_usage():
    assert run(["verify", "--k-max", "1"]) == EXIT_USAGE


def test_verify_exact_only(capsys):
    assert run(["verify", "--k-max", "12", "--skip-numeric"]) == EXIT_OK
    results = records(capsys)
    assert results
    assert all(r["kind"] == "verify-item" and r["payload"]["passed"] for r in results)


def test_verify_with_numeric_checks(capsys):
    assert run(["verify", "--k-max", "3", "--tol", "1e-10"]) == EXIT_OK
    assert all(r["payload"]["passed"] for r in records(capsys))


def test_table_keeps_input_order(tmp_path, capsys):
    points = tmp_path / "points.txt"
    points.write_text("# sample points\n2\n\n1\n0.5+1i\n", encoding="utf-8")
    assert run(["table", "--k", "2", "--input", str(points), "--workers", "2"]) == EXIT_OK
    results = records(capsys)
    assert [r["payload"]["s"] for r in results] == [
        {"re": 2.0, "im": 0.0},
        {"re": 1.0, "im": 0.0},
        {"re": 0.5, "im": 1.0},
    ]
    assert [r["payload"]["status"] for r in results] == ["ok", "at-pole", "ok"]


def test_table_rejects_bad_line(tmp_path):
    points = tmp_path / "points.txt"
    points.write_text("2\nnot-a-number\n", encoding="utf-8")
    assert run(["table", "--k", "2", "--input", str(points)]) == EXIT_USAGE


def test_config_file_sets_defaults(tmp_path, capsys):
    config = tmp_path / "zeta.conf"
    config.write_text("format=csv\nunknown_key=1\n", encoding="utf-8")
    assert run(["--config", str(config), "coeffs", "--k", "2"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("kind,")


def test_explicit_flag_beats_config(tmp_path, capsys):
    config = tmp_path / "zeta.conf"
    config.write_text("format=csv\n", encoding="utf-8")
    assert run(["--config", str(config), "coeffs", "--k", "2", "--format", "json"]) == EXIT_OK
    assert records(capsys)[0]["kind"] == "coeff"


def test_bad_config_value(tmp_path):
    config = tmp_path / "zeta.conf"
    config.write_text("tol=small\n", encoding="utf-8")
    assert run(["--config", str(config), "coeffs", "--k", "2"]) == EXIT_USAGE
