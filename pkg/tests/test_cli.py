import json
import math
import os
from importlib import resources

import numpy as np
import pytest

import jsonschema

from mheights import cli, codes

SQ5 = math.sqrt(5.0)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def load_schema():
    ref = resources.files("mheights") / "schemas" / "run_report.schema.json"
    return json.loads(ref.read_text())


def test_profile_icosahedral_all(capsys):
    code, out, _ = run_cli(capsys, "profile", "--code", "ico", "--method", "lp", "--m", "all")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, load_schema())
    assert report["heights"][1] == pytest.approx(SQ5, rel=1e-8)
    assert report["heights"][3] == pytest.approx(2 + SQ5, rel=1e-8)
    assert report["heights"][4] == "inf" and report["heights"][5] == "inf"
    assert report["min_distance"] == 4


def test_profile_single_m_comb_dual(capsys):
    code, out, _ = run_cli(
        capsys, "profile", "--code", "neg:6", "--method", "comb-dual", "--m", "2"
    )
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, load_schema())
    expected = 1.0 / (2.0 * math.sin(math.pi / 12) ** 2) - 1.0
    assert report["heights"][2] == pytest.approx(expected, rel=1e-8)
    assert report["heights"][0] is None
    assert len(report["heights"]) == 6


def test_profile_dod_dual_m7(capsys):
    code, out, _ = run_cli(
        capsys, "profile", "--code", "dod-dual", "--method", "comb", "--m", "7"
    )
    assert code == 0
    report = json.loads(out)
    assert report["heights"][7] == pytest.approx(5 + 2 * SQ5, rel=1e-8)


def test_profile_certificates_validate(capsys):
    code, out, _ = run_cli(
        capsys, "profile", "--code", "ico", "--method", "lp", "--m", "all", "--certificates"
    )
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, load_schema())
    cert = report["certificates"][1]
    assert cert["m"] == 1
    assert cert["height"] == pytest.approx(SQ5, rel=1e-8)


def test_profile_csv_output(capsys):
    code, out, _ = run_cli(
        capsys, "profile", "--code", "ico", "--method", "comb-dual", "--m", "all", "--out", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "m,height,method"
    first = lines[1].split(",")
    assert first[0] == "0" and float(first[1]) == 1.0 and first[2] == "comb-dual"
    assert lines[-1].split(",")[1] == "inf"


def test_profile_round_trips_heights_losslessly(capsys):
    code, out, _ = run_cli(capsys, "profile", "--code", "ico", "--method", "comb", "--m", "all")
    report = json.loads(out)
    reparsed = json.loads(json.dumps(report))
    assert reparsed["heights"] == report["heights"]


def test_reports_byte_identical_apart_from_wall_time(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run_cli(
            capsys, "profile", "--code", "dod-dual", "--method", "comb-dual", "--m", "all"
        )
        report = json.loads(out)
        report.pop("wall_time_s")
        outs.append(json.dumps(report, sort_keys=True))
    assert outs[0] == outs[1]


def test_profile_loads_code_file(tmp_path, capsys):
    path = tmp_path / "code.json"
    codes.save_code(codes.make_negacyclic(4), path)
    code, out, _ = run_cli(capsys, "profile", "--code", str(path), "--m", "1")
    assert code == 0
    report = json.loads(out)
    assert report["heights"][1] == pytest.approx(math.sqrt(2.0), rel=1e-8)


def test_profile_bad_args_exit_2(capsys):
    assert run_cli(capsys, "profile", "--code", "nosuch:code")[0] == 2
    assert run_cli(capsys, "profile", "--code", "ico", "--m", "17")[0] == 2
    assert run_cli(capsys, "profile", "--code", "neg:2")[0] == 2
    with pytest.raises(SystemExit) as err:
        cli.main(["profile", "--code", "ico", "--method", "bogus"])
    assert err.value.code == 2


def test_profile_invalid_code_file_exit_3(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "name": "bad", "n": 3, "k": 2,
        "generator": [[1, 1, 0], [2, 2, 0]], "parity_check": None,
    }))
    code, _, err = run_cli(capsys, "profile", "--code", str(path), "--m", "1")
    assert code == 3
    assert "invalid code" in err


def test_heights_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("HEIGHTS_THREADS", "2")
    code, out, _ = run_cli(capsys, "profile", "--code", "ico", "--method", "lp", "--m", "all")
    assert code == 0
    assert json.loads(out)["heights"][1] == pytest.approx(SQ5, rel=1e-8)
    monkeypatch.setenv("HEIGHTS_THREADS", "0")
    assert run_cli(capsys, "profile", "--code", "ico", "--m", "1")[0] == 2
    monkeypatch.setenv("HEIGHTS_THREADS", "many")
    assert run_cli(capsys, "profile", "--code", "ico", "--m", "1")[0] == 2


def test_crosscheck_icosahedral(capsys):
    code, out, _ = run_cli(capsys, "crosscheck", "--code", "ico")
    assert code == 0
    report = json.loads(out)
    assert report["agree"] is True
    assert report["max_discrepancy"]["relative_error"] <= 1e-6


def test_crosscheck_random_seeded(capsys):
    code, out, _ = run_cli(capsys, "crosscheck", "--code", "random:6,3", "--seed", "7")
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_crosscheck_negacyclic_with_closed_form(capsys):
    code, out, _ = run_cli(capsys, "crosscheck", "--code", "neg:8")
    assert code == 0
    report = json.loads(out)
    from mheights import analysis

    h2 = report["heights_by_method"]["lp"][2]
    assert h2 == pytest.approx(analysis.closed_form_negacyclic(8, 2), rel=1e-8)


def test_verify_tables_default(capsys):
    code, out, _ = run_cli(capsys, "verify-tables")
    assert code == 0
    report = json.loads(out)
    assert report["all_ok"] is True
    assert len(report["cells"]) == 13  # 3 + 3 + 7 table cells


def test_verify_tables_negacyclic_sweep(capsys):
    code, out, _ = run_cli(capsys, "verify-tables", "--tables", "neg", "--n-range", "3:8")
    assert code == 0
    assert json.loads(out)["all_ok"] is True


def test_verify_tables_axis(capsys):
    code, out, _ = run_cli(capsys, "verify-tables", "--tables", "axis", "--n-range", "4:10")
    assert code == 0
    report = json.loads(out)
    assert report["all_ok"] is True
    for cell in report["cells"]:
        n = int(cell["table"].split(":")[1])
        assert cell["expected"] == math.ceil(n / 2) - 1


def test_verify_tables_bad_range(capsys):
    assert run_cli(capsys, "verify-tables", "--tables", "neg", "--n-range", "9:3")[0] == 2
