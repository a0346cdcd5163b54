import io
import json
import os

import pytest

from cyclomod.cli import main
from cyclomod.sweep import (
    SweepRecord,
    admissible_orders,
    emit,
    parse_record_key,
    run_sweep,
    scan_completed,
    solve_single,
)


def test_admissible_orders():
    assert admissible_orders(13) == [2, 3, 4, 6, 12]
    assert admissible_orders(13, 4) == [4]
    assert admissible_orders(13, 5) == []
    assert admissible_orders(7) == [2, 3, 6]


def test_solve_single_record_fields():
    rec = solve_single(7, 3, "full")
    assert (rec.p, rec.d, rec.f, rec.theta, rec.omega) == (7, 3, 2, 0, 3)
    assert rec.per_class_s == (1, 3, 2)
    assert rec.g == 3
    assert rec.methods_agree
    assert rec.closed_form_match is True
    assert rec.elapsed >= 0


def test_solve_single_fast_leaves_closed_form_unset():
    rec = solve_single(7, 3, "fast")
    assert rec.closed_form_match is None


def test_emit_json_field_order_and_strings():
    rec = solve_single(7, 3, "full")
    line = emit(rec, "json")
    data = json.loads(line)
    assert list(data) == [
        "p", "d", "f", "theta", "omega", "per_class_s", "g",
        "methods_agree", "closed_form_match", "elapsed",
    ]
    assert data["g"] == "3"
    assert data["per_class_s"] == ["1", "3", "2"]
    assert data["methods_agree"] is True
    assert isinstance(data["elapsed"], int) and data["elapsed"] >= 0


def test_emit_json_omits_closed_form_when_not_applicable():
    rec = solve_single(11, 5, "fast")
    data = json.loads(emit(rec, "json"))
    assert "closed_form_match" not in data
    assert data["f"] == "2"
    assert data["per_class_s"] == ["1", "2", "4", "3", "5"]


def test_emit_csv():
    rec = solve_single(7, 3, "full")
    assert emit(rec, "csv") == f"7,3,2,0,3,1;3;2,3,true,true,{rec.elapsed}"
    with pytest.raises(ValueError):
        emit(rec, "toml")


def test_parse_record_key():
    rec = solve_single(7, 3, "fast")
    assert parse_record_key(emit(rec, "json"), "json") == (7, 3)
    assert parse_record_key(emit(rec, "csv"), "csv") == (7, 3)
    assert parse_record_key("p,d,f", "csv") is None
    assert parse_record_key("", "json") is None


def test_run_sweep_order_and_content():
    records = list(run_sweep(5, 30, d_filter=4, verify_level="full"))
    assert [(r.p, r.g) for r in records] == [(5, 4), (13, 3), (17, 3), (29, 3)]
    assert all(r.methods_agree and r.closed_form_match for r in records)


def test_run_sweep_ascending_keys():
    keys = [(r.p, r.d) for r in run_sweep(3, 40, verify_level="fast")]
    assert keys == sorted(keys)
    assert (31, 6) in keys and (37, 36) in keys


def test_run_sweep_validates_arguments():
    with pytest.raises(ValueError):
        list(run_sweep(2, 10))
    with pytest.raises(ValueError):
        list(run_sweep(10, 5))
    with pytest.raises(ValueError):
        list(run_sweep(5, 10, verify_level="paranoid"))


def test_run_sweep_skip_keys():
    full = [(r.p, r.d) for r in run_sweep(3, 20, verify_level="fast")]
    skip = {(7, 2), (13, 4)}
    partial = [
        (r.p, r.d) for r in run_sweep(3, 20, verify_level="fast", skip=skip)
    ]
    assert partial == [k for k in full if k not in skip]


def test_resume_after_interruption(tmp_path):
    out = tmp_path / "records.jsonl"
    body_full = io.StringIO()
    list(run_sweep(3, 30, verify_level="fast", out=body_full))
    lines = body_full.getvalue().splitlines()

    # simulate an interrupted run: half the records, plus a torn final line
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines[: len(lines) // 2]) + "\n")
        fh.write(lines[len(lines) // 2][: 17])  # torn write, no newline

    done = scan_completed(str(out), "json")
    assert len(done) == len(lines) // 2
    with open(out, "a", encoding="utf-8") as fh:
        list(run_sweep(3, 30, verify_level="fast", out=fh, skip=done))

    resumed = out.read_text().splitlines()
    strip = lambda ls: [
        {k: v for k, v in json.loads(l).items() if k != "elapsed"} for l in ls
    ]
    assert strip(resumed) == strip(lines)


def test_sweep_determinism_without_elapsed():
    a, b = io.StringIO(), io.StringIO()
    list(run_sweep(3, 60, verify_level="fast", out=a))
    list(run_sweep(3, 60, verify_level="fast", out=b))
    strip = lambda body: [
        {k: v for k, v in json.loads(l).items() if k != "elapsed"}
        for l in body.splitlines()
    ]
    assert strip(a.getvalue()) == strip(b.getvalue())


def test_sweep_parallel_matches_serial():
    serial = io.StringIO()
    parallel = io.StringIO()
    list(run_sweep(3, 40, verify_level="fast", out=serial, jobs=1))
    list(run_sweep(3, 40, verify_level="fast", out=parallel, jobs=2))
    strip = lambda body: [
        {k: v for k, v in json.loads(l).items() if k != "elapsed"}
        for l in body.splitlines()
    ]
    assert strip(serial.getvalue()) == strip(parallel.getvalue())


def test_sweep_strict_aborts_on_failure(monkeypatch, capsys):
    import cyclomod.sweep as sweep_module
    from cyclomod.errors import CyclomodError

    real = sweep_module.solve_single

    def failing(p, d, verify_level):
        if (p, d) == (7, 3):
            raise CyclomodError("synthetic failure")
        return real(p, d, verify_level)

    monkeypatch.setattr(sweep_module, "solve_single", failing)
    with pytest.raises(CyclomodError):
        list(run_sweep(3, 11, verify_level="fast", strict=True))

    # non-strict: diagnostic on stderr, the bad key skipped, the rest kept
    records = list(run_sweep(3, 11, verify_level="fast"))
    assert (7, 3) not in {(r.p, r.d) for r in records}
    assert (7, 2) in {(r.p, r.d) for r in records}
    assert "(p=7, d=3) failed" in capsys.readouterr().err


# --- CLI surface ---


def test_cli_gd(capsys):
    assert main(["gd", "-p", "7", "-d", "3"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_cli_gd_degenerate_order(capsys):
    assert main(["gd", "-p", "7", "-d", "5"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cli_sd(capsys):
    assert main(["sd", "-p", "13", "-d", "4", "-a", "11"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["per_class_s"] == ["1", "2", "2", "3"]
    assert data["g"] == "3"
    assert (data["a"], data["class"], data["s"]) == ("11", "3", "3")


def test_cli_sd_degenerate_is_flagged_json(capsys):
    assert main(["sd", "-p", "11", "-d", "7"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["trivial"] is True
    assert data["g"] == "1"


def test_cli_cyclo_csv(capsys):
    assert main(["cyclo", "-p", "7", "-d", "3", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["0,0,1", "0,1,1", "1,1,0"]


def test_cli_cyclo_json(capsys):
    assert main(["cyclo", "-p", "7", "-d", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["counts"] == [[0, 0, 1], [0, 1, 1], [1, 1, 0]]


def test_cli_period(capsys):
    assert main(["period", "-p", "13", "-d", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["coefficients"] == ["-3", "1", "1"]
    assert data["discriminant"] == "13"


def test_cli_series(capsys):
    assert main(["series", "-p", "7", "-d", "3", "-j", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["coefficients"][0] == "1"
    assert data["coefficients"][2] == "3/2"  # exact fraction text


def test_cli_closed(capsys):
    assert main(["closed", "-p", "29", "-d", "4"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["g"] == "3"
    assert data["representation"]["x"] == "5"
    assert data["witness"]["alphas"] == ["2"]


def test_cli_closed_rejects_other_orders(capsys):
    assert main(["closed", "-p", "29", "-d", "7"]) == 2


def test_cli_oracle(capsys):
    assert main(["oracle", "-p", "7", "-d", "3", "-k", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,0,1,2,3,4,5,6"
    assert lines[1] == "1,0,1,0,0,0,0,1"
    assert lines[2] == "2,2,0,1,0,0,1,0"


def test_cli_invalid_inputs_exit_2(capsys):
    assert main(["gd", "-p", "8", "-d", "3"]) == 2
    assert main(["gd", "-p", "7"]) == 2  # missing -d
    assert main(["sweep", "--pmin", "10", "--pmax", "5"]) == 2


def test_cli_verification_failures_exit_1(monkeypatch, capsys):
    import cyclomod.cli as cli_module
    from cyclomod.errors import InternalDisagreement

    def explode(ctx):
        raise InternalDisagreement(1, {"recurrence": 2, "reachability": 3})

    monkeypatch.setattr(cli_module.waring, "solve", explode)
    assert main(["gd", "-p", "7", "-d", "3"]) == 1
    assert "InternalDisagreement" in capsys.readouterr().err


def test_cli_sweep_stdout(capsys):
    assert main(["sweep", "--pmin", "5", "--pmax", "30", "-d", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [json.loads(l)["p"] for l in lines] == ["5", "13", "17", "29"]


def test_cli_sweep_to_file_with_resume(tmp_path, capsys):
    out = tmp_path / "sweep.jsonl"
    assert main(
        ["sweep", "--pmin", "3", "--pmax", "20", "--out", str(out)]
    ) == 0
    first = out.read_text()
    # resuming a complete file adds nothing
    assert main(
        ["sweep", "--pmin", "3", "--pmax", "20", "--out", str(out), "--resume"]
    ) == 0
    assert out.read_text() == first


def test_cli_sweep_csv_header(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(
        ["sweep", "--pmin", "5", "--pmax", "13", "-d", "4",
         "--format", "csv", "--out", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("p,d,f,theta,omega,per_class_s,g")
    assert lines[1].startswith("5,4,1,2,2,1;2;4;3,4,true")


def test_cli_verify_pass(capsys):
    assert main(["verify", "-p", "7", "-d", "3"]) == 0
    out = capsys.readouterr().out
    assert "5/5 checks passed" in out
    assert "FAIL" not in out


def test_cli_verify_range(capsys):
    assert main(["verify", "--pmin", "5", "--pmax", "13", "-d", "4"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out


def test_cli_verify_reports_failures_with_exit_1(monkeypatch, capsys):
    import cyclomod.cli as cli_module
    from cyclomod.sweep import CheckResult

    monkeypatch.setattr(
        cli_module.sweep,
        "full_checks",
        lambda *a, **k: [CheckResult(name="synthetic", passed=False, detail="boom")],
    )
    assert main(["verify", "-p", "7", "-d", "3"]) == 1
    out = capsys.readouterr().out
    assert "FAIL (p=7, d=3) synthetic: boom" in out
    assert "0/1 checks passed" in out
