import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from ffdioph.cli import JOB_SCHEMA, main, run

GOLDEN = Path(__file__).parent / "golden"
JOBS = sorted((GOLDEN / "jobs").glob("*.json"))


def _sub(job: Path) -> str:
    return job.stem.split("_", 1)[1].split("_")[0]


def test_corpus_has_twelve_jobs():
    assert len(JOBS) == 12
    assert {p.name for p in (GOLDEN / "expected").glob("*.json")} == {p.name for p in JOBS}


@pytest.mark.parametrize("job", JOBS, ids=lambda p: p.stem)
def test_golden(job, tmp_path):
    out = tmp_path / "r.json"
    code = main([_sub(job), "--config", str(job), "--out", str(out)])
    assert code == 0
    assert out.read_bytes() == (GOLDEN / "expected" / job.name).read_bytes()


@pytest.mark.parametrize("job", JOBS[:4], ids=lambda p: p.stem)
def test_repeat_runs_identical(job, tmp_path):
    blobs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        main([_sub(job), "--config", str(job), "--out", str(out)])
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_envelope_shape():
    job = json.loads((GOLDEN / "jobs" / "10_verify_generic.json").read_text())
    code, doc = run(job)
    assert code == 0
    assert set(doc) == {"schema_version", "subcommand", "status", "input", "result"}
    assert doc["schema_version"] == "1"
    assert doc["result"]["abc"]["margin_a"] == "5"
    assert doc["result"]["abc"]["classification"]["kind"] == "generic"


def test_no_floats_in_reports():
    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert not isinstance(x, float)

    for job in JOBS:
        walk(json.loads((GOLDEN / "expected" / job.name).read_text()))


def test_exceptional_two_curves(capsys):
    code = main(["exceptional", "--G", "X+Y+1", "--m-bound", "2", "--s", "t,inf"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["result"]["description"]["curves"]) == 2


def test_exceptional_point_flag(capsys):
    code = main(["exceptional", "--G", "X+Y+1", "--m-bound", "2", "--s", "t,inf", "--point", "1,t,1/(4*t)"])
    assert code == 0
    (row,) = json.loads(capsys.readouterr().out)["result"]["membership"]
    assert row["member"] and row["witness"] == "x1*x2 = 1/4*x0^2"


def test_parse_error_exit_1(capsys):
    code = main(["height", "--element", "t^2-"])
    assert code == 1
    err = capsys.readouterr().err
    assert "position 4" in err


def test_unknown_flag_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["height", "--bogus"])
    assert exc.value.code == 1


def test_schema_rejects_unknown_key():
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"subcommand": "height", "colour": 1}, JOB_SCHEMA)


def test_unused_flag_rejected(capsys):
    assert main(["genpos", "--form", "x0", "--form", "x1", "--form", "x2", "--epsilon", "1/2"]) == 1
    assert "does not use: epsilon" in capsys.readouterr().err


def test_config_subcommand_mismatch(tmp_path, capsys):
    cfg = tmp_path / "j.json"
    cfg.write_text(json.dumps({"subcommand": "count", "f": "t"}))
    assert main(["height", "--config", str(cfg)]) == 1


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "j.json"
    cfg.write_text(json.dumps({"subcommand": "verify", "G": "x0+x1+x2", "units": ["t^50", "(t-1)^50"],
                               "S": ["t", "t-1", "inf"], "epsilon": "1/10"}))
    assert main(["verify", "--config", str(cfg), "--epsilon", "1/5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["input"]["epsilon"] == "1/5"


def test_hypothesis_failure_exit_2(capsys):
    # monomial factor x0
    code = main(["verify", "--G", "x0*(x1+x2)", "--units", "t,t-1", "--s", "t,t-1,inf", "--epsilon", "1/10"])
    assert code == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] != "ok"


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "ffdioph", "units", "--s", "t,inf", "--H", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["subcommand"] == "units"
