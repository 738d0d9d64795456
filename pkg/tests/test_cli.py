import json
import subprocess
import sys

import numpy as np
import pytest

from cohomkern.cli import main, parse_degrees
from cohomkern.cohomology import Cochain, cohomology_group
from cohomkern.errors import ConfigError
from conftest import grid_sequence


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_s3_passes(capsys):
    code, out, _ = run(["verify", "--group", "metacyclic:3,2,2", "--family", "dihedral"], capsys)
    assert code == 0
    assert "0 fail" in out


def test_invalid_order_exits_two(capsys):
    code, _, err = run(["verify", "--group", "metacyclic:7,2,2"], capsys)
    assert code == 2 and "InvalidOrder" in err


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--group", "metacyclic:3,2"],
    ["verify", "--group", "metacyclic:3,2,2", "--degrees", "x"],
    ["verify", "--group", "metacyclic:3,2,2", "--samples", "0"],
    ["verify", "--group", "metacyclic:4,2,3"],
    ["verify", "--group", "metacyclic:3,2,2", "--family", "cyclic"],
])
def test_config_errors_exit_two(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_json_report_contents(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, _, _ = run(["verify", "--group", "metacyclic:5,4,2", "--degrees", "0", "--json", str(path)], capsys)
    assert code == 0
    data = json.loads(path.read_text())
    assert data["tool"] == "cohomkern"
    claims = data["instances"][0]["claims"]
    ids = [c["id"] for c in claims]
    assert any(i.startswith("prism.M3") for i in ids)
    assert "six.n0.exact.M4" in ids
    assert all(set(c) == {"id", "status", "detail"} for c in claims)
    tally = {s: sum(c["status"] == s for c in claims) for s in ("pass", "fail", "skip")}
    assert tally == data["instances"][0]["summary"] == data["summary"]


def test_timing_flag_adds_timings(capsys):
    code, out, _ = run(["verify", "--group", "metacyclic:2,1,1", "--degrees", "0", "--timing", "--json", "-"],
                       capsys)
    data = json.loads(out[out.index("{"):])
    assert code == 0 and all("timing" in c for c in data["instances"][0]["claims"])


def test_json_is_deterministic(tmp_path, capsys):
    texts = []
    for k, jobs in enumerate(("1", "2")):
        path = tmp_path / f"r{k}.json"
        run(["verify", "--group", "metacyclic:3,1,1", "--group", "metacyclic:3,2,2", "--degrees", "0..1",
             "--seed", "4", "--jobs", jobs, "--json", str(path)], capsys)
        texts.append(path.read_bytes())
    assert texts[0] == texts[1]


def test_config_file_and_flag_precedence(tmp_path, capsys):
    ini = tmp_path / "run.ini"
    ini.write_text("[cohomkern]\ngroup = metacyclic:3,1,1\ndegrees = 0\nseed = 3\nsamples = 7\n")
    path = tmp_path / "r.json"
    assert run(["verify", "--config", str(ini), "--seed", "9", "--json", str(path)], capsys)[0] == 0
    echo = json.loads(path.read_text())["config"]
    assert echo == {"groups": ["metacyclic:3,1,1/cyclic"], "degrees": [0], "samples": 7, "seed": 9}


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[other]\nx = 1\n")
    assert run(["verify", "--config", str(bad)], capsys)[0] == 2
    assert run(["verify", "--config", str(tmp_path / "missing.ini")], capsys)[0] == 2
    bad.write_text("[cohomkern]\ngroup = metacyclic:3,1,1\nseed = x\n")
    assert run(["verify", "--config", str(bad)], capsys)[0] == 2


def test_parse_degrees():
    assert parse_degrees("0..2") == (0, 1, 2)
    assert parse_degrees("2,0") == (0, 2)
    with pytest.raises(ConfigError):
        parse_degrees("1..0")


def test_cohomology_outputs(capsys):
    code, out, _ = run(["cohomology", "--group", "metacyclic:5,4,2", "--module", "M4", "--degree", "0"], capsys)
    assert code == 0 and out.strip().endswith("trivial")
    code, out, _ = run(["cohomology", "--group", "metacyclic:3,1,1", "--module", "trivial", "--degree", "1"],
                       capsys)
    assert code == 0 and "= Z/3" in out and "generator 0: order 3" in out


def test_cohomology_degree_too_large(capsys):
    code, _, err = run(["cohomology", "--group", "metacyclic:13,4,5", "--module", "M1", "--degree", "3"], capsys)
    assert code == 2 and "DegreeTooLarge" in err


def test_eta_on_samples(capsys):
    code, out, _ = run(["eta", "--group", "metacyclic:3,2,2", "--degree", "1", "--sample", "3"], capsys)
    assert code == 0
    assert out.count("equal") + out.count("cohomologous") == 3


def test_eta_stated_variant_reports_difference(capsys):
    code, out, _ = run(["eta", "--group", "metacyclic:5,4,2", "--degree", "1", "--sample", "40",
                        "--variant", "stated"], capsys)
    assert code == 1 and "different" in out


def test_eta_cocycle_files(tmp_path, capsys):
    seq = grid_sequence(3, 2, 2, "dihedral-classic")
    M4 = seq.reduced(3)
    good = Cochain.from_vector(M4, 1, cohomology_group(M4, 1).generators[0])
    path = tmp_path / "c.json"
    path.write_text(json.dumps(good.to_json()))
    assert run(["eta", "--group", "metacyclic:3,2,2", "--cocycle", str(path)], capsys)[0] == 0
    bad = Cochain.zero(M4, 1)
    bad.table[1] = np.arange(1, M4.rank + 1) % 3
    path.write_text(json.dumps(bad.to_json()))
    code, _, err = run(["eta", "--group", "metacyclic:3,2,2", "--cocycle", str(path)], capsys)
    assert code == 2 and "NotACocycle" in err


def test_selfcheck(capsys):
    code, out, _ = run(["selfcheck"], capsys)
    assert code == 0 and " 0 fail" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cohomkern", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("cohomkern ")
