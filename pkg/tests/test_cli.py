from __future__ import annotations

import hashlib
import importlib.resources as resources
import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from eclrc import cli
from eclrc.gf import field_of_order


def schema(name):
    return json.loads((resources.files("eclrc") / "schemas" / f"{name}.json").read_text())


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, schema(argv[0]))
    return doc


def test_every_schema_is_valid():
    names = [p.name for p in (resources.files("eclrc") / "schemas").iterdir() if p.name.endswith(".json")]
    assert len(names) >= 15
    for n in names:
        jsonschema.Draft202012Validator.check_schema(schema(n[:-5]))


def test_field_info(capsys):
    doc = run_json(capsys, "field-info", "--q", "64")
    assert doc["p"] == 2 and doc["a"] == 6
    assert doc["modulus"] == [1, 0, 0, 0, 0, 1, 1]


def test_curve_commands(capsys):
    doc = run_json(capsys, "curve-info", "--q", "64", "--curve", "y2+y=x3")
    assert doc["N"] == 81 and doc["maximal"] and doc["structure"] == [9, 9]
    doc = run_json(capsys, "curve-info", "--q", "4", "--curve", "0,0,1,0,0", "--points")
    assert len(doc["points"]) == 9 and doc["points"][0] is None
    doc = run_json(capsys, "curve-scan", "--q", "4")
    assert doc["curves"] == 60
    assert sum(doc["point_counts"].values()) == 60


def test_aut_commands(capsys):
    doc = run_json(capsys, "aut-list", "--q", "4", "--curve", "y2+y=x3")
    assert doc["order"] == 24
    doc = run_json(capsys, "aut-subgroups", "--q", "4", "--curve", "y2+y=x3", "--translations")
    assert len(doc["stabilizer_subgroups"]) == 15
    assert doc["translation_subgroup_orders"] == [1, 3, 3, 3, 3, 9]
    doc = run_json(capsys, "aut-orbits", "--q", "64", "--curve", "y2+y=x3", "--group", "order9")
    assert doc["group_order"] == 9 and doc["free_orbits"] == 8 and doc["abelian"]
    # the same group from explicit generators
    u = next(x for x in range(2, 64) if field_of_order(64).pow(x, 3) == 1)
    doc2 = run_json(
        capsys, "aut-orbits", "--q", "64", "--curve", "y2+y=x3", "--gen", "0,1", "--gen", f":{u},0,0,0"
    )
    assert doc2["size_histogram"] == doc["size_histogram"]


def test_code_table(capsys):
    doc = run_json(capsys, "code-table", "--q", "64")
    assert any((r["n"], r["k"], r["d"], r["r"]) == (72, 9, 63, 8) for r in doc["rows"])
    doc = run_json(capsys, "code-table", "--q", "16", "--source", "involution")
    assert {r["source"] for r in doc["rows"]} == {"involution"}


POLE_FIBER_64 = "8,11;10,47;15,36;33,36;37,11;45,11;46,36;52,47;62,47"


@pytest.fixture(scope="module")
def spec72(tmp_path_factory):
    d = tmp_path_factory.mktemp("c72")
    spec = d / "spec.json"
    code = cli.run(
        ["code-build", "--q", "64", "--curve", "y2+y=x3", "--group", "order9", "--t", "2", "--m", "8",
         "--include-pole-fiber", "--pole-fiber", POLE_FIBER_64, "--out", str(spec), "--matrix", str(d / "G.txt")]
    )
    assert code == 0
    return spec


def test_code_build_outputs(spec72, capsys):
    capsys.readouterr()
    doc = json.loads(spec72.read_text())
    jsonschema.validate(doc, schema("code-spec"))
    assert doc["params"] == {"n": 72, "k": 9, "d": 63, "r": 8}
    lines = (spec72.parent / "G.txt").read_text().splitlines()
    header = json.loads(lines[0])
    assert header["n"] == 72 and len(lines) == 1 + 9
    assert all(len(row.split()) == 72 for row in lines[1:])


def test_file_round_trip(spec72, tmp_path, capsys):
    rng = np.random.default_rng(0)
    data = rng.integers(0, 64, 100).astype(np.uint8)
    (tmp_path / "d.bin").write_bytes(data.tobytes())
    enc = run_json(capsys, "code-encode", "--spec", str(spec72), "--in", str(tmp_path / "d.bin"), "--out", str(tmp_path / "e.bin"))
    assert enc == {"blocks": 12, "symbols_in": 100, "padding": 8, "symbols_out": 864}
    words = np.fromfile(tmp_path / "e.bin", dtype=np.uint8)

    # one erasure per block for repair, with the symbol overwritten
    mask = np.zeros(words.size, dtype=bool)
    mask[::72] = True
    mask[5::72] = False
    damaged = words.copy()
    damaged[mask] = 0
    (tmp_path / "x.bin").write_bytes(damaged.tobytes())
    cli.write_bitmap(tmp_path / "m.bin", mask)
    rep = run_json(
        capsys, "code-repair", "--spec", str(spec72), "--in", str(tmp_path / "x.bin"),
        "--erasures", str(tmp_path / "m.bin"), "--out", str(tmp_path / "r.bin"),
    )
    assert rep["repaired"] == 12
    assert (tmp_path / "r.bin").read_bytes() == (tmp_path / "e.bin").read_bytes()

    # 62 erasures per block, then decode back to the data
    mask = np.zeros((12, 72), dtype=bool)
    for b in range(12):
        mask[b, rng.choice(72, 62, replace=False)] = True
    mask = mask.reshape(-1)
    cli.write_bitmap(tmp_path / "m2.bin", mask)
    dec = run_json(
        capsys, "code-decode", "--spec", str(spec72), "--in", str(tmp_path / "e.bin"),
        "--erasures", str(tmp_path / "m2.bin"), "--out", str(tmp_path / "o.bin"), "--length", "100",
    )
    assert dec["erasures"] == 12 * 62
    assert (tmp_path / "o.bin").read_bytes() == data.tobytes()


def test_code_verify(spec72, capsys):
    doc = run_json(capsys, "code-verify", "--spec", str(spec72), "--samples", "2000", "--repair-trials", "2")
    assert doc["optimal"] and doc["certified"] == "sandwich"
    assert doc["repair_failures"] == 0 and doc["minors_ok"]


def test_determinism(spec72, capsys, monkeypatch):
    outs = []
    for _ in range(2):
        monkeypatch.setenv("ECLRC_SEED", "17")
        assert cli.run(["code-verify", "--spec", str(spec72), "--samples", "500", "--repair-trials", "1"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    digests = set()
    for _ in range(2):
        cli.run(["code-table", "--q", "25"])
        digests.add(hashlib.sha256(capsys.readouterr().out.encode()).hexdigest())
    assert len(digests) == 1


def test_domain_error_exit_code(capsys):
    code = cli.run(["code-build", "--q", "16", "--group", "involution", "--t", "9", "--m", "4"])
    _, err = capsys.readouterr()
    assert code == 1
    doc = json.loads(err)
    jsonschema.validate(doc, schema("error"))
    assert doc["error"] == "ParameterViolation"
    assert cli.run(["field-info", "--q", "12"]) == 1
    assert json.loads(capsys.readouterr().err)["error"] == "NotPrime"
    assert cli.run(["curve-info", "--q", "7", "--curve", "0,0,0,0,0"]) == 1
    assert json.loads(capsys.readouterr().err)["error"] == "SingularCurve"


def test_usage_error_exit_code(capsys):
    assert cli.run(["no-such-command"]) == 2
    assert cli.run(["code-build", "--q", "16"]) == 2
    assert cli.run(["field-info"]) == 2
    assert cli.run(["aut-orbits", "--q", "16"]) == 2
    assert cli.run(["curve-info", "--q", "7", "--curve", "1,2"]) == 2
    capsys.readouterr()


def test_missing_file(tmp_path, capsys):
    assert cli.run(["code-verify", "--spec", str(tmp_path / "nope.json")]) == 1
    assert json.loads(capsys.readouterr().err)["error"] == "FileNotFoundError"


def test_pretty_output(capsys):
    assert cli.run(["curve-info", "--q", "4", "--pretty"]) == 0
    out = capsys.readouterr().out
    assert "N: 9" in out


def test_selftest_subset(capsys):
    doc = run_json(capsys, "selftest", "--only", "1", "--only", "8")
    assert doc["passed"]
    assert [c["criterion"] for c in doc["criteria"]] == [1, 8]


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "eclrc.cli", "field-info", "--q", "9"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["q"] == 9
