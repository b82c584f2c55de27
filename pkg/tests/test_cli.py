import csv
import io
import json
import os
import stat
import xml.etree.ElementTree as ET

import pytest

from bergman_nilpotent.cli import RunConfig, main
from bergman_nilpotent.errors import ContractError
from bergman_nilpotent.serialize import dumps, format_float

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_member(capsys):
    code, out = run(capsys, "member", 9, 0, 3)
    assert code == 0
    assert json.loads(out) == {"a1": 0, "a2": 3, "m": 9, "member": True,
                               "constraints": {"diag": True, "width": True}}
    assert json.loads(run(capsys, "member", 9, 0, 4)[1])["member"] is False
    assert json.loads(run(capsys, "member", 2, 0, 0)[1])["member"] is True


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["member", "9", "-1", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["member", "1", "0", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["matrix", "9", "--symbol", "1,1"])
    assert exc.value.code == 2


def test_moment(capsys):
    code, out = run(capsys, "moment", 6, 0, 0)
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "Finite"
    assert doc["total"] == pytest.approx(311.940931397841636, rel=1e-14)
    assert json.loads(run(capsys, "moment", 6, 2, 0)[1])["status"] == "Divergent"
    doc = json.loads(run(capsys, "moment", 6, 0, 0, "--parts", "--exact")[1])
    assert doc["exact_forms"]["y_part"]["rational"] == "1/80"
    assert doc["parts"]["y_part"] == pytest.approx(4 * 3.141592653589793 ** 2 / 80, rel=1e-15)


def test_moment_check(capsys):
    code, out = run(capsys, "moment", 9, 3, 7, "--check", "--budget", 2000)
    assert code == 0
    check = json.loads(out)["quadrature_check"]
    assert all(v["agrees"] for v in check.values())


def test_verify_exit_codes(capsys):
    code, out = run(capsys, "verify", 9)
    assert code == 0 and json.loads(out)["degrees_agree"] is True
    code, out = run(capsys, "verify", 10)
    assert code == 0 and json.loads(out)["degrees_agree"] is False
    code, out = run(capsys, "verify", 5, "--window", 8)
    doc = json.loads(out)
    assert code == 0 and doc["degree_lattice"] == 1 and doc["nonzero_witness"] is None
    code, _ = run(capsys, "verify", 9, "--window", 3)
    assert code == 2


def test_matrix_csv(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, _ = run(capsys, "matrix", 9, "--symbol", "1,1,0,0", "--window", 3, "--out", path)
    assert code == 0
    rows = list(csv.reader(io.StringIO(path.read_text())))
    header, body = rows[0], rows[1:]
    assert header[0] == "" and header[1:5] == ["0,0", "1,1", "2,2", "3,3"]
    assert [r[0] for r in body] == header[1:]
    lookup = {(r[0], c): float(v) for r in body for c, v in zip(header[1:], r[1:])}
    assert lookup[("2,2", "0,2")] > 0
    assert sum(1 for v in lookup.values() if v) == 3


def test_matrix_json(capsys):
    code, out = run(capsys, "matrix", 9, "--window", 4, "--format", "json")
    doc = json.loads(out)
    assert doc["order"] == "diagonal-major" and doc["symbol"] == {"a": 1, "b": 1, "c": 0, "d": 0}
    assert {"row", "col", "value"} == set(doc["entries"][0])
    assert run(capsys, "matrix", 9, "--window", 1)[0] == 0


def test_figures(capsys, tmp_path):
    lat = tmp_path / "lat.svg"
    assert run(capsys, "figure", "lattice", 9, "--out", lat)[0] == 0
    root = ET.parse(lat).getroot()
    circles = [c for c in root.iter(SVG + "circle") if c.get("r") == "4"]
    assert len({c.get("cx") for c in circles if c.get("cy") == circles[0].get("cy")}) >= 1
    assert root.findall(f".//{SVG}path[@class='stay']") and root.findall(f".//{SVG}path[@class='exit']")

    flat = tmp_path / "lat2.svg"
    run(capsys, "figure", "lattice", 2, "--out", flat)
    root = ET.parse(flat).getroot()
    assert not root.findall(f".//{SVG}path[@class='stay']")
    assert root.findall(f".//{SVG}path[@class='exit']")

    dom = tmp_path / "dom.svg"
    assert run(capsys, "figure", "domain", 6, "--out", dom)[0] == 0
    root = ET.parse(dom).getroot()
    ids = {el.get("id") for el in root.iter() if el.get("id")}
    assert {"X", "Y", "Z"} <= ids


def test_scan(capsys):
    code, out = run(capsys, "scan", "--m-range", "10:11")
    assert code == 0
    assert out.splitlines() == ["m,r,degree_lattice,floor_m_over_4,agree",
                                "10,5,3,2,false", "11,5,3,2,false"]


def test_zero_product(capsys):
    code, out = run(capsys, "zero-product", 9)
    doc = json.loads(out)
    assert code == 0 and doc["all_rechecked"] and doc["count"] >= 1
    assert {"a": 1, "b": 1, "c": 0, "d": 0} in [c["u"] for c in doc["certificates"]]


def test_determinism(capsys):
    for argv in (("verify", 9), ("scan", "--m-range", "6:20"), ("moment", 9, 4, 6, "--parts", "--exact")):
        outs = {run(capsys, *argv)[1] for _ in range(3)}
        assert len(outs) == 1


def test_atomic_write_and_permissions(capsys, tmp_path):
    path = tmp_path / "sub" / "report.json"
    run(capsys, "verify", 9, "--out", path)
    assert json.loads(path.read_text())["m"] == 9
    assert not [p for p in path.parent.iterdir() if p.name.endswith(".tmp")]
    assert os.stat(path).st_mode & stat.S_IRUSR


def test_precision_env(monkeypatch, capsys):
    monkeypatch.setenv("BERGMAN_NILPOTENT_PRECISION", "1e-6")
    assert run(capsys, "moment", 6, 1, 1, "--check", "--budget", 500)[0] == 0
    monkeypatch.setenv("BERGMAN_NILPOTENT_PRECISION", "0.5")
    assert run(capsys, "moment", 6, 1, 1)[0] == 2


def test_run_config_validation():
    with pytest.raises(ContractError):
        RunConfig(precision_target=1e-20)
    with pytest.raises(ContractError):
        RunConfig(window=0)


def test_float_formatting():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(2.0) == "2.0"
    assert dumps({"b": 1, "a": [0.5, None, True]}) == '{\n  "a": [\n    0.5,\n    null,\n    true\n  ],\n  "b": 1\n}\n'
    with pytest.raises(ValueError):
        format_float(float("inf"))
