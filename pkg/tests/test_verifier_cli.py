import json
import subprocess
import sys

import pytest

from pgln_symplectic import (load_triangulation, run_all, verify_boundary_maps,
                             verify_homology, verify_symplectic)
from pgln_symplectic.cli import main, parse_n


def test_parse_n():
    assert parse_n("3") == [3]
    assert parse_n("2..5") == [2, 3, 4, 5]
    for bad in ("1", "5..2", "x", "2..y"):
        with pytest.raises(Exception):
            parse_n(bad)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_m004_all_checks(n):
    report = run_all(load_triangulation("m004"), n)
    assert report.passed
    assert report.get("gluing.rank").details["rank"] == {2: 1, 3: 6, 4: 17, 5: 36}[n]
    if n == 4:
        assert report.get("homology.H2").details["got"] == "0"


def test_m129_h3_rank():
    report = verify_homology(load_triangulation("m129"), 3)
    assert report.passed
    assert report.get("homology.H3_rank").details["rank"] == 8


def test_m004_symplectic_n3_and_twice_intersection():
    tri = load_triangulation("m004")
    r = verify_symplectic(tri, 3)
    assert r.passed and r.get("gluing.rank").details == {"rank": 6, "expected": 6, "P": 8}
    assert verify_symplectic(tri, 2).passed


def test_boundary_report_m004():
    assert verify_boundary_maps(load_triangulation("m004"), 3).passed


def test_report_schema():
    d = run_all(load_triangulation("m003"), 2).to_dict()
    assert d["schema"] == 1 and d["pass"] is True
    assert {"id", "ref", "status", "details"} <= set(d["checks"][0])
    json.dumps(d)


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "pgln_symplectic", *args],
                          capture_output=True, text=True)


def test_cli_verify_range(tmp_path):
    rep = tmp_path / "r.json"
    assert main(["verify", "m004", "-n", "2..5", "--report", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert [r["n"] for r in data] == [2, 3, 4, 5] and all(r["pass"] for r in data)


def test_cli_parse_error(tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"gluings": [[[0, [1, 0, 2, 3]]]]}')
    proc = run_cli("verify", str(bad))
    assert proc.returncode == 2 and "error" in proc.stderr
    assert run_cli("verify", str(tmp_path / "missing.json")).returncode == 2
    bad.write_text("{nope")
    assert run_cli("info", str(bad)).returncode == 2


def test_cli_bad_flag_is_usage_error():
    assert run_cli("verify", "m004", "-n", "1..x").returncode == 2


def test_cli_matrices_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["matrices", "m004", "-n", "3", "--format", "csv", "-o", str(a)]) == 0
    assert main(["matrices", "m004", "-n", "3", "--format", "csv", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    for block in ("A", "B", "eps", "cusp_A", "cusp_B", "cusp_eps"):
        assert ",%s," % block in text


def test_cli_matrices_json(tmp_path):
    out = tmp_path / "m.json"
    assert main(["matrices", "m004", "-n", "2", "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["blocks"]["A"]["rows"] == 2 and doc["blocks"]["A"]["cols"] == 2
    assert len(doc["eps"]) == 2 and len(doc["cusp_eps"]) == 2


def test_cli_eval_and_tolerance(tmp_path):
    from pgln_symplectic import extend_shapes
    from pgln_symplectic.gluing import dump_shapes
    sh = tmp_path / "s.json"
    sh.write_text(json.dumps(dump_shapes(extend_shapes([complex(0.5, 3 ** 0.5 / 2)] * 2, 3))))
    assert main(["eval", "m004", "-n", "3", "--shapes", str(sh), "-o", str(tmp_path / "o")]) == 0
    sh.write_text(json.dumps(dump_shapes(extend_shapes([2, 3], 3))))
    assert main(["eval", "m004", "-n", "3", "--shapes", str(sh), "-o", str(tmp_path / "o")]) == 1
    sh.write_text(json.dumps(dump_shapes(extend_shapes([2, 3], 2))))
    assert main(["eval", "m004", "-n", "3", "--shapes", str(sh), "-o", str(tmp_path / "o")]) == 2


def test_cli_snf(tmp_path):
    m = tmp_path / "m.json"
    m.write_text("[[2, 4], [6, 8]]")
    out = tmp_path / "o.json"
    assert main(["snf", str(m), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["invariant_factors"] == [2, 4]
    c = tmp_path / "m.csv"
    c.write_text("row,col,value\n0,0,2\n1,1,3\n")
    assert main(["snf", str(c), "-o", str(out)]) == 0
    assert json.loads(out.read_text())["invariant_factors"] == [1, 6]


def test_cli_info_points_homology(tmp_path):
    out = tmp_path / "o"
    assert main(["info", "m129", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["boundary"]["genera"] == [1, 1]
    assert main(["points", "m004", "-n", "3", "--format", "csv", "-o", str(out)]) == 0
    assert out.read_text().startswith("n,index,kind,tet,point")
    assert main(["homology", "m003", "-n", "5", "-o", str(out)]) == 0
    h = json.loads(out.read_text())
    assert h["pretty"]["H3"] == "Z/5 + Z^8" and h["pretty"]["H2"] == "Z/5"
    assert main(["cusp-matrices", "m129", "-n", "2", "-o", str(out)]) == 0


def test_cli_curves_file(tmp_path):
    tri = load_triangulation("m004")
    cf = tmp_path / "c.json"
    cf.write_text(json.dumps({"curves": [[list(map(list, c)) for c in comp] for comp in tri.curves]}))
    assert main(["verify", "m004", "-n", "2", "--curves", str(cf), "--report",
                 str(tmp_path / "r")]) == 0
    cf.write_text(json.dumps({"curves": [[[[0, 1, 1, 2]]]]}))
    assert main(["verify", "m004", "-n", "2", "--curves", str(cf)]) == 2


def test_cli_parallel_jobs(tmp_path):
    r = tmp_path / "r.json"
    assert main(["verify", "m129", "-n", "2..3", "--jobs", "2", "--report", str(r)]) == 0
    assert len(json.loads(r.read_text())) == 2
