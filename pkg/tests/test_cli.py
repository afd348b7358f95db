import json
import math

import numpy as np
import pytest

from curvbound import cli
from curvbound import meshing as M
from curvbound import meshio as IO


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_volumes_text(capsys):
    code, out, _ = run(["volumes"], capsys)
    assert code == 0
    assert "3.699455" in out
    assert "4.188790" in out


def test_volumes_json(capsys):
    code, out, _ = run(["volumes", "--json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["constants"]["total"] == pytest.approx(3.699455482821562,
                                                    abs=1e-12)
    assert all(row["pass"] for row in d["rows"])


def test_build_then_verify(tmp_path, capsys):
    mesh_path = tmp_path / "body.obj"
    code, _, _ = run(["build", "--thinness", "0.05", "--resolution", "64",
                      "--output", str(mesh_path)], capsys)
    assert code == 0
    assert mesh_path.exists()
    manifest = tmp_path / "body.manifest.json"
    assert manifest.exists()
    json.loads(manifest.read_text())

    code, out, _ = run(["verify", "--input", str(mesh_path),
                        "--resolution", "64", "--sdf-resolution", "48",
                        "--json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["topology"]["genus"] == 0
    assert rep["volume"] < 4 * math.pi / 3


def test_verify_builtin_sphere(capsys):
    code, out, _ = run(["verify", "--builtin", "sphere",
                        "--resolution", "64", "--sdf-resolution", "48",
                        "--json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["volume"] == pytest.approx(4 * math.pi / 3, rel=0.005)


def test_verify_fails_on_open_mesh(tmp_path, capsys):
    from curvbound.patches import ParametricPatch
    open_mesh = M.tessellate(
        ParametricPatch("sphere", {"radius": 1.0},
                        domain=(0, 2 * math.pi, 0, math.pi / 2)), 16, 8)
    path = tmp_path / "open.obj"
    IO.export_mesh(open_mesh, path)
    code, _, _ = run(["verify", "--input", str(path)], capsys)
    assert code == 1


def test_missing_input_exits_3(tmp_path, capsys):
    code, _, _ = run(["verify", "--input", str(tmp_path / "no.obj")],
                     capsys)
    assert code == 3


def test_bad_thinness_exits_2(tmp_path, capsys):
    code, _, _ = run(["build", "--thinness", "0.5",
                      "--output", str(tmp_path / "x.obj")], capsys)
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_planar_random(capsys):
    code, out, _ = run(["planar", "--random", "8", "--json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert len(d["curves"]) == 8
    assert all(c["inradius"] >= 1.0 - 1e-3 for c in d["curves"])


def test_planar_input_file(tmp_path, capsys):
    from curvbound import curves as C
    path = tmp_path / "stadium.json"
    path.write_text(json.dumps(C.stadium().to_dict()))
    code, out, _ = run(["planar", "--input", str(path), "--json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["curves"][0]["area"] == pytest.approx(math.pi + 4, abs=1e-9)


def test_export_convert(tmp_path, capsys):
    obj = tmp_path / "t.obj"
    stl = tmp_path / "t.stl"
    code, _, _ = run(["export", "--builtin", "torus",
                      "--resolution", "32", "--output", str(obj)], capsys)
    assert code == 0
    code, _, _ = run(["export", "--input", str(obj),
                      "--output", str(stl)], capsys)
    assert code == 0
    assert M.topology(IO.import_mesh(stl)).genus == 1


def test_build_deterministic(tmp_path, capsys):
    a = tmp_path / "a.obj"
    b = tmp_path / "b.obj"
    for p in (a, b):
        assert run(["build", "--resolution", "48", "--output", str(p)],
                   capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_help_and_version(capsys):
    assert cli.main(["--version"]) == 0
    assert cli.main(["-h"]) == 0
