import json

import pytest

from polyfan import cli
from polyfan.fan import Fan, fan_validate, simplex_fan
from polyfan.lattice import AmbientSpace, GroundOrder


def build(tmp_path, name, *args):
    path = str(tmp_path / name)
    assert cli.main(["build", *args, "--out", path]) == 0
    return path


def corrupted_fan(tmp_path):
    full = AmbientSpace.full(GroundOrder.canonical(2))
    fan = Fan.from_cones(full, [[(1, 0), (0, 1)], [(1, 0), (-1, 2)]])
    return fan.write(str(tmp_path / "corrupt.fan.json"))


def test_build_polypermutohedral(tmp_path, capsys):
    path = build(tmp_path, "pp.fan.json", "--kind", "polypermutohedral", "--cage", "2,1")
    assert "rays=4 maximal_cones=4" in capsys.readouterr().out
    fan = Fan.read(path)
    assert len(fan.rays) == 4
    assert len(fan.maximal_cones) == 4


def test_build_to_stdout(capsys):
    assert cli.main(["build", "--kind", "product", "--cage", "1,1"]) == 0
    fan = Fan.loads(capsys.readouterr().out)
    assert len(fan.maximal_cones) == 4


def test_build_json_counts(tmp_path, capsys):
    path = str(tmp_path / "delta.fan.json")
    assert cli.main(["build", "--kind", "delta", "--cage", "2,1", "--s", "1", "--out", path, "--json"]) == 0
    counts = json.loads(capsys.readouterr().out)
    assert counts["out"] == path
    assert fan_validate(Fan.read(path)).passed


def test_build_nested_and_tlm(capsys):
    assert cli.main(["build", "--kind", "nested", "--cage", "1,1,1", "--building-set", "path"]) == 0
    assert len(Fan.loads(capsys.readouterr().out).maximal_cones) == 5
    assert cli.main(["build", "--kind", "tlm-blowup", "--cage", "1,1,1,1"]) == 0
    assert len(Fan.loads(capsys.readouterr().out).maximal_cones) == 6


def test_build_usage_errors():
    assert cli.main(["build", "--kind", "delta", "--cage", "2,1"]) == 2
    assert cli.main(["build", "--kind", "product", "--cage", "2,1", "--s", "1"]) == 2
    assert cli.main(["build", "--kind", "product", "--cage", "2,x"]) == 2
    assert cli.main(["build", "--kind", "delta", "--cage", "1,1", "--s", "5"]) == 2
    assert cli.main(["build", "--kind", "nested", "--cage", "1,1", "--building-set", "missing.json"]) == 2


def test_build_rejects_unknown_kind():
    with pytest.raises(SystemExit) as err:
        cli.main(["build", "--kind", "nope", "--cage", "1"])
    assert err.value.code == 2


def test_compare_equal(tmp_path, capsys):
    path = build(tmp_path, "a.fan.json", "--kind", "polystellahedral", "--cage", "1,1")
    capsys.readouterr()
    assert cli.main(["compare", path, path]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_compare_refines(tmp_path, capsys):
    hexagon = build(tmp_path, "hexagon.fan.json", "--kind", "polypermutohedral", "--cage", "1,1,1")
    plane = simplex_fan(GroundOrder.canonical(3)).write(str(tmp_path / "p2.fan.json"))
    capsys.readouterr()
    assert cli.main(["compare", hexagon, plane, "--mode", "refines"]) == 0
    assert cli.main(["compare", plane, hexagon, "--mode", "refines"]) == 1
    assert capsys.readouterr().out.split() == ["true", "false"]


def test_compare_ambient_mismatch(tmp_path):
    product = build(tmp_path, "product.fan.json", "--kind", "product", "--cage", "1,1")
    plane = simplex_fan(GroundOrder.canonical(3)).write(str(tmp_path / "p2.fan.json"))
    assert cli.main(["compare", product, plane]) == 2


def test_compare_missing_file(tmp_path):
    assert cli.main(["compare", str(tmp_path / "a.json"), str(tmp_path / "b.json")]) == 2


def test_convert(tmp_path, capsys):
    path = build(tmp_path, "a.fan.json", "--kind", "polystellahedral", "--cage", "1,1")
    capsys.readouterr()
    assert cli.main(["convert", path, "--summary"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["type"] == "Fan"
    assert summary["maximal_cones"] == 5
    out = str(tmp_path / "b.fan.json")
    assert cli.main(["convert", path, out]) == 0
    with open(path) as a, open(out) as b:
        assert a.read() == b.read()


def test_convert_rejects_unknown_document(tmp_path):
    path = tmp_path / "odd.json"
    path.write_text('{"hello": 1}')
    assert cli.main(["convert", str(path)]) == 2


def test_verify_suite(tmp_path, capsys):
    out = str(tmp_path / "report.json")
    assert cli.main(["verify", "--suite", "facet-star", "--max-A", "2", "--out", out]) == 0
    assert "0 failed" in capsys.readouterr().out
    with open(out) as f:
        report = json.load(f)
    assert report["pass"] is True
    assert len(report["instances"]) == 3


def test_verify_corrupted_fan(tmp_path, capsys):
    path = corrupted_fan(tmp_path)
    code = cli.main(["verify", "--suite", "tlm", "--max-A", "1", "--fan", path, "--json"])
    assert code == 1
    summary = json.loads(capsys.readouterr().out)
    assert summary["pass"] is False
    assert {"check": "fan-validate", "instance": path} in summary["witnesses"]


def test_verify_missing_fan(tmp_path, capsys):
    assert cli.main(["verify", "--suite", "tlm", "--max-A", "1", "--fan", str(tmp_path / "none.json")]) == 1
    assert "FAIL fan-validate" in capsys.readouterr().out


@pytest.mark.slow
def test_verify_subdivision_chain():
    assert cli.main(["verify", "--suite", "subdivision-chain", "--max-A", "4"]) == 0


@pytest.mark.slow
def test_verify_normal_fan():
    assert cli.main(["verify", "--suite", "normal-fan", "--max-A", "3"]) == 0


def test_verify_cage_suites(capsys):
    assert cli.main(["verify", "--suite", "tlm", "--max-A", "2"]) == 0
    assert cli.main(["verify", "--suite", "refinement", "--max-A", "2"]) == 0
    assert "0 failed" in capsys.readouterr().out


@pytest.mark.slow
def test_verify_all_small():
    assert cli.main(["verify", "--suite", "all", "--max-A", "2"]) == 0


def test_unexpected_error_exits_3(monkeypatch):
    def broken(*args, **kwargs):
        raise TypeError("boom")

    monkeypatch.setattr(cli, "run_suite", broken)
    assert cli.main(["verify", "--suite", "tlm", "--max-A", "1"]) == 3


def test_build_rejects_invalid_fan(tmp_path, monkeypatch):
    full = AmbientSpace.full(GroundOrder.canonical(2))
    overlapping = Fan.from_cones(full, [[(1, 0), (0, 1)], [(1, 0), (-1, 2)]])
    monkeypatch.setattr(cli, "build_fan", lambda *args: overlapping)
    out = tmp_path / "bad.fan.json"
    assert cli.main(["build", "--kind", "product", "--cage", "1,1", "--out", str(out)]) == 3
    assert not out.exists()
