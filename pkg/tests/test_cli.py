import json

import pytest

from cpstar.cli import main
from cpstar.cp import block_expectation, noncontractive_projection
from cpstar.frobenius import pair_of_pants
from cpstar.functors import f_image_per
from cpstar.groupoids import discrete_groupoid, group_groupoid, groupoid_to_algebra
from cpstar.rel import Relation
from cpstar.serialize import algebra_to_json, to_json


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    z2 = algebra_to_json(groupoid_to_algebra(group_groupoid("Z2")))
    broken = dict(z2)
    broken["mult"] = Relation(4, 2, [(0, 0), (1, 1), (2, 1)]).to_dict()
    return {
        "z2": write("z2.json", z2),
        "z2_groupoid": write("z2g.json", group_groupoid("Z2").to_dict()),
        "broken": write("broken.json", broken),
        "identity": write("id.json", Relation(2, 2, [(0, 0), (1, 1)]).to_dict()),
        "only_g": write("g.json", Relation(2, 2, [(1, 1)]).to_dict()),
        "pants2": write("pants2.json", algebra_to_json(pair_of_pants(2, "fhilb"))),
        "diag": write("diag.json", block_expectation([1, 1]).to_dict()),
        "noncontractive": write("nc.json", noncontractive_projection().to_dict()),
        "fz2": write("fz2.json", to_json(f_image_per(group_groupoid("Z2")))),
        "fdisc": write("fdisc.json", to_json(f_image_per(discrete_groupoid(2)))),
    }


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_check_frobenius(files, capsys):
    assert run(capsys, "check-frobenius", files["z2"])[0] == 0
    assert run(capsys, "check-frobenius", files["z2_groupoid"])[0] == 0
    assert run(capsys, "check-frobenius", files["broken"])[0] == 1
    assert run(capsys, "check-frobenius", files["pants2"])[0] == 0


def test_malformed_input_exit_2(files, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "check-frobenius", str(bad))[0] == 2
    assert run(capsys, "check-frobenius", str(tmp_path / "absent.json"))[0] == 2


def test_cp_check(files, capsys):
    assert run(capsys, "cp-check", files["identity"], files["z2"], files["z2"])[0] == 0
    assert run(capsys, "cp-check", files["only_g"], files["z2"], files["z2"])[0] == 1
    assert run(capsys, "cp-check", files["identity"], files["z2"], files["pants2"])[0] == 2


def test_functor_F_outputs_cpm_per(files, capsys):
    code, out = run(capsys, "functor", "F", files["z2"], "--json")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["pass"] and doc["output"]["x_size"] == 2


def test_functor_G_and_roundtrip(files, capsys):
    assert run(capsys, "functor", "G", files["diag"])[0] == 0
    code, out = run(capsys, "functor", "G", files["noncontractive"])
    assert code == 1 and "unital" in out.out
    code, out = run(capsys, "functor", "roundtrip", files["diag"], "--json")
    assert code == 0 and json.loads(out.out)["pass"]


def test_split_search(files, capsys):
    assert run(capsys, "split-search", files["fz2"], files["fz2"])[0] == 0
    assert run(capsys, "split-search", files["fz2"], files["fdisc"], "--exhaustive")[0] == 1
    assert run(capsys, "split-search", files["fz2"], files["z2_groupoid"])[0] == 0
    assert run(capsys, "split-search", files["z2"], files["z2"])[0] == 2


def test_biproduct(files, tmp_path, capsys):
    out_path = tmp_path / "sum.json"
    code, _ = run(capsys, "biproduct", files["z2"], files["z2"], "--out", str(out_path))
    assert code == 0
    assert len(json.loads(out_path.read_text())["mult"]["pairs"]) == 8
    assert run(capsys, "biproduct", files["pants2"], files["pants2"])[0] == 0
    assert run(capsys, "biproduct", files["z2"], files["pants2"])[0] == 2


@pytest.mark.parametrize("name", ["rel-nosplit", "rel-unital-image", "fhilb-noncontractive"])
def test_counterexamples(name, capsys):
    code, out = run(capsys, "counterexample", name, "--fast")
    assert code == 0
    if name == "rel-nosplit":
        assert "no splitting among" in out.out
    if name == "fhilb-noncontractive":
        assert "1.20711 > 1" in out.out


def test_unknown_counterexample_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["counterexample", "nope"])
    assert exc.value.code == 2


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate-groupoids", "4", "--json")
    assert code == 0 and len(json.loads(out.out)["output"]) == 7
    assert run(capsys, "enumerate-groupoids", "10")[0] == 2


def test_deterministic_json(files, capsys):
    first = run(capsys, "check-frobenius", files["pants2"], "--json")[1].out
    second = run(capsys, "check-frobenius", files["pants2"], "--json")[1].out
    assert first == second
    json.loads(first)
