import json

import pytest

from kaehler import formats
from kaehler.cli import main
from kaehler.realization import in_kernel


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def fixtures_dir(tmp_path, capsys):
    d = tmp_path / "fixtures"
    for name in ("kaehler-surface-product", "para-surface-product", "gray-nonintegrable-r6"):
        assert run(capsys, "fixture", name, "-o", d)[0] == 0
    return d


def test_check_surface(capsys, fixtures_dir):
    code, out, _ = run(capsys, "--json", "check", fixtures_dir / "kaehler-surface-product.model.json")
    assert code == 0
    report = json.loads(out)
    assert {c["name"]: c["holds"] for c in report["checks"]} == {"bianchi": True, "gray": True, "kaehler": True}
    assert report["values"]["tau"] == "2"


def test_json_flag_after_subcommand(capsys, fixtures_dir):
    code, out, _ = run(capsys, "check", fixtures_dir / "para-surface-product.model.json", "--json")
    assert code == 0 and json.loads(out)["command"] == "check"


def test_check_failures_carry_witness(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"m": 4, "kind": "complex", "A": [{"i": 1, "j": 3, "k": 3, "l": 1, "v": "1"}]}))
    code, out, _ = run(capsys, "--json", "check", f)
    assert code == 1
    failed = [c for c in json.loads(out)["checks"] if not c["holds"]]
    assert failed and all(c["witness"]["at"] for c in failed)
    f.write_text(json.dumps({"m": 4, "kind": "complex", "A": [{"i": 1, "j": 2, "k": 3, "l": 4, "v": "1"}]}))
    code, out, _ = run(capsys, "check", f)
    assert code == 1 and "bianchi: FAIL" in out


def test_verify_mismatch(capsys, tmp_path, fixtures_dir):
    th = tmp_path / "t.json"
    assert run(capsys, "realize", "--random", "--m", 4, "--seed", 3, "-o", th)[0] == 0
    code, out, _ = run(capsys, "--json", "verify", fixtures_dir / "kaehler-surface-product.model.json", th)
    assert code == 1
    witness = next(c["witness"] for c in json.loads(out)["checks"] if c["name"] == "L(theta)=A")
    assert len(witness["at"]) == 4


def test_verify_pass_with_metric(capsys, tmp_path):
    model, th, g = tmp_path / "m.json", tmp_path / "t.json", tmp_path / "g.json"
    assert run(capsys, "random", "--m", 4, "--kind", "para", "--seed", 2, "--kaehler", "-o", model)[0] == 0
    assert run(capsys, "realize", model, "-o", th, "--metric", g)[0] == 0
    assert run(capsys, "verify", model, th, "--points", 2)[0] == 0
    assert run(capsys, "verify", model, g, "--points", 1)[0] == 0


def test_realize_random_para(capsys, tmp_path):
    th = tmp_path / "t.json"
    code, out, _ = run(capsys, "realize", "--seed", 7, "--m", 4, "--kind", "para", "--random", "-o", th)
    assert code == 0
    assert in_kernel(formats.load_theta(th))


def test_reports_deterministic(capsys, fixtures_dir):
    args = ("--json", "verify", fixtures_dir / "para-surface-product.model.json",
            fixtures_dir / "para-surface-product.theta.json", "--points", 2, "--seed", 5)
    first = run(capsys, *args)
    assert first == run(capsys, *args)
    assert first[0] == 0


def test_decompose_and_contract(capsys, tmp_path, fixtures_dir):
    code, out, _ = run(capsys, "--json", "decompose", fixtures_dir / "kaehler-surface-product.model.json", "-o", tmp_path / "parts")
    assert code == 0
    assert json.loads(out)["values"]["norms"]["A"] == "4"
    p1 = formats.load_model(tmp_path / "parts" / "p1.model.json")
    assert p1.component(3, 4, 4, 3) == formats.linalg.parse_rational("1/3")
    code, out, _ = run(capsys, "--json", "contract", fixtures_dir / "kaehler-surface-product.model.json")
    assert code == 0 and json.loads(out)["values"]["rho"][0][0] == "1"
    code, out, _ = run(capsys, "--json", "decompose", fixtures_dir / "para-surface-product.model.json")
    assert code == 0 and json.loads(out)["values"]["route"] == "gram"


def test_curvature(capsys, fixtures_dir, tmp_path):
    g = tmp_path / "g.json"
    th = fixtures_dir / "kaehler-surface-product.theta.json"
    model = fixtures_dir / "kaehler-surface-product.model.json"
    # write the metric through realize on the fixture model
    assert run(capsys, "realize", model, "-o", tmp_path / "t.json", "--metric", g)[0] == 0
    code, out, _ = run(capsys, "--json", "curvature", g, "--at", "0,0,0,0")
    assert code == 0 and json.loads(out)["values"]["tau"] == "2"
    assert th.exists()
    assert run(capsys, "curvature", g, "--at", "1,2")[0] == 2


def test_csc(capsys, tmp_path, fixtures_dir):
    pot = tmp_path / "p.json"
    code, out, _ = run(capsys, "--json", "csc", fixtures_dir / "kaehler-surface-product.theta.json", "--degree", 6, "-o", pot)
    assert code == 0
    doc = formats.read(pot)
    assert doc["c"] == "-2" and doc["residual_zero_through"] == 2
    code, _, err = run(capsys, "csc", fixtures_dir / "kaehler-surface-product.theta.json", "--c", "abc")
    assert code == 2 and "input error" in err


def test_fixture_jet(capsys, fixtures_dir):
    J0, dJ = formats.jet_from_json(formats.read(fixtures_dir / "gray-nonintegrable-r6.jet.json"))
    assert J0[1, 0] == 1 and any(v != 0 for v in dJ[4].flat)


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "fixture", "bogus")[0] == 2
    assert run(capsys, "check", tmp_path / "nope.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "realize")[0] == 2
