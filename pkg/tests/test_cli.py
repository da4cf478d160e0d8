import json

import pytest

from tautilt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_text(capsys):
    code, out, _ = run(capsys, "check", "3d")
    assert code == 0
    assert out.strip() == "dim 7, 1-Gorenstein (id=1 both sides), not self-injective, gldim > 12"


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "examples/3e.alg", "--emit", "json")
    data = json.loads(out)
    assert code == 0 and data["self_injective"] and data["dimension"] == 6
    assert data["injective_dimension"] == {"left": 0, "right": 0}


def test_enumerate_statuses(capsys):
    code, out, _ = run(capsys, "enumerate", "36", "--emit", "json")
    data = json.loads(out)
    assert code == 0 and len(data["nodes"]) == 24 and len(data["edges"]) == 36
    code, _, _ = run(capsys, "enumerate", "kronecker", "--budget", "20")
    assert code == 2
    code, out, _ = run(capsys, "enumerate", "a2", "--emit", "dot")
    assert code == 0 and out.startswith("digraph")


def test_enumerate_is_deterministic(capsys):
    a = run(capsys, "enumerate", "3e", "--emit", "json")[1]
    b = run(capsys, "enumerate", "3e", "--emit", "json")[1]
    assert a == b


def test_cache_replays_output(capsys, tmp_path):
    first = run(capsys, "enumerate", "a2", "--cache", str(tmp_path))
    assert list(tmp_path.rglob("*.out"))
    second = run(capsys, "enumerate", "a2", "--cache", str(tmp_path))
    assert first == second


def test_field_override(capsys):
    code, out, _ = run(capsys, "check", "36", "--field", "Fp:3", "--emit", "json")
    assert code == 0 and json.loads(out)["dimension"] == 10


def test_bad_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices: 1 2\narrow a: 1 -> 9\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 1 and "line 2" in err
    assert run(capsys, "check", "nope")[0] == 1
    assert run(capsys, "check", "3d", "--field", "Fp:6")[0] == 1
    assert run(capsys, "enumerate", "3d", "--ext-bound", "0")[0] == 1
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_bongartz(capsys):
    code, out, _ = run(capsys, "bongartz", "61", "S1", "--emit", "json")
    data = json.loads(out)
    assert code == 0 and data["completion"] == "[1|1/3|1/2|4/1]"
    assert data["verdict"]["status"] == "CertifiedNotGP"
    code, _, err = run(capsys, "bongartz", "kronecker", "P1", "--budget", "10")
    assert code == 2
    code, _, err = run(capsys, "bongartz", "3d", "X7")
    assert code == 1


def test_bongartz_rejects_non_rigid(capsys, tmp_path):
    from tautilt.formats import bundled
    from tautilt.modules import local_module, to_json
    p = tmp_path / "reg.json"
    p.write_text(json.dumps(to_json(local_module(bundled("kronecker"), "1", ["b"]))))
    code, _, err = run(capsys, "bongartz", "kronecker", str(p))
    assert code == 1 and "not tau-rigid" in err


def test_bongartz_module_from_json(capsys, tmp_path):
    from tautilt.formats import bundled
    from tautilt.modules import simple, to_json
    p = tmp_path / "s2.json"
    p.write_text(json.dumps(to_json(simple(bundled("3e"), "2"))))
    code, out, _ = run(capsys, "bongartz", "3e", str(p))
    assert code == 0 and "[1/2|2/3|2]" in out


def test_gp_report_and_dagger(capsys):
    code, out, _ = run(capsys, "gp-report", "36", "--emit", "json")
    data = json.loads(out)
    assert code == 0 and sorted(data["gp_tau_tilting_projective_free"]) == ["[2/3|2|2/1]", "[3|(1 3)/2|1]"]
    code, out, _ = run(capsys, "dagger", "3d")
    assert code == 0 and "mismatches 0" in out
    assert run(capsys, "dagger", "kronecker", "--budget", "10")[0] == 2


def test_cm_finite(capsys):
    code, out, _ = run(capsys, "cm-finite", "kronecker", "--emit", "json")
    data = json.loads(out)
    assert code == 0 and data["algebra"]["route"] == "finite-global-dimension" and data["agree"]


def test_paper_examples(capsys):
    code, out, _ = run(capsys, "paper-examples", "--emit", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 8 and all(d["passed"] for d in data)
