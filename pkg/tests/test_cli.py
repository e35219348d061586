import json

import pytest

from ginlab.cli import IdealFileError, main, parse_ideal_text


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("GINLAB_CACHE", str(tmp_path / "cache"))


@pytest.fixture
def ci_file(tmp_path):
    path = tmp_path / "ci.ideal"
    path.write_text("ring: Q[x1,x2]\ngens: x1^2, x2^2\ntype: 2,2\n")
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# -- ideal files ----------------------------------------------------------------

def test_parse_ideal_text():
    spec = parse_ideal_text("ring: Q[x1,x2]\ngens: x1^2, x2^2\n")
    assert spec.degrees() == [2, 2]
    assert spec.declared_type is None


def test_prime_field_header():
    spec = parse_ideal_text("ring: F32003[x,y]\ngens: x^2 - y^2\n")
    assert spec.ring.field.characteristic == 32003
    assert str(spec.generators[0]) == "x^2 + 32002*y^2"


def test_continuation_lines_and_comments():
    spec = parse_ideal_text("# a comment\nring: Q[x,y]\ngens: x^2,\n   x*y, # trailing\n y^3\ntype: 2,2\n")
    assert len(spec.generators) == 3


@pytest.mark.parametrize("text, where, what", [
    ("ring: Q[x1,x2]\ngens: x1^2 + x2\n", "f:2:7", "not homogeneous"),
    ("ring: Q[x1,x2]\ngens: x1^2,\n  x1*x3\n", "f:3:6", "unknown variable 'x3'"),
    ("ring: Q[x1,x2]\ngens: x1^2, 2x2\n", "f:2:14", "implicit multiplication"),
    ("ring: R[x]\ngens: x\n", "f:1", "bad ring"),
    ("gens: x\n", "f:1:1", "ring"),
    ("ring: Q[x]\n", "f", "missing 'gens:'"),
    ("ring: Q[x]\ngens: x - x\n", "f:2:7", "zero generator"),
])
def test_ideal_file_errors(text, where, what):
    with pytest.raises(IdealFileError) as err:
        parse_ideal_text(text, "f")
    msg = str(err.value)
    assert msg.startswith(where + ":") and what in msg


# -- subcommands ----------------------------------------------------------------

def test_gin_command(capsys, ci_file):
    code, out, _ = run(capsys, "gin", "--ideal", ci_file, "--power", 2, "--seed", 7)
    assert code == 0
    data = json.loads(out)
    assert data["ideal"]["generators"][0] == [4, 0]
    assert data["certificate"]["samples_agreed"] is True


def test_gin_output_is_byte_identical_and_cache_transparent(capsys, ci_file):
    _, cold, _ = run(capsys, "gin", "--ideal", ci_file, "--power", 2, "--seed", 7, "--no-cache")
    _, first, _ = run(capsys, "gin", "--ideal", ci_file, "--power", 2, "--seed", 7)
    _, hit, _ = run(capsys, "gin", "--ideal", ci_file, "--power", 2, "--seed", 7)
    assert cold == first == hit


def test_gin_seq_command(capsys, ci_file):
    code, out, _ = run(capsys, "gin-seq", "--ideal", ci_file, "--nmax", 3, "--seed", 1)
    data = json.loads(out)
    assert code == 0 and data["graded_system"] is True
    assert [e["p"] for e in data["entries"]] == [[2, 3], [4, 5], [6, 7]]


def test_verify_ci_by_type(capsys):
    code, out, _ = run(capsys, "verify-ci", "--type", "2,3", "--vars", 2, "--nmax", 3)
    data = json.loads(out)
    assert code == 0 and data["overall"] == "pass"
    assert [e["length"] for e in data["entries"]] == ["6", "18", "36"]


def test_verify_ci_failure_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring: Q[x,y]\ngens: x^2, y^3\ntype: 2,2\n")
    code, out, _ = run(capsys, "verify-ci", "--ideal", bad, "--nmax", 2, "--replicate", 0)
    assert code == 1 and json.loads(out)["overall"] == "fail"


def test_verify_ci_out_file(capsys, tmp_path, ci_file):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify-ci", "--ideal", ci_file, "--nmax", 2, "--out", target)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["overall"] == "pass"


def test_polytope_command(capsys, tmp_path):
    f = tmp_path / "s.ideal"
    f.write_text("ring: Q[x,y]\ngens: x^2, x*y, y^3\n")
    code, out, _ = run(capsys, "polytope", "--ideal", f, "--power", 1, "--halfspace")
    data = json.loads(out)
    assert code == 0
    assert data["complement_volume"] == "5/2"
    assert {"normal": [2, 1], "rhs": "3"} in data["polyhedron"]["facets"]


def test_multiplier_by_type(capsys):
    code, out, _ = run(capsys, "multiplier", "--type", "2,2", "-c", "1", "--bound", 8)
    data = json.loads(out)
    assert code == 0 and data["generators"] == ["x1", "x2"] and data["complete"]


def test_multiplier_by_ideal(capsys, ci_file):
    code, out, _ = run(capsys, "multiplier", "--ideal", ci_file, "--power", 4, "-c", "1", "--bound", 8)
    assert code == 0 and json.loads(out)["generators"] == ["x1", "x2"]


def test_betti_and_hilbert(capsys, tmp_path):
    f = tmp_path / "s.ideal"
    f.write_text("ring: Q[x,y]\ngens: x^2, x*y, y^3\n")
    code, out, _ = run(capsys, "betti", "--ideal", f, "--power", 1)
    table = {(e["i"], e["j"]): e["value"] for e in json.loads(out)["betti"]}
    assert code == 0 and table == {(0, 2): 2, (0, 3): 1, (1, 3): 1, (1, 4): 1}
    code, out, _ = run(capsys, "hilbert", "--ideal", f, "--power", 1, "--dmax", 4)
    assert code == 0 and json.loads(out)["hilbert_function"] == ["1", "2", "1", "0", "0"]


def test_field_override(capsys, ci_file):
    code, out, _ = run(capsys, "gin", "--ideal", ci_file, "--field", "fp:32003")
    assert code == 0 and json.loads(out)["certificate"]["field"] == "F32003"


def test_usage_errors(capsys, tmp_path):
    assert main(["gin"]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["gin", "--ideal", str(tmp_path / "missing.ideal")]) == 2
    assert main(["verify-ci", "--nmax", "2"]) == 2
    err = capsys.readouterr().err
    assert "verify-ci needs --ideal" in err


def test_non_homogeneous_file_is_named(capsys, tmp_path):
    f = tmp_path / "nh.ideal"
    f.write_text("ring: Q[x1,x2]\ngens: x1^2 + x2\n")
    code, _, err = run(capsys, "gin", "--ideal", f)
    assert code == 2 and "x1^2 + x2" in err and "not homogeneous" in err
