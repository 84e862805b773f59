"""End-to-end CLI checks driving main() with temp config files."""

import json

import pytest

from ears.cli import EXIT_CONSTRAINT, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, main
from ears.core import descriptor_to_config
from ears.examples import (
    bc1_double_fixture,
    nullity2_system,
    nullity3_system,
)


def write_config(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture()
def nu2_config(tmp_path):
    return write_config(tmp_path / "nu2.json", descriptor_to_config(nullity2_system()))


@pytest.fixture()
def nu3_config(tmp_path):
    return write_config(tmp_path / "nu3.json", descriptor_to_config(nullity3_system()))


@pytest.fixture()
def bc1_config(tmp_path):
    return write_config(tmp_path / "bc1.json", descriptor_to_config(bc1_double_fixture()))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_construct(capsys, nu2_config):
    code, rep = run(capsys, "construct", "--in", nu2_config)
    assert code == EXIT_OK
    assert rep["label"] == "A1 nullity 2"
    assert rep["descriptor"]["S"]["cosets"] == [[0, 0], [0, 1], [1, 0]]
    assert rep["meta"]["window_bound"] == 4


def test_construct_deterministic(capsys, nu3_config):
    code1 = main(["construct", "--in", nu3_config])
    first = capsys.readouterr().out
    code2 = main(["construct", "--in", nu3_config])
    second = capsys.readouterr().out
    assert code1 == code2 == EXIT_OK
    assert first == second


def test_verify_pass(capsys, nu2_config):
    code, rep = run(capsys, "verify", "--in", nu2_config)
    assert code == EXIT_OK
    assert rep["ok"] is True
    assert rep["caveat"] == "verified on window 4"
    assert len(rep["checks"]) == 8


def test_verify_window_one(capsys, nu2_config):
    code, rep = run(capsys, "verify", "--in", nu2_config, "--window", "1")
    assert code == EXIT_OK
    assert rep["ok"] is True
    assert rep["caveat"] == "verified on window 1"


def test_verify_window_artifact_reported_honestly(capsys, tmp_path):
    # 2Z translations put the smallest nonzero isotropic root at norm 2,
    # so a window-1 check cannot see a spanning set and must say so
    cfg = {
        "type": "A1",
        "rank": 1,
        "nullity": 1,
        "S": {"basis": [[2]], "cosets": [[0]], "translated": False},
    }
    path = write_config(tmp_path / "doubled.json", cfg)
    code, rep = run(capsys, "verify", "--in", path, "--window", "1")
    assert code == EXIT_MISMATCH
    failed = [c["axiom"] for c in rep["checks"] if not c["passed"]]
    assert failed == ["R3"]
    code, rep = run(capsys, "verify", "--in", path, "--window", "2")
    assert code == EXIT_OK


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["verify", "--in", str(path)]) == EXIT_PARSE


def test_missing_input(capsys):
    assert main(["verify"]) == EXIT_PARSE


def test_unreadable_input(capsys, tmp_path):
    assert main(["verify", "--in", str(tmp_path / "absent.json")]) == EXIT_PARSE


def test_wrong_schema(capsys, tmp_path):
    path = write_config(tmp_path / "odd.json", {"type": "A1"})
    assert main(["construct", "--in", path]) == EXIT_PARSE


def test_constraint_violation_exit(capsys, tmp_path):
    # long lattice 4Z fails long + 2*short inside long
    cfg = {
        "type": "B2",
        "rank": 2,
        "nullity": 1,
        "S": {"basis": [[1]], "cosets": [[0], [1]], "translated": False},
        "L": {"basis": [[4]], "cosets": [[0]], "translated": False},
    }
    path = write_config(tmp_path / "b2bad.json", cfg)
    assert main(["construct", "--in", path]) == EXIT_CONSTRAINT


def test_orbits(capsys, nu3_config):
    code, rep = run(
        capsys, "orbits", "--in", nu3_config, "--root", "1,1,1,1,0,0,0", "--window", "2"
    )
    assert code == EXIT_OK
    assert rep["root"] == [1, 1, 1, 1, 0, 0, 0]
    assert rep["translation_lattice"] == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    assert rep["finite_orbit"] == [[-1], [1]]
    assert [1, 1, 1, -1, 0, 0, 0] in rep["window_members"]


def test_orbits_requires_root(capsys, nu3_config):
    assert main(["orbits", "--in", nu3_config]) == EXIT_PARSE


def test_orbits_bad_root(capsys, nu3_config):
    assert main(["orbits", "--in", nu3_config, "--root", "1,2"]) == EXIT_PARSE
    assert main(["orbits", "--in", nu3_config, "--root", "1,x,1,1,0,0,0"]) == EXIT_PARSE
    # nonzero dual coordinates are outside the orbit domain
    assert main(["orbits", "--in", nu3_config, "--root", "1,1,1,1,1,0,0"]) == EXIT_PARSE


def test_minimality_not_minimal(capsys, nu3_config):
    code, rep = run(capsys, "minimality", "--in", nu3_config)
    assert code == EXIT_OK
    assert rep["verdict"] == "NotMinimal"
    assert rep["orbit_translation_lattice"] == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    # the inline certificate must actually write the removed reflection
    from fractions import Fraction

    from ears.examples import nullity3_system
    from ears.linalg import Vector, reflection_matrix
    from ears.weyl import word_element

    R = nullity3_system()
    word = [Vector(Fraction(c) for c in row) for row in rep["certificate"]]
    got = word_element(R.space, word).matrix
    base = Vector(Fraction(c) for c in rep["orbit_base"])
    assert got == reflection_matrix(R.space, base)


def test_minimality_minimal(capsys, nu2_config):
    code, rep = run(capsys, "minimality", "--in", nu2_config)
    assert code == EXIT_OK
    assert rep["verdict"] == "Minimal"
    assert rep["orbit_count"] == 3


def test_presentation(capsys, nu2_config):
    code, rep = run(capsys, "presentation", "--in", nu2_config)
    assert code == EXIT_OK
    assert rep["coxeter"]["answer"] == "no"
    assert len(rep["coxeter"]["witness_word"]) == 12
    assert rep["coxeter"]["evaluates_to_identity"] is True
    assert rep["conjugation"] == {"status": "none_found", "orbits_checked": 3}


def test_trim(capsys, bc1_config):
    code, rep = run(capsys, "trim", "--in", bc1_config)
    assert code == EXIT_OK
    assert rep["label"] == "A1 nullity 2"
    assert "E" not in rep["descriptor"]


def test_trim_rejects_non_bc(capsys, nu2_config):
    assert main(["trim", "--in", nu2_config]) == EXIT_CONSTRAINT


def test_irc(capsys, nu2_config):
    code, rep = run(capsys, "irc", "--in", nu2_config)
    assert code == EXIT_OK
    assert rep["label"] == "A1 nullity 2"
    # sums of the product-even semilattice fill the whole integer lattice
    from ears.core import semilattice_from_config
    from ears.examples import integer_lattice

    iso = semilattice_from_config(rep["isotropic"], 2)
    assert iso == integer_lattice(2)


def test_examples_golden_report(capsys):
    code, rep = run(capsys, "examples")
    assert code == EXIT_OK
    assert rep["ok"] is True
    assert len(rep["checks"]) == 3
    assert all(c["passed"] for c in rep["checks"])


def test_output_file(tmp_path, nu2_config):
    out = tmp_path / "report.json"
    assert main(["verify", "--in", nu2_config, "--out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["ok"] is True


def test_threads_env(capsys, monkeypatch, nu2_config):
    monkeypatch.setenv("EARS_THREADS", "7")
    code, rep = run(capsys, "construct", "--in", nu2_config)
    assert code == EXIT_OK
    assert rep["meta"]["threads_cap"] == 7
    assert rep["meta"]["threads_used"] == 1


@pytest.mark.parametrize("value", ["zero", "0", "-3"])
def test_threads_env_rejected(monkeypatch, nu2_config, value):
    monkeypatch.setenv("EARS_THREADS", value)
    assert main(["construct", "--in", nu2_config]) == EXIT_PARSE


def test_bad_flags(nu2_config):
    assert main(["verify", "--in", nu2_config, "--window", "0"]) == EXIT_PARSE
    assert main(["minimality", "--in", nu2_config, "--budget", "0"]) == EXIT_PARSE
