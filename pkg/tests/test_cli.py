import json
import subprocess
import sys

import pytest

from schurkit.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, emit, main, run
from schurkit.cohomology import second_cohomology
from schurkit.groups import to_json, dihedral
from schurkit.groupspec import GroupSpecError, parse_group_spec


def values(argv):
    rep, _ = run(argv)
    return rep, {r["quantity"]: r["value"] for r in rep.results}


def test_info_sl23():
    rep, v = values(["info", "sl(2,3)"])
    assert rep.exit_code == EXIT_OK
    assert v["order"] == 24 and v["center"] == 2 and v["abelianization"] == [3]
    text = emit(rep)
    assert "order" in text and "Z/3" in text


def test_multiplier_elementary():
    _, v = values(["multiplier", "elementary(2,2)"])
    assert v["multiplier"] == [2]


def test_h2():
    _, v = values(["h2", "alt(4)", "6"])
    assert v["h2"] == [6]


def test_every_result_names_its_operation():
    rep, _ = values(["info", "q8"])
    assert all(r["op"] for r in rep.results)


def test_extension_build_and_split():
    _, v = values(["extension", "build", "cyclic(2)", "2", "--cocycle", "h2:0"])
    assert v["order"] == 4 and v["exponent"] == 4
    _, v = values(["extension", "split", "alt(4)", "2", "--cocycle", "random-coboundary:5"])
    assert v["split"] is True and "witness" in v


def test_extension_pairing():
    _, v = values(["extension", "pairing", "elementary(2,2)", "2", "--cocycle", "zero"])
    assert v["trivial"] is True


def test_extension_cocycle_file(tmp_path):
    G = parse_group_spec("q8").group
    beta = second_cohomology(G, 2).basis[0]
    path = tmp_path / "beta.json"
    path.write_text(json.dumps(beta.to_json()))
    _, v = values(["extension", "build", "q8", "2", "--cocycle", str(path)])
    assert v["order"] == 16


def test_missing_cocycle_file_is_usage_error():
    rep, _ = run(["extension", "build", "q8", "2", "--cocycle", "/nonexistent.json"])
    assert rep.exit_code == EXIT_USAGE


def test_k2():
    _, v = values(["k2", "9"])
    assert v["trivial"] is True and v["k2"] == []


def test_symbols():
    rep, v = values(["symbols", "--group", "sl(3,2)", "--cocycle", "random-coboundary:1"])
    assert rep.exit_code == EXIT_OK and v["holds"] and v["trivial"]


def test_bad_spec_is_usage_error_with_hint():
    rep, _ = run(["info", "frob(3)"])
    assert rep.exit_code == EXIT_USAGE
    assert "grammar" in rep.error


def test_missing_argument_is_usage_error():
    rep, _ = run(["h2", "sym(3)"])
    assert rep.exit_code == EXIT_USAGE


def test_capacity_error_reports_bound():
    rep, _ = run(["h2", "sl(3,2)", "2"])
    assert rep.exit_code == EXIT_FAIL
    assert "60" in rep.error


def test_stretch_raises_bound():
    rep, v = values(["h2", "sl(3,2)", "2", "--stretch"])
    assert rep.exit_code == EXIT_OK and v["order"] == 2


def test_verify_k2_json():
    rep, fmt = run(["verify", "k2", "--format", "json"])
    data = json.loads(emit(rep, fmt))
    assert data["suite"] == "k2"
    assert data["checks"][0]["q"] == 2 and data["checks"][0]["trivial"] is True
    assert all(c["pass"] for c in data["checks"])
    assert rep.exit_code == EXIT_OK


def test_json_is_deterministic_without_timing():
    out = [emit(*run(["verify", "heisenberg", "--format", "json"])) for _ in range(2)]
    assert out[0] == out[1]
    assert "seconds" not in out[0]
    timed = json.loads(emit(*run(["verify", "k2", "--format", "json", "--timing"])))
    assert "seconds" in timed


def test_json_roundtrip():
    rep, fmt = run(["info", "dihedral(4)", "--format", "json"])
    data = json.loads(emit(rep, fmt))
    assert json.loads(json.dumps(data)) == data == rep.to_json()


def test_empty_suite(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"empty": []}))
    rep, fmt = run(["verify", "empty", "--manifest", str(path)])
    assert rep.exit_code == EXIT_OK
    assert "0 checks" in emit(rep, fmt)


def test_failing_suite_exit_code(tmp_path):
    bad = {"bad": [{"name": "wrong", "op": "k2", "args": {"q": 4}, "expected": {"trivial": False}}]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(bad))
    rep, fmt = run(["verify", "bad", "--manifest", str(path)])
    assert rep.exit_code == EXIT_FAIL
    assert "FAIL" in emit(rep, fmt)


def test_unknown_suite():
    rep, _ = run(["verify", "nope"])
    assert rep.exit_code == EXIT_USAGE


def test_verify_aut_splitting_prints_evidence():
    rep, fmt = run(["verify", "aut-splitting"])
    text = emit(rep, fmt)
    assert "verdict:" in text and "witness" in text


def test_main_prints(capsys):
    assert main(["k2", "4"]) == 0
    assert "k2_finite_field" in capsys.readouterr().out


def test_console_module():
    out = subprocess.run([sys.executable, "-m", "schurkit", "info", "foo"], capture_output=True, text=True)
    assert out.returncode == 2


@pytest.mark.parametrize("spec,order", [
    ("sl(2,3)", 24), ("gl(2,2)", 6), ("sp(4,2)", 720), ("su(3,2)", 216), ("pgl(2,3)", 24),
    ("psl(2,5)", 60), ("heis(1,3)", 27), ("cyclic(7)", 7), ("elementary(3,2)", 9),
    ('perm("(1 2 3)(4 5)")', 6), ('perm("(1 2)", "(1 2 3 4)")', 24), ('perm("(1 2); (2 3)")', 6),
    ("cover_sym(4)", 48), ("cover_alt(5)", 120), ("clifford_E(3)", 16), ("clifford_F(3)", 8),
    ("sym(4)", 24), ("alt(5)", 60), ("dihedral(6)", 12), ("q8", 8), ("abelian(2,4)", 8),
    ('fp("gens: a b; rels: a^2, b^3, (a b)^3")', 12),
])
def test_group_specs(spec, order):
    assert parse_group_spec(spec).group.order == order


def test_table_spec(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(to_json(dihedral(3))))
    assert parse_group_spec(f"table({path})").group.order == 6


@pytest.mark.parametrize("spec", ["", "sl(2)", "sl(a,b)", "sl(9,2)", "foo(1)", 'fp("gens: a; rels: b")',
                                  "table(1,2)"])
def test_bad_specs(spec):
    with pytest.raises(GroupSpecError):
        parse_group_spec(spec)
