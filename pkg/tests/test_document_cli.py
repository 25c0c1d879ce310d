import json
import subprocess
import sys

import pytest

from f1geom import cli
from f1geom.document import bundled, dumps, load, loads
from f1geom.errors import ParseError

EXAMPLES = {p.stem: p for p in bundled()}


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, (json.loads(out) if out else None), err


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_round_trip(name):
    doc = load(EXAMPLES[name])
    text = dumps(doc)
    again = loads(text)
    assert again == doc
    assert dumps(again) == text


def test_unknown_key_has_position():
    text = '{"kind": "monoid",\n "generators": ["T"],\n "colour": 1}'
    with pytest.raises(ParseError) as info:
        loads(text)
    assert info.value.line == 3
    assert "colour" in str(info.value)


def test_relation_error_points_into_string():
    text = '{"kind": "monoid",\n "generators": ["T"],\n "relations": ["T^2 = Q"]}'
    with pytest.raises(ParseError) as info:
        loads(text)
    assert (info.value.line, info.value.column) == (3, 23)


def test_json_syntax_error():
    with pytest.raises(ParseError) as info:
        loads('{"kind": "monoid",\n "generators": ["T"\n}')
    assert info.value.line == 3


def test_wrong_kind():
    with pytest.raises(ParseError):
        loads('{"kind": "group", "generators": []}')


def test_spec_command(capsys):
    assert run_json(capsys, "spec", EXAMPLES["affine_line"])[1]["primes"][0]["units"] == {"rank": 1, "torsion": []}
    assert len(run_json(capsys, "spec", EXAMPLES["affine_line"])[1]["primes"]) == 2
    assert len(run_json(capsys, "spec", EXAMPLES["free4"])[1]["primes"]) == 16
    assert len(run_json(capsys, "spec", EXAMPLES["unit_generator"])[1]["primes"]) == 1


def test_count_worked_example(capsys):
    code, data, _ = run_json(capsys, "count", EXAMPLES["sum_relation"], "--mode", "Q", "--n", "1..4")
    assert code == 0 and data["Q_le_P"]
    polys = sorted(tuple(r["Q_polynomial"]) for r in data["rows"] if r["point"] != "total" and any(r["Q"]))
    assert polys == sorted([(1,), (0, 1), (0, 1), (0, 1), (0, 1), (0, -1, 2)])


def test_count_relation_free_P_equals_Q(capsys):
    _, data, _ = run_json(capsys, "count", EXAMPLES["free4"], "--mode", "Q", "--n", "1..3")
    assert all(r["P"] == r["Q"] for r in data["rows"])


def test_count_sl2_totals(capsys):
    _, data, _ = run_json(capsys, "count", EXAMPLES["sl2"], "--mode", "Q", "--n", "1..6")
    total = [r for r in data["rows"] if r["point"] == "total"][0]
    assert total["Q"] == [n * (2 * n + 1) for n in range(1, 7)]


def test_count_P_torsion_exits_1(capsys):
    code, data, _ = run_json(capsys, "count", EXAMPLES["cube_root"], "--mode", "P")
    assert code == 1 and data["not_polynomial"]["witness"] == 6


def test_zeta_command(capsys):
    code, data, _ = run_json(capsys, "zeta", EXAMPLES["multiplicative_group"], "--p", 3, "--order", 4)
    assert code == 0 and data["coefficients"] == [1, 2, 6, 18, 54]
    assert data["rational_guess"]["label"] == "conjectural"


def test_hom_command(capsys):
    code, data, _ = run_json(capsys, "hom", EXAMPLES["sum_relation"], "--n", 2)
    assert code == 0 and data["total"] == 15


def test_adjoint_check_small(capsys):
    code, out, _ = run(capsys, "adjoint-check", "--suite", "small")
    assert code == 0
    assert out.startswith("F⊣G: 100% hom-count matches; ρ⊣σ: 100%")


def test_tensor_of_units(capsys):
    code, data, _ = run_json(capsys, "tensor", EXAMPLES["unit_object"], EXAMPLES["unit_object"])
    assert code == 0 and data["isomorphic_to"]["first"]


def test_tensor_needs_bobjects(capsys):
    code, _, err = run(capsys, "tensor", EXAMPLES["free4"], EXAMPLES["unit_object"])
    assert code == 2 and "bobject" in err


def test_psi_command(capsys):
    code, out, _ = run(capsys, "psi", EXAMPLES["sl2"], "--q", 2)
    assert code == 0 and "Ψ₁ injective: 6 ↪ 16" in out


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "monoid", "generators": ["T"], "relations": ["T^20 = 1"]}')
    assert run(capsys, "spec", bad)[0] == 3
    assert run(capsys, "spec", bad, "--degree-bound", 24)[0] == 0
    assert run(capsys, "spec", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "psi", EXAMPLES["free4"], "--q", 17)[0] == 3
    code, _, err = run(capsys, "count", EXAMPLES["free4"], "--n", "5..2", "--json")
    assert code == 2 and json.loads(err)["error"] == "input_error"


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "f1geom.cli", "count", str(EXAMPLES["sum_relation"]), "--n", "1..3", "--json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["ok"]
