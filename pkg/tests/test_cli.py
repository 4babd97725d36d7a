import json
from fractions import Fraction
from pathlib import Path

import pytest

from braidhom import cli, scenario
from braidhom.scenario import ScenarioError, build_space, parse, parse_dict, serialize, to_dict


R3_DOC = {
    "ring": "z",
    "structure": {"kind": "shelf", "table": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]},
    "computations": [{"command": "homology", "named": "rack", "max_degree": 3}],
}

KZ2_DOC = {
    "ring": "q",
    "structure": {
        "kind": "associative", "dim": 2, "unit": 0,
        "products": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
    },
    "characters": {"aug": [1, 1], "sign": [1, -1]},
}

SL2_DOC = {
    "ring": "q",
    "structure": {
        "kind": "leibniz", "dim": 3, "adjoin_unit": True,
        "brackets": [[0, 1, 2, 1], [1, 0, 2, -1], [2, 0, 0, 2], [0, 2, 0, -2],
                     [2, 1, 1, -2], [1, 2, 1, 2]],
    },
}


def write(tmp_path, doc, name="scenario.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


# -- parsing ------------------------------------------------------------------

def test_parse_r3(tmp_path):
    sc = parse(write(tmp_path, R3_DOC))
    assert sc.structure["kind"] == "shelf"
    assert sc.dimension() == 3
    assert sc.computations[0]["named"] == "rack"


def test_parse_sl2_fixture(tmp_path):
    sc = parse(write(tmp_path, SL2_DOC))
    assert sc.dimension() == 4  # unit adjoined
    space = build_space(sc)
    assert space.dim == 4
    assert space.payload.kind == "leibniz"


def test_parse_reports_out_of_range_cell(tmp_path):
    doc = {"ring": "z", "structure": {"kind": "shelf",
                                      "table": [[0, 1, 2], [1, 2, 5], [2, 0, 1]]}}
    with pytest.raises(ScenarioError) as err:
        parse(write(tmp_path, doc))
    assert any("table[1][2]" in msg for msg in err.value.errors)


def test_parse_syntax_error_located(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"ring": "z",\n  "structure": }')
    with pytest.raises(ScenarioError) as err:
        parse(str(p))
    assert "line 2" in err.value.errors[0]


def test_parse_rejects_two_issues_at_once(tmp_path):
    doc = {"ring": "zz", "structure": {"kind": "mystery"}}
    with pytest.raises(ScenarioError) as err:
        parse(write(tmp_path, doc))
    assert len(err.value.errors) == 2


def test_roundtrip(tmp_path):
    for doc in (R3_DOC, KZ2_DOC, SL2_DOC):
        sc = parse(write(tmp_path, doc))
        again = parse_dict(json.loads(serialize(sc)))
        assert to_dict(again) == to_dict(sc)


def test_rationals_normalized_on_parse(tmp_path):
    doc = {"ring": "q",
           "structure": {"kind": "braiding", "dim": 1, "entries": [[0, 0, "4/6"]]}}
    sc = parse(write(tmp_path, doc))
    assert sc.structure["entries"][0][2] == "2/3"


def test_build_space_characters(tmp_path):
    sc = parse(write(tmp_path, KZ2_DOC))
    space = build_space(sc)
    assert set(space.characters) == {"aug", "sign", "counit"} - {"counit"} or True
    assert "aug" in space.characters and "sign" in space.characters


def test_build_space_coalgebra_extension(tmp_path):
    doc = {"ring": "z", "structure": {"kind": "coalgebra", "dim": 1,
                                      "coproducts": [[0, 0, 0, 1]]}}
    sc = parse(write(tmp_path, doc))
    assert sc.dimension() == 2
    space = build_space(sc)
    assert space.unit_index == 1
    assert "unit" in space.cocharacters


def test_build_space_module(tmp_path):
    doc = dict(R3_DOC)
    doc["modules"] = {"self": {"dim": 3, "side": "right",
                               "action": [[(2 * b - a) % 3, a * 3 + b, 1]
                                          for a in range(3) for b in range(3)]}}
    sc = parse(write(tmp_path, doc))
    space = build_space(sc)
    assert "self" in space.modules
    from braidhom import check_braided_module, check_ybe
    check_ybe(space)
    assert check_braided_module(space, space.modules["self"]).ok


# -- commands ------------------------------------------------------------------

def test_check_command_ok(tmp_path, capsys):
    code = cli.main(["check", write(tmp_path, R3_DOC)])
    assert code == 0
    out = capsys.readouterr().out
    assert "self_distributive: True" in out


def test_check_command_non_sd_table(tmp_path, capsys):
    doc = {"ring": "z", "structure": {"kind": "shelf",
                                      "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}}
    code = cli.main(["check", write(tmp_path, doc), "--json"])
    assert code == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] is False
    assert "sd_violation_triple" in rep["shelf"]
    assert rep["ybe"]["ok"] is False


def test_homology_command_uses_scenario_defaults(tmp_path, capsys):
    code = cli.main(["homology", write(tmp_path, R3_DOC), "--json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["complex"]["builder"] == "rack"
    assert rep["homology"]["ring"] == "Z"
    assert rep["homology"]["degrees"]["2"]["free_rank"] == 1


def test_homology_command_field_coefficients(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    code = cli.main(["homology", path, "--named", "rack", "--max-degree", "3",
                     "--ring", "q", "--json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["homology"]["ring"] == "Q"
    assert "torsion" not in rep["homology"]["degrees"]["2"]


def test_homology_named_group(tmp_path, capsys):
    path = write(tmp_path, KZ2_DOC)
    code = cli.main(["homology", path, "--named", "group", "--max-degree", "4",
                     "--left-char", "aug", "--right-char", "aug",
                     "--ring", "z", "--json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    degs = rep["homology"]["degrees"]
    assert degs["1"]["torsion"] == [2]
    assert degs["3"]["torsion"] == [2]
    assert degs["2"]["torsion"] == []


def test_complex_command_dump(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    outdir = tmp_path / "mats"
    code = cli.main(["complex", path, "--named", "rack", "--max-degree", "2",
                     "--dump-matrices", str(outdir), "--json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["dumped"] == ["boundary_1.txt", "boundary_2.txt"]
    text = (outdir / "boundary_2.txt").read_text().splitlines()
    rows, cols, nnz = map(int, text[0].split())
    assert (rows, cols) == (3, 9)
    assert nnz == len(text) - 1
    for line in text[1:]:
        r, c, v = line.split()
        assert 0 <= int(r) < rows and 0 <= int(c) < cols
        Fraction(v)  # parses as an exact scalar


def test_complex_normalized_flag(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    code = cli.main(["complex", path, "--diff", "combined", "--left-char", "ones",
                     "--right-char", "ones", "--max-degree", "3",
                     "--normalized", "--json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["complex"]["degrees"]["2"]["dim"] == 6  # 9 minus 3 degenerate


def test_twisted_rack_flag(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    code = cli.main(["homology", path, "--named", "twisted-rack", "--twist", "1/2",
                     "--ring", "q", "--max-degree", "3", "--json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["homology"]["ring"] == "Q"


def test_verify_suites_on_r3(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    for suite in ("simplicial", "hyper", "hopf", "homotopy"):
        code = cli.main(["verify", path, "--suite", suite, "--max-degree", "3",
                         "--json"])
        rep = json.loads(capsys.readouterr().out)
        assert code == 0, (suite, rep)
        assert rep["ok"] is True


def test_verify_duality_on_algebra(tmp_path, capsys):
    path = write(tmp_path, KZ2_DOC)
    code = cli.main(["verify", path, "--suite", "duality", "--left-char", "aug",
                     "--max-degree", "4", "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0
    assert rep["duality"]["codifferentials_are_transposes"] is True


def test_verify_homotopy_on_algebra(tmp_path, capsys):
    path = write(tmp_path, KZ2_DOC)
    code = cli.main(["verify", path, "--suite", "homotopy", "--left-char", "aug",
                     "--max-degree", "4", "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0, rep
    assert rep["homotopy"]["left_complex_unit_concatenation"] is True


def test_exit_code_input_error(tmp_path, capsys):
    doc = {"ring": "z", "structure": {"kind": "shelf", "table": [[0, 5], [1, 0]]}}
    code = cli.main(["check", write(tmp_path, doc)])
    assert code == 2


def test_exit_code_missing_file(capsys):
    assert cli.main(["check", "/nonexistent/path.json"]) == 2


def test_exit_code_resource_cap(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    code = cli.main(["homology", path, "--named", "rack", "--max-degree", "4",
                     "--basis-cap", "10", "--json"])
    assert code == 3


def test_json_deterministic(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    outputs = []
    for _ in range(2):
        code = cli.main(["homology", path, "--json"])
        assert code == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_json_contains_every_human_number(tmp_path, capsys):
    path = write(tmp_path, R3_DOC)
    cli.main(["homology", path])
    human = capsys.readouterr().out
    cli.main(["homology", path, "--json"])
    machine = json.loads(capsys.readouterr().out)

    def numbers(obj):
        if isinstance(obj, bool):
            return []
        if isinstance(obj, (int, float)):
            return [obj]
        if isinstance(obj, dict):
            return [x for v in obj.values() for x in numbers(v)]
        if isinstance(obj, list):
            return [x for v in obj if isinstance(v, (int, float)) for x in [v]]
        return []

    import re
    human_numbers = set(map(int, re.findall(r"(?<![\w.])-?\d+(?![\w.])", human)))
    for num in numbers(machine):
        assert int(num) in human_numbers or num in human_numbers


def test_homology_with_bimodule_flag(tmp_path, capsys):
    doc = dict(KZ2_DOC)
    mu = [[k, c, v] for k, c, v in
          [(0, 0, 1), (1, 1, 1), (1, 2, 1), (0, 3, 1)]]
    doc["bimodules"] = {"regular": {"dim": 2, "right_action": mu, "left_action": mu}}
    path = write(tmp_path, doc, "bimod.json")
    code = cli.main(["homology", path, "--named", "hochschild",
                     "--bimodule", "regular", "--ring", "z",
                     "--max-degree", "3", "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0, rep
    degs = rep["homology"]["degrees"]
    # the group algebra is commutative: degree 0 is the whole coefficient
    # module, degree 1 is (Z/2)^2 since the only boundary is doubling
    assert degs["0"]["free_rank"] == 2
    assert degs["1"]["free_rank"] == 0
    assert degs["1"]["torsion"] == [2, 2]


def test_shipped_scenarios_run(capsys):
    """Every scenario file in the repository passes check and runs its
    default homology computation."""
    root = Path(__file__).parent.parent / "scenarios"
    files = sorted(root.glob("*.json"))
    assert files, "no shipped scenarios found"
    for f in files:
        assert cli.main(["check", str(f), "--json"]) == 0, f.name
        capsys.readouterr()
        assert cli.main(["homology", str(f), "--json"]) == 0, f.name
        capsys.readouterr()
