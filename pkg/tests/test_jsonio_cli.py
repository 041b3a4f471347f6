import json

import pytest

from edlattice.catalog import build_list_L, parse_catalog_key
from edlattice.cli import main
from edlattice.ed_solver import min_permutation_rank
from edlattice.jsonio import (
    group_to_json,
    module_to_json,
    parse_expected_table,
    parse_group,
    parse_module,
    parse_presentation,
    result_to_json,
)


def rt(module):
    return parse_module(module_to_json(module), module.prime)


def test_module_round_trip_preserves_behaviour():
    m = build_list_L("M7", 3).module
    n = rt(m)
    assert n.free_rank == m.free_rank and n.torsion == m.torsion
    for g in m.group.elements():
        assert n.action(g) == m.action(g)


def test_module_json_uses_decimal_strings():
    m = build_list_L("M3", 2).module
    data = module_to_json(m)
    entries = [x for row in data["action"]["1"] for x in row]
    assert all(isinstance(x, str) for x in entries)
    assert data["group"]["type"] == "table"
    # integer entries must be accepted on input too
    data["action"]["1"] = [[int(x) for x in row] for row in data["action"]["1"]]
    n = parse_module(data, 2)
    assert n.action(1) == m.action(1)


def test_torsion_canonicalization():
    data = {
        "group": {"type": "cyclic", "order": 3},
        "free_rank": 0,
        "torsion": [9, 3],
        "action": {"1": [["4", "0"], ["0", "1"]]},
    }
    m = parse_module(data, 3)
    assert list(m.torsion) == [3, 9]
    # the twisted ℤ/9 coordinate moved to slot 1
    assert m.action(1) == [[1, 0], [0, 4]]
    result = min_permutation_rank(m, 3)
    assert (result.min_rank, result.ed) == (4, 4)


def test_parse_group_errors():
    with pytest.raises(ValueError):
        parse_group({})
    with pytest.raises(ValueError):
        parse_group({"type": "beluga"})
    with pytest.raises(ValueError):
        parse_group({"type": "product", "factors": []})
    with pytest.raises(ValueError):
        parse_module({"group": {"type": "cyclic", "order": 2},
                      "free_rank": 1, "torsion": [],
                      "action": {"1": [[True]]}}, 2)


def test_group_round_trip():
    g = parse_group({"type": "product", "factors": [
        {"type": "cyclic", "order": 2}, {"type": "cyclic", "order": 2},
    ]})
    h = parse_group(group_to_json(g))
    assert h.order == 4 and h.cayley == g.cayley


def test_parse_presentation():
    group, summands, vector = parse_presentation({
        "group": {"type": "cyclic", "order": 9},
        "summands": [[0, 3, 6]],
        "vector": [1, 1, 1],
    })
    assert group.order == 9
    assert summands[0] == (0, 3, 6)
    assert vector == [1, 1, 1]


def test_result_serialization_shape():
    m = build_list_L("M3", 3).module
    result = min_permutation_rank(m, 3)
    data = result_to_json(result, {"prime": 3})
    assert data["min_rank"] == 3 and data["ed"] == 1
    cert = data["certificate"]["summands"]
    assert all(set(s) == {"subgroup", "generator"} for s in cert)
    assert all(isinstance(x, str) for s in cert for x in s["generator"])
    assert data["diagnostics"]["multisets_examined"] >= 1
    assert data["diagnostics"]["prime"] == 3


def test_parse_expected_table_shape():
    rows = parse_expected_table({"rows": [
        {"family": "M1", "r_values": [], "rank": 1, "ed": 0},
    ]})
    assert rows == [("M1", (), 1, 0)]
    with pytest.raises((KeyError, ValueError)):
        parse_expected_table({"rows": [{"family": "M1"}]})


# --- CLI ---------------------------------------------------------------


def test_cli_ed_catalog(capsys):
    assert main(["ed", "--catalog", "M7@p=3"]) == 0
    assert capsys.readouterr().out.strip() == "min_rank=9 ed=3"


def test_cli_ed_json(capsys):
    assert main(["ed", "--catalog", "M3@p=2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["min_rank"] == 2 and data["ed"] == 1
    assert data["certificate"]["summands"]


def test_cli_ed_oracle_agrees(capsys):
    assert main(["ed", "--catalog", "M8@p=2", "--oracle"]) == 0
    assert "min_rank=4 ed=1" in capsys.readouterr().out


def test_cli_ed_file_requires_prime(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(module_to_json(build_list_L("M3", 2).module)))
    assert main(["ed", "--input", str(path)]) == 2
    assert "prime" in capsys.readouterr().err
    assert main(["ed", "--input", str(path), "--prime", "2"]) == 0
    assert capsys.readouterr().out.strip() == "min_rank=2 ed=1"


def test_cli_ed_rejects_both_sources(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text("{}")
    assert main(["ed", "--input", str(path), "--catalog", "M1@p=2"]) == 2


def test_cli_prime_conflict(capsys):
    assert main(["ed", "--catalog", "M7@p=3", "--prime", "2"]) == 2
    assert "prime" in capsys.readouterr().err


def test_cli_table_json(capsys):
    assert main(["table", "--prime", "2", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert len(rows) == 12
    by_family = {r["family"]: r for r in rows}
    for fam in ("M10r", "M11r", "M12r"):
        assert by_family[fam]["status"] == "N/A (range empty)"
        assert by_family[fam]["computed"] == []
    m7 = by_family["M7"]
    assert m7["status"] == "ok"
    assert m7["expected"] == {"rank": 2, "ed": 2}
    assert m7["computed"][0]["rank"] == 2 and m7["computed"][0]["ed"] == 2


def test_cli_table_text(capsys):
    assert main(["table", "--prime", "3"]) == 0
    out = capsys.readouterr().out
    assert "M9r" in out and "ok" in out
    assert "N/A (range empty)" not in out  # every family is populated at p=3


def test_cli_table_deterministic(capsys):
    main(["table", "--prime", "3", "--json"])
    first = capsys.readouterr().out
    main(["table", "--prime", "3", "--json"])
    assert capsys.readouterr().out == first


def test_cli_catalog_listing(capsys):
    assert main(["catalog", "--prime", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 9
    assert lines[0].startswith("M1@p=2 ")


def test_cli_genus(tmp_path, capsys):
    entry = parse_catalog_key("M2@p=2")
    path = tmp_path / "m2.json"
    path.write_text(json.dumps(module_to_json(entry.module)))
    code = main(["genus", "--catalog", "M2@p=2", "--input", str(path),
                 "--prime", "2"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "genus_equal=yes"
    code = main(["genus", "--catalog", "M2@p=2", "--catalog", "M1@p=2"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "genus_equal=no"


def test_cli_genus_needs_two_modules(capsys):
    assert main(["genus", "--catalog", "M1@p=2"]) == 2


def test_cli_classify(tmp_path, capsys):
    path = tmp_path / "pres.json"
    path.write_text(json.dumps({
        "group": {"type": "cyclic", "order": 9},
        "summands": [[0, 3, 6]],
        "vector": [1, 1, 1],
    }))
    assert main(["classify", "--input", str(path), "--prime", "3"]) == 0
    assert capsys.readouterr().out.strip() == "ed=1"


def test_cli_verify_passes(capsys):
    assert main(["verify", "--prime", "2"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("PASS")
    assert "table:" in out and "oracle:" in out


def test_cli_verify_detects_bad_expectations(tmp_path, capsys):
    path = tmp_path / "expected.json"
    path.write_text(json.dumps({"rows": [
        {"family": "M1", "r_values": [], "rank": 1, "ed": 1},
    ]}))
    assert main(["verify", "--prime", "2", "--expected", str(path)]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_cli_invalid_input_is_exit_2(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert main(["ed", "--input", str(path), "--prime", "2"]) == 2
    assert main(["ed", "--catalog", "M99@p=2"]) == 2
    assert main(["ed", "--catalog", "M1@p=6"]) == 2
    err = capsys.readouterr().err
    assert "error:" in err
