import json

import pytest

from normone.cli import (
    EXIT_BUDGET,
    EXIT_HYPOTHESIS,
    EXIT_OK,
    EXIT_PARSE,
    load_group_spec,
    resolve_subgroup,
    run,
)
from normone.catalog import a4_shape_spec, abelian_spec
from normone.errors import ParseError, SchemaError
from normone.groups import build_group


A4_JSON = json.dumps(a4_shape_spec(2))
Z6_JSON = json.dumps(abelian_spec(2, 3))


def run_capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- spec loading ------------------------------------------------------------------


def test_load_inline_and_file(tmp_path):
    spec = load_group_spec(A4_JSON)
    assert spec.kind == "semidirect"
    path = tmp_path / "a4.json"
    path.write_text(A4_JSON)
    spec2 = load_group_spec(str(path))
    assert spec2.to_dict() == spec.to_dict()


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        load_group_spec('{"kind": "table", "n": }')
    assert "line" in str(err.value) and "column" in str(err.value)


def test_schema_errors():
    with pytest.raises(SchemaError):
        load_group_spec('{"kind": "mystery"}')
    with pytest.raises(SchemaError):
        load_group_spec('{"kind": "table", "n": 2}')
    # non-invertible action matrix
    bad = {
        "kind": "semidirect",
        "p": 2,
        "m": 2,
        "matrices": [[[1, 1], [1, 1]]],
        "acting": {"kind": "table", "n": 3, "mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
    }
    with pytest.raises(SchemaError):
        load_group_spec(json.dumps(bad))


def test_resolve_subgroup():
    G = build_group(a4_shape_spec(2))
    assert resolve_subgroup(G, "trivial").order == 1
    assert resolve_subgroup(G, "sylow:2").order == 4
    assert resolve_subgroup(G, "0,1").order == 2
    assert resolve_subgroup(G, "all").order == 12


# -- verbs -------------------------------------------------------------------------


def test_sha_verb_a4(capsys):
    code, report = run_capture(
        capsys,
        ["sha", "--group", A4_JSON, "--subgroup", "0,1", "--p", "2", "--method", "both"],
    )
    assert code == EXIT_OK
    assert report["results"]["result"] == [2]
    assert report["results"]["agreement"] is True
    assert report["results"]["conditions"]["a_rank_two"]


def test_sha_verb_with_sylow_dset(capsys):
    code, report = run_capture(
        capsys,
        ["sha", "--group", A4_JSON, "--subgroup", "0,1", "--p", "2", "--dset", "sylow:2"],
    )
    assert code == EXIT_OK
    assert report["results"]["result"] == []
    assert report["results"]["dset_raw"] == [[0, 1, 2, 3]]


def test_sha_verb_hypothesis_exit(capsys):
    code, report = run_capture(
        capsys, ["sha", "--group", Z6_JSON, "--subgroup", "trivial", "--p", "5"]
    )
    assert code == EXIT_HYPOTHESIS
    assert report["error"]["type"] == "HypothesisViolated"


def test_sha_verb_parse_exit(capsys):
    code, report = run_capture(
        capsys, ["sha", "--group", "{not json", "--subgroup", "trivial", "--p", "2"]
    )
    assert code == EXIT_PARSE


def test_budget_exit(capsys, monkeypatch):
    monkeypatch.setenv("SHA_BUDGET", "10")
    code, report = run_capture(
        capsys,
        ["sha", "--group", A4_JSON, "--subgroup", "0,1", "--p", "2", "--method", "brute"],
    )
    assert code == EXIT_BUDGET
    assert report["error"]["type"] == "BudgetExceeded"


def test_dset_verb(capsys):
    code, report = run_capture(capsys, ["dset", "--p", "11", "--max", "100"])
    assert code == EXIT_OK
    rows = {r["d"]: r for r in report["results"]["table"]}
    assert rows[55]["in_D1"] is True
    assert report["results"]["s_min"] == 33


def test_classify_verb(capsys):
    code, report = run_capture(
        capsys, ["classify", "--group", A4_JSON, "--subgroup", "0,1"]
    )
    assert code == EXIT_OK
    assert report["results"]["display"] == "alpha(2)"


def test_witness_verb(capsys):
    code, report = run_capture(capsys, ["witness", "--p", "2", "--variant", "i"])
    assert code == EXIT_OK
    assert report["results"]["index"] == 18
    assert report["results"]["prediction"] == [6]
    # the emitted spec round-trips into a buildable group
    G = build_group(report["results"]["group"])
    assert G.order == 36


def test_scan_verb(capsys):
    code, report = run_capture(capsys, ["scan-reps", "--p", "2", "--n", "3"])
    assert code == EXIT_OK
    assert report["results"]["hit_count"] > 0
    assert report["results"]["complete"] is True
    assert "pprime_order_cap" in report["provenance"]["budgets"]


def test_determinism_modulo_timing(capsys):
    argv = ["sha", "--group", A4_JSON, "--subgroup", "0,1", "--p", "2"]
    _, r1 = run_capture(capsys, argv)
    _, r2 = run_capture(capsys, argv)
    r1["provenance"].pop("timing")
    r2["provenance"].pop("timing")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
    assert r1["inputs_digest"] == r2["inputs_digest"]


def test_selftest_quick(capsys):
    code, report = run_capture(capsys, ["selftest", "--scope", "quick"])
    assert code == EXIT_OK
    assert report["results"]["failed"] == 0
