import json

import pytest

from nmodal.cli import main


@pytest.fixture
def identity_model(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"worlds": 2, "box": [0, 1, 2, 3], "valuation": {"p": 1}}))
    return str(path)


@pytest.fixture
def small_frame(tmp_path):
    path = tmp_path / "frame.json"
    path.write_text(json.dumps({"worlds": 1, "box": [1, 0]}))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def out_json(capsys, argv):
    code, out, _ = run(capsys, argv)
    assert code == 0, out
    return json.loads(out)


# --------------------------------------------------------------------- parse

def test_parse_reports_core_form(capsys):
    doc = out_json(capsys, ["parse", "[]p -> p"])
    assert doc["formula"] == "~([]p & ~p)"
    assert doc["subformulas"] == ["p", "[]p", "~p", "[]p & ~p", "~([]p & ~p)"]
    assert doc["variables"] == ["p"]
    assert doc["variable_free"] is False
    assert doc["modal_depth"] == 1


def test_parse_variable_free_flag(capsys):
    doc = out_json(capsys, ["parse", "[](top -> bot)"])
    assert doc["variable_free"] is True


def test_parse_error_exits_2(capsys):
    code, _, err = run(capsys, ["parse", "p &"])
    assert code == 2
    assert "error:" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, [])[0] == 2
    assert run(capsys, ["transform", "--frame", "x", "--op", "bogus"])[0] == 2


def test_help_exits_0(capsys):
    code, out, _ = run(capsys, ["--help"])
    assert code == 0
    assert "filtrate" in out


# ---------------------------------------------------------------------- eval

def test_eval_truth_set(capsys, identity_model):
    doc = out_json(capsys, ["eval", "--model", identity_model, "--formula", "[]p"])
    assert doc == {"truth_set": 1}


def test_eval_single_world(capsys, identity_model):
    doc = out_json(
        capsys, ["eval", "--model", identity_model, "--formula", "[]p", "--world", "0"]
    )
    assert doc == {"holds": True}
    doc = out_json(
        capsys, ["eval", "--model", identity_model, "--formula", "[]p", "--world", "1"]
    )
    assert doc == {"holds": False}


def test_eval_world_out_of_range_exits_2(capsys, identity_model):
    code, _, err = run(
        capsys, ["eval", "--model", identity_model, "--formula", "p", "--world", "9"]
    )
    assert code == 2
    assert "error:" in err


def test_eval_frame_only_document_defaults_valuation(capsys, small_frame):
    doc = out_json(capsys, ["eval", "--model", small_frame, "--formula", "top"])
    assert doc == {"truth_set": 1}


def test_missing_file_exits_3(capsys, tmp_path):
    code, _, err = run(
        capsys, ["eval", "--model", str(tmp_path / "nope.json"), "--formula", "p"]
    )
    assert code == 3
    assert "cannot read" in err


def test_unparsable_json_exits_3(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(capsys, ["eval", "--model", str(path), "--formula", "p"])[0] == 3


def test_malformed_document_exits_3(capsys, tmp_path):
    path = tmp_path / "short.json"
    path.write_text(json.dumps({"worlds": 2}))
    code, _, err = run(capsys, ["eval", "--model", str(path), "--formula", "p"])
    assert code == 3
    assert "box" in err


# --------------------------------------------------------------------- props

def test_props_lists_properties_and_axioms(capsys, small_frame):
    doc = out_json(capsys, ["props", "--frame", small_frame])
    assert doc["reflexive"] is False
    assert doc["transitive"] is False
    assert doc["monotonic"] is False
    assert doc["regular"] is True
    assert [row["axiom"] for row in doc["axioms"]] == ["T", "M", "C", "4"]
    assert doc["axiom_mismatch"] is False
    valid = {row["axiom"]: row["valid"] for row in doc["axioms"]}
    assert valid == {"T": False, "M": False, "C": True, "4": False}


# ----------------------------------------------------------------- transform

def test_transform_supplement(capsys, small_frame):
    doc = out_json(capsys, ["transform", "--frame", small_frame, "--op", "supplement"])
    assert doc == {"worlds": 1, "box": [1, 1]}


def test_transform_iclose(capsys, tmp_path):
    path = tmp_path / "frame.json"
    path.write_text(json.dumps({"worlds": 2, "box": [0, 2, 2, 0]}))
    doc = out_json(capsys, ["transform", "--frame", str(path), "--op", "iclose"])
    assert doc == {"worlds": 2, "box": [2, 2, 2, 0]}
    doc = out_json(capsys, ["transform", "--frame", str(path), "--op", "rmclose"])
    assert doc == {"worlds": 2, "box": [2, 2, 2, 2]}


def test_transform_rejects_oversized_table(capsys, tmp_path):
    path = tmp_path / "frame.json"
    path.write_text(json.dumps({"worlds": 1, "box": [0, 0, 0]}))
    assert run(capsys, ["transform", "--frame", str(path), "--op", "hat"])[0] == 3


# ------------------------------------------------------------------ filtrate

def test_filtrate_prints_result_and_verifies(capsys, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(
        json.dumps({"worlds": 3, "box": [0, 0, 0, 0, 0, 0, 0, 3], "valuation": {"p": 7}})
    )
    code, out, err = run(
        capsys, ["filtrate", "--model", str(path), "--formula", "[]p", "--kind", "minimal"]
    )
    assert code == 0
    assert json.loads(out) == {
        "worlds": 2,
        "box": [0, 0, 0, 1],
        "valuation": {"p": 3},
        "partition": [3, 4],
        "kind": "minimal",
    }
    assert "all clauses hold" in err


def test_filtrate_precondition_failure_exits_1(capsys, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"worlds": 1, "box": [1, 0], "valuation": {"p": 1}}))
    code, _, err = run(
        capsys, ["filtrate", "--model", str(path), "--formula", "[]p", "--kind", "s04"]
    )
    assert code == 1
    assert "monotonic precondition failed" in err


# ----------------------------------------------------------------------- sat

def test_sat_witness_round_trips_into_eval(capsys, tmp_path):
    formula = "[]p & ~[][]p"
    doc = out_json(capsys, ["sat", "--formula", formula, "--class", "E"])
    assert doc["outcome"] == "satisfiable"
    assert doc["worlds"] == 1 and doc["box"] == [1, 0]
    assert doc["valuation"] == {"p": 0} and doc["world"] == 0

    path = tmp_path / "witness.json"
    path.write_text(json.dumps(doc))
    check = out_json(
        capsys,
        ["eval", "--model", str(path), "--formula", formula, "--world", str(doc["world"])],
    )
    assert check == {"holds": True}


def test_sat_unknown_outcome(capsys):
    doc = out_json(
        capsys,
        ["sat", "--formula", "[]p & ~[][]p", "--class", "E4", "--max-worlds", "2"],
    )
    assert doc == {"outcome": "unknown_up_to_bound", "max_worlds": 2, "frames_examined": 260}


def test_sat_rejects_bad_bound(capsys):
    code, _, err = run(capsys, ["sat", "--formula", "p", "--class", "E", "--max-worlds", "0"])
    assert code == 2
    assert "error:" in err


# -------------------------------------------------------------------- lemmas

def test_lemmas_quick_passes(capsys):
    code, out, err = run(capsys, ["lemmas", "--level", "quick"])
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert len(doc["lemmas"]) == 11
    assert all(line.startswith("PASS") for line in err.strip().splitlines())
    assert err.count("PASS") == 11
