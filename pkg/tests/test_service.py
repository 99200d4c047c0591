import pytest
from fastapi.testclient import TestClient

from nmodal.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


IDENTITY_MODEL = {"worlds": 2, "box": [0, 1, 2, 3], "valuation": {"p": 1}}


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_parse(client):
    resp = client.post("/parse", json={"formula": "<>p"})
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["formula"] == "~[]~p"
    assert doc["variables"] == ["p"]
    assert doc["modal_depth"] == 1
    assert doc["variable_free"] is False


def test_parse_error_is_400(client):
    resp = client.post("/parse", json={"formula": "(p"})
    assert resp.status_code == 400
    assert "detail" in resp.json()


def test_invalid_body_is_422(client):
    assert client.post("/parse", json={"wrong": 1}).status_code == 422
    assert client.post("/eval", json={"model": {"worlds": 2}, "formula": "p"}).status_code == 422


def test_eval_truth_set_and_world(client):
    resp = client.post("/eval", json={"model": IDENTITY_MODEL, "formula": "[]p"})
    assert resp.status_code == 200
    assert resp.json() == {"truth_set": 1}

    resp = client.post(
        "/eval", json={"model": IDENTITY_MODEL, "formula": "[]p", "world": 1}
    )
    assert resp.json() == {"holds": False}


def test_eval_bad_frame_is_400(client):
    bad = {"worlds": 2, "box": [0, 1, 2]}
    resp = client.post("/eval", json={"model": bad, "formula": "p"})
    assert resp.status_code == 400


def test_props(client):
    resp = client.post("/props", json={"frame": {"worlds": 1, "box": [1, 0]}})
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["regular"] is True and doc["reflexive"] is False
    assert doc["axiom_mismatch"] is False
    assert len(doc["axioms"]) == 4


def test_transform(client):
    resp = client.post(
        "/transform", json={"frame": {"worlds": 2, "box": [0, 2, 2, 0]}, "op": "rmclose"}
    )
    assert resp.status_code == 200
    assert resp.json() == {"frame": {"worlds": 2, "box": [2, 2, 2, 2]}}


def test_transform_unknown_op_is_422(client):
    resp = client.post(
        "/transform", json={"frame": {"worlds": 1, "box": [0, 0]}, "op": "shrink"}
    )
    assert resp.status_code == 422


def test_filtrate(client):
    body = {
        "model": {"worlds": 3, "box": [0, 0, 0, 0, 0, 0, 0, 3], "valuation": {"p": 7}},
        "formula": "[]p",
        "kind": "minimal",
    }
    resp = client.post("/filtrate", json=body)
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["result"] == {
        "worlds": 2,
        "box": [0, 0, 0, 1],
        "valuation": {"p": 3},
        "partition": [3, 4],
        "kind": "minimal",
    }
    assert doc["report"]["ok"] is True


def test_filtrate_precondition_is_400(client):
    body = {
        "model": {"worlds": 1, "box": [1, 0], "valuation": {"p": 1}},
        "formula": "[]p",
        "kind": "emc4",
    }
    resp = client.post("/filtrate", json=body)
    assert resp.status_code == 400
    assert "precondition failed" in resp.json()["detail"]


def test_sat_satisfiable(client):
    resp = client.post("/sat", json={"formula": "[]p & ~[][]p", "frame_class": "E"})
    assert resp.status_code == 200
    assert resp.json() == {
        "outcome": "satisfiable",
        "model": {"worlds": 1, "box": [1, 0], "valuation": {"p": 0}},
        "world": 0,
    }


def test_sat_unknown(client):
    resp = client.post(
        "/sat", json={"formula": "[]p & ~[][]p", "frame_class": "E4", "max_worlds": 2}
    )
    assert resp.status_code == 200
    assert resp.json() == {
        "outcome": "unknown_up_to_bound",
        "max_worlds": 2,
        "frames_examined": 260,
    }


def test_sat_rejects_unknown_class(client):
    resp = client.post("/sat", json={"formula": "p", "frame_class": "K"})
    assert resp.status_code == 422


def test_lemmas_quick(client):
    resp = client.post("/lemmas", json={"level": "quick"})
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["passed"] is True
    assert [row["passed"] for row in doc["lemmas"]] == [True] * 11
