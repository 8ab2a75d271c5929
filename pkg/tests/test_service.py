import numpy as np
import pytest
from fastapi.testclient import TestClient

from driftscope.service.app import create_app
from driftscope.rng import make_rng

from conftest import blob_dataset


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def records_payload(ds, with_ts=False):
    out = []
    for i, rec in enumerate(ds.records):
        obj = {"id": rec.id, "vector": rec.vector.tolist()}
        if rec.label is not None:
            obj["label"] = rec.label
        if rec.text is not None:
            obj["text"] = rec.text
        if with_ts:
            obj["timestamp"] = i
        out.append(obj)
    return out


@pytest.fixture(scope="module")
def two_blob_records():
    ds = blob_dataset([(0.0, 0.0), (10.0, 10.0)], 120, sigma=0.5, seed=1, name="svc")
    return records_payload(ds)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["version"]


def test_validate_endpoint(client, two_blob_records):
    resp = client.post(
        "/datasets/validate", json={"records": two_blob_records, "name": "svc"}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["n"] == 240
    assert body["dim"] == 2
    assert body["labels"] == {"blob0": 120, "blob1": 120}


def test_validate_rejects_ragged_vectors(client):
    records = [
        {"id": "a", "vector": [1.0, 2.0]},
        {"id": "b", "vector": [1.0, 2.0, 3.0]},
    ]
    resp = client.post("/datasets/validate", json={"records": records})
    assert resp.status_code == 400
    assert "b" in resp.json()["detail"]


def test_fit_then_drift_round_trip(client, two_blob_records):
    resp = client.post(
        "/baseline/fit", json={"records": two_blob_records, "k": 2, "seed": 5}
    )
    assert resp.status_code == 200
    model = resp.json()
    assert model["k"] == 2
    assert model["prng"] == "pcg64"
    assert abs(sum(model["frequencies"]) - 1.0) < 1e-12

    resp = client.post(
        "/drift", json={"model": model, "records": two_blob_records, "metric": "jsd"}
    )
    assert resp.status_code == 200
    report = resp.json()
    assert report["value"] == 0.0
    assert len(report["per_bin"]) == 2


def test_drift_rejects_wrong_dimension(client, two_blob_records):
    model = client.post(
        "/baseline/fit", json={"records": two_blob_records, "k": 2, "seed": 5}
    ).json()
    bad = [{"id": "x", "vector": [1.0, 2.0, 3.0]}]
    resp = client.post("/drift", json={"model": model, "records": bad})
    assert resp.status_code == 400


def test_fit_matches_cli_model_schema(client, two_blob_records, tmp_path):
    from driftscope import binning

    model = client.post(
        "/baseline/fit", json={"records": two_blob_records, "k": 3, "seed": 9}
    ).json()
    # the wire format is the model file format
    parsed = binning.model_from_dict(model)
    assert parsed.k == 3
    path = tmp_path / "from_service.json"
    binning.save_model(parsed, path)
    assert binning.load_model(path).seed == 9


def test_select_k_endpoint(client, two_blob_records):
    resp = client.post(
        "/select-k",
        json={"records": two_blob_records, "m_min": 50, "k_min": 2, "k_max": 6, "seed": 1},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["k"] >= 2
    assert body["model"]["k"] == body["k"]
    assert any(e["feasible"] for e in body["evaluations"])


def test_select_k_infeasible_is_400(client, two_blob_records):
    resp = client.post(
        "/select-k", json={"records": two_blob_records, "m_min": 100000}
    )
    assert resp.status_code == 400


def test_monitor_endpoint(client):
    base = blob_dataset([(0.0, 0.0), (10.0, 10.0)], 100, sigma=0.5, seed=2, name="m")
    base_records = records_payload(base)
    model = client.post("/baseline/fit", json={"records": base_records, "k": 2, "seed": 3}).json()
    drifted = blob_dataset([(10.0, 10.0)], 80, sigma=0.5, seed=4, name="ev")
    events = records_payload(drifted, with_ts=True)
    resp = client.post(
        "/monitor",
        json={
            "model": model,
            "events": events,
            "window_seconds": 3600,
            "threshold": 0.2,
            "min_events": 10,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["points"]) == 1
    assert len(body["alerts"]) == 1
    assert body["alerts"][0]["value"] > 0.2


def test_summarize_endpoint(client):
    rng = make_rng(6)
    topics = {
        "loans": "mortgage loan bank credit rate",
        "space": "galaxy star orbit telescope nebula",
    }
    from driftscope import textvec

    rows = [
        {"id": f"t{i}", "text": topics["loans" if i % 2 == 0 else "space"]}
        for i in range(40)
    ]
    vec = textvec.fit_tfidf([r["text"] for r in rows], max_vocab=20)
    ds = textvec.vectorize_text_records(vec, rows, name="topics")
    records = records_payload(ds)
    model = client.post("/baseline/fit", json={"records": records, "k": 2, "seed": 0}).json()
    resp = client.post(
        "/summarize", json={"model": model, "records": records, "top_n": 3, "reps": 2}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert len(body) == 2
    for summary in body:
        assert len(summary["top_terms"]) <= 3
        assert len(summary["representatives"]) <= 2


def test_pydantic_validation_is_422(client):
    resp = client.post("/baseline/fit", json={"records": "nope", "k": 2})
    assert resp.status_code == 422
