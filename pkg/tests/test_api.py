"""HTTP service."""

import inspect

import pytest
from fastapi.testclient import TestClient

from backend.api import routes
from backend.server import app


@pytest.fixture
def client():
    return TestClient(app)


MATRIX = [[1.0, 2.0, 1.0], [2.0, 1.0, 1.0], [1.0, 1.0, None]]


def test_status(client):
    r = client.get("/api/status")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_factorize(client):
    r = client.post("/api/factorize", json={"matrix": MATRIX})
    assert r.status_code == 200
    body = r.json()
    assert body["c"][2] * body["d"][2] == pytest.approx(2 / 3, rel=1e-12)
    assert body["n_missing"] == 1


def test_factorize_preprocess(client):
    r = client.post("/api/factorize", json={"matrix": [[-1.0, 2.0], [0.0, 2.0]], "preprocess": True})
    assert r.status_code == 200


def test_nonpositive_is_422(client):
    r = client.post("/api/factorize", json={"matrix": [[0.0, 1.0], [1.0, 1.0]]})
    assert r.status_code == 422
    assert r.json()["error"] == "NonPositiveEntryError"


def test_infeasible_is_422(client):
    r = client.post("/api/factorize", json={"matrix": [[1.0, None], [None, 1.0]]})
    assert r.status_code == 422
    assert "too many missing values" in r.json()["message"]


def test_ragged_is_400(client):
    r = client.post("/api/factorize", json={"matrix": [[1.0, 2.0], [1.0]]})
    assert r.status_code == 400


def test_verify(client):
    r = client.post("/api/verify", json={"matrix": MATRIX})
    assert r.status_code == 200
    body = r.json()
    assert body["theta_ok"] and body["eta_ok"] and body["conservation_ok"]


@pytest.mark.parametrize("endpoint", ["factorize", "verify"])
def test_solver_routes_run_in_threadpool(endpoint):
    assert not inspect.iscoroutinefunction(getattr(routes, endpoint))
