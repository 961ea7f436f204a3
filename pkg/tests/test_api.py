"""
HTTP API Integration Tests
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest
from fastapi.testclient import TestClient

from orchestration.main import app

SOLVE_BODY = {
    "rho_db": 35.0, "alpha1": 0.2, "T": 3, "n1": 300, "n2": 300, "m": 500.0,
    "eps1_req": 1e-5, "eps2_req": 1e-5, "delta": 0.1, "nu": 1e-7,
}


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    """Health endpoint reports the app"""
    response = client.get("/api/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_bler_defaults(client):
    """Default body evaluates the reference operating point"""
    response = client.post("/api/bler", json={})
    assert response.status_code == 200
    report = response.json()["report"]
    for stage in ("eps11", "eps12", "eps22", "eps1", "eps2"):
        assert 0.0 <= report[stage]["value"] <= 1.0
        assert report[stage]["method"] == "closed_form"
    assert report["eps2"]["value"] <= report["eps1"]["value"]


def test_bler_rejects_unknown_key(client):
    """Unknown configuration keys are rejected"""
    assert client.post("/api/bler", json={"rho": 100}).status_code == 422


def test_bler_infeasible_far_user(client):
    """theta2 beyond T * kappa is unprocessable"""
    response = client.post("/api/bler", json={"n2": 2000})
    assert response.status_code == 422
    assert "undecodable" in response.json()["detail"]


def test_solve_requires_tolerance(client):
    """nu is required"""
    body = {k: v for k, v in SOLVE_BODY.items() if k != "nu"}
    assert client.post("/api/solve", json=body).status_code == 422


def test_solve(client):
    """Solution and OMA comparison at 35 dB"""
    response = client.post("/api/solve", json=SOLVE_BODY)
    assert response.status_code == 200
    data = response.json()
    assert abs(data["solution"]["residual"]) <= 1e-7
    assert data["comparison"]["gap"] > 0
    assert data["comparison"]["m_noma"] == data["solution"]["m_req_real"]
