import pytest
from fastapi.testclient import TestClient

from conftest import G_A_DOCUMENT
from fairmatch.main import app

PREFIX = "/api/v1"


@pytest.fixture
def client():
    return TestClient(app)


def test_root_and_health(client):
    assert client.get("/").json()["endpoints"]["solve"] == f"{PREFIX}/solve"
    response = client.get(f"{PREFIX}/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_solve_fair_optimum(client):
    response = client.post(
        f"{PREFIX}/solve",
        json={"graph": G_A_DOCUMENT, "rule": "fair-optimum", "weights": ["2", "1"], "emit_matching": True},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["c_star"] == "2/3"
    assert body["point"] == ["4/3", "2/3"]
    assert body["notion"] == "custom"
    assert len(body["matching"]) == 3
    assert "sigma" not in body


def test_pof(client):
    response = client.post(f"{PREFIX}/pof", json={"graph": G_A_DOCUMENT, "bounds": True})
    assert response.status_code == 200
    body = response.json()
    assert body["pof"] == "1/1"
    assert body["rho"] == "2/3"
    assert body["decreasing"]["holds"] is True


def test_generate_round_trips_into_pof(client):
    graph = client.post(f"{PREFIX}/generate", json={"family": "toblerone", "params": {"k": 3, "m": 98, "n": 1}})
    assert graph.status_code == 200
    response = client.post(f"{PREFIX}/pof", json={"graph": graph.json()})
    assert response.json()["pof"] == "99/50"


def test_infeasible_is_409(client):
    empty = {"k": 2, "jobs": ["u1"], "agents": [], "edges": []}
    response = client.post(f"{PREFIX}/solve", json={"graph": empty, "rule": "leximin"})
    assert response.status_code == 409
    assert response.json()["detail"]["error"] == "InfeasibleRequestError"


def test_guard_is_413(client):
    graph = client.post(f"{PREFIX}/generate", json={"family": "paired", "params": {"pairs": 2}}).json()
    response = client.post(f"{PREFIX}/pof", json={"graph": graph, "bounds": True, "max_k": 3})
    assert response.status_code == 413


def test_bad_graph_is_422(client):
    document = {**G_A_DOCUMENT, "agents": [{"id": "a1", "group": 3}]}
    response = client.post(f"{PREFIX}/solve", json={"graph": document, "rule": "lexmax"})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "GraphValidationError"


def test_unknown_rule_is_422(client):
    response = client.post(f"{PREFIX}/solve", json={"graph": G_A_DOCUMENT, "rule": "utilitarian"})
    assert response.status_code == 422
