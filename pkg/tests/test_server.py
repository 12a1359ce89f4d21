"""HTTP API: endpoint behavior, error wire format, and CLI text parity."""

import pytest
from fastapi.testclient import TestClient

from sparclab.grounding import ground
from sparclab.parser import parse
from sparclab.queries import parse_query, render_query_result, run_query
from sparclab.server import create_app
from sparclab.solver import answer_sets, render_answer_sets
from sparclab.sortcheck import check_sorts

from corpus import MAP_COLORING, NO_ANSWER_SETS, RED_LINE

BAD_SORTS = "sorts\n#s = {a}.\npredicates\np(#s).\nrules\nq(a).\n"


@pytest.fixture
def client(tmp_path):
    app = create_app(str(tmp_path / "data"))
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c
    app.state.store.close()


def _register(client, username="alice", password="pw"):
    assert client.post(
        "/api/users", json={"username": username, "password": password}
    ).status_code == 201
    response = client.post(
        "/api/session", json={"username": username, "password": password}
    )
    assert response.status_code == 200
    token = response.json()["token"]
    return {"Authorization": f"Bearer {token}"}


def test_health(client):
    response = client.get("/api/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_duplicate_user_conflict(client):
    _register(client)
    response = client.post("/api/users", json={"username": "alice", "password": "x"})
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "DuplicateUser"


def test_bad_login(client):
    _register(client)
    response = client.post("/api/session", json={"username": "alice", "password": "no"})
    assert response.status_code == 401
    assert response.json()["error"]["code"] == "BadCredentials"


def test_logout_invalidates_token(client):
    headers = _register(client)
    assert client.get("/api/tree", headers=headers).status_code == 200
    assert client.delete("/api/session", headers=headers).status_code == 200
    assert client.get("/api/tree", headers=headers).status_code == 401


def test_query_endpoint_matches_library_text(client):
    body = {"program": MAP_COLORING, "query": "neighbor(texas, colorado)"}
    response = client.post("/api/query", json=body)
    assert response.status_code == 200
    payload = response.json()
    assert payload["verdict"] == "yes"
    assert payload["substitutions"] is None

    checked = check_sorts(parse(MAP_COLORING))
    sets = answer_sets(ground(checked)).answer_sets
    outcome = run_query(checked, sets, parse_query("neighbor(texas, colorado)"))
    assert payload["text"] == render_query_result(outcome)


def test_open_query_substitutions(client):
    body = {"program": MAP_COLORING, "query": "neighbor(texas, S)"}
    payload = client.post("/api/query", json=body).json()
    assert payload["verdict"] is None
    assert payload["substitutions"] == [{"S": "colorado"}, {"S": "newMexico"}]
    assert payload["text"] == "S = colorado\nS = newMexico\n"


def test_query_without_answer_sets(client):
    body = {"program": NO_ANSWER_SETS, "query": "p(a)"}
    response = client.post("/api/query", json=body)
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "NoAnswerSets"


def test_answer_sets_endpoint(client):
    response = client.post("/api/answersets", json={"program": MAP_COLORING})
    assert response.status_code == 200
    payload = response.json()
    assert len(payload["answer_sets"]) == 6
    assert payload["truncated"] is False
    result = answer_sets(ground(check_sorts(parse(MAP_COLORING))))
    assert payload["text"] == render_answer_sets(result)
    assert all(isinstance(lit, str) for s in payload["answer_sets"] for lit in s)


def test_answer_sets_limit_truncates(client):
    response = client.post("/api/answersets", json={"program": MAP_COLORING, "limit": 2})
    payload = response.json()
    assert len(payload["answer_sets"]) == 2
    assert payload["truncated"] is True
    assert "(model limit reached" in payload["text"]


def test_sort_errors_carry_diagnostics(client):
    response = client.post("/api/answersets", json={"program": BAD_SORTS})
    assert response.status_code == 400
    error = response.json()["error"]
    assert error["code"] == "SortCheckError"
    assert error["diagnostics"][0]["code"] == "UndeclaredPredicate"
    assert {"line", "column", "message", "severity"} <= set(error["diagnostics"][0])


def test_parse_errors_carry_position(client):
    response = client.post("/api/answersets", json={"program": "rules\np.\n"})
    assert response.status_code == 400
    error = response.json()["error"]
    assert error["code"] == "MissingSection"
    assert error["diagnostics"][0]["line"] >= 1


def test_execute_endpoint(client):
    response = client.post("/api/execute", json={"program": RED_LINE})
    assert response.status_code == 200
    payload = response.json()
    assert payload["script"]["version"] == 1
    assert len(payload["script"]["frames"]) == 1
    assert '<canvas id="myCanvas"' in payload["document"]

    conflicted = client.post("/api/execute", json={"program": MAP_COLORING})
    assert conflicted.status_code == 409
    error = conflicted.json()["error"]
    assert error["code"] == "MultipleAnswerSets" and error["count"] == 6

    empty = client.post("/api/execute", json={"program": NO_ANSWER_SETS})
    assert empty.status_code == 422
    assert empty.json()["error"]["code"] == "NoAnswerSets"


def test_workspace_requires_session(client):
    assert client.get("/api/tree").status_code == 401
    assert client.post("/api/files", json={"name": "a.sp"}).status_code == 401
    assert client.get("/api/tree", headers={"Authorization": "Bearer junk"}).status_code == 401


def test_file_crud_over_http(client):
    headers = _register(client)
    folder = client.post("/api/folders", json={"name": "hw1"}, headers=headers)
    assert folder.status_code == 201
    folder_id = folder.json()["folder_id"]
    assert folder.json()["url"] == "/hw1"

    created = client.post(
        "/api/files",
        json={"name": "maps.sp", "folder": folder_id, "content": "rules\np."},
        headers=headers,
    )
    assert created.status_code == 201
    file_id = created.json()["file_id"]
    assert created.json()["shared"] is False

    fetched = client.get(f"/api/files/{file_id}", headers=headers).json()
    assert fetched["content"] == "rules\np."
    assert fetched["url"] == "/hw1/maps.sp"

    assert (
        client.put(
            f"/api/files/{file_id}", json={"content": "rules\nq."}, headers=headers
        ).status_code
        == 200
    )
    assert (
        client.get(f"/api/files/{file_id}", headers=headers).json()["content"]
        == "rules\nq."
    )

    renamed = client.patch(
        f"/api/files/{file_id}", json={"name": "maps2.sp"}, headers=headers
    )
    assert renamed.json()["url"] == "/hw1/maps2.sp"

    tree = client.get("/api/tree", headers=headers).json()
    assert tree["folder"] is None
    assert tree["folders"][0]["folder"]["name"] == "hw1"
    assert tree["folders"][0]["files"][0]["name"] == "maps2.sp"

    assert client.delete(f"/api/files/{file_id}", headers=headers).status_code == 200
    assert client.get(f"/api/files/{file_id}", headers=headers).status_code == 404


def test_name_conflict_is_409(client):
    headers = _register(client)
    client.post("/api/files", json={"name": "a.sp"}, headers=headers)
    response = client.post("/api/files", json={"name": "a.sp"}, headers=headers)
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "NameConflict"


def test_foreign_ids_look_missing(client):
    alice = _register(client, "alice")
    bob = _register(client, "bob")
    file_id = client.post(
        "/api/files", json={"name": "a.sp", "content": "x"}, headers=alice
    ).json()["file_id"]
    # an id owned by someone else is indistinguishable from a missing one
    for response in (
        client.get(f"/api/files/{file_id}", headers=bob),
        client.delete(f"/api/files/{file_id}", headers=bob),
        client.get("/api/files/never-existed", headers=bob),
    ):
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "NotFound"


def test_share_flow(client):
    headers = _register(client)
    file_id = client.post(
        "/api/files", json={"name": "a.sp", "content": "shared text"}, headers=headers
    ).json()["file_id"]
    url = client.post(f"/api/files/{file_id}/share", headers=headers).json()["url"]
    assert url.startswith("/share/")

    fetched = client.get(url)  # no session header
    assert fetched.status_code == 200
    assert fetched.text == "shared text"

    assert client.get(f"/api/files/{file_id}", headers=headers).json()["shared"] is True
    assert client.get("/share/bogus-token").status_code == 404


def test_data_survives_app_restart(tmp_path):
    data_root = str(tmp_path / "data")
    app = create_app(data_root)
    with TestClient(app) as client:
        headers = _register(client)
        file_id = client.post(
            "/api/files", json={"name": "a.sp", "content": "persisted"}, headers=headers
        ).json()["file_id"]
    app.state.store.close()

    reopened = create_app(data_root)
    with TestClient(reopened) as client:
        response = client.post("/api/session", json={"username": "alice", "password": "pw"})
        headers = {"Authorization": f"Bearer {response.json()['token']}"}
        fetched = client.get(f"/api/files/{file_id}", headers=headers)
        assert fetched.status_code == 200
        assert fetched.json()["content"] == "persisted"
    reopened.state.store.close()
