"""The session service over the wire: status codes, bodies, replay invariant."""

import pytest
from fastapi.testclient import TestClient

from graphnim import Move, apply_move, graph_to_doc, hypercube, new_game
from graphnim.server import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def new_session(client, **payload):
    r = client.post("/new", json=payload)
    assert r.status_code == 200, r.text
    return r.json()


def test_new_defaults_to_the_demo_board(client):
    body = new_session(client)
    assert body["mode"] == "HumanVsEngine"
    assert body["toMove"] == "P1"
    assert body["history"] == []
    state = body["state"]
    assert state["vertices"] == ["v1", "v2", "v3", "v4"]
    assert state["position"] == "v1"
    assert state["moveCount"] == 0
    assert not state["terminal"]
    assert {"u": "v1", "v": "v2", "w": 2} in state["edges"]
    assert "levels" not in state  # not a cube


def test_new_with_a_custom_graph(client):
    body = new_session(client, graph=graph_to_doc(hypercube(2)), mode="HotSeat")
    state = body["state"]
    assert state["position"] == ""
    assert state["levels"] == {"": 0, "1": 1, "2": 1, "12": 2}
    assert len(state["edges"]) == 4


def test_hot_seat_move_flow(client):
    sid = new_session(client, mode="HotSeat")["id"]
    r = client.post(f"/move/{sid}", json={"to": "v4", "amount": 4})
    assert r.status_code == 200
    body = r.json()
    assert body["humanMove"] == {"to": "v4", "amount": 4}
    assert body["engineMove"] is None
    assert body["toMove"] == "P2"
    assert body["state"]["position"] == "v4"
    assert {"u": "v1", "v": "v4", "w": 1} in body["state"]["edges"]

    # GET /state sees the same thing
    again = client.get(f"/state/{sid}").json()
    assert again["state"] == body["state"]
    assert again["history"] == [{"to": "v4", "amount": 4}]


def test_engine_answers_within_the_move_request(client):
    sid = new_session(client, engine="optimal")["id"]
    r = client.post(f"/move/{sid}", json={"to": "v2", "amount": 1})
    assert r.status_code == 200
    body = r.json()
    assert body["engineMove"] is not None
    assert body["engineMove"]["fallback"] is False
    assert body["toMove"] == "P1"
    assert body["state"]["moveCount"] == 2
    assert len(body["history"]) == 2


def test_engine_opens_when_human_is_second(client):
    body = new_session(client, engine="optimal", humanFirst=False)
    assert body["engineMove"] is not None
    assert body["state"]["moveCount"] == 1
    assert body["toMove"] == "P2"  # the engine holds P1, so the human is next


def test_history_replays_to_the_reported_state(client):
    sid = new_session(client, graph=graph_to_doc(hypercube(2)), engine="random", seed=5)["id"]
    graph = hypercube(2)
    last = None
    for label in ("1", "12"):
        r = client.post(f"/move/{sid}", json={"to": label, "amount": 1})
        if r.status_code != 200:
            break
        last = r.json()
    assert last is not None
    state = new_game(graph)
    for doc in last["history"]:
        state = apply_move(state, Move(graph.index_of(doc["to"]), doc["amount"]))
    assert last["state"]["position"] == graph.vertices[state.position]
    assert last["state"]["moveCount"] == state.move_count
    weights = {(graph.vertices[u], graph.vertices[v]): state.weights[i]
               for i, (u, v, _) in enumerate(graph.edges)}
    assert {(e["u"], e["v"]): e["w"] for e in last["state"]["edges"]} == weights


def test_unknown_session_is_404(client):
    assert client.get("/state/zzz").status_code == 404
    assert client.post("/move/zzz", json={"to": "v1", "amount": 1}).status_code == 404
    assert client.delete("/session/zzz").status_code == 404


def test_malformed_bodies_are_400(client):
    sid = new_session(client, mode="HotSeat")["id"]
    assert client.post(f"/move/{sid}", json={"to": 3, "amount": 1}).status_code == 400
    assert client.post(f"/move/{sid}", json={"to": "v2"}).status_code == 400
    assert client.post(f"/move/{sid}", json={"to": "v2", "amount": True}).status_code == 400
    assert client.post(f"/move/{sid}", json={"to": "nope", "amount": 1}).status_code == 400
    r = client.post(f"/move/{sid}", content=b"{not json",
                    headers={"content-type": "application/json"})
    assert r.status_code == 400
    assert client.post("/new", json={"mode": "Tournament"}).status_code == 400
    assert client.post("/new", json={"engine": "alphabeta"}).status_code == 400
    assert client.post("/new", json={"seed": "seven"}).status_code == 400
    assert client.post("/new", json={"humanFirst": 1}).status_code == 400
    assert client.post("/new", json={"graph": {"name": "x"}}).status_code == 400


def test_illegal_moves_are_409(client):
    sid = new_session(client, mode="HotSeat")["id"]
    r = client.post(f"/move/{sid}", json={"to": "v3", "amount": 1})
    assert r.status_code == 409
    assert "no edge" in r.json()["detail"]
    r = client.post(f"/move/{sid}", json={"to": "v2", "amount": 5})
    assert r.status_code == 409
    assert "exceeds weight" in r.json()["detail"]


def test_moving_for_the_engine_is_409(client):
    # forcing the stalled human's turn with /engine-move leaves the engine
    # to move; a human move posted now is out of turn
    sid = new_session(client, engine="optimal")["id"]
    assert client.post(f"/engine-move/{sid}").status_code == 200
    r = client.post(f"/move/{sid}", json={"to": "v2", "amount": 1})
    assert r.status_code == 409
    assert r.json()["detail"] == "engine to move"


def test_finished_game_rejects_moves(client):
    sid = new_session(client, graph=graph_to_doc(hypercube(1)), mode="HotSeat")["id"]
    assert client.post(f"/move/{sid}", json={"to": "1", "amount": 1}).status_code == 200
    r = client.post(f"/move/{sid}", json={"to": "", "amount": 1})
    assert r.status_code == 409
    assert r.json()["detail"] == "game is over"


def test_engine_move_endpoint(client):
    sid = new_session(client, graph=graph_to_doc(hypercube(2)), engine="random", seed=1)["id"]
    r = client.post(f"/engine-move/{sid}")
    assert r.status_code == 200
    assert r.json()["engineMove"] is not None

    hot = new_session(client, mode="HotSeat")["id"]
    r = client.post(f"/engine-move/{hot}")
    assert r.status_code == 409
    assert r.json()["detail"] == "session has no engine"


def test_solve_endpoint(client):
    sid = new_session(client, graph=graph_to_doc(hypercube(2)), mode="HotSeat")["id"]
    body = client.get(f"/solve/{sid}").json()
    assert body == {"outcome": "MoverLoses", "bestMove": None,
                    "nodesExpanded": 8, "aborted": False}
    win = new_session(client, graph=graph_to_doc(hypercube(3)), mode="HotSeat")["id"]
    body = client.get(f"/solve/{win}").json()
    assert body["outcome"] == "MoverWins"
    assert body["bestMove"] == {"to": "1", "amount": 1}


def test_delete_session(client):
    sid = new_session(client, mode="HotSeat")["id"]
    assert client.delete(f"/session/{sid}").json() == {"deleted": True}
    assert client.get(f"/state/{sid}").status_code == 404


def test_square_against_optimal_always_ends_with_p1_stuck(client):
    # on the unit square the second player wins; the engine never misplays
    graph_doc = graph_to_doc(hypercube(2))
    for opening in ("1", "2"):
        sid = new_session(client, graph=graph_doc, engine="optimal")["id"]
        body = client.post(f"/move/{sid}", json={"to": opening, "amount": 1}).json()
        for _ in range(4):
            state = body["state"]
            if state["terminal"]:
                break
            pos = state["position"]
            targets = [e["v"] if e["u"] == pos else e["u"]
                       for e in state["edges"] if pos in (e["u"], e["v"]) and e["w"] > 0]
            body = client.post(f"/move/{sid}", json={"to": targets[0], "amount": 1}).json()
        assert body["state"]["terminal"]
        assert body["toMove"] == "P1"
        assert body["state"]["position"] == ""


def test_sessions_are_independent(client):
    a = new_session(client, mode="HotSeat")["id"]
    b = new_session(client, mode="HotSeat")["id"]
    assert a != b
    client.post(f"/move/{a}", json={"to": "v2", "amount": 2})
    assert client.get(f"/state/{b}").json()["state"]["moveCount"] == 0
