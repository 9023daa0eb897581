"""HTTP facade: sessions, zoom actions, images, stats, error statuses."""

import io

import pytest
from fastapi.testclient import TestClient

from selfsim.service import create_app

DUP_BODY = {
    "ifs": {
        "name": "dup",
        "maps": [
            {"u": {"re": [1, 2], "im": 0}, "conj": False, "t": {"re": 0, "im": 0}},
            {"u": {"re": [1, 2], "im": 0}, "conj": False, "t": {"re": 0, "im": 0}},
        ],
    }
}


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def create(client, **body):
    if "ifs" not in body and "maps" not in body:
        body.setdefault("preset", "chair")
    response = client.post("/sessions", json=body)
    assert response.status_code == 200, response.text
    return response.json()


class TestCreateSession:
    def test_chair_payload(self, client):
        doc = create(client)
        assert set(doc) == {"sessionId", "summary", "childBoxes", "state"}
        summary = doc["summary"]
        assert summary["name"] == "chair"
        assert summary["K"] == 7
        assert summary["interiorWord"] == "12"
        assert summary["connected"] is True
        assert summary["neighborCounts"] == {"total": 19, "continuum": 14, "point": 5}
        state = doc["state"]
        assert state["current"] == 1
        assert state["stepCount"] == 0
        assert state["neighborhood"]["members"] == [1, 4, 5, 6, 9, 10]

    def test_child_boxes_normalized(self, client):
        boxes = create(client)["childBoxes"]
        assert len(boxes) == 4
        assert [b["label"] for b in boxes] == [1, 2, 3, 4]
        for b in boxes:
            assert 0.0 <= b["x0"] < b["x1"] <= 1.0
            assert 0.0 <= b["y0"] < b["y1"] <= 1.0

    def test_inline_ifs(self, client):
        body = {
            "ifs": {
                "name": "half-square",
                "maps": [
                    {
                        "u": {"re": [1, 2], "im": 0},
                        "conj": False,
                        "t": {"re": t_re, "im": t_im},
                    }
                    for t_re, t_im in [(0, 0), (1, 0), (0, 1), (1, 1)]
                ],
            }
        }
        doc = create(client, **body)
        assert doc["summary"]["name"] == "half-square"

    def test_seed_word_override(self, client):
        doc = create(client, seedWord="21")
        assert doc["summary"]["interiorWord"] == "21"
        assert doc["state"]["neighborhood"]["members"] == [1, 2, 3, 4]

    def test_unknown_preset(self, client):
        assert client.post("/sessions", json={"preset": "nope"}).status_code == 400

    def test_non_json_body(self, client):
        response = client.post(
            "/sessions", content=b"not json", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400

    def test_missing_spec_field(self, client):
        assert client.post("/sessions", json={"foo": 1}).status_code == 400

    def test_bad_filter(self, client):
        response = client.post(
            "/sessions", json={"preset": "chair", "filter": "most"}
        )
        assert response.status_code == 400

    def test_bad_seed_word_digit(self, client):
        response = client.post(
            "/sessions", json={"preset": "chair", "seedWord": "9"}
        )
        assert response.status_code == 400

    def test_non_interior_seed_word(self, client):
        response = client.post(
            "/sessions", json={"preset": "chair", "seedWord": "1"}
        )
        assert response.status_code == 422

    def test_exact_overlap_rejected(self, client):
        response = client.post("/sessions", json=DUP_BODY)
        assert response.status_code == 422
        assert "overlap" in response.json()["detail"]


class TestZoomActions:
    def test_in_then_out(self, client):
        doc = create(client)
        sid = doc["sessionId"]
        gone_in = client.post(
            f"/sessions/{sid}/zoom", json={"action": "in", "child": 1}
        ).json()
        assert gone_in["current"] == 2
        assert gone_in["stepCount"] == 1
        assert gone_in["historyDepth"] == 1
        back = client.post(f"/sessions/{sid}/zoom", json={"action": "out"}).json()
        assert back["current"] == 1
        assert back["historyDepth"] == 0
        assert back["lastChild"] == 1

    def test_out_at_top_samples_parent(self, client):
        sid = create(client)["sessionId"]
        doc = client.post(f"/sessions/{sid}/zoom", json={"action": "out"}).json()
        assert doc["current"] in range(1, 8)
        assert doc["lastChild"] in range(1, 5)

    def test_bad_action(self, client):
        sid = create(client)["sessionId"]
        response = client.post(f"/sessions/{sid}/zoom", json={"action": "left"})
        assert response.status_code == 400

    def test_child_out_of_range(self, client):
        sid = create(client)["sessionId"]
        response = client.post(
            f"/sessions/{sid}/zoom", json={"action": "in", "child": 5}
        )
        assert response.status_code == 400

    def test_child_missing(self, client):
        sid = create(client)["sessionId"]
        response = client.post(f"/sessions/{sid}/zoom", json={"action": "in"})
        assert response.status_code == 400

    def test_unknown_session(self, client):
        response = client.post("/sessions/feed/zoom", json={"action": "out"})
        assert response.status_code == 404


class TestViewImage:
    def test_png_shape(self, client):
        from PIL import Image

        sid = create(client)["sessionId"]
        response = client.get(f"/sessions/{sid}/view.png", params={"pixels": 64})
        assert response.status_code == 200
        assert response.headers["content-type"] == "image/png"
        assert Image.open(io.BytesIO(response.content)).size == (64, 64)

    def test_round_trip_byte_identical(self, client):
        sid = create(client)["sessionId"]
        params = {"pixels": 64, "depth": 10}
        before = client.get(f"/sessions/{sid}/view.png", params=params).content
        client.post(f"/sessions/{sid}/zoom", json={"action": "in", "child": 3})
        during = client.get(f"/sessions/{sid}/view.png", params=params).content
        client.post(f"/sessions/{sid}/zoom", json={"action": "out"})
        after = client.get(f"/sessions/{sid}/view.png", params=params).content
        assert before == after
        assert during != before

    def test_pixel_bounds(self, client):
        sid = create(client)["sessionId"]
        assert (
            client.get(f"/sessions/{sid}/view.png", params={"pixels": 4096}).status_code
            == 400
        )
        assert (
            client.get(
                f"/sessions/{sid}/view.png", params={"pixels": 64, "depth": 0}
            ).status_code
            == 400
        )

    def test_unknown_session(self, client):
        assert client.get("/sessions/dead/view.png").status_code == 404


class TestStatsAndNeighborhoods:
    def test_stats(self, client):
        sid = create(client)["sessionId"]
        doc = client.get(f"/sessions/{sid}/stats").json()
        assert doc["stats"]["K"] == 7
        assert doc["stats"]["avgNbrs"] == pytest.approx(5.0)
        assert len(doc["stationary"]) == 7
        assert sum(doc["stationary"]) == pytest.approx(1.0)

    def test_neighborhood_detail(self, client):
        sid = create(client)["sessionId"]
        doc = client.get(f"/sessions/{sid}/neighborhoods/1").json()
        assert doc["members"] == [1, 4, 5, 6, 9, 10]
        assert doc["size"] == 6
        assert doc["rare"] is False
        assert doc["successors"] == [2, 1, 3, 4]

    def test_neighborhood_out_of_range(self, client):
        sid = create(client)["sessionId"]
        assert client.get(f"/sessions/{sid}/neighborhoods/99").status_code == 404

    def test_rare_flag_on_deep_descent(self, client):
        doc = create(client, preset="fractal-square")
        sid = doc["sessionId"]
        assert doc["summary"]["K"] == 30
        state = doc["state"]
        for child in (1, 1, 1, 2, 3, 2, 3, 1):
            state = client.post(
                f"/sessions/{sid}/zoom", json={"action": "in", "child": child}
            ).json()
        assert state["current"] == 30
        assert state["neighborhood"]["rare"] is True
        assert state["neighborhood"]["p"] == pytest.approx(0.000171, rel=1e-2)
        common = client.get(f"/sessions/{sid}/neighborhoods/1").json()
        assert common["rare"] is False


class TestSessionEviction:
    def test_lru(self):
        with TestClient(create_app(max_sessions=2)) as small:
            first = create(small)["sessionId"]
            second = create(small)["sessionId"]
            assert small.get(f"/sessions/{first}/stats").status_code == 200
            third = create(small)["sessionId"]
            # first was refreshed by the stats call, so second is the LRU victim
            assert small.get(f"/sessions/{second}/stats").status_code == 404
            for sid in (first, third):
                assert small.get(f"/sessions/{sid}/stats").status_code == 200


class TestCors:
    def test_browser_origins_allowed(self, client):
        response = client.post(
            "/sessions",
            json={"preset": "chair"},
            headers={"Origin": "http://localhost:5173"},
        )
        assert response.status_code == 200
        assert response.headers["access-control-allow-origin"] == "*"

    def test_preflight(self, client):
        response = client.options(
            "/sessions",
            headers={
                "Origin": "http://localhost:5173",
                "Access-Control-Request-Method": "POST",
                "Access-Control-Request-Headers": "content-type",
            },
        )
        assert response.status_code == 200
        assert response.headers["access-control-allow-origin"] == "*"
        assert "POST" in response.headers["access-control-allow-methods"]
