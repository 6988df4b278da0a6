import math

import pytest
from fastapi.testclient import TestClient

from simplexviz.render import build_view, render_frame_svg
from simplexviz.scenarios import SCENARIO_NAMES
from simplexviz.service import create_app


@pytest.fixture(scope="module")
def client(fig6_dataset):
    return TestClient(create_app(fig6_dataset))


def test_meta_reports_dataset_shape(client):
    body = client.get("/api/meta").json()
    assert len(body["session_ids"]) == 60
    assert body["snap_range"] == [1, 10]
    assert body["sample_interval_ms"] == 1000.0
    assert body["metrics"] == ["CPU_USAGE", "IDLE", "DB_WAIT"]
    assert "session3" in body["specs"]


def test_projection_entries_sum_to_one(client):
    r = client.get("/api/snaps/8/projection")
    assert r.status_code == 200
    body = r.json()
    assert len(body["sessions"]) == 60
    for entry in body["sessions"]:
        assert math.fsum(entry["coords"]) == pytest.approx(1.0, abs=1e-6)


def test_projection_carries_scene_parts(client):
    body = client.get("/api/snaps/3/projection?grid=0.1").json()
    assert body["snap_id"] == 3
    assert body["odometer"] == "3"
    assert len(body["vertices"]) == 3
    assert len(body["gridlines"]) == 27
    assert [a["name"] for a in body["axis_labels"]] == [
        "CPU_USAGE",
        "IDLE",
        "DB_WAIT",
    ]
    for entry in body["sessions"]:
        assert entry["color"].startswith("#")
        assert len(entry["screen"]) == 2


def test_projection_coords_serialized_at_six_decimals(client):
    body = client.get("/api/snaps/1/projection").json()
    for entry in body["sessions"]:
        for c in entry["coords"] + entry["screen"]:
            assert c == round(c, 6)


def test_unknown_snap_is_structured_404(client):
    r = client.get("/api/snaps/999999/projection")
    assert r.status_code == 404
    body = r.json()
    assert body["error"]["code"] == "SnapNotFound"
    assert "999999" in body["error"]["detail"]


@pytest.mark.parametrize(
    "query,param",
    [
        ("az=abc", "az"),
        ("el=nope", "el"),
        ("mode=median", "mode"),
        ("spec=bogus", "spec"),
        ("n=four", "n"),
        ("n=4", "n"),
        ("grid=2", "grid"),
        ("jitter=-1", "jitter"),
        ("tol=x", "tol"),
    ],
)
def test_bad_query_names_parameter(client, query, param):
    path = "/api/audit" if query.startswith("tol") else "/api/snaps/1/projection"
    r = client.get(f"{path}?{query}")
    assert r.status_code == 400
    assert f"'{param}'" in r.json()["error"]["detail"]


def test_matching_n_is_accepted(client):
    assert client.get("/api/snaps/1/projection?n=3").status_code == 200
    assert client.get("/api/snaps/1/projection?mode=slack&n=4").status_code == 200


def test_frame_svg_matches_library_render(client, fig6_dataset):
    view = build_view(
        "session3",
        mode="strict",
        azimuth=0.0,
        elevation=0.0,
        gridline_step=0.1,
        jitter_radius=0.02,
    )
    expected = render_frame_svg(fig6_dataset, 8, view)
    r = client.get("/api/snaps/8/frame.svg?spec=session3&grid=0.1&jitter=0.02")
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("image/svg+xml")
    assert r.content == expected


def test_identical_requests_identical_bodies(client):
    url = "/api/snaps/5/projection?grid=0.1&jitter=0.01"
    assert client.get(url).content == client.get(url).content


def test_axes_param_reassigns_vertices(client):
    default = client.get("/api/snaps/1/projection").json()
    swapped = client.get(
        "/api/snaps/1/projection?axes=IDLE,CPU_USAGE,DB_WAIT"
    ).json()
    assert swapped["axes"] == ["IDLE", "CPU_USAGE", "DB_WAIT"]
    d0 = default["sessions"][0]["coords"]
    s0 = swapped["sessions"][0]["coords"]
    assert s0 == [d0[1], d0[0], d0[2]]


def test_audit_endpoint(client):
    body = client.get("/api/audit?tol=0.01").json()
    assert body["tolerance"] == 0.01
    assert body["totals"] == {"ok": 600, "unaccounted": 0, "double_counted": 0}
    assert body["findings"] == []


def test_scenarios_endpoint(client):
    body = client.get("/api/scenarios").json()
    assert [s["name"] for s in body["scenarios"]] == list(SCENARIO_NAMES)


def test_cors_allows_other_origins(client):
    r = client.get("/api/meta", headers={"Origin": "http://localhost:5173"})
    assert r.headers.get("access-control-allow-origin") == "*"


def test_invalid_axis_assignment_is_400(client):
    r = client.get("/api/snaps/1/projection?axes=CPU_USAGE,IDLE,LATENCY")
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "InvalidView"
