"""Regenerate the captured service responses used by the viewer tests.

Run from this directory with the Python package installed:

    python3 generate.py

Every fixture is a verbatim body from the HTTP service over the seed-42
fig6 dataset, so the viewer tests exercise exactly what a live server
would return.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

import simplexviz as sv
from simplexviz.service import create_app

HERE = Path(__file__).parent


def save(name: str, payload: dict) -> None:
    (HERE / name).write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {name}")


def main() -> None:
    d = sv.generate_scenario(sv.ScenarioSpec.builtin("fig6", seed=42))
    client = TestClient(create_app(d))

    save("meta_fig6.json", client.get("/api/meta").json())

    base = client.get("/api/snaps/1/projection").json()
    save("projection_fig6_snap1.json", base)

    # explicit axes in default order must serve the same body as no axes
    explicit = client.get(
        "/api/snaps/1/projection?axes=CPU_USAGE,IDLE,DB_WAIT"
    ).json()
    assert explicit == base, "explicit default axes changed the body"

    save(
        "projection_fig6_snap1_swapped.json",
        client.get("/api/snaps/1/projection?axes=IDLE,CPU_USAGE,DB_WAIT").json(),
    )

    last_snap = d.snap_ids[-1]
    save(
        f"projection_fig6_snap{last_snap}.json",
        client.get(f"/api/snaps/{last_snap}/projection").json(),
    )

    tetra = client.get("/api/snaps/1/projection?mode=slack&az=0&el=0").json()
    save("projection_fig6_snap1_slack.json", tetra)
    assert tetra["n"] == 4
    assert tetra["gridlines"] == [], "tetrahedron view should carry no gridlines"

    # a full-turn azimuth serves the identical body, so a 720 px drag at
    # 0.5 deg/px lands the client back on the same request and scene
    full_turn = client.get("/api/snaps/1/projection?mode=slack&az=360&el=0").json()
    assert full_turn == tetra, "azimuth 360 differs from azimuth 0"

    # once the client adopts the served axis order it echoes it back
    # explicitly; the body must not change
    echoed = client.get(
        "/api/snaps/1/projection"
        "?mode=slack&az=0&el=0&axes=CPU_USAGE,IDLE,DB_WAIT,UNACCOUNTED"
    ).json()
    assert echoed == tetra, "explicit slack axes changed the body"

    missing = client.get("/api/snaps/999999/projection")
    assert missing.status_code == 404
    save("error_snap_missing.json", missing.json())


if __name__ == "__main__":
    main()
