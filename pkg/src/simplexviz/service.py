"""Read-only HTTP facade over a loaded dataset.

All endpoints are GETs over an immutable ``DatasetSeries``, so identical
requests return identical bodies and responses are cacheable by URL.  View
parameters (spec, rotation, normalization mode, axes) travel as query
strings; the interactive viewer's drag loop is therefore a pure GET cycle
with no client-side barycentric math.

Frame SVGs go through the same ``render_frame_svg`` helper as the command
line, so the two emit identical bytes for identical parameters.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .audit import DEFAULT_TOLERANCE, audit_series
from .errors import SimplexVizError, SnapNotFound, UnknownSpec
from .model import DatasetSeries, builtin_spec_names
from .render import (
    NORMALIZATION_MODES,
    FrameScene,
    ViewConfig,
    build_view,
    jitter_overlaps,
    project_frame,
    render_frame_svg,
)
from .scenarios import scenario_catalog

DEFAULT_PORT = 8007


class _BadQuery(Exception):
    """A query parameter failed to parse; carries the parameter name."""

    def __init__(self, param: str, detail: str):
        super().__init__(detail)
        self.param = param
        self.detail = detail


def _error_body(code: str, detail: str) -> dict:
    return {"error": {"code": code, "detail": detail}}


def _parse_float(params: dict[str, str], name: str, default: float) -> float:
    raw = params.get(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise _BadQuery(name, f"parameter {name!r} must be a number, got {raw!r}")


def _parse_view(params: dict[str, str], defaults: ViewConfig) -> ViewConfig:
    """Build a view from query parameters, falling back to the defaults.

    Raises _BadQuery naming the offending parameter on any parse or
    validation failure.
    """
    spec_name = params.get("spec") or defaults.spec.name
    mode = params.get("mode") or defaults.mode
    if mode not in NORMALIZATION_MODES:
        raise _BadQuery(
            "mode", f"parameter 'mode' must be one of {NORMALIZATION_MODES}, got {mode!r}"
        )
    azimuth = _parse_float(params, "az", defaults.rotation.azimuth)
    elevation = _parse_float(params, "el", defaults.rotation.elevation)
    jitter = _parse_float(params, "jitter", defaults.jitter_radius)
    if jitter < 0:
        raise _BadQuery("jitter", "parameter 'jitter' must be nonnegative")
    grid = _parse_float(
        params,
        "grid",
        defaults.gridline_step if defaults.gridline_step is not None else 0.0,
    )
    if grid < 0 or grid >= 1:
        raise _BadQuery("grid", "parameter 'grid' must lie in [0, 1); 0 disables")

    axis_names: tuple[str, ...] | None = None
    raw_axes = params.get("axes")
    if raw_axes:
        axis_names = tuple(a.strip() for a in raw_axes.split(","))
        if any(not a for a in axis_names):
            raise _BadQuery("axes", "parameter 'axes' has an empty name")

    try:
        view = build_view(
            spec_name,
            mode=mode,
            azimuth=azimuth,
            elevation=elevation,
            gridline_step=grid if grid > 0 else None,
            jitter_radius=jitter,
            canvas=defaults.canvas,
            palette_seed=defaults.palette_seed,
            axis_names=axis_names,
        )
    except UnknownSpec as exc:
        raise _BadQuery("spec", f"parameter 'spec': {exc}")
    except ValueError as exc:
        raise _BadQuery("axes", f"parameter 'axes': {exc}")

    raw_n = params.get("n")
    if raw_n is not None and raw_n != "":
        try:
            requested = int(raw_n)
        except ValueError:
            raise _BadQuery("n", f"parameter 'n' must be an integer, got {raw_n!r}")
        if requested != view.n:
            raise _BadQuery(
                "n",
                f"parameter 'n'={requested} conflicts with spec "
                f"{view.spec.name!r} in mode {view.mode!r} (n={view.n})",
            )
    return view


def _round6(v: float) -> float:
    return round(v, 6)


def _point_json(p) -> list[float]:
    return [_round6(c) for c in p.coords]


def _projection_body(scene: FrameScene, view: ViewConfig) -> dict:
    return {
        "snap_id": scene.snap_id,
        "n": scene.n,
        "spec": view.spec.name,
        "mode": view.mode,
        "azimuth": _round6(view.rotation.azimuth),
        "elevation": _round6(view.rotation.elevation),
        "axes": list(view.axes.names),
        "canvas": list(scene.canvas),
        "vertices": [_point_json(v) for v in scene.outline],
        "gridlines": [[_point_json(a), _point_json(b)] for a, b in scene.gridlines],
        "axis_labels": [
            {"name": name, "at": _point_json(pos)} for name, pos in scene.axis_labels
        ],
        "odometer": scene.odometer,
        "sessions": [
            {
                "session_id": dot.session_id,
                "coords": [_round6(c) for c in dot.coords],
                "screen": _point_json(dot.point),
                "color": dot.color,
            }
            for dot in scene.dots
        ],
    }


def create_app(d: DatasetSeries, defaults: ViewConfig | None = None) -> FastAPI:
    """Build the read-only API over one loaded dataset."""
    if defaults is None:
        defaults = build_view(_default_spec_name(d), gridline_step=0.1)
    app = FastAPI(title="simplexviz", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    snap_ids = d.snap_ids

    @app.exception_handler(_BadQuery)
    async def _bad_query(request: Request, exc: _BadQuery):
        return JSONResponse(status_code=400, content=_error_body("BadQuery", exc.detail))

    @app.exception_handler(SimplexVizError)
    async def _domain_error(request: Request, exc: SimplexVizError):
        status = 404 if isinstance(exc, SnapNotFound) else 400
        return JSONResponse(
            status_code=status,
            content=_error_body(type(exc).__name__, str(exc)),
        )

    @app.get("/api/meta")
    async def meta():
        return {
            "label": d.label,
            "metrics": list(d.metric_names),
            "sample_interval_ms": d.sample_interval,
            "snap_range": [snap_ids[0], snap_ids[-1]] if snap_ids else None,
            "snap_ids": list(snap_ids),
            "session_ids": list(d.session_ids),
            "specs": list(builtin_spec_names()),
            "modes": list(NORMALIZATION_MODES),
        }

    @app.get("/api/snaps/{snap_id}/projection")
    async def projection(snap_id: int, request: Request):
        view = _parse_view(dict(request.query_params), defaults)
        scene = project_frame(d, snap_id, view)
        if view.jitter_radius > 0:
            scene = jitter_overlaps(scene, view.jitter_radius, seed=view.palette_seed)
        return _projection_body(scene, view)

    @app.get("/api/snaps/{snap_id}/frame.svg")
    async def frame_svg(snap_id: int, request: Request):
        view = _parse_view(dict(request.query_params), defaults)
        svg = render_frame_svg(d, snap_id, view)
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/api/audit")
    async def audit(request: Request):
        params = dict(request.query_params)
        tol = _parse_float(params, "tol", DEFAULT_TOLERANCE)
        if tol < 0:
            raise _BadQuery("tol", "parameter 'tol' must be nonnegative")
        return audit_series(d, tolerance=tol).as_dict()

    @app.get("/api/scenarios")
    async def scenarios():
        return {"scenarios": scenario_catalog()}

    return app


def _default_spec_name(d: DatasetSeries) -> str:
    """Pick the built-in spec whose composites the dataset can feed."""
    from .model import builtin_spec, validate_view
    from .render import default_axes

    for name in builtin_spec_names():
        spec = builtin_spec(name)
        axes = default_axes(spec)
        if not validate_view(d, spec, axes):
            return name
    return "session3"


def serve(
    d: DatasetSeries,
    defaults: ViewConfig | None = None,
    port: int = DEFAULT_PORT,
    host: str = "127.0.0.1",
) -> None:
    """Run the API with uvicorn until interrupted.

    A port already in use surfaces as the underlying OSError.
    """
    import uvicorn

    app = create_app(d, defaults)
    uvicorn.run(app, host=host, port=port, log_level="warning")
