"""Command-line entry point exposing every pipeline stage headlessly.

Exit codes: 0 success, 1 runtime error (bad files, unknown snaps), 2 usage
error, 3 audit ran cleanly but found violations.  Diagnostics go to stderr;
data goes to stdout or the requested output files.  Every command is
reproducible: the same flags over the same inputs write the same bytes.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .audit import DEFAULT_TOLERANCE, audit_series
from .errors import SimplexVizError
from .ingest import read_dataset, write_dataset
from .model import DatasetSeries
from .render import (
    NORMALIZATION_MODES,
    animate as render_animate,
    build_view,
    jitter_overlaps,
    project_frame,
    render_frame_svg,
    stacked_chart,
    timeseries_chart,
)
from .scenarios import SCENARIO_NAMES, ScenarioSpec, generate_scenario
from .service import DEFAULT_PORT, serve

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_VIOLATIONS = 3


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_RUNTIME)


def _load(path: str) -> DatasetSeries:
    try:
        return read_dataset(path)
    except FileNotFoundError:
        _fail(f"input file not found: {path}")
    except SimplexVizError as exc:
        _fail(str(exc))
    raise AssertionError("unreachable")


def _view_options(fn):
    fn = click.option(
        "--mode",
        type=click.Choice(NORMALIZATION_MODES),
        default="strict",
        show_default=True,
        help="Normalization of metric values into shares.",
    )(fn)
    fn = click.option("--az", type=float, default=0.0, show_default=True, help="Azimuth in degrees (tetrahedron views).")(fn)
    fn = click.option("--el", type=float, default=0.0, show_default=True, help="Elevation in degrees (tetrahedron views).")(fn)
    fn = click.option("--grid", type=float, default=0.1, show_default=True, help="Trilinear gridline step; 0 disables.")(fn)
    fn = click.option("--jitter", type=float, default=0.0, show_default=True, help="Ring radius for separating coincident dots (scene units).")(fn)
    fn = click.option("--axes", type=str, default=None, help="Comma-separated axis names in vertex order (default per spec).")(fn)
    fn = click.option(
        "--spec",
        "spec_name",
        type=str,
        required=True,
        help="Aggregation spec mapping dataset metrics onto simplex axes.",
    )(fn)
    return fn


def _build_view_or_fail(spec_name, mode, az, el, grid, jitter, axes):
    if grid < 0 or grid >= 1:
        raise click.UsageError("--grid must lie in [0, 1); 0 disables")
    if jitter < 0:
        raise click.UsageError("--jitter must be nonnegative")
    axis_names = None
    if axes:
        axis_names = tuple(a.strip() for a in axes.split(","))
    try:
        return build_view(
            spec_name,
            mode=mode,
            azimuth=az,
            elevation=el,
            gridline_step=grid if grid > 0 else None,
            jitter_radius=jitter,
            axis_names=axis_names,
        )
    except SimplexVizError as exc:
        _fail(str(exc))
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
@click.version_option(package_name="simplexviz", prog_name="simplexviz")
def main() -> None:
    """Session-metric simplex visualization and time-accounting audits."""


@main.command()
@click.option("--scenario", type=click.Choice(SCENARIO_NAMES), required=True, help="Built-in synthetic scenario.")
@click.option("--sessions", type=int, default=None, help="Session count (scenario default if omitted).")
@click.option("--snaps", type=int, default=None, help="Snapshot count (scenario default if omitted).")
@click.option("--seed", type=int, default=42, show_default=True, help="RNG seed; same seed, same bytes.")
@click.option("--defects", type=int, default=0, show_default=True, help="Snapshots to perturb by 100 ms for audit demos.")
@click.option("--defect-sign", type=click.Choice(["1", "-1"]), default="1", show_default=True, help="Sign of the induced residual: 1 leaves time unaccounted, -1 double-counts.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True, help="Output dataset (.json or .csv).")
def generate(scenario, sessions, snaps, seed, defects, defect_sign, output) -> None:
    """Generate a synthetic dataset."""
    try:
        spec = ScenarioSpec.builtin(
            scenario,
            sessions=sessions,
            snaps=snaps,
            seed=seed,
            defects=defects,
            defect_sign=int(defect_sign),
        )
        dataset = generate_scenario(spec)
        write_dataset(dataset, output)
    except (SimplexVizError, ValueError) as exc:
        _fail(str(exc))
    click.echo(f"wrote {output}", err=True)


@main.command()
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Dataset file (.json or .csv).")
@click.option("--snap", "snap_id", type=int, required=True, help="Snapshot to project.")
@_view_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write JSON here instead of stdout.")
def project(input_path, snap_id, spec_name, mode, az, el, grid, jitter, axes, output) -> None:
    """Project one snapshot to barycentric and screen coordinates (JSON)."""
    dataset = _load(input_path)
    view = _build_view_or_fail(spec_name, mode, az, el, grid, jitter, axes)
    try:
        scene = project_frame(dataset, snap_id, view)
        if view.jitter_radius > 0:
            scene = jitter_overlaps(scene, view.jitter_radius, seed=view.palette_seed)
    except SimplexVizError as exc:
        _fail(str(exc))
    body = {
        "snap_id": scene.snap_id,
        "n": scene.n,
        "spec": view.spec.name,
        "mode": view.mode,
        "axes": list(view.axes.names),
        "sessions": [
            {
                "session_id": dot.session_id,
                "coords": [round(c, 6) for c in dot.coords],
                "screen": [round(c, 6) for c in dot.point.coords],
                "color": dot.color,
            }
            for dot in scene.dots
        ],
    }
    text = json.dumps(body, indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(f"wrote {output}", err=True)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Dataset file (.json or .csv).")
@click.option("--snap", "snap_id", type=int, required=True, help="Snapshot to render.")
@_view_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True, help="Output SVG file.")
def render(input_path, snap_id, spec_name, mode, az, el, grid, jitter, axes, output) -> None:
    """Render one snapshot to an SVG frame."""
    dataset = _load(input_path)
    view = _build_view_or_fail(spec_name, mode, az, el, grid, jitter, axes)
    try:
        svg = render_frame_svg(dataset, snap_id, view)
    except SimplexVizError as exc:
        _fail(str(exc))
    Path(output).write_bytes(svg)
    click.echo(f"wrote {output}", err=True)


@main.command()
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Dataset file (.json or .csv).")
@_view_options
@click.option("-o", "--outdir", type=click.Path(file_okay=False), required=True, help="Directory for frame_XXXXXX.svg files.")
def animate(input_path, spec_name, mode, az, el, grid, jitter, axes, outdir) -> None:
    """Render every snapshot to numbered SVG frames."""
    dataset = _load(input_path)
    view = _build_view_or_fail(spec_name, mode, az, el, grid, jitter, axes)
    try:
        count = render_animate(dataset, view, outdir)
    except SimplexVizError as exc:
        _fail(str(exc))
    click.echo(f"wrote {count} frames to {outdir}", err=True)


@main.command()
@click.option("--kind", type=click.Choice(["stacked", "timeseries"]), required=True, help="Chart style.")
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Dataset file (.json or .csv).")
@click.option("--metrics", type=str, required=True, help="Comma-separated metric names to plot.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True, help="Output SVG file.")
def chart(kind, input_path, metrics, output) -> None:
    """Chart metric shares across snapshots."""
    dataset = _load(input_path)
    names = tuple(m.strip() for m in metrics.split(",") if m.strip())
    if not names:
        raise click.UsageError("--metrics needs at least one name")
    try:
        if kind == "stacked":
            svg = stacked_chart(dataset, names)
        else:
            svg = timeseries_chart(dataset, names)
    except SimplexVizError as exc:
        _fail(str(exc))
    Path(output).write_bytes(svg)
    click.echo(f"wrote {output}", err=True)


@main.command()
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Dataset file (.json or .csv).")
@click.option("--tol", type=float, default=DEFAULT_TOLERANCE, show_default=True, help="Residual fraction beyond which a snapshot is flagged.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here instead of stdout.")
def audit(input_path, tol, output) -> None:
    """Check each snapshot's metrics against the sample interval.

    Exits 3 when violations are found, 0 when every snapshot accounts for
    its interval within tolerance.
    """
    if tol < 0:
        raise click.UsageError("--tol must be nonnegative")
    dataset = _load(input_path)
    report = audit_series(dataset, tolerance=tol)
    text = json.dumps(report.as_dict(), indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(f"wrote {output}", err=True)
    else:
        click.echo(text, nl=False)
    if report.has_violations:
        click.echo(
            f"{len(report.findings)} snapshot(s) violate the sum rule at tol {tol}",
            err=True,
        )
        sys.exit(EXIT_VIOLATIONS)


@main.command("serve")
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="Dataset file (.json or .csv).")
@click.option("--port", type=int, default=DEFAULT_PORT, show_default=True, help="Listening port.")
@click.option("--host", type=str, default="127.0.0.1", show_default=True, help="Bind address.")
def serve_cmd(input_path, port, host) -> None:
    """Serve the dataset over the read-only HTTP API."""
    dataset = _load(input_path)
    try:
        serve(dataset, port=port, host=host)
    except OSError as exc:
        _fail(f"cannot bind {host}:{port}: {exc}")


if __name__ == "__main__":
    main()
