"""Deterministic scene construction and SVG emission.

The frame pipeline turns one snapshot of a dataset into a renderable scene:
aggregate each session's metrics into the view's composites, normalize to
barycentric shares, embed into the triangle or tetrahedron, project to the
screen plane (tetrahedron views honor the view rotation), and attach
gridlines, axis labels, and the odometer.  Charts give the complementary
time-axis perspective over the same data.

Everything here is a pure function of its inputs: identical (series, view)
produce identical bytes, dot colors are a stable function of session id and
palette seed, and nothing mutates the dataset.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .errors import (
    InvalidView,
    MissingMetric,
    SnapNotFound,
    SumRuleViolation,
    UnsupportedDimension,
)
from .geometry import (
    BarycentricPoint,
    CartesianPoint,
    SimplexEmbedding,
    ViewRotation,
    barycentric_from_shares,
    embed,
    rotate_project,
    simplex_embedding,
    trilinear_gridlines,
)
from .model import (
    AggregationSpec,
    AxisAssignment,
    DatasetSeries,
    builtin_spec,
    composite_values,
    validate_view,
)

#: Axis name carried by the extra vertex in slack normalization mode.
SLACK_AXIS = "UNACCOUNTED"

#: Categorical 12-color cycle. A session's color is
#: PALETTE[sha256("{seed}:{session_id}") first 8 bytes, big-endian, mod 12].
PALETTE = (
    "#e6194b",
    "#3cb44b",
    "#4363d8",
    "#f58231",
    "#911eb4",
    "#46b8b8",
    "#f032e6",
    "#9acd32",
    "#fa8072",
    "#008080",
    "#b08fd8",
    "#9a6324",
)

#: Two dots closer than this (scene units) count as overlapping.
OVERLAP_EPS = 1e-9

DEFAULT_CANVAS = (800, 700)
DOT_RADIUS_PX = 6.0

NORMALIZATION_MODES = ("strict", "rescale", "slack")

# Default metric-to-vertex assignment for the built-in specs: the CPU axis
# takes the apex, wait classes fan out below it.
_DEFAULT_AXES = {
    "owi3": ("DB_CPU_PCT", "IO_PCT", "WAIT_PCT"),
    "session3": ("CPU_USAGE", "IDLE", "DB_WAIT"),
    "session4": ("CPU_USAGE", "DB_CONTENTION", "DB_WAIT", "IDLE"),
}


@dataclass(frozen=True)
class ViewConfig:
    """Everything that determines how a frame is drawn."""

    spec: AggregationSpec
    axes: AxisAssignment
    mode: str = "strict"
    jitter_radius: float = 0.0
    gridline_step: float | None = None
    rotation: ViewRotation = ViewRotation(0.0, 0.0)
    canvas: tuple[int, int] = DEFAULT_CANVAS
    palette_seed: int = 42

    def __post_init__(self) -> None:
        if self.mode not in NORMALIZATION_MODES:
            raise ValueError(f"unknown normalization mode {self.mode!r}")
        if self.jitter_radius < 0:
            raise ValueError("jitter radius must be nonnegative")

    @property
    def n(self) -> int:
        """Vertex count of the rendered simplex (slack adds one axis)."""
        return self.spec.n + (1 if self.mode == "slack" else 0)


def default_axes(spec: AggregationSpec, mode: str = "strict") -> AxisAssignment:
    """Default vertex assignment: CPU-like composite at the apex."""
    if spec.name in _DEFAULT_AXES:
        names = list(_DEFAULT_AXES[spec.name])
    else:
        names = list(spec.composite_names)
        for i, name in enumerate(names):
            if "CPU" in name.upper():
                names.insert(0, names.pop(i))
                break
    if mode == "slack":
        names.append(SLACK_AXIS)
    return AxisAssignment.from_names(names)


def build_view(
    spec_name: str,
    mode: str = "strict",
    azimuth: float = 0.0,
    elevation: float = 0.0,
    gridline_step: float | None = None,
    jitter_radius: float = 0.0,
    canvas: tuple[int, int] = DEFAULT_CANVAS,
    palette_seed: int = 42,
    axis_names: tuple[str, ...] | None = None,
) -> ViewConfig:
    """Resolve a named aggregation spec into a full view configuration.

    The CLI and the HTTP service both build views through here, so equal
    parameters render equal bytes.
    """
    spec = builtin_spec(spec_name)
    if axis_names is not None:
        axes = AxisAssignment.from_names(axis_names)
    else:
        axes = default_axes(spec, mode)
    return ViewConfig(
        spec=spec,
        axes=axes,
        mode=mode,
        jitter_radius=jitter_radius,
        gridline_step=gridline_step,
        rotation=ViewRotation(azimuth, elevation),
        canvas=canvas,
        palette_seed=palette_seed,
    )


@dataclass(frozen=True)
class SceneDot:
    """One session's rendered position within a frame."""

    session_id: str
    point: CartesianPoint
    color: str
    coords: tuple[float, ...]


@dataclass(frozen=True)
class FrameScene:
    """A fully positioned, renderable frame."""

    n: int
    snap_id: int
    outline: tuple[CartesianPoint, ...]
    dots: tuple[SceneDot, ...]
    gridlines: tuple[tuple[CartesianPoint, CartesianPoint], ...]
    axis_labels: tuple[tuple[str, CartesianPoint], ...]
    odometer: str
    canvas: tuple[int, int] = DEFAULT_CANVAS


def session_color(session_id: str, palette_seed: int = 42) -> str:
    """Stable categorical color for a session id."""
    digest = hashlib.sha256(f"{palette_seed}:{session_id}".encode("utf-8")).digest()
    return PALETTE[int.from_bytes(digest[:8], "big") % len(PALETTE)]


def _to_screen_plane(c: CartesianPoint, rotation: ViewRotation) -> CartesianPoint:
    if c.dim == 2:
        return c
    return rotate_project(c, rotation)


def _effective_embedding(view: ViewConfig) -> SimplexEmbedding:
    n = view.n
    if n not in (3, 4):
        raise UnsupportedDimension(
            f"view needs {n} axes; only 3 (triangle) and 4 (tetrahedron) render"
        )
    return simplex_embedding(n)


def _axis_order_values(values_by_name: dict[str, float], view: ViewConfig) -> list[float]:
    names = [n for n in view.axes.names if n != SLACK_AXIS]
    return [values_by_name[n] for n in names]


def project_frame(d: DatasetSeries, snap_id: int, view: ViewConfig) -> FrameScene:
    """Build the scene for one snapshot.

    Each session is aggregated into the view's composites, normalized into
    barycentric shares, embedded, and (for tetrahedron views) rotated into
    the screen plane.  Colors depend only on session id and palette seed,
    so a session keeps its color across frames.
    """
    sessions = d.sessions_at(snap_id)
    if not sessions and snap_id not in d.snap_ids:
        raise SnapNotFound(f"snap {snap_id} not in dataset")

    extra = (SLACK_AXIS,) if view.mode == "slack" else ()
    violations = validate_view(d, view.spec, view.axes, extra_axes=extra)
    if violations:
        raise InvalidView("; ".join(str(v) for v in violations))
    if view.mode == "slack" and view.axes.names[-1] != SLACK_AXIS:
        raise InvalidView(f"slack mode requires {SLACK_AXIS} on the last vertex")

    embedding = _effective_embedding(view)
    dots = []
    for snap in sessions:
        composites = composite_values(snap.metrics, view.spec)
        values = _axis_order_values(composites.as_dict(), view)
        try:
            p = barycentric_from_shares(values, snap.sample_interval, view.mode)
        except SumRuleViolation as exc:
            raise SumRuleViolation(
                f"session {snap.session_id!r} at snap {snap_id}: {exc}"
            ) from exc
        point = _to_screen_plane(embed(p, embedding), view.rotation)
        dots.append(
            SceneDot(
                session_id=snap.session_id,
                point=point,
                color=session_color(snap.session_id, view.palette_seed),
                coords=p.coords,
            )
        )

    outline = tuple(
        _to_screen_plane(v, view.rotation) for v in embedding.vertices
    )

    gridlines = []
    if view.gridline_step is not None and embedding.n == 3:
        for a, b in trilinear_gridlines(view.gridline_step):
            gridlines.append((embed(a, embedding), embed(b, embedding)))

    cx = math.fsum(v.x for v in outline) / len(outline)
    cy = math.fsum(v.y for v in outline) / len(outline)
    labels = []
    for name, vertex in zip(view.axes.names, outline):
        dx, dy = vertex.x - cx, vertex.y - cy
        norm = math.hypot(dx, dy) or 1.0
        labels.append(
            (name, CartesianPoint((vertex.x + 0.09 * dx / norm, vertex.y + 0.09 * dy / norm)))
        )

    return FrameScene(
        n=embedding.n,
        snap_id=snap_id,
        outline=outline,
        dots=tuple(dots),
        gridlines=tuple(gridlines),
        axis_labels=tuple(labels),
        odometer=str(snap_id),
        canvas=view.canvas,
    )


def jitter_overlaps(scene: FrameScene, radius: float, seed: int = 42) -> FrameScene:
    """Spread coincident dots onto a ring so none hides another.

    Dots within 1e-9 scene units of each other move onto a ring of the
    given radius around their common point, equally spaced in arrival
    order; everything else is untouched.  Radius 0 is the identity.
    """
    if radius < 0:
        raise ValueError("jitter radius must be nonnegative")
    if radius == 0 or len(scene.dots) < 2:
        return scene

    clusters: list[list[int]] = []
    centers: list[tuple[float, float]] = []
    for i, dot in enumerate(scene.dots):
        placed = False
        for ci, (cx, cy) in enumerate(centers):
            if math.hypot(dot.point.x - cx, dot.point.y - cy) <= OVERLAP_EPS:
                clusters[ci].append(i)
                placed = True
                break
        if not placed:
            clusters.append([i])
            centers.append((dot.point.x, dot.point.y))

    rng = np.random.Generator(np.random.PCG64(seed))
    new_dots = list(scene.dots)
    for cluster, (cx, cy) in zip(clusters, centers):
        if len(cluster) < 2:
            continue
        phase = float(rng.uniform(0.0, 2.0 * math.pi))
        k = len(cluster)
        for order, idx in enumerate(cluster):
            angle = phase + 2.0 * math.pi * order / k
            moved = CartesianPoint(
                (cx + radius * math.cos(angle), cy + radius * math.sin(angle))
            )
            new_dots[idx] = replace(new_dots[idx], point=moved)
    return replace(scene, dots=tuple(new_dots))


# SVG emission


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


class _CanvasTransform:
    """Uniform fit of the scene's outline box into the canvas, 10% margin."""

    def __init__(self, scene: FrameScene):
        w, h = scene.canvas
        xs = [v.x for v in scene.outline] or [0.0, 1.0]
        ys = [v.y for v in scene.outline] or [0.0, 1.0]
        min_x, max_x = min(xs), max(xs)
        min_y, max_y = min(ys), max(ys)
        span_x = max(max_x - min_x, 1e-12)
        span_y = max(max_y - min_y, 1e-12)
        self.scale = min(0.8 * w / span_x, 0.8 * h / span_y)
        self.ox = (w - span_x * self.scale) / 2.0 - min_x * self.scale
        self.oy = (h - span_y * self.scale) / 2.0 - min_y * self.scale
        self.h = h

    def apply(self, p: CartesianPoint) -> tuple[float, float]:
        sx = self.ox + p.x * self.scale
        sy = self.h - (self.oy + p.y * self.scale)
        return sx, sy


def frame_to_svg(scene: FrameScene) -> bytes:
    """Emit a frame as SVG 1.1 with byte-stable output.

    Element order is fixed: simplex frame, gridlines, dots, axis labels,
    odometer.  All coordinates are formatted at 2 decimal places.
    """
    w, h = scene.canvas
    t = _CanvasTransform(scene)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect class="bg" x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
    ]

    parts.append('<g class="frame" fill="none" stroke="#333333" stroke-width="1.5">')
    pts = [t.apply(v) for v in scene.outline]
    if scene.n == 3:
        path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        parts.append(f'<polygon class="edge" points="{path}"/>')
    else:
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                (x1, y1), (x2, y2) = pts[i], pts[j]
                parts.append(
                    f'<line class="edge" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                    f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
                )
    parts.append("</g>")

    parts.append('<g class="gridlines" stroke="#bbbbbb" stroke-width="0.75">')
    for a, b in scene.gridlines:
        (x1, y1), (x2, y2) = t.apply(a), t.apply(b)
        parts.append(
            f'<line class="gridline" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )
    parts.append("</g>")

    parts.append('<g class="dots">')
    for dot in scene.dots:
        x, y = t.apply(dot.point)
        parts.append(
            f'<circle class="dot" data-session="{escape(dot.session_id)}" '
            f'cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(DOT_RADIUS_PX)}" '
            f'fill="{dot.color}" fill-opacity="0.85"/>'
        )
    parts.append("</g>")

    parts.append(
        '<g class="labels" font-family="sans-serif" font-size="16" fill="#333333">'
    )
    for name, pos in scene.axis_labels:
        x, y = t.apply(pos)
        parts.append(
            f'<text class="axis-label" x="{_fmt(x)}" y="{_fmt(y)}" '
            f'text-anchor="middle">{escape(name)}</text>'
        )
    parts.append("</g>")

    parts.append(
        f'<text class="odometer" x="{_fmt(w / 2.0)}" y="{_fmt(h - 18.0)}" '
        f'font-family="monospace" font-size="22" fill="#333333" '
        f'text-anchor="middle">{escape(scene.odometer)}</text>'
    )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def render_frame_svg(d: DatasetSeries, snap_id: int, view: ViewConfig) -> bytes:
    """Project, jitter, and emit one frame; the CLI and service share this."""
    scene = project_frame(d, snap_id, view)
    if view.jitter_radius > 0:
        scene = jitter_overlaps(scene, view.jitter_radius, seed=view.palette_seed)
    return frame_to_svg(scene)


def animate(d: DatasetSeries, view: ViewConfig, outdir: str | Path) -> int:
    """Render every snapshot to ``frame_%06d.svg`` (numbered by snap id).

    The odometer inside frame k therefore reads exactly k.  Returns the
    number of frames written.
    """
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for snap_id in d.snap_ids:
        svg = render_frame_svg(d, snap_id, view)
        (out / f"frame_{snap_id:06d}.svg").write_bytes(svg)
    return len(d.snap_ids)


# Time-axis charts

_CHART_CANVAS = (800, 500)
_CHART_MARGINS = (60, 20, 150, 40)  # left, top, right, bottom


def _metric_shares(
    d: DatasetSeries, metrics: tuple[str, ...]
) -> tuple[tuple[int, ...], dict[str, list[float]]]:
    """Per-snap share (0..1) of each requested metric in the snapshot total.

    Values are summed across sessions first; the denominator covers all
    of the dataset's metrics, so a subset of bands tops out below 1.
    """
    for m in metrics:
        if m not in d.metric_names:
            raise MissingMetric(f"metric {m!r} not in dataset")
    snap_ids = d.snap_ids
    shares: dict[str, list[float]] = {m: [] for m in metrics}
    for snap_id in snap_ids:
        sessions = d.sessions_at(snap_id)
        total = math.fsum(s.metrics.total() for s in sessions)
        for m in metrics:
            value = math.fsum(s.metrics.get(m) for s in sessions)
            shares[m].append(value / total if total > 0 else 0.0)
    return snap_ids, shares


def _chart_header(kind: str) -> list[str]:
    w, h = _CHART_CANVAS
    left, top, right, bottom = _CHART_MARGINS
    plot_w = w - left - right
    plot_h = h - top - bottom
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{w}" height="{h}" viewBox="0 0 {w} {h}" class="{kind}">',
        f'<rect class="bg" x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
        f'<rect class="plot-border" x="{left}" y="{top}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#333333" stroke-width="1"/>',
    ]
    for frac, label in ((0.0, "0%"), (0.5, "50%"), (1.0, "100%")):
        y = top + plot_h * (1.0 - frac)
        parts.append(
            f'<text class="y-tick" x="{left - 8}" y="{_fmt(y + 4)}" '
            f'font-family="sans-serif" font-size="12" text-anchor="end" '
            f'fill="#333333">{label}</text>'
        )
    return parts


def _legend(metrics: tuple[str, ...]) -> list[str]:
    w, _ = _CHART_CANVAS
    left, top, right, _ = _CHART_MARGINS
    x = w - right + 14
    parts = ['<g class="legend">']
    for i, m in enumerate(metrics):
        y = top + 10 + i * 22
        parts.append(
            f'<rect class="legend-swatch" x="{x}" y="{y}" width="14" height="14" '
            f'fill="{PALETTE[i % len(PALETTE)]}"/>'
        )
        parts.append(
            f'<text class="legend-label" x="{x + 20}" y="{y + 12}" '
            f'font-family="sans-serif" font-size="13" fill="#333333">{escape(m)}</text>'
        )
    parts.append("</g>")
    return parts


def stacked_chart(d: DatasetSeries, metrics: list[str] | tuple[str, ...]) -> bytes:
    """Stacked bar chart of metric shares per snapshot, first metric at
    the bottom of the stack."""
    metrics = tuple(metrics)
    snap_ids, shares = _metric_shares(d, metrics)
    left, top, right, bottom = _CHART_MARGINS
    w, h = _CHART_CANVAS
    plot_w = w - left - right
    plot_h = h - top - bottom

    parts = _chart_header("stacked-chart")
    parts.append('<g class="bands">')
    count = max(len(snap_ids), 1)
    bar_w = plot_w / count
    for j, snap_id in enumerate(snap_ids):
        x = left + j * bar_w
        base = 0.0
        for i, m in enumerate(metrics):
            frac = shares[m][j]
            y_top = top + plot_h * (1.0 - base - frac)
            parts.append(
                f'<rect class="band" data-metric="{escape(m)}" data-snap="{snap_id}" '
                f'x="{_fmt(x)}" y="{_fmt(y_top)}" width="{_fmt(bar_w)}" '
                f'height="{_fmt(plot_h * frac)}" fill="{PALETTE[i % len(PALETTE)]}"/>'
            )
            base += frac
    parts.append("</g>")
    parts.extend(_legend(metrics))
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def timeseries_chart(d: DatasetSeries, metrics: list[str] | tuple[str, ...]) -> bytes:
    """Line chart of metric shares over snapshots, one polyline per metric."""
    metrics = tuple(metrics)
    snap_ids, shares = _metric_shares(d, metrics)
    left, top, right, bottom = _CHART_MARGINS
    w, h = _CHART_CANVAS
    plot_w = w - left - right
    plot_h = h - top - bottom

    parts = _chart_header("timeseries-chart")
    parts.append('<g class="series" fill="none" stroke-width="2">')
    count = len(snap_ids)
    for i, m in enumerate(metrics):
        pts = []
        for j in range(count):
            x = left + (plot_w / 2.0 if count == 1 else plot_w * j / (count - 1))
            y = top + plot_h * (1.0 - shares[m][j])
            pts.append(f"{_fmt(x)},{_fmt(y)}")
        parts.append(
            f'<polyline class="series-line" data-metric="{escape(m)}" '
            f'points="{" ".join(pts)}" stroke="{PALETTE[i % len(PALETTE)]}"/>'
        )
    parts.append("</g>")
    parts.extend(_legend(metrics))
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
