"""Session-metric simplex visualization and time-accounting audits.

Compresses N simultaneous per-session metrics into barycentric shares,
renders them as animated triangle or tetrahedron scenes, and audits the
metrics for unaccounted or double-counted time against the sample
interval.
"""

from .audit import (
    DEFAULT_TOLERANCE,
    AuditFinding,
    AuditReport,
    TimeAccountingRecord,
    audit_series,
    audit_snapshot,
    classify_residual,
    unaccounted_time,
)
from .errors import SimplexVizError
from .geometry import (
    BarycentricPoint,
    CartesianPoint,
    SimplexEmbedding,
    ViewRotation,
    barycentric_from_shares,
    embed,
    face_distances,
    rotate_project,
    simplex_embedding,
    trilinear_gridlines,
)
from .ingest import dataset_to_bytes, read_dataset, write_dataset
from .model import (
    AggregationSpec,
    AxisAssignment,
    DatasetSeries,
    MetricVector,
    SessionSnapshot,
    WaitClassTaxonomy,
    aggregate,
    builtin_spec,
    builtin_spec_names,
    builtin_taxonomy,
    validate_view,
)
from .render import (
    FrameScene,
    SceneDot,
    ViewConfig,
    animate,
    build_view,
    default_axes,
    frame_to_svg,
    jitter_overlaps,
    project_frame,
    render_frame_svg,
    session_color,
    stacked_chart,
    timeseries_chart,
)
from .scenarios import (
    SCENARIO_NAMES,
    ScenarioSpec,
    generate_scenario,
    generate_with_events,
    scenario_catalog,
)
from .service import create_app, serve

__version__ = "0.1.0"

__all__ = [
    "AggregationSpec",
    "AuditFinding",
    "AuditReport",
    "AxisAssignment",
    "BarycentricPoint",
    "CartesianPoint",
    "DEFAULT_TOLERANCE",
    "DatasetSeries",
    "FrameScene",
    "MetricVector",
    "SCENARIO_NAMES",
    "SceneDot",
    "ScenarioSpec",
    "SessionSnapshot",
    "SimplexEmbedding",
    "SimplexVizError",
    "TimeAccountingRecord",
    "ViewConfig",
    "ViewRotation",
    "WaitClassTaxonomy",
    "aggregate",
    "animate",
    "audit_series",
    "audit_snapshot",
    "barycentric_from_shares",
    "build_view",
    "builtin_spec",
    "builtin_spec_names",
    "builtin_taxonomy",
    "classify_residual",
    "create_app",
    "dataset_to_bytes",
    "default_axes",
    "embed",
    "face_distances",
    "frame_to_svg",
    "generate_scenario",
    "generate_with_events",
    "jitter_overlaps",
    "project_frame",
    "read_dataset",
    "render_frame_svg",
    "rotate_project",
    "scenario_catalog",
    "serve",
    "session_color",
    "simplex_embedding",
    "stacked_chart",
    "timeseries_chart",
    "trilinear_gridlines",
    "unaccounted_time",
    "validate_view",
    "write_dataset",
]
