// Shapes of the service's JSON responses. The viewer consumes these
// verbatim: every coordinate it draws was computed server-side.

/** One session's dot in a projected scene. */
export interface SessionDot {
  session_id: string;
  /** Barycentric shares in axis order, rounded to 6 decimals as served. */
  coords: number[];
  /** Projected 2D position in scene space (y up). */
  screen: number[];
  /** Palette color assigned by the service. */
  color: string;
}

export interface AxisLabel {
  name: string;
  at: number[];
}

/** Body of GET /api/snaps/{id}/projection. */
export interface ProjectionResponse {
  snap_id: number;
  /** Number of barycentric axes: 3 draws a triangle, 4 a tetrahedron. */
  n: number;
  spec: string;
  mode: string;
  azimuth: number;
  elevation: number;
  axes: string[];
  /** Suggested canvas size [width, height]. */
  canvas: number[];
  /** Projected simplex vertices in scene space. */
  vertices: number[][];
  /** Gridline segments as [[x1,y1],[x2,y2]]; empty for tetrahedra. */
  gridlines: number[][][];
  axis_labels: AxisLabel[];
  /** Frame counter text drawn beneath the simplex. */
  odometer: string;
  sessions: SessionDot[];
}

/** Body of GET /api/meta. */
export interface MetaResponse {
  label: string | null;
  metrics: string[];
  sample_interval_ms: number;
  snap_range: [number, number] | null;
  snap_ids: number[];
  session_ids: string[];
  specs: string[];
  modes: string[];
}

/** Structured error envelope on 4xx responses. */
export interface ErrorBody {
  error: {
    code: string;
    detail: string;
  };
}
