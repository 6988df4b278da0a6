// Viewer state and its pure transitions. Nothing here touches the DOM or
// the network, so every interaction rule is unit-testable in isolation.

/** Degrees of rotation per pixel of mouse drag. */
export const DRAG_DEGREES_PER_PIXEL = 0.5;

/** Trilinear gridline spacing requested when gridlines are on. */
export const GRID_STEP = 0.1;

export interface PlaybackState {
  playing: boolean;
  frameIntervalMs: number;
}

export interface ViewerState {
  snapId: number;
  /** Degrees in [0, 360). */
  azimuth: number;
  /** Degrees in [-90, 90]. */
  elevation: number;
  spec: string;
  mode: string;
  /**
   * Axis order sent to the service, or null to accept the server default.
   * Populated from the first projection response so the client never
   * hardcodes per-spec orderings.
   */
  axes: string[] | null;
  gridlines: boolean;
  jitter: number;
  playback: PlaybackState;
  hoveredSessionId: string | null;
  /** Dimension of the last drawn scene; drag rotation needs 4. */
  lastN: number | null;
}

export function createViewerState(snapId: number, spec: string): ViewerState {
  return {
    snapId,
    azimuth: 0,
    elevation: 0,
    spec,
    mode: "strict",
    axes: null,
    gridlines: true,
    jitter: 0,
    playback: { playing: false, frameIntervalMs: 500 },
    hoveredSessionId: null,
    lastN: null,
  };
}

/** Wrap an angle into [0, 360). */
export function normalizeAzimuth(deg: number): number {
  const wrapped = deg % 360;
  return wrapped < 0 ? wrapped + 360 : wrapped;
}

/** Clamp elevation into [-90, 90]. */
export function clampElevation(deg: number): number {
  return Math.min(90, Math.max(-90, deg));
}

/**
 * Apply a mouse drag of (dx, dy) pixels. Only a tetrahedron view rotates;
 * on a triangle the drag is a no-op and the same state is returned.
 */
export function handleDrag(state: ViewerState, dxPx: number, dyPx: number): ViewerState {
  if (state.lastN !== 4) {
    return state;
  }
  if (dxPx === 0 && dyPx === 0) {
    return state;
  }
  return {
    ...state,
    azimuth: normalizeAzimuth(state.azimuth + dxPx * DRAG_DEGREES_PER_PIXEL),
    elevation: clampElevation(state.elevation + dyPx * DRAG_DEGREES_PER_PIXEL),
  };
}

/**
 * Advance playback by one snapshot, wrapping past the last id back to the
 * first. Paused playback leaves the state untouched.
 */
export function playbackTick(state: ViewerState, snapIds: number[]): ViewerState {
  if (!state.playback.playing || snapIds.length === 0) {
    return state;
  }
  const idx = snapIds.indexOf(state.snapId);
  const next = idx < 0 ? snapIds[0] : snapIds[(idx + 1) % snapIds.length];
  return { ...state, snapId: next };
}

/** Swap two axis positions; out-of-range indices leave the state as-is. */
export function swapAxes(state: ViewerState, i: number, j: number): ViewerState {
  const axes = state.axes;
  if (!axes || i === j) {
    return state;
  }
  if (i < 0 || j < 0 || i >= axes.length || j >= axes.length) {
    return state;
  }
  const next = axes.slice();
  [next[i], next[j]] = [next[j], next[i]];
  return { ...state, axes: next };
}

/** Clamp a snapshot id into the dataset's range, landing on a real id. */
export function clampSnapId(snapId: number, snapIds: number[]): number {
  if (snapIds.length === 0) {
    return snapId;
  }
  const first = snapIds[0];
  const last = snapIds[snapIds.length - 1];
  const clamped = Math.min(last, Math.max(first, snapId));
  if (snapIds.includes(clamped)) {
    return clamped;
  }
  let nearest = first;
  for (const id of snapIds) {
    if (Math.abs(id - clamped) < Math.abs(nearest - clamped)) {
      nearest = id;
    }
  }
  return nearest;
}

/** Changing spec or mode invalidates the adopted axis order. */
export function withSpec(state: ViewerState, spec: string): ViewerState {
  if (spec === state.spec) {
    return state;
  }
  return { ...state, spec, axes: null, lastN: null };
}

export function withMode(state: ViewerState, mode: string): ViewerState {
  if (mode === state.mode) {
    return state;
  }
  return { ...state, mode, axes: null, lastN: null };
}

/**
 * Query parameters for the projection endpoint, in a fixed order so equal
 * states produce byte-equal URLs.
 */
export function projectionParams(state: ViewerState): URLSearchParams {
  const params = new URLSearchParams();
  params.set("spec", state.spec);
  params.set("mode", state.mode);
  params.set("az", String(state.azimuth));
  params.set("el", String(state.elevation));
  params.set("grid", state.gridlines ? String(GRID_STEP) : "0");
  params.set("jitter", String(state.jitter));
  if (state.axes) {
    params.set("axes", state.axes.join(","));
  }
  return params;
}
