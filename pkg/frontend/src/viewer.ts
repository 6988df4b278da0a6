// Viewer controller: owns the state, talks to the service, and hands
// built scenes to a draw sink. DOM-free so the whole interaction loop is
// testable against a stubbed fetch.

import { ApiClient, ApiError, RequestSuperseded } from "./api.js";
import type { FetchLike } from "./api.js";
import { buildScene } from "./draw.js";
import type { BuiltScene, Viewport } from "./draw.js";
import {
  clampSnapId,
  createViewerState,
  handleDrag,
  playbackTick,
  projectionParams,
  swapAxes,
  withMode,
  withSpec,
} from "./state.js";
import type { ViewerState } from "./state.js";
import type { MetaResponse, ProjectionResponse } from "./types.js";

export interface ViewerOptions {
  baseUrl: string;
  fetchFn: FetchLike;
  viewport?: Viewport;
  /** Sink for every freshly built scene. */
  draw: (scene: BuiltScene, projection: ProjectionResponse, state: ViewerState) => void;
  /** Non-blocking error banner: called with a message, or null to clear. */
  onError?: (message: string | null) => void;
  /** Called after every state change, for control synchronization. */
  onState?: (state: ViewerState) => void;
}

const DEFAULT_VIEWPORT: Viewport = { width: 800, height: 700 };

export class Viewer {
  state: ViewerState;
  meta: MetaResponse | null = null;
  lastProjection: ProjectionResponse | null = null;
  lastScene: BuiltScene | null = null;

  private readonly api: ApiClient;
  private readonly viewport: Viewport;
  private readonly options: ViewerOptions;

  constructor(options: ViewerOptions) {
    this.options = options;
    this.api = new ApiClient(options.baseUrl, options.fetchFn);
    this.viewport = options.viewport ?? DEFAULT_VIEWPORT;
    this.state = createViewerState(1, "session3");
  }

  /** Fetch metadata, pick the first snapshot, and draw it. */
  async load(): Promise<void> {
    try {
      this.meta = await this.api.meta();
    } catch (err) {
      this.reportError(err);
      return;
    }
    const snapIds = this.meta.snap_ids;
    if (snapIds.length > 0) {
      this.setState({ ...this.state, snapId: snapIds[0] });
    }
    await this.refresh();
  }

  /**
   * Fetch the projection for the current state and draw it. An unknown
   * snapshot id (404) is clamped into the dataset's range and retried
   * once; connection failures surface through the error banner without
   * blocking further interaction.
   */
  async refresh(): Promise<void> {
    let projection: ProjectionResponse;
    try {
      projection = await this.api.projection(
        this.state.snapId,
        projectionParams(this.state),
      );
    } catch (err) {
      if (err instanceof RequestSuperseded) {
        return;
      }
      if (err instanceof ApiError && err.status === 404 && this.meta) {
        const clamped = clampSnapId(this.state.snapId, this.meta.snap_ids);
        if (clamped !== this.state.snapId) {
          this.setState({ ...this.state, snapId: clamped });
          await this.refresh();
          return;
        }
      }
      this.reportError(err);
      return;
    }
    this.setState({
      ...this.state,
      axes: projection.axes.slice(),
      lastN: projection.n,
    });
    this.lastProjection = projection;
    this.lastScene = buildScene(projection, this.viewport);
    this.options.onError?.(null);
    this.options.draw(this.lastScene, projection, this.state);
  }

  /** Mouse drag in canvas pixels; rotates tetrahedron views only. */
  async dragBy(dxPx: number, dyPx: number): Promise<void> {
    const next = handleDrag(this.state, dxPx, dyPx);
    if (next === this.state) {
      return;
    }
    this.setState(next);
    await this.refresh();
  }

  /** Advance playback by one snapshot, wrapping at the end. */
  async tick(): Promise<void> {
    if (!this.meta) {
      return;
    }
    const next = playbackTick(this.state, this.meta.snap_ids);
    if (next === this.state) {
      return;
    }
    this.setState(next);
    await this.refresh();
  }

  async goToSnap(snapId: number): Promise<void> {
    if (snapId === this.state.snapId) {
      return;
    }
    this.setState({ ...this.state, snapId });
    await this.refresh();
  }

  async setSpec(spec: string): Promise<void> {
    const next = withSpec(this.state, spec);
    if (next === this.state) {
      return;
    }
    this.setState(next);
    await this.refresh();
  }

  async setMode(mode: string): Promise<void> {
    const next = withMode(this.state, mode);
    if (next === this.state) {
      return;
    }
    this.setState(next);
    await this.refresh();
  }

  /** Swap two axis slots and redraw; swap twice to restore the scene. */
  async swapAxes(i: number, j: number): Promise<void> {
    const next = swapAxes(this.state, i, j);
    if (next === this.state) {
      return;
    }
    this.setState(next);
    await this.refresh();
  }

  async setGridlines(on: boolean): Promise<void> {
    if (on === this.state.gridlines) {
      return;
    }
    this.setState({ ...this.state, gridlines: on });
    await this.refresh();
  }

  async setJitter(radius: number): Promise<void> {
    if (radius === this.state.jitter || radius < 0) {
      return;
    }
    this.setState({ ...this.state, jitter: radius });
    await this.refresh();
  }

  setPlaying(playing: boolean): void {
    if (playing === this.state.playback.playing) {
      return;
    }
    this.setState({
      ...this.state,
      playback: { ...this.state.playback, playing },
    });
  }

  setFrameInterval(ms: number): void {
    if (ms <= 0 || ms === this.state.playback.frameIntervalMs) {
      return;
    }
    this.setState({
      ...this.state,
      playback: { ...this.state.playback, frameIntervalMs: ms },
    });
  }

  /** Hover selection; persists across frames until changed. */
  setHover(sessionId: string | null): void {
    if (sessionId === this.state.hoveredSessionId) {
      return;
    }
    this.setState({ ...this.state, hoveredSessionId: sessionId });
  }

  private setState(next: ViewerState): void {
    this.state = next;
    this.options.onState?.(next);
  }

  private reportError(err: unknown): void {
    const message = err instanceof Error ? err.message : String(err);
    this.options.onError?.(message);
  }
}
