// End-to-end viewer behavior against captured service responses: the
// load/draw cycle, tetrahedron drag rotation, axis reassignment, playback
// wrap-around, snapshot clamping, and the error banner.

import { describe, expect, it } from "vitest";

import type { BuiltScene } from "../src/draw.js";
import type { ViewerState } from "../src/state.js";
import type { ProjectionResponse } from "../src/types.js";
import { Viewer } from "../src/viewer.js";
import { FixtureServer } from "./helpers.js";

class Recorder {
  scenes: BuiltScene[] = [];
  projections: ProjectionResponse[] = [];

  readonly draw = (scene: BuiltScene, projection: ProjectionResponse): void => {
    this.scenes.push(scene);
    this.projections.push(projection);
  };

  get lastScene(): BuiltScene {
    return this.scenes[this.scenes.length - 1];
  }

  get lastProjection(): ProjectionResponse {
    return this.projections[this.projections.length - 1];
  }
}

function makeViewer() {
  const server = new FixtureServer();
  const recorder = new Recorder();
  const banners: Array<string | null> = [];
  const states: ViewerState[] = [];
  const viewer = new Viewer({
    baseUrl: "http://test:8007",
    fetchFn: server.fetch,
    draw: recorder.draw,
    onError: (message) => banners.push(message),
    onState: (state) => states.push(state),
  });
  return { viewer, server, recorder, banners, states };
}

function dotCount(scene: BuiltScene): number {
  return scene.commands.filter((c) => c.kind === "dot").length;
}

describe("load and draw", () => {
  it("draws 60 dots from the served fig6 dataset", async () => {
    const { viewer, recorder } = makeViewer();
    await viewer.load();
    expect(recorder.scenes.length).toBe(1);
    expect(dotCount(recorder.lastScene)).toBe(60);
    expect(recorder.lastProjection.odometer).toBe("1");
  });

  it("shows gridlines by default on the triangle", async () => {
    const { viewer, recorder } = makeViewer();
    await viewer.load();
    const lines = recorder.lastScene.commands.filter((c) => c.kind === "line");
    expect(lines.length).toBe(27);
  });

  it("adopts the served axis order instead of hardcoding one", async () => {
    const { viewer } = makeViewer();
    expect(viewer.state.axes).toBeNull();
    await viewer.load();
    expect(viewer.state.axes).toEqual(["CPU_USAGE", "IDLE", "DB_WAIT"]);
    expect(viewer.state.lastN).toBe(3);
  });
});

describe("drag rotation", () => {
  it("a 720 px horizontal drag returns the tetrahedron to its start", async () => {
    const { viewer, recorder } = makeViewer();
    await viewer.load();
    await viewer.setMode("slack");
    expect(viewer.state.lastN).toBe(4);
    const before = recorder.lastScene;

    await viewer.dragBy(720, 0);

    expect(viewer.state.azimuth).toBe(0);
    expect(recorder.lastScene).not.toBe(before);
    expect(recorder.lastScene).toEqual(before);
  });

  it("tetrahedron views carry no gridlines", async () => {
    const { viewer, recorder } = makeViewer();
    await viewer.load();
    await viewer.setMode("slack");
    // six edge lines and nothing else line-shaped
    const lines = recorder.lastScene.commands.filter((c) => c.kind === "line");
    expect(lines.length).toBe(6);
    expect(recorder.lastProjection.gridlines.length).toBe(0);
  });

  it("is a no-op on the triangle view", async () => {
    const { viewer, server } = makeViewer();
    await viewer.load();
    const calls = server.projectionCalls.length;
    await viewer.dragBy(150, 40);
    expect(viewer.state.azimuth).toBe(0);
    expect(viewer.state.elevation).toBe(0);
    expect(server.projectionCalls.length).toBe(calls);
  });
});

describe("axis reassignment", () => {
  it("swapping two axes and back restores the identical scene", async () => {
    const { viewer, recorder } = makeViewer();
    await viewer.load();
    const original = recorder.lastScene;

    await viewer.swapAxes(0, 1);
    const swapped = recorder.lastScene;
    expect(swapped).not.toEqual(original);
    expect(recorder.lastProjection.axes).toEqual([
      "IDLE",
      "CPU_USAGE",
      "DB_WAIT",
    ]);
    // the fully idle session reads 1.0 on the first axis after the swap
    const idle = recorder.lastProjection.sessions.find(
      (s) => s.session_id === "s001",
    );
    expect(idle?.coords).toEqual([1, 0, 0]);

    await viewer.swapAxes(0, 1);
    expect(viewer.state.axes).toEqual(["CPU_USAGE", "IDLE", "DB_WAIT"]);
    expect(recorder.lastScene).toEqual(original);
  });
});

describe("playback", () => {
  it("wraps at the final snap", async () => {
    const { viewer, recorder } = makeViewer();
    await viewer.load();
    await viewer.goToSnap(10);
    expect(recorder.lastProjection.odometer).toBe("10");

    viewer.setPlaying(true);
    await viewer.tick();
    expect(viewer.state.snapId).toBe(1);
    expect(recorder.lastProjection.snap_id).toBe(1);
  });

  it("does nothing while paused", async () => {
    const { viewer, server } = makeViewer();
    await viewer.load();
    const calls = server.projectionCalls.length;
    await viewer.tick();
    expect(viewer.state.snapId).toBe(1);
    expect(server.projectionCalls.length).toBe(calls);
  });

  it("keeps the hover selection across frames", async () => {
    const { viewer } = makeViewer();
    await viewer.load();
    viewer.setHover("s003");
    viewer.setPlaying(true);
    await viewer.tick();
    expect(viewer.state.hoveredSessionId).toBe("s003");
  });
});

describe("snapshot clamping", () => {
  it("clamps an out-of-range snap id after a 404 and redraws", async () => {
    const { viewer, recorder, server, banners } = makeViewer();
    await viewer.load();

    await viewer.goToSnap(99);

    expect(viewer.state.snapId).toBe(10);
    expect(recorder.lastProjection.snap_id).toBe(10);
    const urls = server.projectionCalls;
    expect(urls[urls.length - 2]).toContain("/snaps/99/");
    expect(urls[urls.length - 1]).toContain("/snaps/10/");
    // the clamp is silent; the last banner update clears any message
    expect(banners[banners.length - 1]).toBeNull();
  });
});

describe("failure handling", () => {
  it("shows a non-blocking banner on connection failure", async () => {
    const { viewer, server, banners, recorder } = makeViewer();
    await viewer.load();
    expect(banners[banners.length - 1]).toBeNull();

    server.failNext = true;
    await viewer.goToSnap(10);
    expect(banners[banners.length - 1]).toContain("fetch failed");

    // the viewer stays usable; the next success clears the banner
    await viewer.refresh();
    expect(banners[banners.length - 1]).toBeNull();
    expect(recorder.lastProjection.snap_id).toBe(10);
  });

  it("draws only the newest of overlapping refreshes", async () => {
    const { viewer, recorder, server } = makeViewer();
    await viewer.load();
    const drawsBefore = recorder.scenes.length;

    await Promise.all([viewer.refresh(), viewer.refresh()]);

    expect(recorder.scenes.length).toBe(drawsBefore + 1);
    const signals = server.calls
      .filter((c) => c.url.includes("/projection"))
      .slice(-2)
      .map((c) => c.signal?.aborted);
    expect(signals).toEqual([true, false]);
  });
});
