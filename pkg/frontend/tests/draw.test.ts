import { describe, expect, it } from "vitest";

import {
  buildScene,
  formatTooltip,
  hitTest,
  paint,
} from "../src/draw.js";
import type { Canvas2DLike, DrawCommand, Viewport } from "../src/draw.js";
import type { ProjectionResponse } from "../src/types.js";
import { baseFixture, slackFixture } from "./helpers.js";

const VIEWPORT: Viewport = { width: 800, height: 700 };

function ofKind(commands: DrawCommand[], kind: DrawCommand["kind"]): DrawCommand[] {
  return commands.filter((c) => c.kind === kind);
}

describe("buildScene on the served triangle frame", () => {
  const scene = buildScene(baseFixture, VIEWPORT);

  it("draws one dot per session with the served colors", () => {
    const dots = ofKind(scene.commands, "dot");
    expect(dots.length).toBe(60);
    const byId = new Map(
      baseFixture.sessions.map((s) => [s.session_id, s.color]),
    );
    for (const dot of dots) {
      if (dot.kind === "dot") {
        expect(dot.fill).toBe(byId.get(dot.sessionId));
      }
    }
  });

  it("draws the triangle as one closed polygon plus gridlines", () => {
    expect(ofKind(scene.commands, "polygon").length).toBe(1);
    expect(ofKind(scene.commands, "line").length).toBe(
      baseFixture.gridlines.length,
    );
    expect(baseFixture.gridlines.length).toBe(27);
  });

  it("labels every axis and shows the odometer", () => {
    const texts = ofKind(scene.commands, "text");
    const labels = texts.map((t) => (t.kind === "text" ? t.text : ""));
    expect(labels).toContain("CPU_USAGE");
    expect(labels).toContain("IDLE");
    expect(labels).toContain("DB_WAIT");
    expect(labels).toContain("1");
  });

  it("keeps every point inside the viewport", () => {
    for (const cmd of scene.commands) {
      const points =
        cmd.kind === "polygon"
          ? cmd.points
          : cmd.kind === "line"
            ? [cmd.from, cmd.to]
            : [cmd.at];
      for (const [x, y] of points) {
        expect(x).toBeGreaterThanOrEqual(0);
        expect(x).toBeLessThanOrEqual(VIEWPORT.width);
        expect(y).toBeGreaterThanOrEqual(0);
        expect(y).toBeLessThanOrEqual(VIEWPORT.height);
      }
    }
  });

  it("flips y so larger scene heights draw nearer the top", () => {
    // vertices[0] is the apex of the served triangle (scene y = 1)
    const fitApexY = (buildScene(baseFixture, VIEWPORT).commands[0] as {
      kind: "polygon";
      points: [number, number][];
    }).points;
    expect(fitApexY[0][1]).toBeLessThan(fitApexY[1][1]);
  });
});

describe("buildScene on the served tetrahedron frame", () => {
  const scene = buildScene(slackFixture, VIEWPORT);

  it("draws six edges and no polygon", () => {
    expect(slackFixture.n).toBe(4);
    expect(ofKind(scene.commands, "polygon").length).toBe(0);
    expect(ofKind(scene.commands, "line").length).toBe(6);
  });

  it("has no gridlines, matching the service", () => {
    expect(slackFixture.gridlines.length).toBe(0);
  });

  it("still draws all 60 sessions", () => {
    expect(ofKind(scene.commands, "dot").length).toBe(60);
  });
});

describe("empty frames", () => {
  it("draws outline and odometer only when no sessions exist", () => {
    const empty: ProjectionResponse = {
      ...baseFixture,
      gridlines: [],
      axis_labels: [],
      sessions: [],
    };
    const scene = buildScene(empty, VIEWPORT);
    expect(ofKind(scene.commands, "dot").length).toBe(0);
    expect(ofKind(scene.commands, "polygon").length).toBe(1);
    const texts = ofKind(scene.commands, "text");
    expect(texts.length).toBe(1);
    expect(texts[0].kind === "text" && texts[0].text).toBe("1");
  });
});

describe("hover support", () => {
  const scene = buildScene(baseFixture, VIEWPORT);

  it("hitTest finds the nearest dot within the radius", () => {
    const target = scene.hits[7];
    const hit = hitTest(scene.hits, target.x + 3, target.y - 2);
    expect(hit).not.toBeNull();
    // several sessions can share a position; the hit must be one of them
    const there = scene.hits.filter(
      (h) => Math.hypot(h.x - target.x, h.y - target.y) < 1e-9,
    );
    expect(there.map((h) => h.sessionId)).toContain(hit?.sessionId);
  });

  it("hitTest misses far away", () => {
    expect(hitTest(scene.hits, -50, -50)).toBeNull();
  });

  it("tooltip shows the shares exactly as served, 6 decimals", () => {
    const idle = baseFixture.sessions.find((s) => s.session_id === "s001");
    expect(idle).toBeDefined();
    if (!idle) {
      return;
    }
    expect(formatTooltip(idle, baseFixture.axes)).toBe(
      "s001\nCPU_USAGE 0.000000\nIDLE 1.000000\nDB_WAIT 0.000000",
    );
  });

  it("tooltip lines always carry 6 decimals", () => {
    for (const session of baseFixture.sessions.slice(0, 10)) {
      const lines = formatTooltip(session, baseFixture.axes).split("\n");
      expect(lines.length).toBe(1 + session.coords.length);
      for (const line of lines.slice(1)) {
        expect(line).toMatch(/^[A-Z_]+ \d+\.\d{6}$/);
      }
    }
  });
});

describe("paint", () => {
  it("replays the command list onto a 2d context", () => {
    const ops: string[] = [];
    const ctx: Canvas2DLike = {
      fillStyle: "",
      strokeStyle: "",
      lineWidth: 0,
      font: "",
      textAlign: "",
      globalAlpha: 1,
      fillRect: () => ops.push("fillRect"),
      beginPath: () => ops.push("beginPath"),
      moveTo: () => ops.push("moveTo"),
      lineTo: () => ops.push("lineTo"),
      closePath: () => ops.push("closePath"),
      stroke: () => ops.push("stroke"),
      fill: () => ops.push("fill"),
      arc: () => ops.push("arc"),
      fillText: (text: string) => ops.push(`fillText:${text}`),
    };
    const scene = buildScene(baseFixture, VIEWPORT);
    paint(ctx, scene);
    expect(ops[0]).toBe("fillRect");
    expect(ops.filter((o) => o === "arc").length).toBe(60);
    expect(ops).toContain("fillText:1");
    expect(ops).toContain("fillText:CPU_USAGE");
  });
});
