// Scene drawing. The service already projected everything to 2D scene
// space; this module only fits those points into the canvas viewport and
// emits drawing commands. Keeping the command list as data lets tests
// assert on exactly what would be painted.

import type { ProjectionResponse, SessionDot } from "./types.js";

export const DOT_RADIUS_PX = 6;
export const DOT_OPACITY = 0.85;
export const FRAME_COLOR = "#333333";
export const GRID_COLOR = "#bbbbbb";
export const TEXT_COLOR = "#333333";
export const BACKGROUND_COLOR = "#ffffff";

export interface Viewport {
  width: number;
  height: number;
}

export type DrawCommand =
  | { kind: "polygon"; points: [number, number][]; stroke: string; width: number }
  | {
      kind: "line";
      from: [number, number];
      to: [number, number];
      stroke: string;
      width: number;
    }
  | {
      kind: "dot";
      at: [number, number];
      radius: number;
      fill: string;
      alpha: number;
      sessionId: string;
    }
  | {
      kind: "text";
      at: [number, number];
      text: string;
      font: string;
      fill: string;
      align: "center" | "left" | "right";
    };

/** A dot's canvas position, kept for hover hit-testing. */
export interface HitTarget {
  sessionId: string;
  x: number;
  y: number;
  dot: SessionDot;
}

export interface BuiltScene {
  commands: DrawCommand[];
  hits: HitTarget[];
  viewport: Viewport;
}

/**
 * Uniform fit of the scene's outline box into the viewport with a 10%
 * margin on each side, y flipped to screen orientation. Matches the
 * service's own SVG framing so both renderings agree visually.
 */
export function makeFit(
  projection: ProjectionResponse,
  viewport: Viewport,
): (p: number[]) => [number, number] {
  const xs = projection.vertices.map((v) => v[0]);
  const ys = projection.vertices.map((v) => v[1]);
  const minX = xs.length ? Math.min(...xs) : 0;
  const maxX = xs.length ? Math.max(...xs) : 1;
  const minY = ys.length ? Math.min(...ys) : 0;
  const maxY = ys.length ? Math.max(...ys) : 1;
  const spanX = Math.max(maxX - minX, 1e-12);
  const spanY = Math.max(maxY - minY, 1e-12);
  const scale = Math.min(
    (0.8 * viewport.width) / spanX,
    (0.8 * viewport.height) / spanY,
  );
  const ox = (viewport.width - spanX * scale) / 2 - minX * scale;
  const oy = (viewport.height - spanY * scale) / 2 - minY * scale;
  return (p: number[]) => [
    ox + p[0] * scale,
    viewport.height - (oy + p[1] * scale),
  ];
}

/**
 * Build the command list for one projected frame: simplex frame first,
 * then gridlines, dots, axis labels, and the odometer.
 */
export function buildScene(
  projection: ProjectionResponse,
  viewport: Viewport,
): BuiltScene {
  const fit = makeFit(projection, viewport);
  const commands: DrawCommand[] = [];
  const hits: HitTarget[] = [];

  const corners = projection.vertices.map(fit);
  if (projection.n === 3) {
    commands.push({
      kind: "polygon",
      points: corners,
      stroke: FRAME_COLOR,
      width: 1.5,
    });
  } else {
    // tetrahedron: every vertex pair is an edge
    for (let i = 0; i < corners.length; i++) {
      for (let j = i + 1; j < corners.length; j++) {
        commands.push({
          kind: "line",
          from: corners[i],
          to: corners[j],
          stroke: FRAME_COLOR,
          width: 1.5,
        });
      }
    }
  }

  for (const [a, b] of projection.gridlines) {
    commands.push({
      kind: "line",
      from: fit(a),
      to: fit(b),
      stroke: GRID_COLOR,
      width: 0.75,
    });
  }

  for (const dot of projection.sessions) {
    const [x, y] = fit(dot.screen);
    commands.push({
      kind: "dot",
      at: [x, y],
      radius: DOT_RADIUS_PX,
      fill: dot.color,
      alpha: DOT_OPACITY,
      sessionId: dot.session_id,
    });
    hits.push({ sessionId: dot.session_id, x, y, dot });
  }

  for (const label of projection.axis_labels) {
    commands.push({
      kind: "text",
      at: fit(label.at),
      text: label.name,
      font: "16px sans-serif",
      fill: TEXT_COLOR,
      align: "center",
    });
  }

  commands.push({
    kind: "text",
    at: [viewport.width / 2, viewport.height - 18],
    text: projection.odometer,
    font: "22px monospace",
    fill: TEXT_COLOR,
    align: "center",
  });

  return { commands, hits, viewport };
}

/** The 2D-context subset the painter uses; a plain stub satisfies it. */
export interface Canvas2DLike {
  fillStyle: string;
  strokeStyle: string;
  lineWidth: number;
  font: string;
  textAlign: string;
  globalAlpha: number;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  stroke(): void;
  fill(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fillText(text: string, x: number, y: number): void;
}

/** Replay a command list onto a 2D context. */
export function paint(ctx: Canvas2DLike, scene: BuiltScene): void {
  ctx.globalAlpha = 1;
  ctx.fillStyle = BACKGROUND_COLOR;
  ctx.fillRect(0, 0, scene.viewport.width, scene.viewport.height);
  for (const cmd of scene.commands) {
    switch (cmd.kind) {
      case "polygon": {
        ctx.globalAlpha = 1;
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = cmd.width;
        ctx.beginPath();
        cmd.points.forEach(([x, y], i) => {
          if (i === 0) {
            ctx.moveTo(x, y);
          } else {
            ctx.lineTo(x, y);
          }
        });
        ctx.closePath();
        ctx.stroke();
        break;
      }
      case "line": {
        ctx.globalAlpha = 1;
        ctx.strokeStyle = cmd.stroke;
        ctx.lineWidth = cmd.width;
        ctx.beginPath();
        ctx.moveTo(cmd.from[0], cmd.from[1]);
        ctx.lineTo(cmd.to[0], cmd.to[1]);
        ctx.stroke();
        break;
      }
      case "dot": {
        ctx.globalAlpha = cmd.alpha;
        ctx.fillStyle = cmd.fill;
        ctx.beginPath();
        ctx.arc(cmd.at[0], cmd.at[1], cmd.radius, 0, Math.PI * 2);
        ctx.fill();
        break;
      }
      case "text": {
        ctx.globalAlpha = 1;
        ctx.fillStyle = cmd.fill;
        ctx.font = cmd.font;
        ctx.textAlign = cmd.align;
        ctx.fillText(cmd.text, cmd.at[0], cmd.at[1]);
        break;
      }
    }
  }
  ctx.globalAlpha = 1;
}

/** Nearest dot within `radius` canvas pixels of (x, y), or null. */
export function hitTest(
  hits: HitTarget[],
  x: number,
  y: number,
  radius = 10,
): HitTarget | null {
  let best: HitTarget | null = null;
  let bestDist = radius;
  for (const hit of hits) {
    const dist = Math.hypot(hit.x - x, hit.y - y);
    if (dist <= bestDist) {
      best = hit;
      bestDist = dist;
    }
  }
  return best;
}

/**
 * Tooltip text for a hovered session: the barycentric shares exactly as
 * served, always shown with 6 decimals.
 */
export function formatTooltip(dot: SessionDot, axes: string[]): string {
  const lines = [dot.session_id];
  dot.coords.forEach((c, i) => {
    const name = axes[i] ?? `axis ${i}`;
    lines.push(`${name} ${c.toFixed(6)}`);
  });
  return lines.join("\n");
}
