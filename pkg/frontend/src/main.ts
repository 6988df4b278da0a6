// Browser entry point: binds the viewer controller to the page's canvas
// and controls. All geometry arrives from the service; this file only
// routes DOM events in and paint commands out.

import { formatTooltip, hitTest, paint } from "./draw.js";
import type { Canvas2DLike } from "./draw.js";
import { Viewer } from "./viewer.js";
import type { ViewerState } from "./state.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  if (fromQuery) {
    return fromQuery;
  }
  const host = window.location.hostname || "127.0.0.1";
  return `http://${host}:8007`;
}

function main(): void {
  const canvas = byId<HTMLCanvasElement>("scene");
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    throw new Error("2d canvas context unavailable");
  }
  const banner = byId<HTMLDivElement>("banner");
  const tooltip = byId<HTMLDivElement>("tooltip");
  const specSelect = byId<HTMLSelectElement>("spec");
  const modeSelect = byId<HTMLSelectElement>("mode");
  const snapSlider = byId<HTMLInputElement>("snap");
  const snapLabel = byId<HTMLSpanElement>("snap-label");
  const playButton = byId<HTMLButtonElement>("play");
  const intervalInput = byId<HTMLInputElement>("interval");
  const gridCheckbox = byId<HTMLInputElement>("grid");
  const jitterInput = byId<HTMLInputElement>("jitter");
  const axisA = byId<HTMLSelectElement>("axis-a");
  const axisB = byId<HTMLSelectElement>("axis-b");
  const swapButton = byId<HTMLButtonElement>("swap");
  const anglesLabel = byId<HTMLSpanElement>("angles");

  let playTimer: number | null = null;

  const viewer = new Viewer({
    baseUrl: apiBase(),
    fetchFn: (url, init) => fetch(url, init),
    viewport: { width: canvas.width, height: canvas.height },
    draw: (scene) => {
      paint(ctx as unknown as Canvas2DLike, scene);
      anchorTooltip();
    },
    onError: (message) => {
      banner.textContent = message ?? "";
      banner.style.display = message ? "block" : "none";
    },
    onState: syncControls,
  });

  function syncControls(state: ViewerState): void {
    if (snapSlider.value !== String(state.snapId)) {
      snapSlider.value = String(state.snapId);
    }
    snapLabel.textContent = String(state.snapId);
    if (specSelect.value !== state.spec) {
      specSelect.value = state.spec;
    }
    if (modeSelect.value !== state.mode) {
      modeSelect.value = state.mode;
    }
    gridCheckbox.checked = state.gridlines;
    playButton.textContent = state.playback.playing ? "Pause" : "Play";
    anglesLabel.textContent = `az ${state.azimuth.toFixed(1)} / el ${state.elevation.toFixed(1)}`;
    const axes = state.axes ?? [];
    for (const select of [axisA, axisB]) {
      if (select.options.length !== axes.length) {
        select.innerHTML = "";
        axes.forEach((name, i) => {
          const option = document.createElement("option");
          option.value = String(i);
          option.textContent = name;
          select.appendChild(option);
        });
      } else {
        axes.forEach((name, i) => {
          select.options[i].textContent = name;
        });
      }
    }
    if (axisB.options.length > 1 && axisA.value === axisB.value) {
      axisB.value = "1";
    }
  }

  // pointer position in canvas pixel coordinates
  function canvasPoint(ev: PointerEvent): [number, number] {
    const rect = canvas.getBoundingClientRect();
    return [
      ((ev.clientX - rect.left) * canvas.width) / rect.width,
      ((ev.clientY - rect.top) * canvas.height) / rect.height,
    ];
  }

  function anchorTooltip(): void {
    const scene = viewer.lastScene;
    const projection = viewer.lastProjection;
    const hovered = viewer.state.hoveredSessionId;
    if (!scene || !projection || !hovered) {
      tooltip.style.display = "none";
      return;
    }
    const hit = scene.hits.find((h) => h.sessionId === hovered);
    if (!hit) {
      tooltip.style.display = "none";
      return;
    }
    tooltip.textContent = formatTooltip(hit.dot, projection.axes);
    const rect = canvas.getBoundingClientRect();
    tooltip.style.left = `${rect.left + window.scrollX + (hit.x * rect.width) / canvas.width + 12}px`;
    tooltip.style.top = `${rect.top + window.scrollY + (hit.y * rect.height) / canvas.height + 12}px`;
    tooltip.style.display = "block";
  }

  let dragging = false;
  let lastX = 0;
  let lastY = 0;

  canvas.addEventListener("pointerdown", (ev) => {
    dragging = true;
    [lastX, lastY] = canvasPoint(ev);
    canvas.setPointerCapture(ev.pointerId);
  });

  canvas.addEventListener("pointermove", (ev) => {
    const [x, y] = canvasPoint(ev);
    if (dragging) {
      const dx = x - lastX;
      const dy = y - lastY;
      lastX = x;
      lastY = y;
      void viewer.dragBy(dx, dy);
      return;
    }
    const scene = viewer.lastScene;
    const hit = scene ? hitTest(scene.hits, x, y) : null;
    viewer.setHover(hit ? hit.sessionId : null);
    anchorTooltip();
  });

  canvas.addEventListener("pointerup", () => {
    dragging = false;
  });
  canvas.addEventListener("pointerleave", () => {
    dragging = false;
    viewer.setHover(null);
    anchorTooltip();
  });

  specSelect.addEventListener("change", () => {
    void viewer.setSpec(specSelect.value);
  });
  modeSelect.addEventListener("change", () => {
    void viewer.setMode(modeSelect.value);
  });
  snapSlider.addEventListener("input", () => {
    void viewer.goToSnap(Number(snapSlider.value));
  });
  gridCheckbox.addEventListener("change", () => {
    void viewer.setGridlines(gridCheckbox.checked);
  });
  jitterInput.addEventListener("change", () => {
    void viewer.setJitter(Number(jitterInput.value));
  });
  swapButton.addEventListener("click", () => {
    void viewer.swapAxes(Number(axisA.value), Number(axisB.value));
  });

  function restartPlayback(): void {
    if (playTimer !== null) {
      window.clearInterval(playTimer);
      playTimer = null;
    }
    if (viewer.state.playback.playing) {
      playTimer = window.setInterval(() => {
        void viewer.tick();
      }, viewer.state.playback.frameIntervalMs);
    }
  }

  playButton.addEventListener("click", () => {
    viewer.setPlaying(!viewer.state.playback.playing);
    restartPlayback();
  });
  intervalInput.addEventListener("change", () => {
    viewer.setFrameInterval(Number(intervalInput.value));
    restartPlayback();
  });

  void viewer.load().then(() => {
    const meta = viewer.meta;
    if (!meta) {
      return;
    }
    specSelect.innerHTML = "";
    for (const spec of meta.specs) {
      const option = document.createElement("option");
      option.value = spec;
      option.textContent = spec;
      specSelect.appendChild(option);
    }
    specSelect.value = viewer.state.spec;
    modeSelect.innerHTML = "";
    for (const mode of meta.modes) {
      const option = document.createElement("option");
      option.value = mode;
      option.textContent = mode;
      modeSelect.appendChild(option);
    }
    modeSelect.value = viewer.state.mode;
    if (meta.snap_range) {
      snapSlider.min = String(meta.snap_range[0]);
      snapSlider.max = String(meta.snap_range[1]);
    }
    syncControls(viewer.state);
  });
}

main();
