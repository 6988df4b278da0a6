// Test doubles around the captured service fixtures. The stub routes
// projection requests by their logical parameters (snapshot, mode,
// normalized azimuth, axis order) so tests are not coupled to the exact
// query-string byte layout.

import type { FetchLike, ResponseLike } from "../src/api.js";
import type { MetaResponse, ProjectionResponse } from "../src/types.js";

import metaFixtureJson from "./fixtures/meta_fig6.json";
import baseFixtureJson from "./fixtures/projection_fig6_snap1.json";
import swappedFixtureJson from "./fixtures/projection_fig6_snap1_swapped.json";
import lastFixtureJson from "./fixtures/projection_fig6_snap10.json";
import slackFixtureJson from "./fixtures/projection_fig6_snap1_slack.json";
import notFoundJson from "./fixtures/error_snap_missing.json";

export const metaFixture = metaFixtureJson as unknown as MetaResponse;
export const baseFixture = baseFixtureJson as unknown as ProjectionResponse;
export const swappedFixture = swappedFixtureJson as unknown as ProjectionResponse;
export const lastFixture = lastFixtureJson as unknown as ProjectionResponse;
export const slackFixture = slackFixtureJson as unknown as ProjectionResponse;

export const DEFAULT_AXES = "CPU_USAGE,IDLE,DB_WAIT";
export const SWAPPED_AXES = "IDLE,CPU_USAGE,DB_WAIT";
export const SLACK_AXES = "CPU_USAGE,IDLE,DB_WAIT,UNACCOUNTED";

export function jsonResponse(status: number, body: unknown): ResponseLike {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: () => Promise.resolve(body),
  };
}

export interface RecordedCall {
  url: string;
  signal: AbortSignal | undefined;
}

/**
 * Serves the captured fig6 responses the way the live service would.
 * Unknown snapshots get the captured 404 body; a projection request with
 * parameters no fixture covers is a test bug and throws.
 */
export class FixtureServer {
  calls: RecordedCall[] = [];
  /** When set, the next fetch rejects once with a network error. */
  failNext = false;

  readonly fetch: FetchLike = async (url, init) => {
    this.calls.push({ url, signal: init?.signal });
    if (this.failNext) {
      this.failNext = false;
      throw new TypeError("fetch failed");
    }
    if (init?.signal?.aborted) {
      throw abortError();
    }
    // yield once so an in-flight request can be superseded before resolving
    await Promise.resolve();
    if (init?.signal?.aborted) {
      throw abortError();
    }
    return this.route(url);
  };

  get projectionCalls(): string[] {
    return this.calls
      .map((c) => c.url)
      .filter((u) => u.includes("/projection"));
  }

  private route(url: string): ResponseLike {
    const parsed = new URL(url);
    if (parsed.pathname === "/api/meta") {
      return jsonResponse(200, metaFixtureJson);
    }
    const match = parsed.pathname.match(/^\/api\/snaps\/(-?\d+)\/projection$/);
    if (!match) {
      throw new Error(`no route for ${url}`);
    }
    const snapId = Number(match[1]);
    if (!metaFixture.snap_ids.includes(snapId)) {
      return jsonResponse(404, notFoundJson);
    }
    const mode = parsed.searchParams.get("mode") ?? "strict";
    const az = Number(parsed.searchParams.get("az") ?? "0");
    const azNorm = ((az % 360) + 360) % 360;
    const axes = parsed.searchParams.get("axes");

    if (mode === "strict" && snapId === 1 && azNorm === 0) {
      if (axes === null || axes === DEFAULT_AXES) {
        return jsonResponse(200, baseFixtureJson);
      }
      if (axes === SWAPPED_AXES) {
        return jsonResponse(200, swappedFixtureJson);
      }
    }
    if (mode === "strict" && snapId === 10 && azNorm === 0) {
      if (axes === null || axes === DEFAULT_AXES) {
        return jsonResponse(200, lastFixtureJson);
      }
    }
    if (mode === "slack" && snapId === 1 && azNorm === 0) {
      if (axes === null || axes === SLACK_AXES) {
        return jsonResponse(200, slackFixtureJson);
      }
    }
    throw new Error(`no fixture for ${url}`);
  }
}

function abortError(): Error {
  const err = new Error("request aborted");
  err.name = "AbortError";
  return err;
}
