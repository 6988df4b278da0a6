// HTTP client for the projection service. At most one projection request
// is in flight: starting a new one aborts its predecessor, so a fast drag
// can never draw stale frames out of order.

import type { ErrorBody, MetaResponse, ProjectionResponse } from "./types.js";

/** Minimal slice of fetch/Response the client needs; easy to stub. */
export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { signal?: AbortSignal },
) => Promise<ResponseLike>;

/** A non-2xx response, carrying the service's structured error body. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, detail: string) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

/** Thrown to the loser when a newer projection request takes over. */
export class RequestSuperseded extends Error {
  constructor() {
    super("superseded by a newer request");
    this.name = "RequestSuperseded";
  }
}

async function readError(res: ResponseLike): Promise<ApiError> {
  let code = "HttpError";
  let detail = `request failed with status ${res.status}`;
  try {
    const body = (await res.json()) as ErrorBody;
    if (body && body.error) {
      code = body.error.code;
      detail = body.error.detail;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  return new ApiError(res.status, code, detail);
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;
  private controller: AbortController | null = null;

  constructor(baseUrl: string, fetchFn: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  async meta(): Promise<MetaResponse> {
    const res = await this.fetchFn(`${this.baseUrl}/api/meta`);
    if (!res.ok) {
      throw await readError(res);
    }
    return (await res.json()) as MetaResponse;
  }

  projectionUrl(snapId: number, params: URLSearchParams): string {
    return `${this.baseUrl}/api/snaps/${snapId}/projection?${params.toString()}`;
  }

  /**
   * Fetch one projection, aborting any projection request still in
   * flight. The aborted caller sees RequestSuperseded.
   */
  async projection(
    snapId: number,
    params: URLSearchParams,
  ): Promise<ProjectionResponse> {
    if (this.controller) {
      this.controller.abort();
    }
    const controller = new AbortController();
    this.controller = controller;
    let res: ResponseLike;
    try {
      res = await this.fetchFn(this.projectionUrl(snapId, params), {
        signal: controller.signal,
      });
    } catch (err) {
      if (controller.signal.aborted) {
        throw new RequestSuperseded();
      }
      throw err;
    }
    if (controller.signal.aborted) {
      throw new RequestSuperseded();
    }
    if (!res.ok) {
      throw await readError(res);
    }
    return (await res.json()) as ProjectionResponse;
  }
}
