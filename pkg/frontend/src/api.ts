/**
 * Client for the floorplan service HTTP API.
 *
 * Every response funnels into an ApiResult: either the parsed success body
 * or the service's error envelope {code, message, details}. Transport and
 * parse failures are wrapped as a NETWORK error so callers handle exactly
 * one shape. Solve requests are cancel-and-replace: starting a new one
 * aborts the one in flight, and the aborted call reports null rather than
 * an error so stale responses never reach the screen.
 */

import type {
  ApiErrorBody,
  ExampleDoc,
  ProjectDoc,
  ResultDoc,
  ViolationDoc,
} from "./model.js";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export type ApiResult<T> =
  | { ok: true; value: T }
  | { ok: false; error: ApiErrorBody; status: number };

function networkError(message: string): ApiResult<never> {
  return {
    ok: false,
    status: 0,
    error: { code: "NETWORK", message, details: null },
  };
}

async function errorFromResponse(resp: Response): Promise<ApiErrorBody> {
  let body: unknown = null;
  try {
    body = await resp.json();
  } catch {
    // fall through to the generic envelope below
  }
  if (body && typeof body === "object" && "code" in body && "message" in body) {
    return body as ApiErrorBody;
  }
  const message =
    body && typeof body === "object" && "message" in body
      ? String((body as { message: unknown }).message)
      : `request failed with status ${resp.status}`;
  return { code: "NETWORK", message, details: body };
}

export class ApiClient {
  private solveController: AbortController | null = null;

  constructor(
    public readonly base: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  private async getJson<T>(path: string): Promise<ApiResult<T>> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(this.url(path));
    } catch (err) {
      return networkError(String(err));
    }
    if (!resp.ok) {
      return { ok: false, status: resp.status, error: await errorFromResponse(resp) };
    }
    try {
      return { ok: true, value: (await resp.json()) as T };
    } catch (err) {
      return networkError(`invalid JSON from service: ${String(err)}`);
    }
  }

  health(): Promise<ApiResult<{ status: string }>> {
    return this.getJson("/api/health");
  }

  examples(): Promise<ApiResult<ExampleDoc[]>> {
    return this.getJson("/api/examples");
  }

  async validate(
    body: unknown,
  ): Promise<ApiResult<{ violations: ViolationDoc[] }>> {
    let resp: Response;
    try {
      resp = await this.fetchImpl(this.url("/api/validate"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (err) {
      return networkError(String(err));
    }
    if (!resp.ok) {
      return { ok: false, status: resp.status, error: await errorFromResponse(resp) };
    }
    try {
      return { ok: true, value: (await resp.json()) as { violations: ViolationDoc[] } };
    } catch (err) {
      return networkError(`invalid JSON from service: ${String(err)}`);
    }
  }

  /**
   * Solve a project. Returns null when this request was superseded by a
   * newer one. The raw response text rides along with the parsed result so
   * "export result JSON" can reuse the service's exact bytes.
   */
  async solve(
    project: ProjectDoc,
  ): Promise<ApiResult<{ result: ResultDoc; raw: string }> | null> {
    this.solveController?.abort();
    const controller = new AbortController();
    this.solveController = controller;

    let resp: Response;
    try {
      resp = await this.fetchImpl(this.url("/api/solve"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(project),
        signal: controller.signal,
      });
    } catch (err) {
      if (controller.signal.aborted) return null;
      return networkError(String(err));
    }
    if (controller.signal.aborted) return null;
    if (!resp.ok) {
      return { ok: false, status: resp.status, error: await errorFromResponse(resp) };
    }
    try {
      const raw = await resp.text();
      return { ok: true, value: { result: JSON.parse(raw) as ResultDoc, raw } };
    } catch (err) {
      return networkError(`invalid JSON from service: ${String(err)}`);
    }
  }
}
