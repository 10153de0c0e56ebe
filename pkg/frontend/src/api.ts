/** Thin typed client over the service API. Every number shown anywhere in
 * the UI originates from a response returned by one of these calls. */

import type {
  GraphDoc,
  HarmConfigBody,
  HealthResponse,
  RankingResponse,
  ScoreResponse,
  SessionState,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
  ) {
    super(`service answered ${status}: ${JSON.stringify(body)}`);
  }
}

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (url, init) => globalThis.fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchFn(this.base + path, init);
    if (response.status === 204) return undefined as T;
    const parsed = await response.json().catch(() => null);
    if (!response.ok && response.status !== 202) {
      throw new ApiError(response.status, parsed);
    }
    return parsed as T;
  }

  health(): Promise<HealthResponse> {
    return this.request("GET", "/api/health");
  }

  graph(): Promise<GraphDoc> {
    return this.request("GET", "/api/graph");
  }

  score(target: string, config: HarmConfigBody): Promise<ScoreResponse> {
    return this.request("POST", "/api/score", { target, config });
  }

  createSession(target: string, config: HarmConfigBody): Promise<SessionState> {
    return this.request("POST", "/api/session", { target, config });
  }

  override(sessionId: string, node: string, harm: number): Promise<SessionState> {
    return this.request("POST", `/api/session/${sessionId}/override`, { node, harm });
  }

  removeNode(sessionId: string, node: string): Promise<SessionState> {
    return this.request("POST", `/api/session/${sessionId}/remove`, { node });
  }

  resetOverlay(sessionId: string): Promise<SessionState> {
    return this.request("DELETE", `/api/session/${sessionId}/overlay`);
  }

  deleteSession(sessionId: string): Promise<void> {
    return this.request("DELETE", `/api/session/${sessionId}`);
  }

  rankings(
    kind: "vulnerability" | "influence" | "global",
    target: string | null,
    config: HarmConfigBody,
    topN: number,
  ): Promise<RankingResponse> {
    return this.request("POST", "/api/rankings", {
      kind,
      target,
      config,
      top_n: topN,
    });
  }
}
