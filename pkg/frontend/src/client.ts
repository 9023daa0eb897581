import type {
  CreateSessionRequest,
  CreateSessionResponse,
  NeighborhoodInfo,
  StatsResponse,
  ZoomStateInfo,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`service replied ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function raiseForStatus(res: Response): Promise<void> {
  if (res.ok) return;
  let detail = res.statusText;
  try {
    const body = (await res.json()) as { detail?: unknown };
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(res.status, detail);
}

/** Thin typed wrapper over the HTTP API; every explorer request goes
 * through here, nothing else talks to the service. */
export class ExplorerClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const res = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    await raiseForStatus(res);
    return (await res.json()) as T;
  }

  private async getJson<T>(path: string): Promise<T> {
    const res = await this.fetchFn(this.baseUrl + path);
    await raiseForStatus(res);
    return (await res.json()) as T;
  }

  createSession(body: CreateSessionRequest): Promise<CreateSessionResponse> {
    return this.postJson("/sessions", body);
  }

  zoomIn(sessionId: string, child: number): Promise<ZoomStateInfo> {
    return this.postJson(`/sessions/${sessionId}/zoom`, {
      action: "in",
      child,
    });
  }

  zoomOut(sessionId: string): Promise<ZoomStateInfo> {
    return this.postJson(`/sessions/${sessionId}/zoom`, { action: "out" });
  }

  viewUrl(sessionId: string, pixels: number, depth?: number): string {
    const query = new URLSearchParams({ pixels: String(pixels) });
    if (depth !== undefined) query.set("depth", String(depth));
    return `${this.baseUrl}/sessions/${sessionId}/view.png?${query}`;
  }

  async viewPng(
    sessionId: string,
    pixels: number,
    depth?: number,
  ): Promise<Uint8Array> {
    const res = await this.fetchFn(this.viewUrl(sessionId, pixels, depth));
    await raiseForStatus(res);
    return new Uint8Array(await res.arrayBuffer());
  }

  stats(sessionId: string): Promise<StatsResponse> {
    return this.getJson(`/sessions/${sessionId}/stats`);
  }

  neighborhood(sessionId: string, index: number): Promise<NeighborhoodInfo> {
    return this.getJson(`/sessions/${sessionId}/neighborhoods/${index}`);
  }
}
