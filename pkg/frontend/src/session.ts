import { ExplorerClient } from "./client.js";
import { hitTest } from "./overlay.js";
import type {
  ChildBox,
  CreateSessionRequest,
  SessionSummary,
  ZoomStateInfo,
} from "./types.js";

export const VIEW_PIXELS = 512;

/** One zoom session: current state plus the fixed per-session geometry.
 * The window renormalizes on every zoom, so the same child boxes apply
 * at every level. */
export class ExplorerSession {
  private constructor(
    private readonly client: ExplorerClient,
    readonly sessionId: string,
    readonly summary: SessionSummary,
    readonly childBoxes: ChildBox[],
    private stateNow: ZoomStateInfo,
  ) {}

  static async open(
    client: ExplorerClient,
    request: CreateSessionRequest,
  ): Promise<ExplorerSession> {
    const res = await client.createSession(request);
    return new ExplorerSession(
      client,
      res.sessionId,
      res.summary,
      res.childBoxes,
      res.state,
    );
  }

  get state(): ZoomStateInfo {
    return this.stateNow;
  }

  async clickChild(label: number): Promise<ZoomStateInfo> {
    this.stateNow = await this.client.zoomIn(this.sessionId, label);
    return this.stateNow;
  }

  /** A click at normalized view coordinates; outside every child box it
   * is ignored and the current state is returned unchanged. */
  async clickAt(x: number, y: number): Promise<ZoomStateInfo> {
    const label = hitTest(this.childBoxes, x, y);
    if (label === null) return this.stateNow;
    return this.clickChild(label);
  }

  async zoomOut(): Promise<ZoomStateInfo> {
    this.stateNow = await this.client.zoomOut(this.sessionId);
    return this.stateNow;
  }

  fetchView(pixels: number = VIEW_PIXELS): Promise<Uint8Array> {
    return this.client.viewPng(this.sessionId, pixels);
  }

  viewUrl(pixels: number = VIEW_PIXELS): string {
    // stepCount busts the browser cache across zooms
    return `${this.client.viewUrl(this.sessionId, pixels)}&t=${this.stateNow.stepCount}`;
  }
}

/** Badge text for the current surround, or null when it is not rare. */
export function rareBadgeText(state: ZoomStateInfo): string | null {
  const nbh = state.neighborhood;
  if (!nbh.rare) return null;
  return `rare neighborhood #${nbh.index}: frequency ${nbh.p.toExponential(2)}`;
}

/** One-line description of where the viewer is. */
export function statusLine(state: ZoomStateInfo): string {
  const { current, stepCount, neighborhood } = state;
  return `neighborhood #${current} (${neighborhood.size} neighbors), step ${stepCount}`;
}
