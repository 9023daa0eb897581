/** Wire types for the zoom service; field names match the JSON payloads. */

export interface NeighborhoodInfo {
  index: number;
  members: number[];
  size: number;
  p: number;
  rare: boolean;
  successors: number[];
}

export interface ZoomStateInfo {
  sessionId: string;
  current: number;
  stepCount: number;
  historyDepth: number;
  lastChild: number | null;
  neighborhood: NeighborhoodInfo;
}

export interface ChildBox {
  label: number;
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface StatsBlock {
  K: number;
  minNbrs: number;
  maxNbrs: number;
  avgNbrs: number;
  bucketFreq: number[];
  heavyThreshold: number;
  heavyFreq: number;
  leading: [number, number][];
}

export interface SessionSummary {
  name: string;
  m: number;
  r: number;
  filter: string;
  connected: boolean;
  overlapDetected: boolean;
  attractorDimension: number;
  boundaryDimension: number | null;
  neighborCounts: { total: number; continuum: number; point: number };
  graphEdges: number;
  viewEdges: number;
  interiorWord: string;
  K: number;
  stats: StatsBlock;
}

export interface CreateSessionResponse {
  sessionId: string;
  summary: SessionSummary;
  childBoxes: ChildBox[];
  state: ZoomStateInfo;
}

export interface StatsResponse {
  stats: StatsBlock;
  stationary: unknown;
}

export type CreateSessionRequest =
  | { preset: string; filter?: string; seedWord?: string }
  | { ifs: unknown; filter?: string; seedWord?: string };
