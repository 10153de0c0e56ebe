/** Payload shapes of the harmnet service API (see docs/api.md). */

export interface HarmConfigBody {
  inner: string;
  outer: string;
  alpha: number;
  m_max: number | null;
  scheme: string;
  direction: string;
}

export interface GraphNode {
  id: number;
  label: string;
  harm: number;
  name?: string;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: [number, number][];
  labels: Record<string, number>;
}

export interface LevelRow {
  m: number;
  size: number;
  x_m: number | null;
  weighted: number | null;
}

export interface ScoreResponse {
  target: string;
  H: number;
  levels: LevelRow[];
  config: HarmConfigBody;
}

export interface SessionState {
  id: string;
  target: string;
  H: number;
  baseline: number;
  delta: number;
  overrides: Record<string, number>;
  removed: string[];
  config: HarmConfigBody;
}

export interface RankingEntry {
  label: string;
  score: number;
  rank: number;
}

export interface RankingResponse {
  kind: string;
  target: string | null;
  entries: RankingEntry[];
}

export interface HealthResponse {
  version: string;
  status: string;
  nodes: number;
  edges: number;
}

export const DEFAULT_CONFIG: HarmConfigBody = {
  inner: "avg",
  outer: "max",
  alpha: 0.85,
  m_max: null,
  scheme: "shortest-all",
  direction: "upstream",
};
