/** Central store. Holds raw service responses plus view settings.
 *
 * Async results are committed through sequence tokens: each slot (score,
 * session, rankings, ...) hands out increasing tokens, and a commit is
 * dropped when a newer token has already landed, so an out-of-order
 * response can never overwrite fresher state. The store never derives new
 * metric values; it only stores what the service returned.
 */

import type {
  GraphDoc,
  HarmConfigBody,
  RankingResponse,
  ScoreResponse,
  SessionState,
} from "./types.js";
import { DEFAULT_CONFIG } from "./types.js";

export type ColorMode = "intrinsic" | "network" | "influence" | "vulnerability";

export interface PresetPair {
  intention: ScoreResponse | null; // alpha = 0.15
  consequence: ScoreResponse | null; // alpha = 0.85
}

export type Listener = () => void;

export class AppStore {
  graph: GraphDoc | null = null;
  target: string | null = null;
  selected: string | null = null;
  config: HarmConfigBody = { ...DEFAULT_CONFIG };
  colorMode: ColorMode = "intrinsic";
  score: ScoreResponse | null = null;
  session: SessionState | null = null;
  rankings: RankingResponse | null = null;
  presets: PresetPair = { intention: null, consequence: null };
  actionLog: string[] = [];
  lastError: string | null = null;

  private counters = new Map<string, number>();
  private applied = new Map<string, number>();
  private listeners: Listener[] = [];

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  notify(): void {
    for (const listener of this.listeners) listener();
  }

  /** Reserve a sequence token for an in-flight request on `slot`. */
  nextToken(slot: string): number {
    const token = (this.counters.get(slot) ?? 0) + 1;
    this.counters.set(slot, token);
    return token;
  }

  /** Apply `update` unless a newer token already landed on `slot`. */
  commit(slot: string, token: number, update: () => void): boolean {
    const newest = this.applied.get(slot) ?? 0;
    if (token <= newest) return false;
    this.applied.set(slot, token);
    update();
    this.notify();
    return true;
  }

  log(entry: string): void {
    this.actionLog.push(entry);
    this.notify();
  }

  setError(message: string | null): void {
    this.lastError = message;
    this.notify();
  }
}
