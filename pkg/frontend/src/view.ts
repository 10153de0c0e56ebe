/** Pure projections from store state to display strings.
 *
 * Every numeric string the DOM shows is produced here from stored service
 * responses, which is what makes "the UI never computes metrics" testable:
 * the provenance test walks displayedNumbers() and checks each value
 * appeared verbatim in some intercepted response body.
 */

import type { AppStore } from "./state.js";

export function fmt(x: number): string {
  if (Number.isInteger(x)) return String(x);
  return String(Math.round(x * 1000) / 1000);
}

export interface ScoreReadout {
  target: string;
  h: string;
  levels: { m: string; size: string; x: string; weighted: string }[];
}

export function scoreReadout(store: AppStore): ScoreReadout | null {
  const score = store.score;
  if (score === null) return null;
  return {
    target: score.target,
    h: fmt(score.H),
    levels: score.levels.map((row) => ({
      m: String(row.m),
      size: String(row.size),
      x: row.x_m === null ? "-" : fmt(row.x_m),
      weighted: row.weighted === null ? "-" : fmt(row.weighted),
    })),
  };
}

export interface SessionReadout {
  h: string;
  baseline: string;
  delta: string;
  overrides: { node: string; harm: string }[];
  removed: string[];
}

export function sessionReadout(store: AppStore): SessionReadout | null {
  const session = store.session;
  if (session === null) return null;
  return {
    h: fmt(session.H),
    baseline: fmt(session.baseline),
    delta: fmt(session.delta),
    overrides: Object.entries(session.overrides).map(([node, harm]) => ({
      node,
      harm: fmt(harm),
    })),
    removed: [...session.removed],
  };
}

export function rankingRows(store: AppStore): { label: string; score: string }[] {
  if (store.rankings === null) return [];
  return store.rankings.entries.map((e) => ({ label: e.label, score: fmt(e.score) }));
}

export function presetReadout(store: AppStore): { intention: string; consequence: string } | null {
  const { intention, consequence } = store.presets;
  if (intention === null || consequence === null) return null;
  return { intention: fmt(intention.H), consequence: fmt(consequence.H) };
}

/** Raw numeric values backing every number the UI currently displays. */
export function displayedNumbers(store: AppStore): number[] {
  const out: number[] = [];
  if (store.score !== null) {
    out.push(store.score.H);
    for (const row of store.score.levels) {
      if (row.x_m !== null) out.push(row.x_m);
      if (row.weighted !== null) out.push(row.weighted);
    }
  }
  if (store.session !== null) {
    out.push(store.session.H, store.session.baseline, store.session.delta);
    out.push(...Object.values(store.session.overrides));
  }
  if (store.rankings !== null) {
    out.push(...store.rankings.entries.map((e) => e.score));
  }
  if (store.presets.intention !== null) out.push(store.presets.intention.H);
  if (store.presets.consequence !== null) out.push(store.presets.consequence.H);
  if (store.graph !== null && store.colorMode === "intrinsic") {
    out.push(...store.graph.nodes.map((n) => n.harm));
  }
  return out;
}
