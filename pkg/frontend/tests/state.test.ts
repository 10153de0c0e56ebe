import { describe, expect, it } from "vitest";

import { AppStore } from "../src/state.js";
import type { ScoreResponse } from "../src/types.js";

function score(h: number): ScoreResponse {
  return {
    target: "a",
    H: h,
    levels: [],
    config: {
      inner: "avg",
      outer: "max",
      alpha: 0.85,
      m_max: 2,
      scheme: "shortest-all",
      direction: "upstream",
    },
  };
}

describe("sequence-numbered commits", () => {
  it("applies in-order responses", () => {
    const store = new AppStore();
    const t1 = store.nextToken("score");
    const t2 = store.nextToken("score");
    expect(store.commit("score", t1, () => (store.score = score(10)))).toBe(true);
    expect(store.commit("score", t2, () => (store.score = score(20)))).toBe(true);
    expect(store.score?.H).toBe(20);
  });

  it("discards an out-of-order response", () => {
    const store = new AppStore();
    const older = store.nextToken("score");
    const newer = store.nextToken("score");
    expect(store.commit("score", newer, () => (store.score = score(99)))).toBe(true);
    // the slow request from before resolves late
    expect(store.commit("score", older, () => (store.score = score(1)))).toBe(false);
    expect(store.score?.H).toBe(99);
  });

  it("tracks slots independently", () => {
    const store = new AppStore();
    const s1 = store.nextToken("score");
    const r1 = store.nextToken("rankings");
    expect(store.commit("rankings", r1, () => undefined)).toBe(true);
    expect(store.commit("score", s1, () => undefined)).toBe(true);
  });

  it("notifies subscribers on committed changes only", () => {
    const store = new AppStore();
    let calls = 0;
    store.subscribe(() => calls++);
    const older = store.nextToken("score");
    const newer = store.nextToken("score");
    store.commit("score", newer, () => undefined);
    store.commit("score", older, () => undefined);
    expect(calls).toBe(1);
  });
});

describe("action log and errors", () => {
  it("appends log entries", () => {
    const store = new AppStore();
    store.log("set b to 100");
    store.log("reset");
    expect(store.actionLog).toEqual(["set b to 100", "reset"]);
  });

  it("stores and clears the last error", () => {
    const store = new AppStore();
    store.setError("boom");
    expect(store.lastError).toBe("boom");
    store.setError(null);
    expect(store.lastError).toBeNull();
  });
});
