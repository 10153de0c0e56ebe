/** Every number the UI would display must have arrived in a service
 * response: the fetch layer is stubbed, every returned body is recorded,
 * and displayedNumbers() is checked against the recorded values. */

import { describe, expect, it } from "vitest";

import { Actions } from "../src/actions.js";
import { ApiClient } from "../src/api.js";
import { AppStore } from "../src/state.js";
import { displayedNumbers } from "../src/view.js";

function harvestNumbers(value: unknown, into: Set<number>): void {
  if (typeof value === "number") into.add(value);
  else if (Array.isArray(value)) value.forEach((v) => harvestNumbers(v, into));
  else if (value !== null && typeof value === "object") {
    Object.values(value).forEach((v) => harvestNumbers(v, into));
  }
}

const GRAPH = {
  nodes: [
    { id: 0, label: "a", harm: 0 },
    { id: 1, label: "b", harm: 85 },
    { id: 2, label: "c", harm: 10 },
  ],
  edges: [
    [1, 0],
    [2, 0],
  ],
  labels: { a: 0, b: 1, c: 2 },
};

const CONFIG = {
  inner: "avg",
  outer: "max",
  alpha: 0.85,
  m_max: 2,
  scheme: "shortest-all",
  direction: "upstream",
};

function canned(url: string, body: string | undefined): unknown {
  if (url.endsWith("/api/graph")) return GRAPH;
  if (url.endsWith("/api/score")) {
    return {
      target: "a",
      H: 47.5,
      levels: [{ m: 1, size: 2, x_m: 47.5, weighted: 47.5 }],
      config: CONFIG,
    };
  }
  if (url.endsWith("/api/session")) {
    return {
      id: "s1",
      target: "a",
      H: 47.5,
      baseline: 47.5,
      delta: 0,
      overrides: {},
      removed: [],
      config: CONFIG,
    };
  }
  if (url.endsWith("/override")) {
    const harm = body === undefined ? 100 : (JSON.parse(body) as { harm: number }).harm;
    return {
      id: "s1",
      target: "a",
      H: 55,
      baseline: 47.5,
      delta: 7.5,
      overrides: { c: harm },
      removed: [],
      config: CONFIG,
    };
  }
  if (url.endsWith("/api/rankings")) {
    return {
      kind: "vulnerability",
      target: "a",
      entries: [
        { label: "b", score: 7.5, rank: 1 },
        { label: "c", score: 4.25, rank: 2 },
      ],
    };
  }
  throw new Error(`no canned response for ${url}`);
}

function recordingClient(seen: Set<number>): ApiClient {
  const fetchStub = async (url: string, init?: RequestInit): Promise<Response> => {
    const payload = canned(url, init?.body as string | undefined);
    harvestNumbers(payload, seen);
    return new Response(JSON.stringify(payload), {
      status: url.endsWith("/api/session") ? 201 : 200,
      headers: { "content-type": "application/json" },
    });
  };
  return new ApiClient("", fetchStub);
}

describe("no locally computed metrics", () => {
  it("shows only numbers that arrived in responses", async () => {
    const seen = new Set<number>();
    const store = new AppStore();
    const actions = new Actions(recordingClient(seen), store);

    await actions.loadGraph();
    await actions.rescore();
    await actions.openSession();
    await actions.setHarm(/* node */ "c", 73);
    await actions.loadRankings("vulnerability", 5);
    await actions.loadPresetComparison();

    const displayed = displayedNumbers(store);
    expect(displayed.length).toBeGreaterThan(5);
    for (const value of displayed) {
      expect(seen.has(value), `displayed ${value} never appeared in a response`).toBe(true);
    }
  });

  it("keeps the overridden harm from the response, not the input field", async () => {
    const seen = new Set<number>();
    const store = new AppStore();
    const actions = new Actions(recordingClient(seen), store);
    await actions.loadGraph();
    await actions.openSession();
    await actions.setHarm("c", 73);
    // the displayed override value is whatever the SERVICE echoed back
    expect(store.session?.overrides).toEqual({ c: 73 });
    expect(seen.has(73)).toBe(true);
  });
});
