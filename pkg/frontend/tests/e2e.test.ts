/** End-to-end against a real served demo network (spawns the python
 * service). Verifies the acceptance behaviour: an override-to-100 delta
 * equals the service's vulnerability value exactly, scheme switches on a
 * tree change nothing visible, and every displayed number was intercepted
 * on the wire. */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Actions } from "../src/actions.js";
import { ApiClient } from "../src/api.js";
import { AppStore } from "../src/state.js";
import { displayedNumbers, fmt, sessionReadout } from "../src/view.js";

const PORT = 8600 + (process.pid % 1000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
const intercepted = new Set<number>();

function harvest(value: unknown): void {
  if (typeof value === "number") intercepted.add(value);
  else if (Array.isArray(value)) value.forEach(harvest);
  else if (value !== null && typeof value === "object") {
    Object.values(value).forEach(harvest);
  }
}

const recordingFetch = async (url: string, init?: RequestInit): Promise<Response> => {
  const response = await fetch(url, init);
  const clone = response.clone();
  try {
    harvest(await clone.json());
  } catch {
    /* 204s have no body */
  }
  return response;
};

const api = new ApiClient(BASE, recordingFetch);

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "harmnet.cli", "serve", "--fixture", "fig5a", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const health = await fetch(`${BASE}/api/health`);
      if (health.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error("service did not come up");
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe("served demo network", () => {
  it("override-to-100 displays exactly the service's vulnerability value", async () => {
    const store = new AppStore();
    const actions = new Actions(api, store);
    store.config = { ...store.config, alpha: 1.0, scheme: "simple", m_max: 2 };
    await actions.loadGraph();
    await actions.setTarget("a");
    await actions.openSession();
    await actions.setHarm100("b");

    const rankings = await api.rankings("vulnerability", "a", store.config, 10);
    const entry = rankings.entries.find((e) => e.label === "b");
    expect(entry).toBeDefined();
    // raw equality, then the rendered strings
    expect(store.session!.delta).toBe(entry!.score);
    expect(sessionReadout(store)!.delta).toBe(fmt(entry!.score));
  });

  it("remove displays exactly the service's influence value", async () => {
    const store = new AppStore();
    const actions = new Actions(api, store);
    store.config = { ...store.config, alpha: 1.0, scheme: "simple", m_max: 2 };
    await actions.loadGraph();
    await actions.setTarget("a");
    await actions.openSession();
    await actions.removeNode("b");
    const rankings = await api.rankings("influence", "a", store.config, 10);
    const entry = rankings.entries.find((e) => e.label === "b");
    expect(store.session!.delta).toBe(entry!.score);
  });

  it("scheme switches on a tree produce zero visible score change", async () => {
    const store = new AppStore();
    const actions = new Actions(api, store);
    store.config = { ...store.config, alpha: 0.7, m_max: 3 };
    await actions.loadGraph();
    await actions.setTarget("a");
    const readouts = new Set<string>();
    const raw = new Set<number>();
    for (const scheme of ["all", "simple", "shortest-all", "shortest-one"]) {
      await actions.setConfig({ scheme });
      raw.add(store.score!.H);
      readouts.add(fmt(store.score!.H));
    }
    expect(raw.size).toBe(1);
    expect(readouts.size).toBe(1);
  });

  it("reset returns the readout to baseline exactly", async () => {
    const store = new AppStore();
    const actions = new Actions(api, store);
    await actions.loadGraph();
    await actions.setTarget("a");
    await actions.openSession();
    const baseline = store.session!.H;
    await actions.setHarm100("c");
    expect(store.session!.H).not.toBe(baseline);
    await actions.reset();
    expect(store.session!.H).toBe(baseline);
    expect(store.session!.delta).toBe(0);
  });

  it("removing a node off the upstream paths shows delta 0", async () => {
    const store = new AppStore();
    const actions = new Actions(api, store);
    await actions.loadGraph();
    await actions.setTarget("b"); // b's suppliers are d and e; c is elsewhere
    await actions.openSession();
    await actions.removeNode("c");
    expect(store.session!.delta).toBe(0);
  });

  it("stale responses never overwrite newer scores", async () => {
    const store = new AppStore();
    const actions = new Actions(api, store);
    await actions.loadGraph();
    await actions.setTarget("a");
    // fire two rescoring passes concurrently with different configs: the
    // second token must win no matter which response lands first
    store.config = { ...store.config, alpha: 0.2 };
    const first = actions.rescore();
    store.config = { ...store.config, alpha: 0.9 };
    const second = actions.rescore();
    await Promise.all([first, second]);
    expect(store.score!.config.alpha).toBe(0.9);
  });

  it("influence colouring stays sign-consistent with the service ranking", async () => {
    const { divergingIntensity } = await import("../src/colors.js");
    const store = new AppStore();
    const actions = new Actions(api, store);
    store.config = { ...store.config, alpha: 1.0, scheme: "simple", m_max: 2 };
    await actions.loadGraph();
    await actions.setTarget("a");
    await actions.loadRankings("influence", 10);
    expect(store.rankings!.entries.length).toBeGreaterThan(0);
    for (const entry of store.rankings!.entries) {
      expect(Math.sign(divergingIntensity(entry.score))).toBe(Math.sign(entry.score));
    }
  });

  it("every displayed number was intercepted on the wire", async () => {
    const store = new AppStore();
    const actions = new Actions(api, store);
    await actions.loadGraph();
    await actions.setTarget("a");
    await actions.openSession();
    await actions.setHarm100("b");
    await actions.loadRankings("vulnerability", 10);
    await actions.loadPresetComparison();
    const displayed = displayedNumbers(store);
    expect(displayed.length).toBeGreaterThan(8);
    for (const value of displayed) {
      expect(intercepted.has(value), `displayed ${value} not seen on the wire`).toBe(true);
    }
  });
});
