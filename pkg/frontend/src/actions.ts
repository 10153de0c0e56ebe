/** UI actions: each one issues service calls and commits the responses into
 * the store under a sequence token. No metric arithmetic happens here. */

import { ApiClient } from "./api.js";
import type { AppStore } from "./state.js";
import type { HarmConfigBody } from "./types.js";

export class Actions {
  constructor(
    private api: ApiClient,
    private store: AppStore,
  ) {}

  async loadGraph(): Promise<void> {
    const token = this.store.nextToken("graph");
    const doc = await this.api.graph();
    this.store.commit("graph", token, () => {
      this.store.graph = doc;
      if (this.store.target === null && doc.nodes.length > 0) {
        this.store.target = doc.nodes[0]!.label;
      }
    });
  }

  async rescore(): Promise<void> {
    const { target, config } = this.store;
    if (target === null) return;
    const token = this.store.nextToken("score");
    const response = await this.api.score(target, config);
    this.store.commit("score", token, () => {
      this.store.score = response;
    });
  }

  async setTarget(label: string): Promise<void> {
    this.store.target = label;
    this.store.session = null;
    this.store.rankings = null;
    this.store.notify();
    await this.rescore();
  }

  async setConfig(partial: Partial<HarmConfigBody>): Promise<void> {
    this.store.config = { ...this.store.config, ...partial };
    this.store.notify();
    const jobs = [this.rescore()];
    if (this.store.session !== null) jobs.push(this.openSession());
    await Promise.all(jobs);
  }

  async openSession(): Promise<void> {
    const { target, config } = this.store;
    if (target === null) return;
    const token = this.store.nextToken("session");
    const session = await this.api.createSession(target, config);
    this.store.commit("session", token, () => {
      this.store.session = session;
      this.store.log(`session ${session.id.slice(0, 8)} on ${session.target}`);
    });
  }

  private async mutateSession(
    call: (sessionId: string) => Promise<import("./types.js").SessionState>,
    describe: (after: import("./types.js").SessionState) => string,
  ): Promise<void> {
    if (this.store.session === null) await this.openSession();
    const session = this.store.session;
    if (session === null) return;
    const token = this.store.nextToken("session");
    try {
      const after = await call(session.id);
      this.store.commit("session", token, () => {
        this.store.session = after;
        this.store.log(describe(after));
        this.store.lastError = null;
      });
    } catch (error) {
      this.store.setError(error instanceof Error ? error.message : String(error));
      throw error;
    }
  }

  setHarm100(node: string): Promise<void> {
    return this.mutateSession(
      (id) => this.api.override(id, node, 100),
      (s) => `set ${node} to 100 -> H ${s.H} (delta ${s.delta})`,
    );
  }

  setHarm(node: string, harm: number): Promise<void> {
    return this.mutateSession(
      (id) => this.api.override(id, node, harm),
      (s) => `set ${node} to ${harm} -> H ${s.H} (delta ${s.delta})`,
    );
  }

  removeNode(node: string): Promise<void> {
    return this.mutateSession(
      (id) => this.api.removeNode(id, node),
      (s) => `removed ${node} -> H ${s.H} (delta ${s.delta})`,
    );
  }

  reset(): Promise<void> {
    return this.mutateSession(
      (id) => this.api.resetOverlay(id),
      (s) => `reset -> H ${s.H}`,
    );
  }

  async loadRankings(kind: "vulnerability" | "influence" | "global", topN = 10): Promise<void> {
    const token = this.store.nextToken("rankings");
    const target = kind === "global" ? null : this.store.target;
    const response = await this.api.rankings(kind, target, this.store.config, topN);
    this.store.commit("rankings", token, () => {
      this.store.rankings = response;
    });
  }

  /** Side-by-side "intention vs consequence" readouts (alpha 0.15 / 0.85). */
  async loadPresetComparison(): Promise<void> {
    const { target, config } = this.store;
    if (target === null) return;
    const token = this.store.nextToken("presets");
    const [intention, consequence] = await Promise.all([
      this.api.score(target, { ...config, alpha: 0.15 }),
      this.api.score(target, { ...config, alpha: 0.85 }),
    ]);
    this.store.commit("presets", token, () => {
      this.store.presets = { intention, consequence };
    });
  }
}
