/** SVG node-link rendering with tooltips and per-mode colouring. */

import { harmColor, influenceColor } from "./colors.js";
import { forceLayout } from "./layout.js";
import type { AppStore } from "./state.js";
import { fmt } from "./view.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const LAYOUT_SEED = 42; // fixed so screenshots are reproducible

function el<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function nodeColor(store: AppStore, label: string, harm: number): string {
  const mode = store.colorMode;
  if (mode === "intrinsic") return harmColor(harm);
  if (mode === "network") {
    return store.score !== null && store.score.target === label
      ? harmColor(store.score.H)
      : harmColor(harm);
  }
  const entry = store.rankings?.entries.find((e) => e.label === label);
  if (entry === undefined) return "rgb(224,224,224)";
  return mode === "influence" ? influenceColor(entry.score) : harmColor(entry.score);
}

export function renderNetwork(container: HTMLElement, store: AppStore): void {
  container.textContent = "";
  const graph = store.graph;
  if (graph === null || graph.nodes.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent =
      graph === null
        ? "Waiting for the service to load a network…"
        : "This network is empty — load one with the serve command.";
    container.appendChild(empty);
    return;
  }
  const width = container.clientWidth || 720;
  const height = 480;
  const positions = forceLayout(graph.nodes.length, graph.edges, {
    seed: LAYOUT_SEED,
    width,
    height,
  });
  const svg = el("svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "network");

  const marker = el("marker");
  marker.setAttribute("id", "arrow");
  marker.setAttribute("viewBox", "0 0 8 8");
  marker.setAttribute("refX", "7");
  marker.setAttribute("refY", "4");
  marker.setAttribute("markerWidth", "6");
  marker.setAttribute("markerHeight", "6");
  marker.setAttribute("orient", "auto-start-reverse");
  const tip = el("path");
  tip.setAttribute("d", "M0,0 L8,4 L0,8 z");
  tip.setAttribute("fill", "#9e9e9e");
  marker.appendChild(tip);
  const defs = el("defs");
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const [u, v] of graph.edges) {
    const line = el("line");
    const a = positions[u]!;
    const b = positions[v]!;
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("class", "edge");
    line.setAttribute("marker-end", "url(#arrow)");
    svg.appendChild(line);
  }

  const rank = new Map<string, number>();
  store.rankings?.entries.forEach((e) => rank.set(e.label, e.rank));

  graph.nodes.forEach((node, i) => {
    const group = el("g");
    const circle = el("circle");
    const p = positions[i]!;
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.setAttribute("r", node.label === store.target ? "14" : "10");
    circle.setAttribute("fill", nodeColor(store, node.label, node.harm));
    circle.setAttribute("class", "node" + (node.label === store.target ? " target" : ""));
    if (store.session?.removed.includes(node.label)) {
      circle.setAttribute("opacity", "0.25");
    }
    const title = el("title");
    const lines = [`${node.label}  h=${fmt(node.harm)}`];
    if (store.score !== null && store.score.target === node.label) {
      lines.push(`H=${fmt(store.score.H)}`);
    }
    const r = rank.get(node.label);
    if (r !== undefined) lines.push(`rank ${r} (${store.rankings!.kind})`);
    title.textContent = lines.join("\n");
    group.appendChild(circle);

    const text = el("text");
    text.setAttribute("x", String(p.x + 12));
    text.setAttribute("y", String(p.y + 4));
    text.setAttribute("class", "node-label");
    text.textContent = node.label;
    group.appendChild(text);
    group.addEventListener("click", () => {
      store.selected = node.label;
      store.notify();
    });
    svg.appendChild(group);
  });
  container.appendChild(svg);
}
