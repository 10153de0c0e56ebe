/** Harm-definition controls: aggregators, alpha, depth, scheme, direction,
 * colour mode, plus the intention/consequence preset comparison. */

import type { Actions } from "./actions.js";
import type { AppStore, ColorMode } from "./state.js";
import { presetReadout, scoreReadout } from "./view.js";

const AGGREGATORS = ["max", "avg", "sum", "top-50"];
const SCHEMES = ["all", "simple", "shortest-all", "shortest-one"];
const DIRECTIONS = ["upstream", "downstream"];
const COLOR_MODES: ColorMode[] = ["intrinsic", "network", "influence", "vulnerability"];

function select(
  label: string,
  options: string[],
  value: string,
  onChange: (v: string) => void,
): HTMLLabelElement {
  const wrap = document.createElement("label");
  wrap.textContent = label + " ";
  const sel = document.createElement("select");
  for (const option of options) {
    const o = document.createElement("option");
    o.value = option;
    o.textContent = option;
    if (option === value) o.selected = true;
    sel.appendChild(o);
  }
  sel.addEventListener("change", () => onChange(sel.value));
  wrap.appendChild(sel);
  return wrap;
}

export function renderControls(
  container: HTMLElement,
  store: AppStore,
  actions: Actions,
): void {
  container.textContent = "";
  const heading = document.createElement("h2");
  heading.textContent = "Harm definition";
  container.appendChild(heading);

  const run = (work: Promise<void>) => void work.catch(() => undefined);
  const config = store.config;

  if (store.graph !== null) {
    container.appendChild(
      select("target", store.graph.nodes.map((n) => n.label), store.target ?? "", (v) =>
        run(actions.setTarget(v)),
      ),
    );
  }
  container.appendChild(
    select("inner", AGGREGATORS, config.inner, (v) => run(actions.setConfig({ inner: v }))),
  );
  container.appendChild(
    select("outer", AGGREGATORS, config.outer, (v) => run(actions.setConfig({ outer: v }))),
  );
  container.appendChild(
    select("scheme", SCHEMES, config.scheme, (v) => run(actions.setConfig({ scheme: v }))),
  );
  container.appendChild(
    select("direction", DIRECTIONS, config.direction, (v) =>
      run(actions.setConfig({ direction: v })),
    ),
  );

  const alphaWrap = document.createElement("label");
  alphaWrap.textContent = `alpha ${config.alpha.toFixed(2)} `;
  const alpha = document.createElement("input");
  alpha.type = "range";
  alpha.min = "0.01";
  alpha.max = "1";
  alpha.step = "0.01";
  alpha.value = String(config.alpha);
  alpha.addEventListener("change", () =>
    run(actions.setConfig({ alpha: Number(alpha.value) })),
  );
  alphaWrap.appendChild(alpha);
  container.appendChild(alphaWrap);

  const depthWrap = document.createElement("label");
  depthWrap.textContent = "depth ";
  const depth = document.createElement("input");
  depth.type = "number";
  depth.min = "1";
  depth.placeholder = "auto";
  if (config.m_max !== null) depth.value = String(config.m_max);
  depth.addEventListener("change", () =>
    run(actions.setConfig({ m_max: depth.value === "" ? null : Number(depth.value) })),
  );
  depthWrap.appendChild(depth);
  container.appendChild(depthWrap);

  container.appendChild(
    select("colour by", COLOR_MODES, store.colorMode, (v) => {
      store.colorMode = v as ColorMode;
      store.notify();
      if (v === "influence" || v === "vulnerability") {
        run(actions.loadRankings(v as "influence" | "vulnerability", 100));
      }
    }),
  );

  const score = scoreReadout(store);
  if (score !== null) {
    const h = document.createElement("p");
    h.className = "score";
    h.dataset["field"] = "H";
    h.textContent = `H(${score.target}) = ${score.h}`;
    container.appendChild(h);
    const table = document.createElement("table");
    table.className = "levels";
    const head = document.createElement("tr");
    for (const col of ["m", "size", "level harm", "damped"]) {
      const th = document.createElement("th");
      th.textContent = col;
      head.appendChild(th);
    }
    table.appendChild(head);
    for (const row of score.levels) {
      const tr = document.createElement("tr");
      for (const cell of [row.m, row.size, row.x, row.weighted]) {
        const td = document.createElement("td");
        td.textContent = cell;
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    container.appendChild(table);
  }

  const presetButton = document.createElement("button");
  presetButton.textContent = "compare intention (alpha 0.15) vs consequence (alpha 0.85)";
  presetButton.addEventListener("click", () => run(actions.loadPresetComparison()));
  container.appendChild(presetButton);
  const presets = presetReadout(store);
  if (presets !== null) {
    const p = document.createElement("p");
    p.className = "presets";
    p.textContent = `intention H = ${presets.intention}   consequence H = ${presets.consequence}`;
    container.appendChild(p);
  }
}
