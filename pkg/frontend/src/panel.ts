/** What-if panel: act on the selected node, watch the target's score move. */

import type { Actions } from "./actions.js";
import type { AppStore } from "./state.js";
import { sessionReadout } from "./view.js";

function button(label: string, onClick: () => void): HTMLButtonElement {
  const b = document.createElement("button");
  b.textContent = label;
  b.addEventListener("click", onClick);
  return b;
}

export function renderWhatIfPanel(
  container: HTMLElement,
  store: AppStore,
  actions: Actions,
): void {
  container.textContent = "";
  const heading = document.createElement("h2");
  heading.textContent = "What-if";
  container.appendChild(heading);

  const selected = store.selected;
  const picker = document.createElement("p");
  picker.className = "hint";
  picker.textContent =
    selected === null
      ? "Click a node in the network to act on it."
      : `Selected: ${selected}`;
  container.appendChild(picker);

  const run = (work: Promise<void>) => {
    work.catch(() => {
      /* surfaced via store.lastError; retry button below */
    });
  };

  if (selected !== null && selected !== store.target) {
    const row = document.createElement("div");
    row.className = "actions";
    row.appendChild(button("set harm to 100", () => run(actions.setHarm100(selected))));
    const custom = document.createElement("input");
    custom.type = "number";
    custom.min = "0";
    custom.max = "100";
    custom.value = "50";
    row.appendChild(custom);
    row.appendChild(
      button("set custom harm", () => run(actions.setHarm(selected, Number(custom.value)))),
    );
    row.appendChild(button("remove from network", () => run(actions.removeNode(selected))));
    container.appendChild(row);
  }
  container.appendChild(button("reset to baseline", () => run(actions.reset())));

  const readout = sessionReadout(store);
  if (readout !== null) {
    const dl = document.createElement("dl");
    dl.className = "readout";
    for (const [k, v] of [
      ["H (scenario)", readout.h],
      ["baseline", readout.baseline],
      ["delta", readout.delta],
    ]) {
      const dt = document.createElement("dt");
      dt.textContent = k!;
      const dd = document.createElement("dd");
      dd.textContent = v!;
      dd.dataset["field"] = k!;
      dl.appendChild(dt);
      dl.appendChild(dd);
    }
    container.appendChild(dl);
    if (readout.overrides.length > 0 || readout.removed.length > 0) {
      const overlay = document.createElement("p");
      overlay.className = "hint";
      const parts = readout.overrides.map((o) => `${o.node}=${o.harm}`);
      if (readout.removed.length > 0) parts.push(`removed: ${readout.removed.join(", ")}`);
      overlay.textContent = parts.join("  ");
      container.appendChild(overlay);
    }
  }

  if (store.lastError !== null) {
    const error = document.createElement("p");
    error.className = "error";
    error.textContent = store.lastError;
    container.appendChild(error);
    container.appendChild(
      button("retry last readout", () => {
        store.setError(null);
        run(actions.openSession());
      }),
    );
  }

  const logHeading = document.createElement("h3");
  logHeading.textContent = "Action log";
  container.appendChild(logHeading);
  const log = document.createElement("ol");
  log.className = "log";
  for (const entry of store.actionLog.slice(-12)) {
    const li = document.createElement("li");
    li.textContent = entry;
    log.appendChild(li);
  }
  container.appendChild(log);
}
