import { Actions } from "./actions.js";
import { ApiClient } from "./api.js";
import { renderControls } from "./controls.js";
import { renderWhatIfPanel } from "./panel.js";
import { renderNetwork } from "./render.js";
import { AppStore } from "./state.js";

const api = new ApiClient("");
const store = new AppStore();
const actions = new Actions(api, store);

function mount(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node;
}

const networkPane = mount("network");
const controlsPane = mount("controls");
const whatifPane = mount("whatif");

let scheduled = false;
store.subscribe(() => {
  if (scheduled) return;
  scheduled = true;
  requestAnimationFrame(() => {
    scheduled = false;
    renderNetwork(networkPane, store);
    renderControls(controlsPane, store, actions);
    renderWhatIfPanel(whatifPane, store, actions);
  });
});

(async () => {
  try {
    await actions.loadGraph();
    await Promise.all([actions.rescore(), actions.openSession()]);
  } catch (error) {
    store.setError(error instanceof Error ? error.message : String(error));
  }
})();
