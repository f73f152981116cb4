/** Bootstrap: wire the store, the sweep panel, and the DOM together. */

import { ApiClient } from "./api.js";
import {
  MAX_AXES,
  axisCandidates,
  buildGrid,
  sweepSelectionProblem,
} from "./grid.js";
import { Store } from "./store.js";
import type { ScenarioEntry } from "./types.js";
import { renderApp, renderGrid } from "./ui.js";

const api = new ApiClient();
const store = new Store(api);

let scenarios: ScenarioEntry[] = [];

const appRoot = document.getElementById("app") as HTMLElement;
const sweepForm = document.getElementById("sweep-form") as HTMLElement;
const sweepResult = document.getElementById("sweep-result") as HTMLElement;

const callbacks = {
  onToggleEvidence: (nodeId: string, state: string | null) => {
    void store.setEvidence(nodeId, state);
  },
  onPreset: (scenario: ScenarioEntry) => {
    void store.applyEvidence(scenario.evidence);
  },
  onClearAll: () => {
    void store.applyEvidence({});
  },
  onDismissBanner: () => store.dismissBanner(),
};

function option(value: string, label?: string): HTMLOptionElement {
  const node = document.createElement("option");
  node.value = value;
  node.textContent = label ?? value;
  return node;
}

function renderSweepPanel(): void {
  const state = store.state();
  if (!state.model) return;
  sweepForm.replaceChildren();

  const heading = document.createElement("h2");
  heading.textContent = "Condition sweep";
  sweepForm.appendChild(heading);

  const targetSelect = document.createElement("select");
  targetSelect.id = "sweep-target";
  for (const node of state.model.nodes) {
    if (node.group === "outcome" || node.group === "intermediate") {
      targetSelect.appendChild(option(node.id, node.label));
    }
  }
  const outcome = state.model.nodes.find((n) => n.group === "outcome");
  if (outcome) targetSelect.value = outcome.id;

  const stateSelect = document.createElement("select");
  stateSelect.id = "sweep-state";
  const axisSelects: HTMLSelectElement[] = [];

  const refreshStates = () => {
    const target = state.model!.nodes.find((n) => n.id === targetSelect.value);
    stateSelect.replaceChildren();
    for (const s of target?.states ?? []) stateSelect.appendChild(option(s));
    const candidates = axisCandidates(
      state.model!.nodes, targetSelect.value, state.pendingEvidence);
    for (const select of axisSelects) {
      const previous = select.value;
      select.replaceChildren();
      select.appendChild(option("", "(none)"));
      for (const node of candidates) select.appendChild(option(node.id, node.label));
      select.value = [...select.options].some((o) => o.value === previous)
        ? previous : "";
    }
  };

  for (let i = 0; i < MAX_AXES; i++) {
    const select = document.createElement("select");
    select.className = "axis-select";
    axisSelects.push(select);
  }
  refreshStates();
  axisSelects[0].value = "blue_spot";
  axisSelects[1].value = "bridge_condition";
  targetSelect.addEventListener("change", refreshStates);

  const runButton = document.createElement("button");
  runButton.textContent = "Run sweep";
  const downloadButton = document.createElement("button");
  downloadButton.textContent = "Download CSV";
  downloadButton.disabled = true;
  const problemNote = document.createElement("span");
  problemNote.className = "problem";

  const currentSelection = () => {
    const axes = axisSelects
      .map((s) => s.value)
      .filter((v) => v)
      .map((node) => ({
        node,
        states: state.model!.nodes.find((n) => n.id === node)!.states,
      }));
    return {
      target: { node: targetSelect.value, state: stateSelect.value },
      axes,
      fixed: store.state().pendingEvidence,
    };
  };

  const refreshProblem = () => {
    const selection = currentSelection();
    const problem = sweepSelectionProblem(
      selection.axes, selection.target.node, selection.fixed);
    problemNote.textContent = problem ?? "";
    runButton.disabled = problem !== null;
  };
  refreshProblem();
  for (const select of [targetSelect, stateSelect, ...axisSelects]) {
    select.addEventListener("change", refreshProblem);
  }

  runButton.addEventListener("click", async () => {
    const selection = currentSelection();
    runButton.disabled = true;
    try {
      const payload = await api.sweep(selection);
      renderGrid(sweepResult, buildGrid(payload),
                 `P(${payload.target.node} = ${payload.target.state})`);
      downloadButton.disabled = false;
      downloadButton.onclick = async () => {
        const csv = await api.sweepCsv(selection);
        const blob = new Blob([csv], { type: "text/csv" });
        const link = document.createElement("a");
        link.href = URL.createObjectURL(blob);
        link.download = "sweep.csv";
        link.click();
        URL.revokeObjectURL(link.href);
      };
    } catch (error) {
      sweepResult.replaceChildren();
      const note = document.createElement("p");
      note.className = "problem";
      note.textContent = String(error);
      sweepResult.appendChild(note);
    } finally {
      refreshProblem();
    }
  });

  const controls = document.createElement("div");
  controls.className = "sweep-controls";
  controls.append("Target ", targetSelect, " = ", stateSelect,
                  " over ", axisSelects[0], " × ", axisSelects[1],
                  runButton, downloadButton, problemNote);
  sweepForm.appendChild(controls);
}

store.subscribe((state) => {
  renderApp(appRoot, state, scenarios, callbacks);
});

async function boot(): Promise<void> {
  await store.start();
  scenarios = (await api.getScenarios()).scenarios;
  renderApp(appRoot, store.state(), scenarios, callbacks);
  renderSweepPanel();
}

void boot();
