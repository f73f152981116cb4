/** DOM rendering. All numbers shown come from server payloads via
 * format.ts; nothing here computes probabilities. */

import { barWidth, cellColor, formatPercent, shortHash } from "./format.js";
import type { GridModel } from "./grid.js";
import type { StoreState } from "./store.js";
import type { ModelNode, ScenarioEntry } from "./types.js";

const GROUP_TITLES: [string, string][] = [
  ["root", "Climate drivers"],
  ["context", "Asset condition and exposure"],
  ["intermediate", "Intermediate effects"],
  ["outcome", "Outcomes"],
];

export interface UiCallbacks {
  onToggleEvidence(nodeId: string, state: string | null): void;
  onPreset(scenario: ScenarioEntry): void;
  onClearAll(): void;
  onDismissBanner(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderNodeCard(
  node: ModelNode,
  state: StoreState,
  callbacks: UiCallbacks,
): HTMLElement {
  const observed = state.acknowledgedEvidence[node.id];
  const pending = state.pendingEvidence[node.id];
  const card = el("div", "node-card" + (observed ? " locked" : ""));

  const head = el("div", "node-head");
  const title = el("span", "node-label", node.label);
  title.title = node.id;
  head.appendChild(title);
  if (node.provenance.reconstructed > 0) {
    const badge = el(
      "span",
      "badge-reconstructed",
      `${node.provenance.reconstructed} reconstructed`,
    );
    badge.title =
      `${node.provenance.reconstructed} of ` +
      `${node.provenance.reconstructed + node.provenance.paper} CPT columns ` +
      "are reconstructions of garbled source values";
    head.appendChild(badge);
  }
  if (observed) head.appendChild(el("span", "lock", "locked"));
  card.appendChild(head);

  const posterior = state.posteriors?.[node.id];
  for (const stateName of node.states) {
    const row = el("div", "state-row");
    const button = el(
      "button",
      "state-toggle" + (pending === stateName ? " active" : ""),
      stateName,
    );
    button.addEventListener("click", () =>
      callbacks.onToggleEvidence(node.id, pending === stateName ? null : stateName),
    );
    row.appendChild(button);

    const track = el("div", "bar-track");
    const fill = el("div", "bar-fill" + (node.group === "outcome" ? " outcome" : ""));
    const p = posterior ? posterior[stateName] : undefined;
    fill.style.width = p === undefined ? "0" : `${barWidth(p)}%`;
    track.appendChild(fill);
    row.appendChild(track);
    row.appendChild(el("span", "pct", p === undefined ? "–" : formatPercent(p)));
    card.appendChild(row);
  }
  return card;
}

export function renderApp(
  root: HTMLElement,
  state: StoreState,
  scenarios: ScenarioEntry[],
  callbacks: UiCallbacks,
): void {
  root.replaceChildren();

  const header = el("header");
  header.appendChild(el("h1", undefined, "Road climate risk explorer"));
  if (state.model) {
    header.appendChild(
      el("span", "model-id",
         `${state.model.name} @ ${shortHash(state.model.model_hash)}`),
    );
  }
  if (state.requestsInFlight) header.appendChild(el("span", "spinner", "querying…"));
  root.appendChild(header);

  if (state.banner) {
    const banner = el("div", "banner", state.banner);
    const dismiss = el("button", "dismiss", "dismiss");
    dismiss.addEventListener("click", callbacks.onDismissBanner);
    banner.appendChild(dismiss);
    root.appendChild(banner);
  }

  const presets = el("div", "presets");
  presets.appendChild(el("span", "presets-label", "Presets:"));
  for (const scenario of scenarios) {
    const button = el("button", "preset", scenario.label);
    button.addEventListener("click", () => callbacks.onPreset(scenario));
    presets.appendChild(button);
  }
  const clear = el("button", "preset clear", "Clear evidence");
  clear.addEventListener("click", callbacks.onClearAll);
  presets.appendChild(clear);
  root.appendChild(presets);

  if (!state.model) {
    root.appendChild(el("p", undefined, "loading model…"));
    return;
  }

  const groups = el("div", "groups");
  for (const [group, title] of GROUP_TITLES) {
    const nodes = state.model.nodes.filter((n) => n.group === group);
    if (!nodes.length) continue;
    const section = el("section", "group");
    section.appendChild(el("h2", undefined, title));
    for (const node of nodes) {
      section.appendChild(renderNodeCard(node, state, callbacks));
    }
    groups.appendChild(section);
  }
  root.appendChild(groups);

  if (state.posteriorHash) {
    root.appendChild(
      el("footer", undefined,
         `posteriors computed against model ${shortHash(state.posteriorHash)}`),
    );
  }
}

export function renderGrid(
  container: HTMLElement,
  grid: GridModel,
  targetLabel: string,
): void {
  container.replaceChildren();
  container.appendChild(el("h3", undefined, targetLabel));
  const table = el("table", "sweep-grid");
  const headRow = el("tr");
  headRow.appendChild(el("th", undefined, grid.colAxis ? `${grid.rowAxis} \\ ${grid.colAxis}` : grid.rowAxis));
  for (const colState of grid.colStates) {
    headRow.appendChild(el("th", undefined, colState));
  }
  table.appendChild(headRow);
  for (const row of grid.cells) {
    const tr = el("tr");
    tr.appendChild(el("th", undefined, row[0]?.rowState ?? ""));
    for (const cell of row) {
      const td = el("td", "cell");
      if (cell.probability !== null) {
        td.textContent = formatPercent(cell.probability);
        td.style.background = cellColor(cell.probability);
      } else {
        td.textContent = "×";
        td.className = "cell cell-error";
        td.title = cell.error ?? "no value";
      }
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
}
