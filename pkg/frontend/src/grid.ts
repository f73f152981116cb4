/** Sweep grid construction: turns a SweepPayload into a row/column table
 * and mirrors the server's cell cap so oversized requests are disabled
 * before they are sent. */

import type { ModelNode, SweepCellPayload, SweepPayload } from "./types.js";

/** Server-side sweep limit, mirrored client-side. */
export const MAX_SWEEP_CELLS = 10_000;
export const MAX_AXES = 2;

export interface GridCell {
  rowState: string;
  colState: string;
  probability: number | null;
  error: string | null;
}

export interface GridModel {
  rowAxis: string;
  rowStates: string[];
  colAxis: string | null;
  colStates: string[];
  /** cells[row][col], row-major like the server's cell order. */
  cells: GridCell[][];
}

export function sweepCellCount(axes: { states: string[] }[]): number {
  return axes.reduce((n, axis) => n * axis.states.length, 1);
}

export function sweepSelectionProblem(
  axes: { node: string; states: string[] }[],
  targetNode: string,
  evidence: Record<string, string>,
): string | null {
  if (axes.length === 0) return "pick at least one axis";
  if (axes.length > MAX_AXES) return `at most ${MAX_AXES} axes`;
  const seen = new Set<string>();
  for (const axis of axes) {
    if (axis.node === targetNode) return "axis equals the target";
    if (axis.node in evidence) return `${axis.node} is fixed by evidence`;
    if (seen.has(axis.node)) return `${axis.node} picked twice`;
    seen.add(axis.node);
  }
  if (sweepCellCount(axes) > MAX_SWEEP_CELLS) {
    return `selection exceeds ${MAX_SWEEP_CELLS} cells`;
  }
  return null;
}

function cellFor(
  payload: SweepPayload,
  assignment: Record<string, string>,
): SweepCellPayload | undefined {
  return payload.cells.find((cell) =>
    Object.entries(assignment).every(([k, v]) => cell.assignment[k] === v),
  );
}

/** Lay the server's cells out as rows x columns (single-axis sweeps
 * become a one-column grid, the bar-list case). */
export function buildGrid(payload: SweepPayload): GridModel {
  const [rowAxis, colAxis] = payload.axes;
  const colStates = colAxis ? colAxis.states : ["value"];
  const cells: GridCell[][] = payload.axes.length === 1
    ? rowAxis.states.map((rowState) => {
        const cell = cellFor(payload, { [rowAxis.node]: rowState });
        return [{
          rowState,
          colState: "value",
          probability: cell?.probability ?? null,
          error: cell?.error ?? null,
        }];
      })
    : rowAxis.states.map((rowState) =>
        colAxis.states.map((colState) => {
          const cell = cellFor(payload, {
            [rowAxis.node]: rowState,
            [colAxis.node]: colState,
          });
          return {
            rowState,
            colState,
            probability: cell?.probability ?? null,
            error: cell?.error ?? null,
          };
        }),
      );
  return {
    rowAxis: rowAxis.node,
    rowStates: rowAxis.states,
    colAxis: colAxis ? colAxis.node : null,
    colStates,
    cells,
  };
}

/** Axis candidates: any node that is neither the target nor evidence. */
export function axisCandidates(
  nodes: ModelNode[],
  targetNode: string,
  evidence: Record<string, string>,
): ModelNode[] {
  return nodes.filter((n) => n.id !== targetNode && !(n.id in evidence));
}
