/** Wire types for the inference service API. */

export type Evidence = Record<string, string>;
export type StateProbabilities = Record<string, number>;

export interface ProvenanceSummary {
  paper: number;
  reconstructed: number;
}

export type NodeGroup = "root" | "context" | "intermediate" | "outcome";

export interface ModelNode {
  id: string;
  label: string;
  states: string[];
  parents: string[];
  group: NodeGroup;
  provenance: ProvenanceSummary;
}

export interface ModelPayload {
  name: string;
  model_hash: string;
  nodes: ModelNode[];
}

export interface InferPayload {
  scenario_id: string;
  evidence: Evidence;
  posteriors: Record<string, StateProbabilities>;
  model_name: string;
  model_hash: string;
  engine: string;
}

export interface ScenarioEntry {
  id: string;
  label: string;
  evidence: Evidence;
  targets: string[];
}

export interface ScenariosPayload {
  scenarios: ScenarioEntry[];
}

export interface SweepCellPayload {
  assignment: Evidence;
  probability: number | null;
  error: string | null;
}

export interface SweepPayload {
  target: { node: string; state: string };
  axes: { node: string; states: string[] }[];
  fixed: Evidence;
  cells: SweepCellPayload[];
  model_name: string;
  model_hash: string;
}

export interface ApiErrorPayload {
  error: string;
  detail: string;
}
