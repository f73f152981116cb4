/** Thin fetch client for the inference service.
 *
 * Every method resolves with the parsed JSON payload or rejects with an
 * ApiError carrying the service's {error, detail} body, so callers can
 * distinguish impossible evidence (422) from bad references (400).
 */

import type {
  Evidence,
  InferPayload,
  ModelPayload,
  ScenariosPayload,
  SweepPayload,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, detail: string) {
    super(detail);
    this.status = status;
    this.code = code;
  }
}

export interface SweepRequest {
  target: { node: string; state: string };
  axes: { node: string; states?: string[] }[];
  fixed: Evidence;
}

async function reject(response: Response): Promise<never> {
  let code = "error";
  let detail = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") code = body.error;
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, code, detail);
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;
  private readonly base: string;

  constructor(fetchImpl?: FetchLike, base = "") {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
    this.base = base;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.base + path);
    if (!response.ok) await reject(response);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await reject(response);
    return (await response.json()) as T;
  }

  getModel(): Promise<ModelPayload> {
    return this.getJson("/api/model");
  }

  infer(evidence: Evidence): Promise<InferPayload> {
    return this.postJson("/api/infer", { evidence });
  }

  getScenarios(): Promise<ScenariosPayload> {
    return this.getJson("/api/scenarios");
  }

  runScenario(id: string): Promise<InferPayload> {
    return this.postJson(`/api/scenarios/${encodeURIComponent(id)}/run`, {});
  }

  sweep(request: SweepRequest): Promise<SweepPayload> {
    return this.postJson("/api/sweep", request);
  }

  /** The server's CSV export, byte for byte. */
  async sweepCsv(request: SweepRequest): Promise<string> {
    const response = await this.fetchImpl(this.base + "/api/sweep?format=csv", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok) await reject(response);
    return response.text();
  }
}
