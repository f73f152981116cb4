/** Test doubles: a scriptable fake of the inference service. */

import type { FetchLike } from "../src/api.js";
import type { Evidence, InferPayload, ModelPayload } from "../src/types.js";

import modelFixture from "./fixtures/model.json";

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export interface PendingRequest {
  url: string;
  body: { evidence?: Evidence } | null;
  resolve: (response: Response) => void;
}

/** Records every request; the test decides when and how each resolves. */
export class FakeServer {
  pending: PendingRequest[] = [];

  fetch: FetchLike = (url, init) =>
    new Promise((resolve) => {
      this.pending.push({
        url,
        body: init?.body ? JSON.parse(init.body as string) : null,
        resolve,
      });
    });

  /** Resolve the oldest pending request. */
  respond(body: unknown, status = 200): PendingRequest {
    const request = this.pending.shift();
    if (!request) throw new Error("no pending request");
    request.resolve(jsonResponse(body, status));
    return request;
  }

  respondModel(): PendingRequest {
    return this.respond(modelFixture as unknown as ModelPayload);
  }
}

export function inferPayload(
  evidence: Evidence,
  posteriors: Record<string, Record<string, number>>,
  modelHash = "hash-1",
): InferPayload {
  return {
    scenario_id: "adhoc",
    evidence,
    posteriors,
    model_name: "fake",
    model_hash: modelHash,
    engine: "elimination",
  };
}

/** Let queued promise callbacks run. */
export function settle(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
