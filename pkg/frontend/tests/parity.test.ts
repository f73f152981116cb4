/** Rendering parity with recorded service payloads: every percentage the
 * UI shows is the server's probability rounded to one decimal, nothing
 * else. Fixtures were captured from the live service over the bundled
 * model. */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { formatPercent } from "../src/format.js";
import { Store } from "../src/store.js";
import type { InferPayload } from "../src/types.js";
import { FakeServer, settle } from "./helpers.js";

import baseline from "./fixtures/infer_baseline.json";
import worstFull from "./fixtures/infer_worst_full.json";

const BASELINE = baseline as unknown as InferPayload;
const WORST_FULL = worstFull as unknown as InferPayload;

function independentOneDecimal(probability: number): string {
  // reference rounding, written differently from the implementation
  const scaled = probability * 100;
  const rounded = Math.round(scaled * 10) / 10;
  return `${rounded.toFixed(1)}%`;
}

describe("percentage parity with /api/infer payloads", () => {
  it.each([
    ["baseline", BASELINE],
    ["worst_case_full", WORST_FULL],
  ])("%s: every rendered percentage equals the payload at 1 decimal",
     (_name, payload) => {
    let checked = 0;
    for (const [node, states] of Object.entries(payload.posteriors)) {
      for (const [state, probability] of Object.entries(states)) {
        expect(formatPercent(probability),
               `${node}=${state}`).toBe(independentOneDecimal(probability));
        checked += 1;
      }
    }
    expect(checked).toBeGreaterThanOrEqual(56); // 28 nodes x >=2 states
  });

  it("frozen headline values render as reported", () => {
    expect(formatPercent(BASELINE.posteriors.road_deterioration.yes))
      .toBe("36.2%");
    expect(formatPercent(BASELINE.posteriors.collapse_of_culvert_bridge.yes))
      .toBe("48.5%");
    expect(formatPercent(WORST_FULL.posteriors.road_deterioration.yes))
      .toBe("73.1%");
    expect(formatPercent(WORST_FULL.posteriors.collapse_of_culvert_bridge.yes))
      .toBe("86.6%");
  });

  it("the store keeps payload probabilities bit-identical", async () => {
    const server = new FakeServer();
    const store = new Store(new ApiClient(server.fetch));
    const boot = store.start();
    await settle();
    server.respondModel();
    await settle();
    server.respond(BASELINE);
    await boot;

    const state = store.state();
    expect(state.posteriors).toEqual(BASELINE.posteriors);
    expect(state.posteriors?.road_deterioration.yes)
      .toBe(BASELINE.posteriors.road_deterioration.yes);
    expect(state.posteriorHash).toBe(BASELINE.model_hash);
    expect(state.acknowledgedEvidence).toEqual(BASELINE.evidence);
  });

  it("evidence nodes arrive from the server as point masses", () => {
    for (const [node, state] of Object.entries(WORST_FULL.evidence)) {
      expect(WORST_FULL.posteriors[node][state]).toBe(1.0);
    }
  });
});
