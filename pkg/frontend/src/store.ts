/** Application state and the coalesced inference loop.
 *
 * Rules the store enforces:
 *  - at most one inference request is in flight; evidence toggles that
 *    arrive mid-flight are folded into a single follow-up request;
 *  - a response is applied only if its sequence number is the latest
 *    issued (anything else is stale and dropped);
 *  - the evidence shown to the user is the evidence last acknowledged by
 *    the server, and displayed posteriors always carry the model hash
 *    they were computed against;
 *  - impossible evidence (422) raises a banner and rolls the pending
 *    evidence back to the last acknowledged state.
 */

import { ApiClient, ApiError } from "./api.js";
import type { Evidence, InferPayload, ModelPayload } from "./types.js";

export interface StoreState {
  model: ModelPayload | null;
  /** Evidence the user wants; becomes acknowledged once the server echoes it. */
  pendingEvidence: Evidence;
  /** Evidence echoed by the server with the current posteriors. */
  acknowledgedEvidence: Evidence;
  posteriors: Record<string, Record<string, number>> | null;
  /** Hash the displayed posteriors were computed against. */
  posteriorHash: string | null;
  banner: string | null;
  requestsInFlight: boolean;
}

type Listener = (state: StoreState) => void;

export class Store {
  private readonly api: ApiClient;
  private readonly listeners: Listener[] = [];

  private model: ModelPayload | null = null;
  private pendingEvidence: Evidence = {};
  private acknowledgedEvidence: Evidence = {};
  private posteriors: Record<string, Record<string, number>> | null = null;
  private posteriorHash: string | null = null;
  private banner: string | null = null;

  private sequence = 0;
  private inFlight = false;
  private dirty = false;
  /** Requests actually sent, for tests and diagnostics. */
  requestCount = 0;

  constructor(api: ApiClient) {
    this.api = api;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  state(): StoreState {
    return {
      model: this.model,
      pendingEvidence: { ...this.pendingEvidence },
      acknowledgedEvidence: { ...this.acknowledgedEvidence },
      posteriors: this.posteriors,
      posteriorHash: this.posteriorHash,
      banner: this.banner,
      requestsInFlight: this.inFlight,
    };
  }

  private emit(): void {
    const snapshot = this.state();
    for (const listener of this.listeners) listener(snapshot);
  }

  async start(): Promise<void> {
    this.model = await this.api.getModel();
    this.emit();
    await this.refresh();
  }

  /** Set, change, or clear (state = null) evidence on one node. */
  setEvidence(nodeId: string, state: string | null): Promise<void> {
    if (state === null) {
      delete this.pendingEvidence[nodeId];
    } else {
      this.pendingEvidence[nodeId] = state;
    }
    this.emit();
    return this.refresh();
  }

  /** Replace the whole evidence map (presets, clear-all). */
  applyEvidence(evidence: Evidence): Promise<void> {
    this.pendingEvidence = { ...evidence };
    this.emit();
    return this.refresh();
  }

  dismissBanner(): void {
    this.banner = null;
    this.emit();
  }

  /** Coalescing entry point: one request in flight, newest state wins. */
  private refresh(): Promise<void> {
    if (this.inFlight) {
      this.dirty = true;
      return Promise.resolve();
    }
    return this.send();
  }

  private async send(): Promise<void> {
    this.inFlight = true;
    this.dirty = false;
    const seq = ++this.sequence;
    const evidence = { ...this.pendingEvidence };
    this.requestCount += 1;
    this.emit();
    try {
      const payload = await this.api.infer(evidence);
      this.applyResponse(seq, payload);
    } catch (error) {
      this.applyFailure(seq, error);
    }
    this.inFlight = false;
    if (this.dirty) {
      await this.send();
    } else {
      this.emit();
    }
  }

  /** Apply a successful response unless it is stale. */
  applyResponse(seq: number, payload: InferPayload): void {
    if (seq !== this.sequence) return; // stale: a newer request was issued
    this.posteriors = payload.posteriors;
    this.posteriorHash = payload.model_hash;
    this.acknowledgedEvidence = { ...payload.evidence };
    this.banner = null;
  }

  applyFailure(seq: number, error: unknown): void {
    if (seq !== this.sequence) return;
    if (error instanceof ApiError && error.status === 422) {
      this.banner = `Impossible evidence: ${error.message}`;
    } else if (error instanceof ApiError) {
      this.banner = `${error.code}: ${error.message}`;
    } else {
      this.banner = String(error);
    }
    // the offending toggle reverts to the last acknowledged evidence
    this.pendingEvidence = { ...this.acknowledgedEvidence };
    this.dirty = false;
  }
}
