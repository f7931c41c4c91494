/** Curation queue: the human decision loop.
 *
 * Decisions are explicit user actions, applied optimistically and rolled
 * back when the API refuses (a 409 means someone else decided first; the
 * conflict is surfaced, never retried). Rejecting an auto-accepted
 * assignment requires a confirmation step.
 */

import type { ApiClient } from "../api.js";
import { ApiError } from "../api.js";
import { html, raw } from "../html.js";
import type { Assignment } from "../types.js";

export interface CurationState {
  items: Assignment[];
  notice: string | null;
  /** assignment id awaiting a reject confirmation */
  confirming: string | null;
}

export class CurationController {
  state: CurationState = { items: [], notice: null, confirming: null };

  constructor(
    private readonly api: ApiClient,
    private readonly reviewer: string,
  ) {}

  async load(): Promise<void> {
    const { assignments } = await this.api.assignments("pending_review");
    this.state = { items: assignments, notice: null, confirming: null };
  }

  /** Queue view also offers reconsidering auto-accepted assignments. */
  async loadIncludingAuto(): Promise<void> {
    const pending = await this.api.assignments("pending_review");
    const autos = await this.api.assignments("auto_accepted");
    this.state = {
      items: [...pending.assignments, ...autos.assignments],
      notice: null,
      confirming: null,
    };
  }

  /** First step of a decision. Rejecting an auto-accepted assignment is
   * destructive enough to demand confirmation; everything else applies
   * immediately. Returns "confirm" when confirmation is now pending. */
  async decide(
    assignmentId: string,
    decision: "accepted" | "rejected",
  ): Promise<"applied" | "confirm" | "rolled_back"> {
    const item = this.state.items.find((a) => a.assignment_id === assignmentId);
    if (!item) return "rolled_back";
    if (
      decision === "rejected" &&
      item.status === "auto_accepted" &&
      this.state.confirming !== assignmentId
    ) {
      this.state.confirming = assignmentId;
      return "confirm";
    }
    return this.apply(item, decision);
  }

  private async apply(
    item: Assignment,
    decision: "accepted" | "rejected",
  ): Promise<"applied" | "rolled_back"> {
    // optimistic: the item leaves the queue right away
    const before = this.state.items;
    this.state = {
      items: before.filter((a) => a.assignment_id !== item.assignment_id),
      notice: null,
      confirming: null,
    };
    try {
      await this.api.decide(item.assignment_id, decision, this.reviewer);
      return "applied";
    } catch (error) {
      // roll the optimistic update back and surface the refusal
      const notice =
        error instanceof ApiError && error.status === 409
          ? `conflict: ${error.detail}`
          : `decision failed: ${error instanceof Error ? error.message : error}`;
      this.state = { items: before, notice, confirming: null };
      return "rolled_back";
    }
  }

  cancelConfirmation(): void {
    this.state.confirming = null;
  }
}

export function renderQueue(state: CurationState): string {
  if (state.items.length === 0 && !state.notice) {
    return html`<section class="curation"><p>Queue is empty.</p></section>`;
  }
  const rows = state.items
    .map((a) => {
      // evidence table rendered verbatim from the API payload
      const evidence = a.score.evidence
        .map(
          (e) => html`<tr>
            <td>${e.signal}</td><td>${e.matched_value}</td><td>${e.weight}</td>
          </tr>`,
        )
        .join("");
      const confirming = state.confirming === a.assignment_id;
      return html`
        <article class="queue-item" data-assignment="${a.assignment_id}">
          <h3>${a.entity_id}</h3>
          <p class="asset">${a.record_key}${a.conflict ? " ⚠ conflicting auto-match" : ""}</p>
          <p class="score">score ${a.score.total} (${a.status})</p>
          <table class="evidence">${raw(evidence)}</table>
          ${raw(
            confirming
              ? html`<p class="confirm" data-role="confirm">
                  Reject an auto-accepted assignment?
                  <button data-action="confirm-reject">Yes, reject</button>
                  <button data-action="cancel">Cancel</button>
                </p>`
              : html`<p>
                  <button data-action="accept">Accept</button>
                  <button data-action="reject">Reject</button>
                </p>`,
          )}
        </article>`;
    })
    .join("");
  const notice = state.notice
    ? html`<p class="notice" data-role="notice">${state.notice}</p>`
    : "";
  return html`<section class="curation">${raw(notice)}${raw(rows)}</section>`;
}
