/** In-memory implementation of the control API contract, used as the
 * injectable fetch for client tests. State persists across client
 * instances, which is how "survives reload" is exercised. */

import type { Assignment, OperationStatus, StatsBundle } from "../src/types.js";
import type { FetchLike } from "../src/api.js";

interface StoredOperation {
  status: OperationStatus;
}

export class FakeServer {
  operations = new Map<string, StoredOperation>();
  assignments = new Map<string, Assignment>();
  reports = new Map<string, unknown>(); // key: `${operationId}/${kind}`
  private nextOp = 1;

  seedAssignment(partial: Partial<Assignment> & { assignment_id: string }): void {
    this.assignments.set(partial.assignment_id, {
      record_key: "10.0.0.1:443:https:default",
      entity_id: "klinik-a",
      score: { total: 60, evidence: [{ signal: "rdns_suffix", matched_value: "x", weight: 60 }] },
      status: "pending_review",
      conflict: false,
      decided_by: null,
      decided_at: null,
      operation_id: "op-1",
      ...partial,
    });
  }

  seedReport(operationId: string, kind: string, doc: unknown): void {
    this.reports.set(`${operationId}/${kind}`, doc);
  }

  /** fetch-compatible entry point */
  fetch: FetchLike = async (url, init) => {
    const { pathname, searchParams } = new URL(url);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;

    if (method === "POST" && pathname === "/operations") {
      if (!Array.isArray(body.ranges) || body.ranges.length === 0) {
        return json(400, { detail: "ranges required" });
      }
      const id = `op-${this.nextOp++}`;
      this.operations.set(id, {
        status: {
          operation_id: id,
          total_units: 4,
          pending: 4,
          assigned: 0,
          completed: 0,
          failed: 0,
          started_at: 0,
          finished_at: null,
          finished: false,
          site_groups: body.site_groups ?? ["default"],
          per_group_completed: {},
          per_group_total: {},
        },
      });
      return json(201, { operation_id: id, unit_count: 4 });
    }

    let match = pathname.match(/^\/operations\/([^/]+)$/);
    if (method === "GET" && match) {
      const op = this.operations.get(match[1]);
      return op ? json(200, op.status) : json(404, { detail: `unknown operation ${match[1]}` });
    }

    if (method === "GET" && pathname === "/nodes") {
      return json(200, { nodes: [] });
    }

    if (method === "GET" && pathname === "/assignments") {
      const status = searchParams.get("status");
      const items = [...this.assignments.values()]
        .filter((a) => status === null || a.status === status)
        .sort((a, b) => a.assignment_id.localeCompare(b.assignment_id));
      return json(200, { assignments: items });
    }

    match = pathname.match(/^\/assignments\/([^/]+)\/decision$/);
    if (method === "POST" && match) {
      const id = decodeURIComponent(match[1]);
      const assignment = this.assignments.get(id);
      if (!assignment) return json(404, { detail: `unknown assignment ${id}` });
      if (assignment.status === "accepted" || assignment.status === "rejected") {
        return json(409, {
          detail: `${id} already ${assignment.status} by ${assignment.decided_by}`,
        });
      }
      if (body.decision !== "accepted" && body.decision !== "rejected") {
        return json(400, { detail: "decision must be accepted|rejected" });
      }
      assignment.status = body.decision;
      assignment.decided_by = body.reviewer;
      assignment.decided_at = Date.now() / 1000;
      return json(200, assignment);
    }

    match = pathname.match(/^\/operations\/([^/]+)\/report\/([^/]+)$/);
    if (method === "GET" && match) {
      const doc = this.reports.get(`${match[1]}/${match[2]}`);
      return doc !== undefined
        ? json(200, doc)
        : json(404, { detail: `no ${match[2]} report for ${match[1]}` });
    }

    return json(404, { detail: `no route for ${method} ${pathname}` });
  };
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function fixtureStats(): StatsBundle {
  return {
    total_entities: 1555,
    entities_with_services: 1228,
    total_services: 13497,
    mean_services_per_entity: 13497 / 1555,
    vulnerable_entities: 447,
    vulnerable_entity_ratio: 447 / 1228,
    vulnerable_services: 1892,
    vulnerable_service_ratio: 1892 / 13497,
    severity_histogram: { critical: 931, high: 443, medium: 518, low: 0, none: 11605 },
    vulnerable_beds: 167000,
    total_beds: 520000,
    bed_ratio: 167000 / 520000,
    display: {
      mean_services_per_entity: "8.7",
      vulnerable_entity_ratio: "36.4%",
      vulnerable_service_ratio: "14.0%",
      bed_ratio: "32%",
    },
  };
}
