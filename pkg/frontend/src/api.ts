/** Thin fetch client for the control API. One base-URL setting; the
 * fetch implementation is injectable for tests. */

import type {
  Assignment,
  CreatedOperation,
  GeoReport,
  NodeHealth,
  OperationRequest,
  OperationStatus,
  StatsBundle,
  VersionsReport,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`API ${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createOperation(request: OperationRequest): Promise<CreatedOperation> {
    return this.request<CreatedOperation>("/operations", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  operationStatus(operationId: string): Promise<OperationStatus> {
    return this.request<OperationStatus>(`/operations/${operationId}`);
  }

  nodes(): Promise<{ nodes: NodeHealth[] }> {
    return this.request<{ nodes: NodeHealth[] }>("/nodes");
  }

  assignments(status?: string): Promise<{ assignments: Assignment[] }> {
    const query = status ? `?status=${encodeURIComponent(status)}` : "";
    return this.request<{ assignments: Assignment[] }>(`/assignments${query}`);
  }

  decide(
    assignmentId: string,
    decision: "accepted" | "rejected",
    reviewer: string,
  ): Promise<Assignment> {
    return this.request<Assignment>(
      `/assignments/${encodeURIComponent(assignmentId)}/decision`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ decision, reviewer }),
      },
    );
  }

  statsReport(operationId: string): Promise<StatsBundle> {
    return this.request<StatsBundle>(`/operations/${operationId}/report/stats`);
  }

  versionsReport(operationId: string): Promise<VersionsReport> {
    return this.request<VersionsReport>(`/operations/${operationId}/report/versions`);
  }

  geoReport(operationId: string): Promise<GeoReport> {
    return this.request<GeoReport>(`/operations/${operationId}/report/geo`);
  }
}
