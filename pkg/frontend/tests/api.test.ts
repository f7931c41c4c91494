import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { renderProgress } from "../src/views/progress.js";
import { FakeServer, fixtureStats } from "./fake_server.js";

const BASE = "http://console.test";

describe("ApiClient", () => {
  let server: FakeServer;
  let client: ApiClient;

  beforeEach(() => {
    server = new FakeServer();
    client = new ApiClient(BASE, server.fetch);
  });

  it("creates an operation and reads its status", async () => {
    const created = await client.createOperation({
      ranges: ["10.0.0.0/24"],
      port: 443,
      protocol_id: "https",
      seed: 7,
    });
    expect(created.unit_count).toBeGreaterThan(0);
    const status = await client.operationStatus(created.operation_id);
    expect(status.pending).toBe(4);
    expect(status.finished).toBe(false);
  });

  it("surfaces API errors with status and detail", async () => {
    await expect(client.operationStatus("nope")).rejects.toThrowError(ApiError);
    await expect(client.operationStatus("nope")).rejects.toMatchObject({
      status: 404,
    });
  });

  it("fetches stored reports", async () => {
    server.seedReport("op-9", "stats", fixtureStats());
    const stats = await client.statsReport("op-9");
    expect(stats.display["vulnerable_entity_ratio"]).toBe("36.4%");
  });
});

describe("progress view", () => {
  it("renders unit counters and node health rows", () => {
    const htmlText = renderProgress(
      {
        operation_id: "op-1",
        total_units: 8,
        pending: 1,
        assigned: 2,
        completed: 4,
        failed: 1,
        started_at: 0,
        finished_at: null,
        finished: false,
        site_groups: ["alpha", "beta"],
        per_group_completed: { alpha: 3, beta: 1 },
        per_group_total: { alpha: 4, beta: 4 },
      },
      [
        {
          node_id: "n1",
          site_group: "alpha",
          bandwidth_class: "standard",
          state: "active",
          seconds_since_heartbeat: 0.4,
        },
        {
          node_id: "n2",
          site_group: "beta",
          bandwidth_class: "standard",
          state: "suspect",
          seconds_since_heartbeat: 17.2,
        },
      ],
    );
    expect(htmlText).toContain("pending 1");
    expect(htmlText).toContain("completed 4");
    expect(htmlText).toContain("3 / 4");
    expect(htmlText).toContain("suspect");
    expect(htmlText).toContain("running");
  });
});
