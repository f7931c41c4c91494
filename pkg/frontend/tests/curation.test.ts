import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { CurationController, renderQueue } from "../src/views/curation.js";
import { FakeServer } from "./fake_server.js";

const BASE = "http://console.test";

describe("curation queue", () => {
  let server: FakeServer;
  let controller: CurationController;

  beforeEach(() => {
    server = new FakeServer();
    server.seedAssignment({ assignment_id: "k1~klinik-a" });
    server.seedAssignment({
      assignment_id: "k2~klinik-b",
      entity_id: "klinik-b",
      status: "auto_accepted",
      score: {
        total: 100,
        evidence: [{ signal: "cert_exact_domain", matched_value: "klinik-b.example", weight: 100 }],
      },
    });
    controller = new CurationController(new ApiClient(BASE, server.fetch), "analyst-1");
  });

  it("lists pending items with evidence rendered verbatim", async () => {
    await controller.load();
    expect(controller.state.items.map((a) => a.assignment_id)).toEqual(["k1~klinik-a"]);
    const htmlText = renderQueue(controller.state);
    expect(htmlText).toContain("rdns_suffix");
    expect(htmlText).toContain("60");
    // action buttons are real markup, not escaped text
    expect(htmlText).toContain('<button data-action="accept">');
    expect(htmlText).toContain('<button data-action="reject">');
  });

  it("accept removes the item and transitions it via the API", async () => {
    await controller.load();
    const outcome = await controller.decide("k1~klinik-a", "accepted");
    expect(outcome).toBe("applied");
    expect(controller.state.items).toHaveLength(0);
    expect(server.assignments.get("k1~klinik-a")!.status).toBe("accepted");
    expect(server.assignments.get("k1~klinik-a")!.decided_by).toBe("analyst-1");
  });

  it("decision survives a reload (fresh client, same server state)", async () => {
    await controller.load();
    await controller.decide("k1~klinik-a", "accepted");
    // the page reloads: new client and controller against the same server
    const reloaded = new CurationController(new ApiClient(BASE, server.fetch), "analyst-1");
    await reloaded.load();
    expect(reloaded.state.items).toHaveLength(0);
    const again = await new ApiClient(BASE, server.fetch).assignments("accepted");
    expect(again.assignments.map((a) => a.assignment_id)).toEqual(["k1~klinik-a"]);
  });

  it("409 on an already-decided assignment rolls the optimistic update back", async () => {
    await controller.load();
    // someone else decides first
    await new ApiClient(BASE, server.fetch).decide("k1~klinik-a", "rejected", "other");
    const outcome = await controller.decide("k1~klinik-a", "accepted");
    expect(outcome).toBe("rolled_back");
    // the item is back in the local list and the conflict is surfaced
    expect(controller.state.items.map((a) => a.assignment_id)).toEqual(["k1~klinik-a"]);
    expect(controller.state.notice).toContain("conflict");
    // and the server decision was not overwritten
    expect(server.assignments.get("k1~klinik-a")!.status).toBe("rejected");
  });

  it("rejecting an auto-accepted assignment requires confirmation", async () => {
    await controller.loadIncludingAuto();
    const first = await controller.decide("k2~klinik-b", "rejected");
    expect(first).toBe("confirm");
    expect(server.assignments.get("k2~klinik-b")!.status).toBe("auto_accepted");
    const rendered = renderQueue(controller.state);
    expect(rendered).toContain("Reject an auto-accepted assignment?");
    expect(rendered).toContain('<button data-action="confirm-reject">');
    // confirming applies it
    const second = await controller.decide("k2~klinik-b", "rejected");
    expect(second).toBe("applied");
    expect(server.assignments.get("k2~klinik-b")!.status).toBe("rejected");
  });

  it("confirmation can be cancelled", async () => {
    await controller.loadIncludingAuto();
    await controller.decide("k2~klinik-b", "rejected");
    controller.cancelConfirmation();
    expect(controller.state.confirming).toBeNull();
    expect(server.assignments.get("k2~klinik-b")!.status).toBe("auto_accepted");
  });

  it("accepting a pending item needs no confirmation", async () => {
    await controller.load();
    const outcome = await controller.decide("k1~klinik-a", "accepted");
    expect(outcome).toBe("applied");
  });
});
