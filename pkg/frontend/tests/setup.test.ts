import { describe, expect, it } from "vitest";

import { buildOperationRequest, renderOperationSetup } from "../src/views/setup.js";

const BASE = {
  ranges: "10.20.0.0/24",
  port: "443",
  protocol_id: "https",
  seed: "42",
  unit_size: "",
  site_groups: "",
};

describe("buildOperationRequest", () => {
  it("builds the wire payload", () => {
    const result = buildOperationRequest({ ...BASE, site_groups: "alpha, beta" });
    expect(result.ok).toBe(true);
    if (result.ok) {
      expect(result.request).toEqual({
        ranges: ["10.20.0.0/24"],
        port: 443,
        protocol_id: "https",
        seed: 42,
        site_groups: ["alpha", "beta"],
      });
    }
  });

  it("rejects overlapping ranges before any request is sent", () => {
    const result = buildOperationRequest({
      ...BASE,
      ranges: "10.20.0.0/24\n10.20.0.128/25",
    });
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.error).toContain("overlap");
  });

  it("rejects bad ports and empty protocol", () => {
    expect(buildOperationRequest({ ...BASE, port: "0" }).ok).toBe(false);
    expect(buildOperationRequest({ ...BASE, protocol_id: " " }).ok).toBe(false);
  });

  it("rejects duplicate site groups", () => {
    const result = buildOperationRequest({ ...BASE, site_groups: "a, a" });
    expect(result.ok).toBe(false);
  });

  it("unit size must be a positive integer when given", () => {
    expect(buildOperationRequest({ ...BASE, unit_size: "0" }).ok).toBe(false);
    expect(buildOperationRequest({ ...BASE, unit_size: "4096" }).ok).toBe(true);
  });
});

describe("renderOperationSetup", () => {
  it("shows validation errors and escapes them", () => {
    const htmlText = renderOperationSetup('bad <range> "x"');
    expect(htmlText).toContain("data-role=\"setup-error\"");
    expect(htmlText).toContain("bad &lt;range&gt;");
    expect(htmlText).not.toContain("<range>");
  });
});
