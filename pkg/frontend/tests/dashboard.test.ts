import { describe, expect, it } from "vitest";

import {
  renderGeoMap,
  renderSeverityTable,
  renderStats,
  renderVersionChart,
} from "../src/views/dashboard.js";
import type { VersionsReport } from "../src/types.js";
import { fixtureStats } from "./fake_server.js";

describe("stats cards", () => {
  it("renders the fixture ratios without recomputing them", () => {
    const stats = fixtureStats();
    // prove the view does not derive the string from the raw ratio: give
    // it a raw value that would round differently
    stats.vulnerable_entity_ratio = 0.999;
    const htmlText = renderStats(stats);
    expect(htmlText).toContain("36.4%");
    expect(htmlText).toContain("8.7");
    expect(htmlText).toContain("32%");
    expect(htmlText).not.toContain("99.9");
  });
});

describe("severity table", () => {
  it("shows the fixture bucket counts and the API-provided total", () => {
    const htmlText = renderSeverityTable(fixtureStats());
    expect(htmlText).toContain('data-severity="critical">931<');
    expect(htmlText).toContain('data-severity="high">443<');
    expect(htmlText).toContain('data-severity="medium">518<');
    expect(htmlText).toContain('data-role="vulnerable-total">1892<');
  });
});

describe("version chart", () => {
  const report: VersionsReport = {
    products: {
      nginx: {
        product: "nginx",
        total: 709,
        known: { "1.18.0": 200, "1.16.1": 65 },
        unknown_count: 444,
        unknown_pct: 62.623,
        unknown_pct_display: "62.62%",
      },
    },
  };

  it("renders the server-side unknown share verbatim", () => {
    const htmlText = renderVersionChart(report, "nginx");
    expect(htmlText).toContain("62.62%");
    expect(htmlText).toContain("1.18.0");
  });

  it("handles missing products", () => {
    expect(renderVersionChart(report, "iis")).toContain("no observations");
  });
});

describe("geo map", () => {
  it("draws one marker per point with the weight attached", () => {
    const htmlText = renderGeoMap({
      all: [
        [52.52, 13.405, 3],
        [48.1, 11.5, 1],
      ],
      vulnerable: [[52.52, 13.405, 1]],
    });
    expect(htmlText.match(/<circle /g)).toHaveLength(2);
    expect(htmlText).toContain('data-weight="3"');
  });

  it("vulnerable-only layer filters points", () => {
    const htmlText = renderGeoMap(
      { all: [[52.52, 13.405, 3], [48.1, 11.5, 1]], vulnerable: [[52.52, 13.405, 1]] },
      true,
    );
    expect(htmlText.match(/<circle /g)).toHaveLength(1);
  });

  it("empty input renders a message, not a broken viewBox", () => {
    expect(renderGeoMap({ all: [], vulnerable: [] })).toContain("no geolocated services");
  });
});
