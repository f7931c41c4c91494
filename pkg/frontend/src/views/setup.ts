/** Operation setup: the form feeding POST /operations. Validation here
 * mirrors the server's range rules so typos fail before the round trip. */

import { checkPort, checkRanges } from "../cidr.js";
import { html, raw } from "../html.js";
import type { OperationRequest } from "../types.js";

export interface SetupFormValues {
  ranges: string; // one per line
  port: string;
  protocol_id: string;
  seed: string;
  unit_size: string;
  site_groups: string; // comma separated, optional
}

export type SetupResult =
  | { ok: true; request: OperationRequest }
  | { ok: false; error: string };

export function buildOperationRequest(values: SetupFormValues): SetupResult {
  const ranges = values.ranges
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  const rangeCheck = checkRanges(ranges);
  if (!rangeCheck.ok) return { ok: false, error: rangeCheck.error! };

  const port = Number(values.port);
  const portCheck = checkPort(port);
  if (!portCheck.ok) return { ok: false, error: portCheck.error! };

  const protocol = values.protocol_id.trim();
  if (!protocol) return { ok: false, error: "protocol is required" };

  const seed = Number(values.seed || "0");
  if (!Number.isInteger(seed) || seed < 0) {
    return { ok: false, error: `seed must be a non-negative integer` };
  }

  const request: OperationRequest = { ranges, port, protocol_id: protocol, seed };
  if (values.unit_size.trim()) {
    const unitSize = Number(values.unit_size);
    if (!Number.isInteger(unitSize) || unitSize < 1) {
      return { ok: false, error: "unit size must be a positive integer" };
    }
    request.unit_size = unitSize;
  }
  const groups = values.site_groups
    .split(",")
    .map((g) => g.trim())
    .filter((g) => g.length > 0);
  if (groups.length > 0) {
    if (new Set(groups).size !== groups.length) {
      return { ok: false, error: "duplicate site group labels" };
    }
    request.site_groups = groups;
  }
  return { ok: true, request };
}

export function renderOperationSetup(error?: string): string {
  return html`
    <section class="setup">
      <h2>New scan operation</h2>
      ${error ? raw(html`<p class="error" data-role="setup-error">${error}</p>`) : ""}
      <form id="setup-form">
        <label>Target ranges (one per line, CIDR or dashed)
          <textarea name="ranges" rows="4" placeholder="10.20.0.0/24"></textarea>
        </label>
        <label>Port <input name="port" type="number" min="1" max="65535" /></label>
        <label>Protocol <input name="protocol_id" placeholder="https" /></label>
        <label>Seed <input name="seed" type="number" value="0" /></label>
        <label>Unit size <input name="unit_size" type="number" placeholder="4096" /></label>
        <label>Site groups (comma separated)
          <input name="site_groups" placeholder="alpha, beta" />
        </label>
        <button type="submit">Create operation</button>
      </form>
    </section>
  `;
}
