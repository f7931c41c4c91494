/** Client-side target-range validation, mirroring the server rules:
 * CIDR (`10.0.0.0/24`) or dashed (`10.0.0.1-10.0.0.9`) notation, no
 * overlapping coverage across declared ranges. Server remains the
 * authority; this only catches mistakes before a round trip. */

export interface RangeCheck {
  ok: boolean;
  error?: string;
  /** inclusive integer bounds when ok */
  bounds?: [number, number];
}

export function parseIpv4(text: string): number | null {
  const parts = text.trim().split(".");
  if (parts.length !== 4) return null;
  let value = 0;
  for (const part of parts) {
    if (!/^\d{1,3}$/.test(part)) return null;
    const octet = Number(part);
    if (octet > 255) return null;
    value = value * 256 + octet;
  }
  return value;
}

export function checkRange(text: string): RangeCheck {
  const trimmed = text.trim();
  if (trimmed.includes("-")) {
    const [loText, hiText] = trimmed.split("-", 2);
    const lo = parseIpv4(loText);
    const hi = parseIpv4(hiText ?? "");
    if (lo === null || hi === null) {
      return { ok: false, error: `not a dashed IPv4 range: ${trimmed}` };
    }
    if (hi < lo) {
      return { ok: false, error: `range end before start: ${trimmed}` };
    }
    return { ok: true, bounds: [lo, hi] };
  }
  if (trimmed.includes("/")) {
    const [ipText, prefixText] = trimmed.split("/", 2);
    const ip = parseIpv4(ipText);
    if (ip === null || !/^\d{1,2}$/.test(prefixText ?? "")) {
      return { ok: false, error: `not a CIDR range: ${trimmed}` };
    }
    const prefix = Number(prefixText);
    if (prefix > 32) {
      return { ok: false, error: `prefix length out of range: ${trimmed}` };
    }
    const size = 2 ** (32 - prefix);
    const base = Math.floor(ip / size) * size;
    return { ok: true, bounds: [base, base + size - 1] };
  }
  const single = parseIpv4(trimmed);
  if (single === null) {
    return { ok: false, error: `not an IPv4 address or range: ${trimmed}` };
  }
  return { ok: true, bounds: [single, single] };
}

/** Validate a whole declaration: every range parses, none overlap. */
export function checkRanges(texts: string[]): RangeCheck {
  const bounds: Array<[number, number]> = [];
  for (const text of texts) {
    const one = checkRange(text);
    if (!one.ok) return one;
    bounds.push(one.bounds!);
  }
  if (bounds.length === 0) {
    return { ok: false, error: "at least one range is required" };
  }
  const sorted = [...bounds].sort((a, b) => a[0] - b[0]);
  for (let i = 1; i < sorted.length; i++) {
    if (sorted[i][0] <= sorted[i - 1][1]) {
      return { ok: false, error: "ranges overlap: an address is declared twice" };
    }
  }
  return { ok: true };
}

export function checkPort(port: number): RangeCheck {
  if (!Number.isInteger(port) || port < 1 || port > 65535) {
    return { ok: false, error: `port out of range: ${port}` };
  }
  return { ok: true };
}
