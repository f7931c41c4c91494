/** Minimal string templating with escaping; views render to HTML text so
 * they stay trivially testable without a DOM. */

export function escapeHtml(value: unknown): string {
  return String(value)
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

/** Tagged template: interpolations are escaped unless wrapped via raw(). */
export function html(strings: TemplateStringsArray, ...values: unknown[]): string {
  let out = "";
  strings.forEach((chunk, i) => {
    out += chunk;
    if (i < values.length) {
      const value = values[i];
      out += value instanceof RawHtml ? value.text : escapeHtml(value);
    }
  });
  return out;
}

class RawHtml {
  constructor(readonly text: string) {}
}

export function raw(text: string): RawHtml {
  return new RawHtml(text);
}
