/** Dashboard: headline statistics, severity table, version histograms
 * and the geo point layer.
 *
 * Every figure comes from an API payload; the presentation strings in
 * StatsBundle.display are rendered verbatim (the server owns rounding).
 */

import { html, raw } from "../html.js";
import type { GeoReport, StatsBundle, VersionsReport } from "../types.js";

const SEVERITY_ROWS: Array<[string, string]> = [
  ["critical", "9.0–10"],
  ["high", "7.0–8.9"],
  ["medium", "4.0–6.9"],
];

export function renderStats(stats: StatsBundle): string {
  return html`
    <div class="stats-cards">
      <div class="card">
        <span data-role="total-services">${stats.total_services}</span>
        services over <span data-role="total-entities">${stats.total_entities}</span> entities
        (mean <span data-role="mean-services">${stats.display["mean_services_per_entity"]}</span>)
      </div>
      <div class="card">
        <span data-role="vulnerable-entities">${stats.vulnerable_entities}</span> of
        ${stats.entities_with_services} analyzed entities vulnerable:
        <span data-role="vulnerable-entity-ratio">${stats.display["vulnerable_entity_ratio"]}</span>
      </div>
      <div class="card">
        beds at vulnerable entities:
        <span data-role="bed-ratio">${stats.display["bed_ratio"]}</span>
        (${stats.vulnerable_beds} of ${stats.total_beds})
      </div>
    </div>
  `;
}

export function renderSeverityTable(stats: StatsBundle): string {
  const rows = SEVERITY_ROWS.map(
    ([bucket, range]) => html`<tr>
      <td>${range} (${bucket})</td>
      <td data-severity="${bucket}">${stats.severity_histogram[bucket] ?? 0}</td>
    </tr>`,
  ).join("");
  return html`
    <table class="severity">
      <tr><th>CVSS score</th><th>Vulnerable services</th></tr>
      ${raw(rows)}
      <tr class="total"><td>Total vulnerable services:</td>
        <td data-role="vulnerable-total">${stats.vulnerable_services}</td></tr>
    </table>
  `;
}

export function renderVersionChart(report: VersionsReport, product: string): string {
  const histogram = report.products[product];
  if (!histogram || histogram.total === 0) {
    return html`<p class="empty">no observations for ${product}</p>`;
  }
  const peak = Math.max(...Object.values(histogram.known), 1);
  const bars = Object.entries(histogram.known)
    .map(
      ([version, count]) => html`<div class="bar-row">
        <span class="version">${version}</span>
        <span class="bar" style="width:${((count / peak) * 100).toFixed(0)}%"></span>
        <span class="count">${count}</span>
      </div>`,
    )
    .join("");
  return html`
    <figure class="versions" data-product="${product}">
      <figcaption>
        ${product}: ${histogram.total} observed,
        <span data-role="unknown-share">${histogram.unknown_count}
        (${histogram.unknown_pct_display})</span> with undefined version (excluded)
      </figcaption>
      ${raw(bars)}
    </figure>
  `;
}

/** Plain SVG scatter; weights scale the marker. Longitude spans the x
 * axis, latitude (inverted) the y axis. */
export function renderGeoMap(geo: GeoReport, vulnerableOnly = false): string {
  const points = vulnerableOnly ? geo.vulnerable : geo.all;
  if (points.length === 0) {
    return html`<p class="empty">no geolocated services</p>`;
  }
  const lats = points.map((p) => p[0]);
  const lons = points.map((p) => p[1]);
  const pad = 0.5;
  const minLat = Math.min(...lats) - pad;
  const maxLat = Math.max(...lats) + pad;
  const minLon = Math.min(...lons) - pad;
  const maxLon = Math.max(...lons) + pad;
  const width = 420;
  const height = 480;
  const x = (lon: number) => ((lon - minLon) / (maxLon - minLon)) * width;
  const y = (lat: number) => height - ((lat - minLat) / (maxLat - minLat)) * height;
  const markers = points
    .map(
      ([lat, lon, weight]) =>
        `<circle cx="${x(lon).toFixed(1)}" cy="${y(lat).toFixed(1)}" ` +
        `r="${Math.min(3 + Math.sqrt(weight), 14).toFixed(1)}" data-weight="${weight}"/>`,
    )
    .join("");
  return html`
    <svg class="geo-map" viewBox="0 0 ${width} ${height}" role="img">
      ${raw(markers)}
    </svg>
  `;
}

export function renderDashboard(
  stats: StatsBundle,
  versions: VersionsReport,
  geo: GeoReport,
): string {
  const charts = Object.keys(versions.products)
    .sort()
    .map((product) => renderVersionChart(versions, product))
    .join("");
  return html`
    <section class="dashboard">
      ${raw(renderStats(stats))}
      <h3>Severity distribution</h3>
      ${raw(renderSeverityTable(stats))}
      <h3>Version distributions</h3>
      ${raw(charts)}
      <h3>Geolocated services</h3>
      ${raw(renderGeoMap(geo))}
    </section>
  `;
}
