/** Operation progress: unit counters and node health, straight from
 * GET /operations/{id} and GET /nodes. */

import { html, raw } from "../html.js";
import type { NodeHealth, OperationStatus } from "../types.js";

export function renderProgress(status: OperationStatus, nodes: NodeHealth[]): string {
  const groupRows = status.site_groups
    .map((group) =>
      html`<tr>
        <td>${group}</td>
        <td>${status.per_group_completed[group] ?? 0} / ${status.per_group_total[group] ?? 0}</td>
      </tr>`,
    )
    .join("");
  const nodeRows = nodes
    .map(
      (node) => html`<tr class="node-${node.state}">
        <td>${node.node_id}</td>
        <td>${node.site_group}</td>
        <td data-role="node-state">${node.state}</td>
        <td>${node.seconds_since_heartbeat.toFixed(1)}s</td>
      </tr>`,
    )
    .join("");
  return html`
    <section class="progress">
      <h2>Operation ${status.operation_id}</h2>
      <p data-role="unit-counts">
        pending ${status.pending} · assigned ${status.assigned} ·
        completed ${status.completed} · failed ${status.failed}
        (of ${status.total_units})
      </p>
      <p data-role="finished">${status.finished ? "finished" : "running"}</p>
      <h3>Per site group</h3>
      <table>${raw(groupRows)}</table>
      <h3>Nodes</h3>
      <table>
        <tr><th>node</th><th>group</th><th>state</th><th>heartbeat age</th></tr>
        ${raw(nodeRows)}
      </table>
    </section>
  `;
}
