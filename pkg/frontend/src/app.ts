/** Browser wiring: hash router + DOM glue around the pure views.
 *
 * Base URL comes from the `data-api-base` attribute on the mount node
 * (single configuration setting).
 */

import { ApiClient } from "./api.js";
import { CurationController, renderQueue } from "./views/curation.js";
import { renderDashboard } from "./views/dashboard.js";
import { renderProgress } from "./views/progress.js";
import {
  buildOperationRequest,
  renderOperationSetup,
  type SetupFormValues,
} from "./views/setup.js";

const POLL_INTERVAL_MS = 2000;

export function mountConsole(root: HTMLElement): void {
  const api = new ApiClient(root.dataset.apiBase ?? "http://127.0.0.1:8700");
  const reviewer = root.dataset.reviewer ?? "analyst";
  const curation = new CurationController(api, reviewer);
  let pollTimer: number | undefined;

  const nav = document.createElement("nav");
  nav.innerHTML = [
    '<a href="#/setup">New operation</a>',
    '<a href="#/progress">Progress</a>',
    '<a href="#/curation">Curation</a>',
    '<a href="#/dashboard">Dashboard</a>',
  ].join(" | ");
  const view = document.createElement("main");
  root.append(nav, view);

  function currentOperation(): string | null {
    return new URLSearchParams(location.hash.split("?")[1] ?? "").get("op");
  }

  async function route(): Promise<void> {
    if (pollTimer !== undefined) {
      clearInterval(pollTimer);
      pollTimer = undefined;
    }
    const hash = location.hash || "#/setup";
    try {
      if (hash.startsWith("#/setup")) {
        view.innerHTML = renderOperationSetup();
        wireSetupForm();
      } else if (hash.startsWith("#/progress")) {
        await showProgress();
        pollTimer = window.setInterval(showProgress, POLL_INTERVAL_MS);
      } else if (hash.startsWith("#/curation")) {
        await curation.loadIncludingAuto();
        view.innerHTML = renderQueue(curation.state);
        wireQueueButtons();
      } else if (hash.startsWith("#/dashboard")) {
        await showDashboard();
      }
    } catch (error) {
      view.innerHTML = `<p class="error">${error instanceof Error ? error.message : error}</p>`;
    }
  }

  async function showProgress(): Promise<void> {
    const operationId = currentOperation();
    if (!operationId) {
      view.innerHTML = "<p>append ?op=&lt;operation_id&gt; to the URL</p>";
      return;
    }
    const [status, nodes] = await Promise.all([
      api.operationStatus(operationId),
      api.nodes(),
    ]);
    view.innerHTML = renderProgress(status, nodes.nodes);
  }

  async function showDashboard(): Promise<void> {
    const operationId = currentOperation();
    if (!operationId) {
      view.innerHTML = "<p>append ?op=&lt;operation_id&gt; to the URL</p>";
      return;
    }
    const [stats, versions, geo] = await Promise.all([
      api.statsReport(operationId),
      api.versionsReport(operationId),
      api.geoReport(operationId),
    ]);
    view.innerHTML = renderDashboard(stats, versions, geo);
  }

  function wireSetupForm(): void {
    const form = view.querySelector<HTMLFormElement>("#setup-form");
    form?.addEventListener("submit", async (event) => {
      event.preventDefault();
      const data = new FormData(form);
      const values: SetupFormValues = {
        ranges: String(data.get("ranges") ?? ""),
        port: String(data.get("port") ?? ""),
        protocol_id: String(data.get("protocol_id") ?? ""),
        seed: String(data.get("seed") ?? "0"),
        unit_size: String(data.get("unit_size") ?? ""),
        site_groups: String(data.get("site_groups") ?? ""),
      };
      const result = buildOperationRequest(values);
      if (!result.ok) {
        view.innerHTML = renderOperationSetup(result.error);
        wireSetupForm();
        return;
      }
      try {
        const created = await api.createOperation(result.request);
        location.hash = `#/progress?op=${created.operation_id}`;
      } catch (error) {
        view.innerHTML = renderOperationSetup(
          error instanceof Error ? error.message : String(error),
        );
        wireSetupForm();
      }
    });
  }

  function wireQueueButtons(): void {
    view.querySelectorAll<HTMLButtonElement>("button[data-action]").forEach((btn) => {
      btn.addEventListener("click", async () => {
        const item = btn.closest<HTMLElement>("[data-assignment]");
        if (!item) return;
        const id = item.dataset.assignment!;
        const action = btn.dataset.action!;
        if (action === "accept") await curation.decide(id, "accepted");
        else if (action === "reject") await curation.decide(id, "rejected");
        else if (action === "confirm-reject") await curation.decide(id, "rejected");
        else if (action === "cancel") curation.cancelConfirmation();
        view.innerHTML = renderQueue(curation.state);
        wireQueueButtons();
      });
    });
  }

  window.addEventListener("hashchange", route);
  void route();
}
