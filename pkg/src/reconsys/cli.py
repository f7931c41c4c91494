"""recon: operations CLI.

    recon serve      run the control/worker API
    recon node       run a scan node against an orchestrator
    recon demo       scan a shipped scenario end to end, locally
    recon report     stats | versions | regression | cohorts | geo
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .store import DocumentKey, DocumentStore


@click.group()
def main() -> None:
    """Distributed target-space scanning and analysis."""


# -- serve --------------------------------------------------------------


@main.command()
@click.option("--data", "data_dir", type=click.Path(), default="./recon-data", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8700, show_default=True)
@click.option("--node-token", default=None, help="Shared token scan nodes must present.")
@click.option(
    "--i-am-authorized",
    is_flag=True,
    default=False,
    help="Allow target ranges outside loopback/RFC1918. Scanning networks you "
    "do not own or operate without permission is illegal in most places.",
)
@click.option("--suspect-timeout", default=15.0, show_default=True)
@click.option("--dead-timeout", default=60.0, show_default=True)
def serve(data_dir, host, port, node_token, i_am_authorized, suspect_timeout, dead_timeout):
    """Run the scan-master API (control + worker endpoints)."""
    import threading
    import time as _time

    import uvicorn

    from .attrib import AssignmentLog
    from .orchestrator import MasterConfig, ScanMaster
    from .orchestrator.api import create_app

    store = DocumentStore(data_dir)
    master = ScanMaster(
        MasterConfig(
            node_token=node_token,
            allow_public_ranges=i_am_authorized,
            suspect_timeout=suspect_timeout,
            dead_timeout=dead_timeout,
        ),
        store=store,
    )
    assignments = AssignmentLog.load_from_store(store)
    app = create_app(master, assignments=assignments, store=store)

    def failure_ticker() -> None:
        while True:
            _time.sleep(master.config.heartbeat_interval)
            master.detect_failures()

    threading.Thread(target=failure_ticker, daemon=True).start()
    click.echo(f"data dir: {data_dir}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


# -- node ----------------------------------------------------------------


@main.command()
@click.option("--orchestrator", "orchestrator_url", required=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--site-group", default="default", show_default=True)
@click.option("--node-token", default=None)
@click.option("--max-pps", type=float, default=None)
@click.option("--keep-polling", is_flag=True, help="Stay up waiting for new units.")
def node(orchestrator_url, config_path, site_group, node_token, max_pps, keep_polling):
    """Run a scan node against a running orchestrator."""
    from .orchestrator import MasterClient
    from .probe import NodeConfig, ScanNode

    if config_path:
        cfg = NodeConfig.from_file(config_path)
    else:
        cfg = NodeConfig(site_group=site_group, max_pps=max_pps)
    client = MasterClient(
        cfg.orchestrator_url or orchestrator_url, cfg.node_token or node_token
    )
    scan_node = ScanNode(client, cfg)
    node_id = scan_node.register()
    click.echo(f"registered as {node_id} (group {cfg.site_group})")
    try:
        scan_node.run(stop_when_idle=not keep_polling)
    finally:
        scan_node.kill()
        client.close()
    c = scan_node.counters
    click.echo(
        f"done: units={c.units_completed} probed={c.probed} responders={c.responders}"
    )


# -- demo -----------------------------------------------------------------


@main.command()
@click.option("--scenario", default="basic3", show_default=True)
@click.option("--data", "data_dir", type=click.Path(), default="./recon-data", show_default=True)
@click.option("--nodes", "node_count", default=2, show_default=True)
@click.option("--seed", default=7, show_default=True)
def demo(scenario, data_dir, node_count, seed):
    """Launch a shipped scenario on loopback, scan it, analyze, report."""
    from .demo import run_demo

    summary = run_demo(scenario, data_dir, node_count=node_count, seed=seed)
    click.echo(json.dumps(summary, indent=2, sort_keys=True))


# -- report ----------------------------------------------------------------


@main.group()
def report() -> None:
    """Reports over a completed, analyzed operation."""


def _store(data_dir: str) -> DocumentStore:
    if not Path(data_dir).exists():
        raise click.ClickException(f"no data directory at {data_dir}")
    return DocumentStore(data_dir)


def _report_doc(store: DocumentStore, operation_id: str, kind: str) -> dict:
    doc = store.get(DocumentKey("reports", operation_id, kind))
    if doc is None:
        raise click.ClickException(
            f"no {kind} report stored for operation {operation_id}; run analysis first"
        )
    return doc


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
        click.echo(f"wrote {out}")
    else:
        sys.stdout.write(text)


@report.command("stats")
@click.option("--operation", required=True)
@click.option("--data", "data_dir", default="./recon-data", show_default=True)
@click.option("--out", default=None, type=click.Path())
def report_stats(operation, data_dir, out):
    _emit(_report_doc(_store(data_dir), operation, "stats"), out)


@report.command("versions")
@click.option("--operation", required=True)
@click.option("--data", "data_dir", default="./recon-data", show_default=True)
@click.option("--product", default=None, help="Limit to one canonical product.")
@click.option("--out", default=None, type=click.Path())
def report_versions(operation, data_dir, product, out):
    doc = _report_doc(_store(data_dir), operation, "versions")
    if product:
        products = doc.get("products", {})
        if product not in products:
            raise click.ClickException(f"no version histogram for {product!r}")
        doc = products[product]
    _emit(doc, out)


@report.command("regression")
@click.option("--operation", required=True)
@click.option("--data", "data_dir", default="./recon-data", show_default=True)
@click.option("--out", default=None, type=click.Path())
def report_regression(operation, data_dir, out):
    """Least squares of per-entity CVE count on bed count."""
    from .report import DegenerateRegressionError, fit_regression

    store = _store(data_dir)
    points = []
    cohort_doc = store.get(DocumentKey("reports", operation, "regression_points"))
    if cohort_doc is None:
        # derive from stored entities and matches
        entities = {
            d["entity_id"]: d for d in store.iter_collection("entities", operation)
        }
        counts: dict[str, int] = {}
        for a in store.iter_collection("assignments", operation):
            if a["status"] in ("accepted", "auto_accepted"):
                m = store.get(DocumentKey("matches", operation, a["record_key"]))
                counts[a["entity_id"]] = counts.get(a["entity_id"], 0) + (
                    len(m["matches"]) if m else 0
                )
        points = [
            (float(entities[eid]["beds"]), float(n))
            for eid, n in sorted(counts.items())
            if entities.get(eid, {}).get("beds") is not None
        ]
    else:
        points = [(p[0], p[1]) for p in cohort_doc["points"]]
    try:
        result = fit_regression(points)
    except DegenerateRegressionError as exc:
        raise click.ClickException(f"regression impossible: {exc}")
    _emit(
        {
            "slope": result.slope,
            "intercept": result.intercept,
            "n": result.n,
            "r_squared": result.r_squared,
        },
        out,
    )


@report.command("cohorts")
@click.option("--operation", required=True)
@click.option("--data", "data_dir", default="./recon-data", show_default=True)
@click.option("--out", default=None, type=click.Path())
def report_cohorts(operation, data_dir, out):
    _emit(_report_doc(_store(data_dir), operation, "cohorts"), out)


@report.command("geo")
@click.option("--operation", required=True)
@click.option("--data", "data_dir", default="./recon-data", show_default=True)
@click.option("--vulnerable-only", is_flag=True, default=False)
@click.option("--format", "fmt", type=click.Choice(["csv", "geojson"]), default="csv")
@click.option("--out", required=True, type=click.Path())
def report_geo(operation, data_dir, vulnerable_only, fmt, out):
    from .report import geo_feature_collection, write_geo_csv

    doc = _report_doc(_store(data_dir), operation, "geo")
    rows = doc["vulnerable" if vulnerable_only else "all"]
    points = [(r[0], r[1], int(r[2])) for r in rows]
    if fmt == "csv":
        write_geo_csv(points, out)
    else:
        Path(out).write_text(
            json.dumps(geo_feature_collection(points), sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
    click.echo(f"wrote {out} ({len(points)} points)")


if __name__ == "__main__":
    main()
