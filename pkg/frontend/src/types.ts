/** Wire types of the control API. The console is a pure client: every
 * number it shows originates from one of these payloads. */

export interface OperationStatus {
  operation_id: string;
  total_units: number;
  pending: number;
  assigned: number;
  completed: number;
  failed: number;
  started_at: number;
  finished_at: number | null;
  finished: boolean;
  site_groups: string[];
  per_group_completed: Record<string, number>;
  per_group_total: Record<string, number>;
}

export interface NodeHealth {
  node_id: string;
  site_group: string;
  bandwidth_class: string;
  state: "active" | "suspect" | "dead";
  seconds_since_heartbeat: number;
}

export interface EvidenceRow {
  signal: string;
  matched_value: string;
  weight: number;
}

export interface AttributionScore {
  total: number;
  evidence: EvidenceRow[];
}

export type AssignmentStatus =
  | "auto_accepted"
  | "pending_review"
  | "accepted"
  | "rejected";

export interface Assignment {
  assignment_id: string;
  record_key: string;
  entity_id: string;
  score: AttributionScore;
  status: AssignmentStatus;
  conflict: boolean;
  decided_by: string | null;
  decided_at: number | null;
  operation_id: string;
}

export interface StatsBundle {
  total_entities: number;
  entities_with_services: number;
  total_services: number;
  mean_services_per_entity: number;
  vulnerable_entities: number;
  vulnerable_entity_ratio: number;
  vulnerable_services: number;
  vulnerable_service_ratio: number;
  severity_histogram: Record<string, number>;
  vulnerable_beds: number;
  total_beds: number;
  bed_ratio: number;
  /** presentation strings computed server-side; rendered verbatim */
  display: Record<string, string>;
}

export interface VersionHistogram {
  product: string;
  total: number;
  known: Record<string, number>;
  unknown_count: number;
  unknown_pct: number;
  unknown_pct_display: string;
}

export interface VersionsReport {
  products: Record<string, VersionHistogram>;
}

/** [lat, lon, weight] rows */
export interface GeoReport {
  all: Array<[number, number, number]>;
  vulnerable: Array<[number, number, number]>;
}

export interface OperationRequest {
  ranges: string[];
  port: number;
  protocol_id: string;
  seed: number;
  unit_size?: number;
  site_groups?: string[];
}

export interface CreatedOperation {
  operation_id: string;
  unit_count: number;
}
