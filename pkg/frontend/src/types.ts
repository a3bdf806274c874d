export type ReportKind =
  | "kpi"
  | "score_badge"
  | "bar"
  | "histogram"
  | "scatter"
  | "table"
  | "matrix";

export interface ReportObject {
  measure_id: string;
  kind: ReportKind;
  title: string;
  payload: Record<string, unknown>;
}

export interface ReportPayload {
  objects: ReportObject[];
  generated_for: string;
  profile_version: string;
}

export interface MeasureEntry {
  metrics: Record<string, unknown>;
  score: number | null;
}

export interface MeasuresPayload {
  dataset: Record<string, MeasureEntry>;
  dimension_scores: Record<string, number>;
}

export type PerModelPayload = Record<string, Record<string, Record<string, unknown>>>;

export interface ParseRecord {
  model_id: string;
  source_path: string;
  status: "success" | "partial" | "failure";
  warnings: { type: string; message: string; element_id: string | null; led_to_skip: boolean }[];
  n_loaded: number;
  n_skipped: number;
  parse_time_ms: number;
  source_bytes: number;
  ir_bytes: number | null;
  error_msg: string | null;
}

export interface IrInfoPayload {
  totals: Record<string, unknown>;
  index: Record<string, ParseRecord>;
}

export type RunStateName = "queued" | "running" | "done" | "error";

export interface RunState {
  state: RunStateName;
  stage: string;
  profile: string;
  summary?: unknown;
  error?: string;
}

export const STAGES = ["scan", "parse", "measure", "report"] as const;
export type Stage = (typeof STAGES)[number] | "run";

export const DIMENSIONS: Record<string, string> = {
  d1: "D1 Parsing",
  d2: "D2 Lexical Quality",
  d3: "D3 Construct Coverage",
  d4: "D4 Size",
};
