/**
 * Measure explorer: navigate report objects by dimension and measure,
 * with per-model drill-down into the parse record, per-model metrics, and
 * the IR summary served by the API.
 */

import { ApiClient, ApiError } from "../api";
import { renderObject } from "../render";
import { DIMENSIONS, type IrInfoPayload, type PerModelPayload, type ReportPayload } from "../types";

export class ExplorerView {
  private report: ReportPayload | null = null;
  private perModel: PerModelPayload | null = null;
  private irInfo: IrInfoPayload | null = null;
  private selected: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly profile: string,
  ) {}

  async load(): Promise<void> {
    this.root.textContent = "";
    this.root.classList.add("explorer");
    try {
      this.report = await this.api.report(this.profile);
    } catch (error) {
      const notice = document.createElement("p");
      notice.className = "notice";
      notice.textContent =
        error instanceof ApiError && error.status === 404
          ? "No report yet: run the pipeline first."
          : `Could not load report: ${error}`;
      this.root.appendChild(notice);
      return;
    }
    // drill-down sources are optional; their absence degrades to a notice
    this.perModel = await this.tryArtifact<PerModelPayload>(() => this.api.measuresPerModel(this.profile));
    this.irInfo = await this.tryArtifact<IrInfoPayload>(() => this.api.irInfo(this.profile));
    this.renderShell();
  }

  private async tryArtifact<T>(fn: () => Promise<T>): Promise<T | null> {
    try {
      return await fn();
    } catch {
      return null;
    }
  }

  private measureIds(): string[] {
    const ids = new Set<string>();
    for (const obj of this.report?.objects ?? []) ids.add(obj.measure_id);
    return [...ids].sort();
  }

  private renderShell(): void {
    this.root.textContent = "";
    const nav = document.createElement("nav");
    nav.className = "measure-nav";
    const byDimension = new Map<string, string[]>();
    for (const id of this.measureIds()) {
      const dim = id.split(".")[0];
      byDimension.set(dim, [...(byDimension.get(dim) ?? []), id]);
    }
    for (const [dim, ids] of byDimension) {
      const group = document.createElement("div");
      group.className = "nav-group";
      const heading = document.createElement("h4");
      heading.textContent = DIMENSIONS[dim] ?? dim;
      group.appendChild(heading);
      for (const id of ids) {
        const link = document.createElement("button");
        link.className = "nav-measure";
        link.dataset.measure = id;
        link.textContent = id;
        link.addEventListener("click", () => this.show(id));
        group.appendChild(link);
      }
      nav.appendChild(group);
    }
    this.root.appendChild(nav);

    const main = document.createElement("div");
    main.className = "measure-view";
    this.root.appendChild(main);

    const drill = document.createElement("aside");
    drill.className = "drilldown";
    this.root.appendChild(drill);

    const first = this.measureIds()[0];
    if (first) this.show(this.selected ?? first);
  }

  show(measureId: string): void {
    this.selected = measureId;
    const main = this.root.querySelector<HTMLElement>(".measure-view");
    if (!main || !this.report) return;
    main.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = measureId;
    main.appendChild(heading);
    for (const obj of this.report.objects.filter((o) => o.measure_id === measureId)) {
      main.appendChild(
        renderObject(obj, {
          onRowClick: (row) => {
            if (typeof row.model_id === "string") void this.drillDown(row.model_id);
          },
        }),
      );
    }
    if (measureId === "d1.m5" && this.irInfo) {
      main.appendChild(this.warningsTable());
    }
    if (measureId === "d3.m2") {
      // the construct frequency view pairs the top-N table with the coverage matrix
      const matrix = this.report.objects.find((o) => o.measure_id === "d3.m1" && o.kind === "matrix");
      if (matrix) main.appendChild(renderObject(matrix));
    }
    for (const button of this.root.querySelectorAll<HTMLElement>(".nav-measure")) {
      button.classList.toggle("active", button.dataset.measure === measureId);
    }
  }

  /** Flat listing of every recorded parser warning; rows come verbatim from ir_info. */
  private warningsTable(): HTMLElement {
    const rows: Record<string, unknown>[] = [];
    for (const modelId of Object.keys(this.irInfo!.index).sort()) {
      for (const warning of this.irInfo!.index[modelId].warnings) {
        rows.push({
          model_id: modelId,
          type: warning.type,
          message: warning.message,
          led_to_skip: warning.led_to_skip,
        });
      }
    }
    return renderObject(
      {
        measure_id: "d1.m5",
        kind: "table",
        title: "All warnings",
        payload: { columns: ["model_id", "type", "message", "led_to_skip"], rows },
      },
      {
        onRowClick: (row) => {
          if (typeof row.model_id === "string") void this.drillDown(row.model_id);
        },
      },
    );
  }

  async drillDown(modelId: string): Promise<void> {
    const panel = this.root.querySelector<HTMLElement>(".drilldown");
    if (!panel) return;
    panel.textContent = "";
    const heading = document.createElement("h3");
    heading.textContent = `Model ${modelId.slice(0, 12)}…`;
    panel.appendChild(heading);

    const record = this.irInfo?.index[modelId];
    if (record) {
      const list = document.createElement("dl");
      list.className = "parse-record";
      const fields: [string, unknown][] = [
        ["source_path", record.source_path],
        ["status", record.status],
        ["n_loaded", record.n_loaded],
        ["n_skipped", record.n_skipped],
        ["warnings", record.warnings.length],
        ["error_msg", record.error_msg ?? "–"],
      ];
      for (const [key, value] of fields) {
        const dt = document.createElement("dt");
        dt.textContent = key;
        const dd = document.createElement("dd");
        dd.textContent = String(value);
        list.appendChild(dt);
        list.appendChild(dd);
      }
      panel.appendChild(list);
    } else {
      const notice = document.createElement("p");
      notice.className = "notice";
      notice.textContent = "No parse record available.";
      panel.appendChild(notice);
    }

    const metrics = this.perModel?.[modelId];
    if (metrics) {
      const pre = document.createElement("pre");
      pre.className = "model-metrics";
      pre.textContent = JSON.stringify(metrics, null, 2);
      panel.appendChild(pre);
    }

    try {
      const ir = await this.api.modelIr(modelId, this.profile);
      const summary = document.createElement("p");
      summary.className = "ir-summary";
      const nodes = (ir.nodes as unknown[])?.length ?? 0;
      const edges = (ir.edges as unknown[])?.length ?? 0;
      summary.textContent = `IR: ${nodes} nodes, ${edges} edges (${ir.language})`;
      panel.appendChild(summary);
    } catch {
      const notice = document.createElement("p");
      notice.className = "notice";
      notice.textContent = "No IR available for this model.";
      panel.appendChild(notice);
    }
  }
}
