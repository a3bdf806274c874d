/**
 * DOM renderers for the report objects. Every renderer displays values from
 * the served payload verbatim; no metric is recomputed client-side.
 */

import type { ReportObject } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

function formatCell(value: unknown): string {
  if (value === null || value === undefined) return "–";
  if (typeof value === "number" && !Number.isInteger(value)) return value.toFixed(3);
  return String(value);
}

export function renderKpi(obj: ReportObject): HTMLElement {
  const box = el("div", "kpi");
  box.appendChild(el("div", "kpi-value", formatCell(obj.payload.value)));
  box.appendChild(el("div", "kpi-title", obj.title));
  return box;
}

export function renderScoreBadge(obj: ReportObject): HTMLElement {
  const value = obj.payload.value as number;
  const box = el("div", "badge");
  const tone = value >= 90 ? "good" : value >= 70 ? "warn" : "bad";
  box.classList.add(`badge-${tone}`);
  box.appendChild(el("span", "badge-value", String(obj.payload.display ?? value)));
  box.appendChild(el("span", "badge-title", obj.title));
  return box;
}

export function renderBar(obj: ReportObject): HTMLElement {
  const categories = obj.payload.categories as string[];
  const values = obj.payload.values as number[];
  const max = Math.max(...values, 1);
  const box = el("div", "chart bar-chart");
  box.appendChild(el("h4", "chart-title", obj.title));
  const width = 420;
  const barH = 18;
  const gap = 6;
  const labelW = 150;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${categories.length * (barH + gap)}`,
    width,
    height: categories.length * (barH + gap),
    role: "img",
  });
  categories.forEach((category, i) => {
    const y = i * (barH + gap);
    const w = (values[i] / max) * (width - labelW - 60);
    svg.appendChild(
      Object.assign(svgEl("text", { x: labelW - 6, y: y + barH - 5, "text-anchor": "end", class: "bar-label" }), {
        textContent: category,
      }),
    );
    svg.appendChild(svgEl("rect", { x: labelW, y, width: Math.max(w, 0.5), height: barH, class: "bar-rect" }));
    svg.appendChild(
      Object.assign(svgEl("text", { x: labelW + w + 4, y: y + barH - 5, class: "bar-value" }), {
        textContent: String(values[i]),
      }),
    );
  });
  box.appendChild(svg as unknown as Node);
  return box;
}

export function renderHistogram(obj: ReportObject): HTMLElement {
  const edges = obj.payload.bin_edges as number[];
  const counts = obj.payload.counts as number[];
  const max = Math.max(...counts, 1);
  const box = el("div", "chart histogram");
  box.appendChild(el("h4", "chart-title", obj.title));
  const width = 420;
  const height = 160;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height + 20}`, width, height: height + 20, role: "img" });
  const barW = width / counts.length;
  counts.forEach((count, i) => {
    const h = (count / max) * height;
    svg.appendChild(
      svgEl("rect", {
        x: i * barW + 1,
        y: height - h,
        width: Math.max(barW - 2, 1),
        height: Math.max(h, count > 0 ? 1 : 0),
        class: "hist-rect",
      }),
    );
  });
  svg.appendChild(
    Object.assign(svgEl("text", { x: 0, y: height + 14, class: "axis-label" }), {
      textContent: formatCell(edges[0]),
    }),
  );
  svg.appendChild(
    Object.assign(svgEl("text", { x: width, y: height + 14, "text-anchor": "end", class: "axis-label" }), {
      textContent: formatCell(edges[edges.length - 1]),
    }),
  );
  box.appendChild(svg as unknown as Node);
  return box;
}

export function renderScatter(obj: ReportObject): HTMLElement {
  const points = obj.payload.points as { model_id: string; x: number; y: number }[];
  const box = el("div", "chart scatter");
  box.appendChild(el("h4", "chart-title", obj.title));
  const width = 420;
  const height = 220;
  const maxX = Math.max(...points.map((p) => p.x), 1);
  const maxY = Math.max(...points.map((p) => p.y), 1);
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}`, width, height, role: "img" });
  for (const point of points) {
    const circle = svgEl("circle", {
      cx: 10 + (point.x / maxX) * (width - 20),
      cy: height - 10 - (point.y / maxY) * (height - 20),
      r: 4,
      class: "scatter-point",
      "data-model-id": point.model_id,
    });
    circle.appendChild(
      Object.assign(document.createElementNS(SVG_NS, "title"), {
        textContent: `${point.model_id.slice(0, 12)}… (${point.x}, ${point.y})`,
      }),
    );
    svg.appendChild(circle);
  }
  box.appendChild(svg as unknown as Node);
  box.appendChild(el("div", "axis-caption", `${obj.payload.x_label} vs ${obj.payload.y_label}`));
  return box;
}

export interface TableOptions {
  onRowClick?: (row: Record<string, unknown>) => void;
  filterable?: boolean;
}

/** Sortable, filterable table; header clicks toggle sort, the input filters by substring. */
export function renderTable(obj: ReportObject, options: TableOptions = {}): HTMLElement {
  const columns = obj.payload.columns as string[];
  const rows = obj.payload.rows as Record<string, unknown>[];
  const box = el("div", "chart data-table");
  box.appendChild(el("h4", "chart-title", obj.title));

  let filterText = "";
  let sortColumn: string | null = null;
  let sortAsc = true;

  if (options.filterable !== false) {
    const filter = el("input", "table-filter");
    filter.placeholder = "filter rows";
    filter.addEventListener("input", () => {
      filterText = filter.value.toLowerCase();
      renderBody();
    });
    box.appendChild(filter);
  }

  const table = el("table");
  const head = el("thead");
  const headRow = el("tr");
  for (const column of columns) {
    const th = el("th", "sortable", column);
    th.addEventListener("click", () => {
      sortAsc = sortColumn === column ? !sortAsc : true;
      sortColumn = column;
      renderBody();
    });
    headRow.appendChild(th);
  }
  head.appendChild(headRow);
  table.appendChild(head);
  const body = el("tbody");
  table.appendChild(body);
  box.appendChild(table);

  function visibleRows(): Record<string, unknown>[] {
    let result = rows;
    if (filterText) {
      result = result.filter((row) =>
        columns.some((c) => formatCell(row[c]).toLowerCase().includes(filterText)),
      );
    }
    if (sortColumn !== null) {
      const column = sortColumn;
      result = [...result].sort((a, b) => {
        const av = a[column];
        const bv = b[column];
        let cmp: number;
        if (typeof av === "number" && typeof bv === "number") cmp = av - bv;
        else cmp = formatCell(av).localeCompare(formatCell(bv));
        return sortAsc ? cmp : -cmp;
      });
    }
    return result;
  }

  function renderBody(): void {
    body.textContent = "";
    for (const row of visibleRows()) {
      const tr = el("tr");
      if (row.model_id && options.onRowClick) {
        tr.classList.add("clickable");
        tr.addEventListener("click", () => options.onRowClick?.(row));
      }
      for (const column of columns) {
        tr.appendChild(el("td", undefined, formatCell(row[column])));
      }
      body.appendChild(tr);
    }
  }

  renderBody();
  return box;
}

export function renderMatrix(obj: ReportObject): HTMLElement {
  const rowLabels = obj.payload.row_labels as string[];
  const colLabels = obj.payload.col_labels as string[];
  const cells = obj.payload.cells as number[][];
  const box = el("div", "chart matrix");
  box.appendChild(el("h4", "chart-title", obj.title));
  const table = el("table", "matrix-table");
  const head = el("tr");
  head.appendChild(el("th"));
  for (const label of colLabels) head.appendChild(el("th", undefined, label));
  table.appendChild(head);
  rowLabels.forEach((label, i) => {
    const tr = el("tr");
    tr.appendChild(el("th", undefined, label));
    cells[i].forEach((cell) => {
      const td = el("td", cell ? "cell-on" : "cell-off", cell ? "✓" : "✗");
      tr.appendChild(td);
    });
    table.appendChild(tr);
  });
  box.appendChild(table);
  return box;
}

export function renderObject(obj: ReportObject, options: TableOptions = {}): HTMLElement {
  switch (obj.kind) {
    case "kpi":
      return renderKpi(obj);
    case "score_badge":
      return renderScoreBadge(obj);
    case "bar":
      return renderBar(obj);
    case "histogram":
      return renderHistogram(obj);
    case "scatter":
      return renderScatter(obj);
    case "table":
      return renderTable(obj, options);
    case "matrix":
      return renderMatrix(obj);
    default: {
      const box = el("div", "chart unknown");
      box.textContent = `unsupported report object kind: ${(obj as ReportObject).kind}`;
      return box;
    }
  }
}
