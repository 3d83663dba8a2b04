// Pure HTML renderers for the trace inspector. Every cell carries a server
// value verbatim (escaped for markup only); row order and the five-column
// layout are preserved exactly.

import type { FrameRow, SemJson, TraceJson } from "./types.js";

export const FRAME_COLUMNS = ["attribute", "variable", "status", "given", "new"] as const;

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** The table cells of one frame snapshot, in server row and column order. */
export function frameTableCells(rows: FrameRow[]): string[][] {
  return rows.map((row) => FRAME_COLUMNS.map((column) => row[column]));
}

export function renderFrameTable(rows: FrameRow[]): string {
  const head = FRAME_COLUMNS.map((c) => `<th>${c}</th>`).join("");
  const body = frameTableCells(rows)
    .map((cells) => {
      const status = cells[2];
      const tds = cells.map((cell) => `<td>${escapeHtml(cell)}</td>`).join("");
      return `<tr class="status-${escapeHtml(status)}">${tds}</tr>`;
    })
    .join("");
  return `<table class="frame-table"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderSem(sem: SemJson): string {
  const rows = [
    `<tr><th>index</th><td>${sem.index === null ? "" : escapeHtml(sem.index)}</td></tr>`,
    `<tr><th>given</th><td>${sem.given ? "+" : "−"}</td></tr>`,
    `<tr><th>type</th><td>${escapeHtml(sem.type)}</td></tr>`,
  ];
  for (const property of sem.properties) {
    rows.push(
      `<tr><th>${escapeHtml(property.attribute)}</th><td>${escapeHtml(property.value)}</td></tr>`,
    );
  }
  return `<table class="sem-table"><tbody>${rows.join("")}</tbody></table>`;
}

export function renderTrace(trace: TraceJson): string {
  const parts: string[] = [];
  parts.push(
    `<div class="trace-meta">` +
      `<span class="badge relation-${escapeHtml(trace.relation)}">${escapeHtml(trace.relation)}</span>` +
      `<span class="badge licensed-${trace.licensed}">licensed: ${trace.licensed ? "yes" : "no"}</span>` +
      (trace.error ? `<span class="badge error">error: ${escapeHtml(trace.error)}</span>` : "") +
      `</div>`,
  );
  trace.frames.forEach((rows, i) => {
    parts.push(`<h4>Frame ${i + 1}</h4>`);
    parts.push(renderFrameTable(rows));
  });
  if (trace.sems.length > 0) {
    parts.push(`<h4>NP semantics</h4>`);
    for (const sem of trace.sems) {
      parts.push(renderSem(sem));
    }
  }
  return parts.join("\n");
}

export function renderTurnView(entry: { user: string; answer: string; trace: TraceJson }): string {
  return (
    `<div class="turn-view">` +
    `<div class="turn-user">${escapeHtml(entry.user)}</div>` +
    `<div class="turn-answer">${escapeHtml(entry.answer)}</div>` +
    renderTrace(entry.trace) +
    `</div>`
  );
}
