/** Render the suggestion panel for each state as an HTML string.
 *
 * The panel is display-only: it never touches the edited text. String
 * rendering keeps the state machine testable without a browser; the thin
 * mount layer lives in dom.ts.
 */

import type { PredictResponse } from "./api.js";

export type PanelState =
  | { kind: "idle" }
  | { kind: "loading" }
  | { kind: "result"; response: PredictResponse }
  | { kind: "capture_failed"; missing: string[] }
  | { kind: "error"; detail: string };

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function badge(decision: "rejected" | "accepted", score: number): string {
  const pct = Math.round(score * 100);
  const label =
    decision === "rejected"
      ? `likely rejected (${pct}%)`
      : `likely accepted (${100 - pct}%)`;
  return `<span class="eg-badge eg-${decision}">${label}</span>`;
}

function reasonList(response: PredictResponse): string {
  if (response.reasons.length === 0) {
    return "";
  }
  const items = response.reasons
    .map(
      (r) =>
        `<li class="eg-reason" data-tag="${escapeHtml(r.tag)}">` +
        `${escapeHtml(r.message)}</li>`,
    )
    .join("");
  return `<ul class="eg-reasons">${items}</ul>`;
}

export function renderPanel(state: PanelState): string {
  let body: string;
  switch (state.kind) {
    case "idle":
      body = '<p class="eg-hint">Ask for a suggestion before submitting your edit.</p>';
      break;
    case "loading":
      body = '<p class="eg-loading">Checking your edit&#8230;</p>';
      break;
    case "result":
      body = badge(state.response.decision, state.response.score) +
        reasonList(state.response);
      break;
    case "capture_failed":
      body =
        '<p class="eg-capture-failed">Could not read the edit context (' +
        escapeHtml(state.missing.join(", ")) +
        "). You can keep editing as usual.</p>";
      break;
    case "error":
      body =
        `<p class="eg-error">${escapeHtml(state.detail)}</p>` +
        '<button type="button" class="eg-retry">Retry</button>';
      break;
  }
  return `<div class="eg-panel eg-${state.kind}">${body}</div>`;
}

export const PANEL_STYLES = `
.eg-panel { border: 1px solid #c8ccd0; border-radius: 6px; padding: 10px 12px;
  margin: 8px 0; font-size: 13px; background: #fdfdfd; }
.eg-badge { display: inline-block; padding: 2px 10px; border-radius: 10px;
  font-weight: 600; color: #fff; }
.eg-badge.eg-rejected { background: #c0392b; }
.eg-badge.eg-accepted { background: #27845b; }
.eg-reasons { margin: 8px 0 0 18px; padding: 0; }
.eg-reason { margin: 4px 0; }
.eg-error, .eg-capture-failed { color: #8a4a00; margin: 0 0 6px; }
.eg-retry { cursor: pointer; }
.eg-hint, .eg-loading { color: #666; margin: 0; }
`;
