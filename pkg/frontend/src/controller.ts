/** Drives the panel: one suggestion request in flight at a time; a new click
 * cancels the previous request and resends. */

import {
  CaptureRejectedError,
  RetryableError,
  requestPrediction,
  type EditContext,
} from "./api.js";
import type { CaptureResult } from "./capture.js";
import { renderPanel, type PanelState } from "./panel.js";

export interface ControllerOptions {
  baseUrl: string;
  render: (html: string, state: PanelState) => void;
}

export class SuggestionController {
  private inflight: AbortController | null = null;
  private lastContext: EditContext | null = null;

  constructor(private readonly options: ControllerOptions) {
    this.show({ kind: "idle" });
  }

  private show(state: PanelState): void {
    this.options.render(renderPanel(state), state);
  }

  /** Entry point for the Suggestion action. */
  async suggest(capture: CaptureResult): Promise<PanelState> {
    if (!capture.ok) {
      const state: PanelState = { kind: "capture_failed", missing: capture.missing };
      this.show(state);
      return state;
    }
    return this.request(capture.context);
  }

  /** Re-issue the last request (retry button). */
  async retry(): Promise<PanelState | null> {
    if (this.lastContext === null) {
      return null;
    }
    return this.request(this.lastContext);
  }

  private async request(context: EditContext): Promise<PanelState> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.lastContext = context;
    this.show({ kind: "loading" });
    try {
      const response = await requestPrediction(
        this.options.baseUrl,
        context,
        controller.signal,
      );
      if (controller !== this.inflight) {
        return { kind: "loading" }; // superseded by a newer click
      }
      const state: PanelState = { kind: "result", response };
      this.show(state);
      return state;
    } catch (err) {
      if (controller !== this.inflight) {
        return { kind: "loading" };
      }
      if (err instanceof DOMException && err.name === "AbortError") {
        return { kind: "loading" };
      }
      let state: PanelState;
      if (err instanceof CaptureRejectedError) {
        state = {
          kind: "capture_failed",
          missing: [err.code],
        };
      } else if (err instanceof RetryableError) {
        state = { kind: "error", detail: err.message };
      } else {
        state = { kind: "error", detail: String(err) };
      }
      this.show(state);
      return state;
    } finally {
      if (controller === this.inflight) {
        this.inflight = null;
      }
    }
  }
}
