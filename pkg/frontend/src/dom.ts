/** Thin DOM layer shared by the userscript and the demo page. */

import type { PanelState } from "./panel.js";
import { PANEL_STYLES } from "./panel.js";
import { SuggestionController } from "./controller.js";

export function injectStyles(doc: Document): void {
  if (doc.getElementById("eg-styles")) {
    return;
  }
  const style = doc.createElement("style");
  style.id = "eg-styles";
  style.textContent = PANEL_STYLES;
  doc.head.appendChild(style);
}

/** Mount a panel into `host`; wires the retry button on every render. */
export function mountPanel(
  host: HTMLElement,
  baseUrl: string,
): SuggestionController {
  const controller = new SuggestionController({
    baseUrl,
    render: (html: string, _state: PanelState) => {
      host.innerHTML = html;
      const retry = host.querySelector<HTMLButtonElement>(".eg-retry");
      if (retry) {
        retry.addEventListener("click", () => void controller.retry());
      }
    },
  });
  return controller;
}
