/** Standalone demo page wiring: a textarea pair plus name/reputation inputs,
 * so the panel can be exercised without the live site. */

import { captureEditContext } from "./capture.js";
import { injectStyles, mountPanel } from "./dom.js";
import { DEFAULT_BASE_URL, getBaseUrl } from "./settings.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`demo page is missing #${id}`);
  }
  return el as T;
}

function start(): void {
  injectStyles(document);
  const before = byId<HTMLTextAreaElement>("eg-before");
  const after = byId<HTMLTextAreaElement>("eg-after");
  const name = byId<HTMLInputElement>("eg-name");
  const reputation = byId<HTMLInputElement>("eg-reputation");
  const baseUrl = byId<HTMLInputElement>("eg-base-url");
  const host = byId<HTMLDivElement>("eg-panel-host");

  baseUrl.value = getBaseUrl(window.localStorage);

  byId<HTMLButtonElement>("eg-suggest").addEventListener("click", () => {
    const controller = mountPanel(host, baseUrl.value || DEFAULT_BASE_URL);
    void controller.suggest(
      captureEditContext({
        originalBody: () => before.value,
        currentBody: () => after.value,
        userName: () => name.value,
        reputationDisplay: () => reputation.value,
      }),
    );
  });
}

if (typeof document !== "undefined") {
  start();
}
