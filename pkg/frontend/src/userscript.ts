// ==UserScript==
// @name         EditGuard suggestions
// @namespace    editguard
// @version      0.1.0
// @description  Warns about likely-rejected post edits before you submit them
// @match        *://*/posts/*/edit*
// @match        *://*/questions/*
// @grant        none
// ==/UserScript==

/** Userscript entry: adds EditGuard + Suggestion actions next to the post
 * editor, captures the edit context and shows the verdict panel. The page
 * text is never modified; the panel is purely informational. */

import { captureEditContext, type EditSurface } from "./capture.js";
import { injectStyles, mountPanel } from "./dom.js";
import { DEFAULT_BASE_URL, getBaseUrl, setBaseUrl } from "./settings.js";

// Selectors for the edit surface; adjust per site skin.
const EDITOR_SELECTOR = "textarea.wmd-input, textarea[name='post-text']";
const REPUTATION_SELECTOR = ".js-header-reputation, .reputation-score";
const USER_SELECTOR = ".js-header-username, .my-profile .gravatar-wrapper-24";

function pageSurface(doc: Document, original: string | null): EditSurface {
  return {
    originalBody: () => original,
    currentBody: () => {
      const editor = doc.querySelector<HTMLTextAreaElement>(EDITOR_SELECTOR);
      return editor ? editor.value : null;
    },
    userName: () => {
      const el = doc.querySelector<HTMLElement>(USER_SELECTOR);
      return el?.textContent?.trim() || null;
    },
    reputationDisplay: () => {
      const el = doc.querySelector<HTMLElement>(REPUTATION_SELECTOR);
      return el?.textContent?.trim() || null;
    },
  };
}

function install(doc: Document): void {
  const editor = doc.querySelector<HTMLTextAreaElement>(EDITOR_SELECTOR);
  if (!editor || doc.getElementById("eg-actions")) {
    return;
  }
  injectStyles(doc);

  // Snapshot the body as it was when editing began.
  const original = editor.value;

  const bar = doc.createElement("div");
  bar.id = "eg-actions";
  const suggestBtn = doc.createElement("button");
  suggestBtn.type = "button";
  suggestBtn.textContent = "Suggestion";
  const settingsBtn = doc.createElement("button");
  settingsBtn.type = "button";
  settingsBtn.textContent = "EditGuard settings";
  const host = doc.createElement("div");
  bar.append(suggestBtn, settingsBtn);
  editor.insertAdjacentElement("afterend", host);
  editor.insertAdjacentElement("afterend", bar);

  const store = window.localStorage;
  const controller = mountPanel(host, getBaseUrl(store));
  const surface = pageSurface(doc, original);

  suggestBtn.addEventListener("click", () => {
    void controller.suggest(captureEditContext(surface));
  });
  settingsBtn.addEventListener("click", () => {
    const current = getBaseUrl(store);
    const next = window.prompt("EditGuard service base URL", current);
    if (next) {
      setBaseUrl(store, next);
      window.alert("Saved. Reload the page to apply.");
    }
  });
}

if (typeof document !== "undefined") {
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => install(document));
  } else {
    install(document);
  }
}

export { DEFAULT_BASE_URL };
