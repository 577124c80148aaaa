/** Capture the four request fields from an open edit surface.
 *
 * The surface abstraction keeps this testable outside a browser; the
 * userscript adapts the live page to it. Capture failures are reported, not
 * thrown: the panel shows a notice and editing is never blocked.
 */

import type { EditContext } from "./api.js";
import { parseReputation } from "./reputation.js";

export interface EditSurface {
  /** Body snapshot taken when editing began. */
  originalBody(): string | null;
  /** Live body with the user's pending edit. */
  currentBody(): string | null;
  userName(): string | null;
  /** Reputation as displayed, e.g. "2,345" or "1.2k". */
  reputationDisplay(): string | null;
}

export type CaptureResult =
  | { ok: true; context: EditContext }
  | { ok: false; missing: string[] };

export function captureEditContext(surface: EditSurface): CaptureResult {
  const missing: string[] = [];

  const before = surface.originalBody();
  if (before === null) {
    missing.push("text_before");
  }
  const after = surface.currentBody();
  if (after === null) {
    missing.push("text_after");
  }
  const name = surface.userName();
  if (name === null || name.trim() === "") {
    missing.push("user_name");
  }
  const repDisplay = surface.reputationDisplay();
  const reputation = repDisplay === null ? null : parseReputation(repDisplay);
  if (reputation === null) {
    missing.push("reputation");
  }

  if (missing.length > 0) {
    return { ok: false, missing };
  }
  return {
    ok: true,
    context: {
      text_before: before as string,
      text_after: after as string,
      reputation: reputation as number,
      user_name: (name as string).trim(),
    },
  };
}
