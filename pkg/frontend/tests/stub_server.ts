/** Minimal stub of the prediction service, implementing the documented
 * /api/v1/predict schema verbatim, for contract-testing the panel. */

import { createServer, type Server } from "node:http";
import type { AddressInfo } from "node:net";
import type { PredictResponse } from "../src/api.js";

export type StubBehavior =
  | { kind: "respond"; body: PredictResponse }
  | { kind: "model_not_loaded" }
  | { kind: "connection_drop" };

export interface StubService {
  baseUrl: string;
  requests: unknown[];
  setBehavior(behavior: StubBehavior): void;
  close(): Promise<void>;
}

const REQUIRED_FIELDS = ["text_before", "text_after", "reputation", "user_name"];

export async function startStub(): Promise<StubService> {
  let behavior: StubBehavior = { kind: "model_not_loaded" };
  const requests: unknown[] = [];

  const server: Server = createServer((req, res) => {
    if (req.method === "GET" && req.url === "/api/v1/health") {
      res.writeHead(200, { "content-type": "application/json" });
      res.end(
        JSON.stringify({
          status: "ok",
          model_loaded: behavior.kind === "respond",
          schema_version: 1,
        }),
      );
      return;
    }
    if (req.method !== "POST" || req.url !== "/api/v1/predict") {
      res.writeHead(404, { "content-type": "application/json" });
      res.end(JSON.stringify({ error: { code: "not_found", detail: "no such route" } }));
      return;
    }
    let raw = "";
    req.on("data", (chunk) => (raw += chunk));
    req.on("end", () => {
      let body: Record<string, unknown>;
      try {
        body = JSON.parse(raw) as Record<string, unknown>;
      } catch {
        res.writeHead(400, { "content-type": "application/json" });
        res.end(
          JSON.stringify({ error: { code: "invalid_json", detail: "not JSON" } }),
        );
        return;
      }
      requests.push(body);
      for (const field of REQUIRED_FIELDS) {
        if (!(field in body)) {
          res.writeHead(400, { "content-type": "application/json" });
          res.end(
            JSON.stringify({
              error: { code: "missing_field", detail: `missing field: ${field}` },
            }),
          );
          return;
        }
      }
      if (behavior.kind === "connection_drop") {
        res.destroy();
        return;
      }
      if (behavior.kind === "model_not_loaded") {
        res.writeHead(503, { "content-type": "application/json" });
        res.end(
          JSON.stringify({
            error: { code: "model_not_loaded", detail: "no model is loaded" },
          }),
        );
        return;
      }
      res.writeHead(200, { "content-type": "application/json" });
      res.end(JSON.stringify(behavior.body));
    });
  });

  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const port = (server.address() as AddressInfo).port;
  return {
    baseUrl: `http://127.0.0.1:${port}`,
    requests,
    setBehavior: (b) => (behavior = b),
    close: () => new Promise((resolve) => server.close(() => resolve())),
  };
}
