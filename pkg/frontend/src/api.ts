/** Client for the prediction service's documented HTTP contract. */

export interface EditContext {
  text_before: string;
  text_after: string;
  reputation: number;
  user_name: string;
}

export interface ReasonItem {
  tag: string;
  message: string;
}

export interface PredictResponse {
  decision: "rejected" | "accepted";
  score: number;
  reasons: ReasonItem[];
  features: Record<string, boolean | number>;
}

/** The request was understood but refused (HTTP 400): bad capture. */
export class CaptureRejectedError extends Error {
  constructor(public code: string, detail: string) {
    super(detail);
    this.name = "CaptureRejectedError";
  }
}

/** Transient failure (network, 5xx, 503 model-not-loaded): worth retrying. */
export class RetryableError extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "RetryableError";
  }
}

interface ErrorBody {
  error?: { code?: string; detail?: string };
}

export async function requestPrediction(
  baseUrl: string,
  context: EditContext,
  signal?: AbortSignal,
): Promise<PredictResponse> {
  let response: Response;
  try {
    response = await fetch(`${baseUrl.replace(/\/$/, "")}/api/v1/predict`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(context),
      signal,
    });
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") {
      throw err;
    }
    throw new RetryableError(`service unreachable: ${String(err)}`);
  }
  if (response.status === 400 || response.status === 413) {
    const body = (await response.json().catch(() => ({}))) as ErrorBody;
    throw new CaptureRejectedError(
      body.error?.code ?? "bad_request",
      body.error?.detail ?? `request refused (${response.status})`,
    );
  }
  if (!response.ok) {
    const body = (await response.json().catch(() => ({}))) as ErrorBody;
    throw new RetryableError(
      body.error?.detail ?? `service error (${response.status})`,
    );
  }
  return (await response.json()) as PredictResponse;
}

export async function checkHealth(
  baseUrl: string,
): Promise<{ status: string; model_loaded: boolean; schema_version: number }> {
  const response = await fetch(`${baseUrl.replace(/\/$/, "")}/api/v1/health`);
  if (!response.ok) {
    throw new RetryableError(`health check failed (${response.status})`);
  }
  return (await response.json()) as {
    status: string;
    model_loaded: boolean;
    schema_version: number;
  };
}
