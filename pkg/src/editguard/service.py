"""HTTP service exposing the trained predictor.

One POST endpoint accepts the captured edit (before/after bodies, reputation
and user name), runs exactly the same decision path as the offline pipeline,
and returns the verdict with templated reason messages. The loaded model is
an immutable shared reference; hot-reload swaps it atomically so in-flight
requests finish on the model they started with.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .core import EditPair, Label, parse_timestamp
from .features import LinkCheckPolicy
from .pipeline import SCHEMA_VERSION, ModelBundle, decide_edit, load_model

log = logging.getLogger(__name__)

DEFAULT_MAX_FIELD_BYTES = 256 * 1024

_REQUEST_FIELDS = {
    "text_before": str,
    "text_after": str,
    "reputation": int,
    "user_name": str,
}


def load_message_catalog(path: Optional[Union[str, Path]] = None) -> dict[str, str]:
    """Reason-tag to human message mapping; wording lives in a data file so
    it can change without a rebuild."""
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    return json.loads(
        resources.files("editguard").joinpath("data/messages.json").read_text("utf-8")
    )


@dataclass
class ServiceState:
    bundle: Optional[ModelBundle] = None
    link_policy: LinkCheckPolicy = field(default_factory=LinkCheckPolicy.disabled)
    messages: dict[str, str] = field(default_factory=load_message_catalog)
    max_field_bytes: int = DEFAULT_MAX_FIELD_BYTES
    cors_origins: list[str] = field(default_factory=lambda: ["*"])
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def swap_bundle(self, bundle: Optional[ModelBundle]) -> None:
        with self._lock:
            self.bundle = bundle

    def message_for(self, tag: str) -> str:
        return self.messages.get(tag, self.messages.get("default", tag))


def _error(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "detail": detail}}
    )


def create_app(state: Optional[ServiceState] = None) -> FastAPI:
    state = state or ServiceState()
    app = FastAPI(title="editguard", docs_url=None, redoc_url=None)
    app.state.service = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=state.cors_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/v1/health")
    def health():
        return {
            "status": "ok",
            "model_loaded": state.bundle is not None,
            "schema_version": SCHEMA_VERSION,
        }

    @app.post("/api/v1/predict")
    async def predict(request: Request):
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            return _error(400, "invalid_json", "request body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "invalid_body", "request body must be a JSON object")

        for name, type_ in _REQUEST_FIELDS.items():
            if name not in body:
                return _error(400, "missing_field", f"missing field: {name}")
            value = body[name]
            if type_ is int:
                if isinstance(value, bool) or not isinstance(value, int):
                    return _error(400, "invalid_field", f"field {name} must be an integer")
            elif not isinstance(value, type_):
                return _error(400, "invalid_field", f"field {name} must be a string")
        if body["reputation"] < 0:
            return _error(400, "invalid_field", "reputation must be non-negative")
        for name in ("text_before", "text_after"):
            if len(body[name].encode("utf-8")) > state.max_field_bytes:
                return _error(
                    413, "field_too_large",
                    f"field {name} exceeds {state.max_field_bytes} bytes",
                )
        if body["text_before"] == "" and body["text_after"] == "":
            return _error(400, "invalid_field", "text_before and text_after are both empty")

        bundle = state.bundle
        if bundle is None:
            return _error(503, "model_not_loaded", "no model is loaded")

        pair = EditPair(
            id="request",
            timestamp=parse_timestamp("1970-01-01T00:00:00Z"),
            body_before_html=body["text_before"],
            body_after_html=body["text_after"],
            editor_name=body["user_name"],
            editor_reputation=body["reputation"],
        )
        decision = decide_edit(pair, bundle, state.link_policy)
        return {
            "decision": "rejected" if decision.decision is Label.REJECTED else "accepted",
            "score": decision.score,
            "reasons": [
                {"tag": r.wire_tag, "message": state.message_for(r.wire_tag)}
                for r in decision.reasons
            ],
            "features": decision.feature_vector.to_dict(),
        }

    return app


def serve(
    model_path: Optional[Union[str, Path]] = None,
    port: int = 8080,
    host: str = "127.0.0.1",
    enable_link_checks: bool = False,
    cors_origin: str = "*",
    messages_path: Optional[Union[str, Path]] = None,
    link_timeout: float = 2.0,
) -> None:
    """Run the HTTP service (blocking)."""
    import uvicorn

    state = ServiceState(
        bundle=load_model(model_path) if model_path else None,
        link_policy=(
            # One request's link checks share a two-second budget; checks
            # still pending at the deadline count as inactive.
            LinkCheckPolicy.network(timeout_seconds=link_timeout, budget_seconds=2.0)
            if enable_link_checks
            else LinkCheckPolicy.disabled()
        ),
        messages=load_message_catalog(messages_path),
        cors_origins=[cors_origin],
    )
    app = create_app(state)
    log.info("serving on %s:%d (model loaded: %s)", host, port, state.bundle is not None)
    uvicorn.run(app, host=host, port=port, log_level="warning")
