"""Minimal threaded HTTP front end over the normalization pipeline.

POST /normalize  {"text": str}  → NormalizationResult JSON (with timings)
GET  /healthz                   → build/artifact metadata + request counters

Artifacts are immutable and shared across handler threads; the only mutable
state is the metrics dict, guarded by a lock.
"""

from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .config import Config
from .pipeline import Artifacts, normalize_document
from .textscan import Document

log = logging.getLogger(__name__)


class NormalizeHandler(BaseHTTPRequestHandler):
    server_version = "locnorm/1.0"
    protocol_version = "HTTP/1.1"

    # injected by make_server()
    artifacts: Artifacts
    options: Config
    metrics: dict
    metrics_lock: threading.Lock

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        log.debug("%s - %s", self.address_string(), format % args)

    def _bump(self, key: str) -> None:
        with self.metrics_lock:
            self.metrics[key] = self.metrics.get(key, 0) + 1

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self) -> None:  # noqa: N802
        if self.path != "/healthz":
            self._send_json(404, {"error": f"unknown path {self.path}"})
            return
        with self.metrics_lock:
            counters = dict(self.metrics)
        self._send_json(
            200,
            {
                "status": "ok",
                "artifacts": self.artifacts.metadata(),
                "metrics": counters,
            },
        )

    def do_POST(self) -> None:  # noqa: N802
        if self.path != "/normalize":
            self._send_json(404, {"error": f"unknown path {self.path}"})
            return
        length = int(self.headers.get("Content-Length") or 0)
        if length > self.options.max_body_bytes:
            # Refuse without reading the body; the unread bytes would desync
            # a kept-alive connection, so force this one closed.
            self.close_connection = True
            self._bump("rejected_oversize")
            self._send_json(
                413,
                {
                    "error": f"body of {length} bytes exceeds the "
                    f"{self.options.max_body_bytes}-byte limit"
                },
            )
            return
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw)
            text = payload["text"]
            if not isinstance(text, str):
                raise TypeError("'text' must be a string")
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            self._bump("rejected_malformed")
            self._send_json(400, {"error": f"bad request body: {exc}"})
            return
        result = normalize_document(Document("", text), self.artifacts, self.options)
        self._bump("normalized")
        self._send_json(200, result.to_dict(include_timings=True))


def make_server(artifacts: Artifacts, options: Config) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; handy for tests."""
    handler = type(
        "BoundNormalizeHandler",
        (NormalizeHandler,),
        {
            "artifacts": artifacts,
            "options": options,
            "metrics": {},
            "metrics_lock": threading.Lock(),
        },
    )
    return ThreadingHTTPServer((options.host, options.port), handler)


def serve(artifacts: Artifacts, options: Config) -> None:
    """Run the service until interrupted."""
    httpd = make_server(artifacts, options)
    host, port = httpd.server_address[:2]
    log.info("serving on http://%s:%s", host, port)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        log.info("shutting down")
    finally:
        httpd.server_close()
