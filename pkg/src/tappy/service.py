"""Local HTTP JSON API exposing devices, prediction, and document analysis.

Endpoints (HTTP/1.1, JSON bodies, UTF-8):

    GET  /v1/health   -> {"status": "ok", "version": ...}
    GET  /v1/devices  -> registry profiles, in registry order
    POST /v1/predict  -> {width_mm, height_mm, sigma_x_mm, sigma_y_mm, success_rate}
    POST /v1/analyze  -> analysis report, identical in content to the CLI's JSON

POST bodies must be sent as ``application/json`` (415 otherwise). Every
error response carries ``{"error": code, "message": ...}`` plus an optional
``detail``. The service is stateless: the registry and coefficients are
fixed at startup, handlers share no mutable state, and requests may be
served concurrently in any order.

This is a localhost developer service: no auth, no TLS, permissive CORS by
default so a local inspector page can call it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import __version__
from .devices import DeviceRegistry, load_registry, px_to_mm
from .errors import ParseError, SelectionError, TappyError, UnknownDeviceError
from .layout import ElementSelection, document_from_data
from .model import DEFAULT_COEFFICIENTS, ModelCoefficients, PhysicalSize, success_rate
from .report import DEFAULT_THRESHOLD, analyze_document, report_to_dict

__all__ = ["ServiceConfig", "ApiError", "build_server", "serve"]

DEFAULT_PORT = 7317

_PREDICT_KEYS = frozenset(
    {"device_id", "width_px", "height_px", "width_mm", "height_mm"}
)
_ANALYZE_KEYS = frozenset({"document", "device_id", "threshold", "selection"})
_SELECTION_KEYS = frozenset({"include_containers", "name_glob", "explicit_only"})


@dataclass(frozen=True)
class ServiceConfig:
    """Bind address and CORS policy; loopback-only by default."""

    port: int = DEFAULT_PORT
    host: str = "127.0.0.1"
    cors_origins: tuple[str, ...] = ("*",)

    def __post_init__(self) -> None:
        if not isinstance(self.port, int) or isinstance(self.port, bool) \
                or not 0 <= self.port <= 65535:
            raise TappyError(f"port must be in [0, 65535], got {self.port!r}")


class ApiError(Exception):
    """Maps straight to an HTTP error response with a machine-readable code."""

    def __init__(self, status: int, code: str, message: str, detail: str | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail

    def body(self) -> dict:
        out = {"error": self.code, "message": self.message}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def _bad_request(code: str, message: str, detail: str | None = None) -> ApiError:
    return ApiError(400, code, message, detail)


def _require_number(body: dict, key: str) -> float:
    value = body[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise _bad_request("NEGATIVE_SIZE", f"{key} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise _bad_request("NEGATIVE_SIZE", f"{key} must be a finite value >= 0, got {value}")
    return value


def _predict_response(body: dict, registry: DeviceRegistry, coeffs: ModelCoefficients) -> dict:
    if not isinstance(body, dict):
        raise _bad_request("MISSING_FIELDS", "request body must be a JSON object")
    unknown = [key for key in body if key not in _PREDICT_KEYS]
    if unknown:
        raise _bad_request(
            "UNKNOWN_FIELDS", f"unknown fields: {', '.join(sorted(unknown))}"
        )
    px_given = "width_px" in body or "height_px" in body
    mm_given = "width_mm" in body or "height_mm" in body
    if px_given and mm_given:
        raise _bad_request(
            "MIXED_UNITS", "send either width_px/height_px with device_id, or width_mm/height_mm"
        )
    if mm_given:
        if "width_mm" not in body or "height_mm" not in body:
            raise _bad_request("MISSING_FIELDS", "both width_mm and height_mm are required")
        size = PhysicalSize(
            width_mm=_require_number(body, "width_mm"),
            height_mm=_require_number(body, "height_mm"),
        )
    elif px_given:
        if "width_px" not in body or "height_px" not in body:
            raise _bad_request("MISSING_FIELDS", "both width_px and height_px are required")
        if "device_id" not in body:
            raise _bad_request("MISSING_FIELDS", "device_id is required with pixel sizes")
        try:
            profile = registry.get(body["device_id"])
        except UnknownDeviceError as exc:
            raise _bad_request(
                "UNKNOWN_DEVICE", str(exc), detail=", ".join(exc.known_ids)
            ) from None
        size = PhysicalSize(
            width_mm=px_to_mm(_require_number(body, "width_px"), profile),
            height_mm=px_to_mm(_require_number(body, "height_px"), profile),
        )
    else:
        raise _bad_request(
            "MISSING_FIELDS", "provide width_px/height_px with device_id, or width_mm/height_mm"
        )
    prediction = success_rate(size, coeffs)
    return {
        "width_mm": size.width_mm,
        "height_mm": size.height_mm,
        "sigma_x_mm": prediction.sigma_x_mm,
        "sigma_y_mm": prediction.sigma_y_mm,
        "success_rate": prediction.success_rate,
    }


def _selection_from_body(data) -> ElementSelection:
    if data is None:
        return ElementSelection()
    if not isinstance(data, dict):
        raise _bad_request("INVALID_SELECTION", "selection must be an object")
    unknown = [key for key in data if key not in _SELECTION_KEYS]
    if unknown:
        raise _bad_request(
            "INVALID_SELECTION", f"unknown selection keys: {', '.join(sorted(unknown))}"
        )
    include_containers = data.get("include_containers", False)
    explicit_only = data.get("explicit_only", False)
    name_glob = data.get("name_glob")
    if not isinstance(include_containers, bool) or not isinstance(explicit_only, bool):
        raise _bad_request(
            "INVALID_SELECTION", "include_containers and explicit_only must be booleans"
        )
    if name_glob is not None and not isinstance(name_glob, str):
        raise _bad_request("INVALID_SELECTION", "name_glob must be a string")
    try:
        return ElementSelection(
            include_containers=include_containers,
            name_glob=name_glob,
            explicit_only=explicit_only,
        )
    except SelectionError as exc:
        raise _bad_request("INVALID_SELECTION", str(exc)) from None


def _analyze_response(body: dict, registry: DeviceRegistry, coeffs: ModelCoefficients) -> dict:
    if not isinstance(body, dict):
        raise _bad_request("MISSING_FIELDS", "request body must be a JSON object")
    unknown = [key for key in body if key not in _ANALYZE_KEYS]
    if unknown:
        raise _bad_request(
            "UNKNOWN_FIELDS", f"unknown fields: {', '.join(sorted(unknown))}"
        )
    if "document" not in body:
        raise _bad_request("MISSING_FIELDS", "document is required")
    try:
        doc = document_from_data(body["document"])
    except ParseError as exc:
        raise _bad_request("INVALID_DOCUMENT", str(exc)) from None

    device_id = body.get("device_id", doc.default_device)
    if device_id is None:
        raise _bad_request(
            "MISSING_FIELDS", "device_id is required (document declares no default_device)"
        )
    try:
        profile = registry.get(device_id)
    except UnknownDeviceError as exc:
        raise _bad_request("UNKNOWN_DEVICE", str(exc), detail=", ".join(exc.known_ids)) from None

    threshold = body.get("threshold", DEFAULT_THRESHOLD)
    if not isinstance(threshold, (int, float)) or isinstance(threshold, bool) \
            or not 0.0 <= float(threshold) <= 1.0:
        raise _bad_request("INVALID_THRESHOLD", f"threshold must be in [0, 1], got {threshold!r}")

    selection = _selection_from_body(body.get("selection"))
    report = analyze_document(
        doc, profile, threshold=float(threshold), selection=selection, coeffs=coeffs
    )
    return report_to_dict(report)


def _make_handler(config: ServiceConfig, registry: DeviceRegistry, coeffs: ModelCoefficients):
    allow_origin = ", ".join(config.cors_origins) if config.cors_origins else None

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"
        server_version = f"tappy/{__version__}"

        def log_message(self, format, *args):  # noqa: A002 - stdlib signature
            pass  # a localhost tool should not spam stderr per request

        def _send(self, status: int, payload, head_only: bool = False) -> None:
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            if allow_origin:
                self.send_header("Access-Control-Allow-Origin", allow_origin)
            self.end_headers()
            if not head_only:
                self.wfile.write(body)

        def _send_error(self, err: ApiError) -> None:
            self._send(err.status, err.body())

        def _read_json_body(self) -> dict:
            content_type = self.headers.get("Content-Type", "")
            if content_type.split(";")[0].strip().lower() != "application/json":
                raise ApiError(
                    415,
                    "UNSUPPORTED_MEDIA_TYPE",
                    f"Content-Type must be application/json, got {content_type!r}",
                )
            length = int(self.headers.get("Content-Length", 0))
            raw = self.rfile.read(length) if length else b""
            try:
                return json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise _bad_request("INVALID_JSON", f"request body is not valid JSON: {exc}")

        def _get_payload(self):
            if self.path == "/v1/health":
                return {"status": "ok", "version": __version__}
            if self.path == "/v1/devices":
                return [profile.to_dict() for profile in registry]
            raise ApiError(404, "NOT_FOUND", f"no such endpoint: {self.path}")

        def do_GET(self) -> None:
            try:
                self._send(200, self._get_payload())
            except ApiError as err:
                self._send_error(err)

        def do_HEAD(self) -> None:
            try:
                self._send(200, self._get_payload(), head_only=True)
            except ApiError as err:
                self._send(err.status, err.body(), head_only=True)

        def do_POST(self) -> None:
            try:
                body = self._read_json_body()
                if self.path == "/v1/predict":
                    self._send(200, _predict_response(body, registry, coeffs))
                elif self.path == "/v1/analyze":
                    self._send(200, _analyze_response(body, registry, coeffs))
                else:
                    raise ApiError(404, "NOT_FOUND", f"no such endpoint: {self.path}")
            except ApiError as err:
                self._send_error(err)
            except TappyError as err:
                self._send_error(_bad_request("INVALID_REQUEST", str(err)))

        def do_OPTIONS(self) -> None:
            self.send_response(204)
            if allow_origin:
                self.send_header("Access-Control-Allow-Origin", allow_origin)
                self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
                self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

    return Handler


def build_server(
    config: ServiceConfig | None = None,
    registry: DeviceRegistry | None = None,
    coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS,
) -> ThreadingHTTPServer:
    """Create the (not yet running) HTTP server; port 0 binds an ephemeral port."""
    if config is None:
        config = ServiceConfig()
    if registry is None:
        registry = load_registry()
    handler = _make_handler(config, registry, coeffs)
    return ThreadingHTTPServer((config.host, config.port), handler)


def serve(
    config: ServiceConfig | None = None,
    registry: DeviceRegistry | None = None,
    coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS,
) -> None:
    """Run the service until interrupted."""
    server = build_server(config, registry, coeffs)
    host, port = server.server_address[:2]
    print(f"tappy service listening on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
