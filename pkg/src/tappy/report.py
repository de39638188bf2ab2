"""Analysis reports: scoring a document's elements and rendering the result.

This is the single place predictions are assembled, so the CLI and the HTTP
service cannot drift apart: both call :func:`analyze_document` and both
serialize through :func:`report_to_dict`. Rendered output is deterministic
for identical inputs; the timestamp is the only run-dependent field and can
be omitted for reproducible output.

Display conventions: probabilities are rounded to 4 decimals in JSON/CSV
(percentages with 2 decimals in text), millimetre values to 3 decimals.
Rounding happens only at the rendering edge; ``passed`` is decided on the
unrounded rate.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone

from .devices import DeviceProfile
from .errors import DomainError
from .layout import ElementSelection, LayoutDocument, bounding_rect_mm, select_elements
from .model import DEFAULT_COEFFICIENTS, ModelCoefficients, success_rate

__all__ = [
    "DEFAULT_THRESHOLD",
    "AnalysisReport",
    "ElementPrediction",
    "analyze_document",
    "render_report",
    "report_to_dict",
]

DEFAULT_THRESHOLD = 0.95

REPORT_FORMATS = ("text", "json", "csv")

_CSV_COLUMNS = (
    "node_id",
    "node_name",
    "width_px",
    "height_px",
    "width_mm",
    "height_mm",
    "success_rate",
    "passed",
)


@dataclass(frozen=True)
class ElementPrediction:
    """Scored element: design-pixel size, physical size, and predicted rate."""

    node_id: str
    node_name: str
    width_px: float
    height_px: float
    width_mm: float
    height_mm: float
    sigma_x_mm: float
    sigma_y_mm: float
    success_rate: float
    passed: bool


@dataclass(frozen=True)
class AnalysisReport:
    """All element predictions for one document on one device."""

    document_name: str
    device_id: str
    threshold: float
    elements: tuple[ElementPrediction, ...]
    worst: str | None
    generated_at: str | None

    @property
    def all_passed(self) -> bool:
        return all(element.passed for element in self.elements)


def _utc_now_rfc3339() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds").replace(
        "+00:00", "Z"
    )


def analyze_document(
    doc: LayoutDocument,
    profile: DeviceProfile,
    threshold: float = DEFAULT_THRESHOLD,
    selection: ElementSelection | None = None,
    coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS,
    timestamp: bool = True,
) -> AnalysisReport:
    """Score every selected element of ``doc`` as rendered on ``profile``.

    Element order follows :func:`tappy.layout.select_elements`; ``worst`` is
    the node id with the minimum rate (first one on ties), or None for an
    empty selection.
    """
    if not isinstance(threshold, (int, float)) or isinstance(threshold, bool) \
            or not 0.0 <= threshold <= 1.0:
        raise DomainError(f"threshold must be in [0, 1], got {threshold!r}")
    elements = []
    worst_id: str | None = None
    worst_rate = float("inf")
    for node in select_elements(doc, selection):
        size = bounding_rect_mm(node, profile)
        prediction = success_rate(size, coeffs)
        rate = prediction.success_rate
        elements.append(
            ElementPrediction(
                node_id=node.id,
                node_name=node.name,
                width_px=node.frame.width,
                height_px=node.frame.height,
                width_mm=size.width_mm,
                height_mm=size.height_mm,
                sigma_x_mm=prediction.sigma_x_mm,
                sigma_y_mm=prediction.sigma_y_mm,
                success_rate=rate,
                passed=rate >= threshold,
            )
        )
        if rate < worst_rate:
            worst_rate = rate
            worst_id = node.id
    return AnalysisReport(
        document_name=doc.name,
        device_id=profile.id,
        threshold=float(threshold),
        elements=tuple(elements),
        worst=worst_id,
        generated_at=_utc_now_rfc3339() if timestamp else None,
    )


def _round_mm(value: float) -> float:
    return round(value, 3)


def _round_rate(value: float) -> float:
    return round(value, 4)


def _fmt_px(value: float) -> str:
    # Logical px values are usually whole numbers; trim a trailing ".0" but
    # keep fractional sizes exact enough to stay deterministic.
    if value == int(value):
        return str(int(value))
    return format(value, "g")


def report_to_dict(report: AnalysisReport) -> dict:
    """Report as a JSON-ready dict with fixed key order and fixed rounding."""
    out: dict = {
        "document_name": report.document_name,
        "device_id": report.device_id,
        "threshold": report.threshold,
    }
    if report.generated_at is not None:
        out["generated_at"] = report.generated_at
    out["worst"] = report.worst
    out["elements"] = [
        {
            "node_id": e.node_id,
            "node_name": e.node_name,
            "width_px": e.width_px,
            "height_px": e.height_px,
            "width_mm": _round_mm(e.width_mm),
            "height_mm": _round_mm(e.height_mm),
            "sigma_x_mm": _round_mm(e.sigma_x_mm),
            "sigma_y_mm": _round_mm(e.sigma_y_mm),
            "success_rate": _round_rate(e.success_rate),
            "passed": e.passed,
        }
        for e in report.elements
    ]
    return out


def _render_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def _render_csv(report: AnalysisReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for e in report.elements:
        writer.writerow(
            [
                e.node_id,
                e.node_name,
                _fmt_px(e.width_px),
                _fmt_px(e.height_px),
                f"{_round_mm(e.width_mm):.3f}",
                f"{_round_mm(e.height_mm):.3f}",
                f"{_round_rate(e.success_rate):.4f}",
                "true" if e.passed else "false",
            ]
        )
    return buffer.getvalue()


def _render_text(report: AnalysisReport) -> str:
    lines = [
        f"Document:  {report.document_name}",
        f"Device:    {report.device_id}",
        f"Threshold: {report.threshold * 100:.2f}%",
    ]
    if report.generated_at is not None:
        lines.append(f"Generated: {report.generated_at}")
    lines.append("")

    header = ("node", "name", "px", "mm", "rate", "status")
    rows = [header]
    for e in report.elements:
        rows.append(
            (
                e.node_id,
                e.node_name,
                f"{_fmt_px(e.width_px)}x{_fmt_px(e.height_px)}",
                f"{e.width_mm:.3f}x{e.height_mm:.3f}",
                f"{e.success_rate * 100:.2f}%",
                "pass" if e.passed else "FAIL",
            )
        )
    widths = [max(len(row[col]) for row in rows) for col in range(len(header))]
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[col]) for col, cell in enumerate(row)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * widths[col] for col in range(len(header))))

    passed = sum(1 for e in report.elements if e.passed)
    failed = len(report.elements) - passed
    lines.append("")
    lines.append(f"{len(report.elements)} element(s): {passed} passed, {failed} failed")
    if report.worst is not None:
        worst = next(e for e in report.elements if e.node_id == report.worst)
        lines.append(f"Worst: {worst.node_id} ({worst.success_rate * 100:.2f}%)")
    return "\n".join(lines) + "\n"


def render_report(report: AnalysisReport, fmt: str = "text") -> str:
    """Render a report as ``text`` (aligned table), ``json``, or ``csv``.

    Output bytes depend only on the report contents.
    """
    if fmt == "text":
        return _render_text(report)
    if fmt == "json":
        return _render_json(report)
    if fmt == "csv":
        return _render_csv(report)
    raise DomainError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")
