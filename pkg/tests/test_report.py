"""Report tests: analysis pipeline, rendering, determinism."""

import json
import re

import pytest

from tappy.devices import px_to_mm
from tappy.errors import DomainError
from tappy.layout import ElementSelection, document_from_data, parse_document
from tappy.model import PhysicalSize, success_rate
from tappy.report import analyze_document, render_report, report_to_dict

RFC3339_UTC = re.compile(r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$")


@pytest.fixture()
def login_report(samples_dir, registry):
    doc = parse_document(samples_dir / "login.json")
    profile = registry.get("iphone-16")
    return analyze_document(doc, profile, timestamp=False)


class TestAnalyzeDocument:
    def test_element_order_and_worst(self, login_report):
        ids = [e.node_id for e in login_report.elements]
        assert ids == [
            "logo",
            "title",
            "field-email",
            "field-password",
            "btn-login",
            "link-forgot",
            "btn-apple",
            "btn-google",
            "signup-hint",
        ]
        assert login_report.worst == "link-forgot"
        assert not login_report.all_passed

    def test_presentation_layer_does_not_recompute(self, login_report, registry):
        # Every reported rate must equal the model applied to the converted
        # sizes; the report is assembled from model-core output, not a copy.
        profile = registry.get("iphone-16")
        for element in login_report.elements:
            assert element.width_mm == px_to_mm(element.width_px, profile)
            assert element.height_mm == px_to_mm(element.height_px, profile)
            expected = success_rate(PhysicalSize(element.width_mm, element.height_mm))
            assert element.success_rate == expected.success_rate
            assert element.sigma_x_mm == expected.sigma_x_mm
            assert element.sigma_y_mm == expected.sigma_y_mm
            assert element.passed == (element.success_rate >= login_report.threshold)

    def test_worst_tie_takes_first(self, registry):
        doc = document_from_data(
            {
                "name": "ties",
                "root": {
                    "id": "root",
                    "name": "root",
                    "type": "frame",
                    "frame": {"x": 0, "y": 0, "width": 393, "height": 852},
                    "children": [
                        {
                            "id": f"twin-{i}",
                            "name": f"twin-{i}",
                            "type": "rectangle",
                            "frame": {"x": 30 * i, "y": 0, "width": 20, "height": 20},
                        }
                        for i in range(3)
                    ],
                },
            }
        )
        report = analyze_document(doc, registry.get("iphone-16"), timestamp=False)
        assert report.worst == "twin-0"

    def test_empty_selection(self, samples_dir, registry):
        doc = parse_document(samples_dir / "minimal.json")
        report = analyze_document(
            doc,
            registry.get("iphone-16"),
            selection=ElementSelection(name_glob="no-such-name"),
            timestamp=False,
        )
        assert report.elements == ()
        assert report.worst is None
        assert report.all_passed
        for fmt in ("text", "json", "csv"):
            assert render_report(report, fmt)

    def test_timestamp_format(self, samples_dir, registry):
        doc = parse_document(samples_dir / "minimal.json")
        report = analyze_document(doc, registry.get("iphone-16"))
        assert RFC3339_UTC.match(report.generated_at)

    def test_threshold_validated(self, samples_dir, registry):
        doc = parse_document(samples_dir / "minimal.json")
        with pytest.raises(DomainError):
            analyze_document(doc, registry.get("iphone-16"), threshold=1.5)

    def test_threshold_changes_passed(self, samples_dir, registry):
        doc = parse_document(samples_dir / "minimal.json")
        profile = registry.get("iphone-16")
        lenient = analyze_document(doc, profile, threshold=0.95, timestamp=False)
        strict = analyze_document(doc, profile, threshold=0.999, timestamp=False)
        assert lenient.elements[0].passed
        assert not strict.elements[0].passed
        assert lenient.elements[0].success_rate == strict.elements[0].success_rate


class TestRendering:
    def test_csv_line_count(self, samples_dir, registry):
        doc = parse_document(samples_dir / "minimal.json")
        report = analyze_document(doc, registry.get("iphone-16"), timestamp=False)
        lines = render_report(report, "csv").splitlines()
        assert len(lines) == 1 + len(report.elements)
        assert lines[0] == (
            "node_id,node_name,width_px,height_px,width_mm,height_mm,"
            "success_rate,passed"
        )

    def test_json_shape_and_rounding(self, login_report):
        data = json.loads(render_report(login_report, "json"))
        assert list(data) == [
            "document_name",
            "device_id",
            "threshold",
            "worst",
            "elements",
        ]
        first = data["elements"][0]
        assert list(first) == [
            "node_id",
            "node_name",
            "width_px",
            "height_px",
            "width_mm",
            "height_mm",
            "sigma_x_mm",
            "sigma_y_mm",
            "success_rate",
            "passed",
        ]
        for element in data["elements"]:
            assert element["success_rate"] == round(element["success_rate"], 4)
            assert element["width_mm"] == round(element["width_mm"], 3)

    def test_json_includes_timestamp_when_present(self, samples_dir, registry):
        doc = parse_document(samples_dir / "minimal.json")
        report = analyze_document(doc, registry.get("iphone-16"))
        data = json.loads(render_report(report, "json"))
        assert "generated_at" in data

    def test_reproducible_renders_byte_identical(self, login_report):
        for fmt in ("text", "json", "csv"):
            assert render_report(login_report, fmt) == render_report(login_report, fmt)

    def test_text_has_percent_rates(self, login_report):
        text = render_report(login_report, "text")
        assert "99.62%" in text
        assert "FAIL" in text
        assert "Worst: link-forgot" in text

    def test_unknown_format(self, login_report):
        with pytest.raises(DomainError):
            render_report(login_report, "yaml")

    def test_dict_passed_is_boolean(self, login_report):
        data = report_to_dict(login_report)
        assert {type(e["passed"]) for e in data["elements"]} == {bool}
