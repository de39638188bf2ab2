"""Device registry tests: loading, strict parsing, px<->mm conversion."""

import io
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tappy.devices import (
    BUILT_IN_SOURCE,
    DeviceProfile,
    DeviceRegistry,
    load_registry,
    mm_to_px,
    parse_registry,
    px_to_mm,
)
from tappy.errors import DomainError, ParseError, UnknownDeviceError, ValidationError

REFERENCE = DeviceProfile(
    id="ref",
    display_name="Reference",
    ppi=460,
    scale_factor=3,
    logical_width=393,
    logical_height=852,
)

# 1 logical px renders as exactly 1 mm on this profile.
IDENTITY = DeviceProfile(
    id="identity",
    display_name="Identity",
    ppi=25.4,
    scale_factor=1,
    logical_width=100,
    logical_height=100,
)


def _entry(**overrides):
    base = {
        "id": "test-device",
        "display_name": "Test Device",
        "ppi": 400,
        "scale_factor": 2,
        "logical_width": 400,
        "logical_height": 800,
    }
    base.update(overrides)
    return base


class TestBuiltInRegistry:
    def test_contains_iphone_16(self, registry):
        profile = registry.get("iphone-16")
        assert profile.ppi == 460
        assert profile.scale_factor == 3
        assert profile.logical_width == 393
        assert profile.logical_height == 852

    def test_iphone_16_ppi_rederivable(self, registry):
        # Published density should match sqrt(w^2 + h^2) / diagonal for the
        # 6.1-inch panel (vendors round to the nearest integer ppi).
        profile = registry.get("iphone-16")
        physical_w = profile.logical_width * profile.scale_factor
        physical_h = profile.logical_height * profile.scale_factor
        derived = math.hypot(physical_w, physical_h) / 6.1
        assert derived == pytest.approx(profile.ppi, rel=0.01)

    def test_source_label(self, registry):
        assert registry.source == BUILT_IN_SOURCE

    def test_deterministic_reload(self, registry):
        again = load_registry()
        assert again == registry
        assert again.ids == registry.ids

    def test_unknown_device(self, registry):
        with pytest.raises(UnknownDeviceError) as info:
            registry.get("iphone-99")
        assert "iphone-99" in str(info.value)
        assert "iphone-16" in str(info.value)


class TestRegistryParsing:
    def test_empty_file(self):
        with pytest.raises(ValidationError, match="at least one device"):
            parse_registry("[]", "test")

    def test_malformed_json_reports_position(self):
        with pytest.raises(ParseError, match="line"):
            parse_registry("[{", "test")

    def test_duplicate_id_named(self):
        text = json.dumps([_entry(), _entry(display_name="Clone")])
        with pytest.raises(ValidationError, match="test-device"):
            parse_registry(text, "test")

    def test_unknown_key_rejected(self):
        text = json.dumps([_entry(diagonal_inches=6.1)])
        with pytest.raises(ValidationError, match="diagonal_inches"):
            parse_registry(text, "test")

    def test_missing_key_rejected(self):
        entry = _entry()
        del entry["ppi"]
        with pytest.raises(ValidationError, match="ppi"):
            parse_registry(json.dumps([entry]), "test")

    @pytest.mark.parametrize(
        "overrides",
        [
            {"id": "Not-Lowercase"},
            {"id": ""},
            {"ppi": 0},
            {"ppi": -100},
            {"scale_factor": 5},
            {"scale_factor": 2.5},
            {"logical_width": 0},
            {"display_name": "  "},
        ],
    )
    def test_invariant_violations(self, overrides):
        with pytest.raises(ValidationError):
            parse_registry(json.dumps([_entry(**overrides)]), "test")

    def test_file_order_preserved(self):
        entries = [_entry(id=i) for i in ("zulu", "alpha", "mike")]
        reg = parse_registry(json.dumps(entries), "test")
        assert reg.ids == ("zulu", "alpha", "mike")

    def test_load_from_stream(self):
        stream = io.BytesIO(json.dumps([_entry()]).encode("utf-8"))
        reg = load_registry(stream)
        assert reg.ids == ("test-device",)

    def test_load_from_path(self, tmp_path):
        path = tmp_path / "custom.json"
        path.write_text(json.dumps([_entry()]), "utf-8")
        reg = load_registry(path)
        assert reg.ids == ("test-device",)
        assert reg.source == str(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_registry(tmp_path / "nope.json")

    def test_registry_type_invariants(self):
        with pytest.raises(ValidationError):
            DeviceRegistry(profiles=(), source="test")
        with pytest.raises(ValidationError):
            DeviceRegistry(profiles=(REFERENCE, REFERENCE), source="test")


class TestConversion:
    def test_zero(self):
        assert px_to_mm(0.0, REFERENCE) == 0.0
        assert mm_to_px(0.0, REFERENCE) == 0.0

    def test_hundred_px_reference(self):
        mm = px_to_mm(100.0, REFERENCE)
        assert mm == pytest.approx(oracles.PX100_AT_460_3_MM, abs=1e-12)
        assert mm == pytest.approx(16.565, abs=1e-3)

    def test_identity_profile(self):
        assert px_to_mm(1.0, IDENTITY) == pytest.approx(1.0, abs=1e-12)

    def test_inch_in_px(self):
        assert mm_to_px(25.4, REFERENCE) == pytest.approx(460.0 / 3.0, abs=1e-9)

    def test_round_trip_393(self):
        assert mm_to_px(px_to_mm(393.0, REFERENCE), REFERENCE) == pytest.approx(
            393.0, abs=1e-6
        )

    @pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            px_to_mm(bad, REFERENCE)
        with pytest.raises(DomainError):
            mm_to_px(bad, REFERENCE)

    @given(st.floats(min_value=0.0, max_value=1e4))
    def test_round_trip_property(self, px):
        back = mm_to_px(px_to_mm(px, REFERENCE), REFERENCE)
        assert abs(back - px) <= 1e-9 * max(1.0, px)

    @given(
        st.floats(min_value=0.0, max_value=1e4),
        st.floats(min_value=0.0, max_value=1e4),
    )
    def test_additivity(self, a, b):
        combined = px_to_mm(a + b, REFERENCE)
        split = px_to_mm(a, REFERENCE) + px_to_mm(b, REFERENCE)
        assert abs(combined - split) <= 1e-9 * max(1.0, abs(combined))

    def test_linear_in_scale_and_ppi(self):
        double_scale = DeviceProfile(
            id="d2", display_name="D2", ppi=460, scale_factor=2,
            logical_width=100, logical_height=100,
        )
        triple_scale = DeviceProfile(
            id="d3", display_name="D3", ppi=460, scale_factor=3,
            logical_width=100, logical_height=100,
        )
        assert px_to_mm(10, triple_scale) == pytest.approx(
            px_to_mm(10, double_scale) * 1.5, rel=1e-12
        )
