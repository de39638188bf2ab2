"""Device registry: converts logical design pixels to physical millimetres.

A design file measures elements in logical pixels (points). The physical
size on screen follows from the device's pixel density and its scale factor
(physical pixels per logical pixel):

    mm = logical_px * scale_factor / ppi * 25.4

The registry is plain data (a JSON array of device profiles) so the device
list can grow without code changes; a built-in copy covering iPhone models
through the 16 series ships inside the package. Registries are immutable
after loading and safe for concurrent reads.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ParseError, UnknownDeviceError, ValidationError
from .model import _require_size

__all__ = [
    "BUILT_IN_SOURCE",
    "DeviceProfile",
    "DeviceRegistry",
    "load_registry",
    "mm_to_px",
    "px_to_mm",
]

MM_PER_INCH = 25.4

BUILT_IN_SOURCE = "built-in"

_ID_PATTERN = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")
_SCALE_FACTORS = (1, 2, 3, 4)

_PROFILE_KEYS = (
    "id",
    "display_name",
    "ppi",
    "scale_factor",
    "logical_width",
    "logical_height",
)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


@dataclass(frozen=True)
class DeviceProfile:
    """Physical and logical display characteristics of one device."""

    id: str
    display_name: str
    ppi: float
    scale_factor: int
    logical_width: float
    logical_height: float

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not _ID_PATTERN.match(self.id):
            raise ValidationError(
                f"device id must be lowercase and hyphenated, got {self.id!r}"
            )
        if not isinstance(self.display_name, str) or not self.display_name.strip():
            raise ValidationError(f"device {self.id!r}: display_name must be non-empty")
        if not _is_number(self.ppi) or not math.isfinite(self.ppi) or self.ppi <= 0:
            raise ValidationError(f"device {self.id!r}: ppi must be > 0, got {self.ppi!r}")
        if not isinstance(self.scale_factor, int) or isinstance(self.scale_factor, bool) \
                or self.scale_factor not in _SCALE_FACTORS:
            raise ValidationError(
                f"device {self.id!r}: scale_factor must be one of {_SCALE_FACTORS}, "
                f"got {self.scale_factor!r}"
            )
        for field in ("logical_width", "logical_height"):
            value = getattr(self, field)
            if not _is_number(value) or not math.isfinite(value) or value <= 0:
                raise ValidationError(
                    f"device {self.id!r}: {field} must be > 0, got {value!r}"
                )

    def to_dict(self) -> dict:
        """Profile as a plain dict with exactly the registry file keys."""
        return {key: getattr(self, key) for key in _PROFILE_KEYS}


@dataclass(frozen=True)
class DeviceRegistry:
    """Ordered, immutable collection of device profiles with unique ids."""

    profiles: tuple[DeviceProfile, ...]
    source: str

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValidationError("registry must contain at least one device")
        seen: set[str] = set()
        for profile in self.profiles:
            if profile.id in seen:
                raise ValidationError(f"duplicate device id {profile.id!r}")
            seen.add(profile.id)

    def __iter__(self):
        return iter(self.profiles)

    def __len__(self) -> int:
        return len(self.profiles)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(profile.id for profile in self.profiles)

    def get(self, device_id: str) -> DeviceProfile:
        """Look up a profile by id; unknown ids raise with the known list."""
        for profile in self.profiles:
            if profile.id == device_id:
                return profile
        raise UnknownDeviceError(device_id, self.ids)


def _parse_profile(entry, position: int) -> DeviceProfile:
    where = f"registry entry {position}"
    if not isinstance(entry, dict):
        raise ValidationError(f"{where}: expected an object, got {type(entry).__name__}")
    if isinstance(entry.get("id"), str):
        where = f"{where} (id {entry['id']!r})"
    missing = [key for key in _PROFILE_KEYS if key not in entry]
    if missing:
        raise ValidationError(f"{where}: missing keys: {', '.join(missing)}")
    unknown = [key for key in entry if key not in _PROFILE_KEYS]
    if unknown:
        raise ValidationError(f"{where}: unknown keys: {', '.join(sorted(unknown))}")
    try:
        return DeviceProfile(**entry)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def parse_registry(text: str, source: str) -> DeviceRegistry:
    """Parse registry file text (a JSON array of device objects), strictly.

    Unknown keys, missing keys, duplicate ids, or invariant violations all
    fail with an error naming the offending entry.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise ValidationError(f"{source}: registry must be a JSON array of devices")
    if not data:
        raise ValidationError(f"{source}: registry must contain at least one device")
    profiles = tuple(_parse_profile(entry, i + 1) for i, entry in enumerate(data))
    seen: set[str] = set()
    for position, profile in enumerate(profiles, start=1):
        if profile.id in seen:
            raise ValidationError(
                f"{source}: registry entry {position}: duplicate id {profile.id!r}"
            )
        seen.add(profile.id)
    return DeviceRegistry(profiles=profiles, source=source)


def load_registry(source: str | Path | None = None) -> DeviceRegistry:
    """Load a device registry.

    ``source`` may be a file path, an open text/byte stream, or ``None`` for
    the built-in table. Loading the same bytes always yields an identical
    registry in identical order.
    """
    if source is None:
        text = (
            resources.files("tappy").joinpath("data/devices.json").read_text("utf-8")
        )
        return parse_registry(text, BUILT_IN_SOURCE)
    if hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        label = getattr(source, "name", "<stream>")
        return parse_registry(text, str(label))
    path = Path(source)
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read registry file {path}: {exc}") from None
    return parse_registry(text, str(path))


def px_to_mm(logical_px: float, profile: DeviceProfile) -> float:
    """Physical length in mm of ``logical_px`` design pixels on a device.

    Linear through the origin: px * scale_factor / ppi * 25.4.
    """
    logical_px = _require_size("logical_px", logical_px)
    return logical_px * profile.scale_factor / profile.ppi * MM_PER_INCH


def mm_to_px(mm: float, profile: DeviceProfile) -> float:
    """Inverse of :func:`px_to_mm` up to floating-point round-off."""
    mm = _require_size("mm", mm)
    return mm / MM_PER_INCH * profile.ppi / profile.scale_factor
