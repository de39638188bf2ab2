"""Layout ingestion: node trees with absolute frames in logical pixels.

The layout file format is JSON: top level ``{name, default_device?, root}``,
node ``{id, name, type, frame: {x, y, width, height}, tappable?, children?}``.
Frames are pre-resolved axis-aligned bounding rectangles in root coordinates;
rotation and transforms are the exporter's job. Parsing is strict: unknown
keys are rejected, ids must be unique document-wide, and sizes must be
non-negative. Documents are immutable after parsing.

Which nodes get scored is decided by :func:`select_elements`. By default
every leaf with positive area counts as tappable; an explicit ``tappable``
flag on a node overrides every other rule.
"""

from __future__ import annotations

import fnmatch
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

from .devices import DeviceProfile, px_to_mm
from .errors import ParseError, SelectionError, ValidationError
from .model import PhysicalSize

__all__ = [
    "NODE_TYPES",
    "ElementSelection",
    "LayoutDocument",
    "LayoutNode",
    "Rect",
    "bounding_rect_mm",
    "document_from_data",
    "parse_document",
    "select_elements",
]

NODE_TYPES = frozenset(
    {
        "frame",
        "group",
        "rectangle",
        "ellipse",
        "text",
        "component",
        "instance",
        "vector",
        "other",
    }
)

_DOCUMENT_KEYS = frozenset({"name", "default_device", "root"})
_NODE_KEYS = frozenset({"id", "name", "type", "frame", "tappable", "children"})
_FRAME_KEYS = ("x", "y", "width", "height")


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


@dataclass(frozen=True)
class Rect:
    """Absolute axis-aligned rectangle in logical pixels."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        for name in _FRAME_KEYS:
            value = getattr(self, name)
            if not _is_number(value) or not math.isfinite(value):
                raise ValidationError(f"frame.{name} must be a finite number, got {value!r}")
        if self.width < 0 or self.height < 0:
            raise ValidationError(
                f"frame size must be non-negative, got {self.width} x {self.height}"
            )


@dataclass(frozen=True)
class LayoutNode:
    """One node of the layout tree; ``frame`` is its bounding rectangle."""

    id: str
    name: str
    node_type: str
    frame: Rect
    tappable: bool | None = None
    children: tuple[LayoutNode, ...] = ()

    def __post_init__(self) -> None:
        if self.node_type not in NODE_TYPES:
            raise ValidationError(
                f"node {self.id!r}: unknown type {self.node_type!r}; "
                f"expected one of {sorted(NODE_TYPES)}"
            )

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self):
        """Yield this node and all descendants in depth-first document order."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class LayoutDocument:
    """A named, validated layout tree rooted at a frame."""

    name: str
    root: LayoutNode
    default_device: str | None = None

    def __post_init__(self) -> None:
        if self.root.node_type != "frame":
            raise ValidationError(
                f"document root must be a frame, got {self.root.node_type!r}"
            )

    def walk(self):
        return self.root.walk()


@dataclass(frozen=True)
class ElementSelection:
    """Filter deciding which nodes of a document get scored.

    ``include_containers`` also scores nodes that have children;
    ``name_glob`` keeps only nodes whose name matches the shell-style
    pattern; ``explicit_only`` keeps only nodes flagged ``tappable: true``.
    The latter two cannot be combined.
    """

    include_containers: bool = False
    name_glob: str | None = None
    explicit_only: bool = False

    def __post_init__(self) -> None:
        if self.name_glob is not None and self.explicit_only:
            raise SelectionError("name_glob cannot be combined with explicit_only")
        if self.name_glob is not None:
            try:
                re.compile(fnmatch.translate(self.name_glob))
            except re.error as exc:
                raise SelectionError(f"invalid glob {self.name_glob!r}: {exc}") from None


def _parse_node(data, path: str, seen_ids: dict[str, str]) -> LayoutNode:
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a node object, got {type(data).__name__}")
    unknown = [key for key in data if key not in _NODE_KEYS]
    if unknown:
        raise ValidationError(f"{path}: unknown keys: {', '.join(sorted(unknown))}")
    missing = [key for key in ("id", "name", "type", "frame") if key not in data]
    if missing:
        raise ValidationError(f"{path}: missing keys: {', '.join(missing)}")

    node_id = data["id"]
    if not isinstance(node_id, str) or not node_id:
        raise ValidationError(f"{path}: id must be a non-empty string, got {node_id!r}")
    if node_id in seen_ids:
        raise ValidationError(
            f"{path}: duplicate id {node_id!r} (first used at {seen_ids[node_id]})"
        )
    seen_ids[node_id] = path

    name = data["name"]
    if not isinstance(name, str):
        raise ValidationError(f"{path}: name must be a string, got {name!r}")
    node_type = data["type"]
    if not isinstance(node_type, str) or node_type not in NODE_TYPES:
        raise ValidationError(
            f"{path}: unknown type {node_type!r}; expected one of {sorted(NODE_TYPES)}"
        )

    frame_data = data["frame"]
    if not isinstance(frame_data, dict):
        raise ValidationError(f"{path}: frame must be an object")
    frame_unknown = [key for key in frame_data if key not in _FRAME_KEYS]
    if frame_unknown:
        raise ValidationError(
            f"{path}: frame has unknown keys: {', '.join(sorted(frame_unknown))}"
        )
    frame_missing = [key for key in _FRAME_KEYS if key not in frame_data]
    if frame_missing:
        raise ValidationError(f"{path}: frame missing keys: {', '.join(frame_missing)}")
    try:
        frame = Rect(**frame_data)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None

    tappable = data.get("tappable")
    if tappable is not None and not isinstance(tappable, bool):
        raise ValidationError(f"{path}: tappable must be a boolean, got {tappable!r}")

    children_data = data.get("children", [])
    if not isinstance(children_data, list):
        raise ValidationError(f"{path}: children must be an array")
    children = tuple(
        _parse_node(child, f"{path}.children[{i}]", seen_ids)
        for i, child in enumerate(children_data)
    )
    return LayoutNode(
        id=node_id,
        name=name,
        node_type=node_type,
        frame=frame,
        tappable=tappable,
        children=children,
    )


def document_from_data(data) -> LayoutDocument:
    """Validate an already-decoded JSON object into a LayoutDocument."""
    if not isinstance(data, dict):
        raise ValidationError(
            f"document: expected a top-level object, got {type(data).__name__}"
        )
    unknown = [key for key in data if key not in _DOCUMENT_KEYS]
    if unknown:
        raise ValidationError(f"document: unknown keys: {', '.join(sorted(unknown))}")
    missing = [key for key in ("name", "root") if key not in data]
    if missing:
        raise ValidationError(f"document: missing keys: {', '.join(missing)}")
    name = data["name"]
    if not isinstance(name, str):
        raise ValidationError(f"document: name must be a string, got {name!r}")
    default_device = data.get("default_device")
    if default_device is not None and not isinstance(default_device, str):
        raise ValidationError(
            f"document: default_device must be a string, got {default_device!r}"
        )
    root = _parse_node(data["root"], "root", seen_ids={})
    if root.node_type != "frame":
        raise ValidationError(f"root: must be a frame, got {root.node_type!r}")
    return LayoutDocument(name=name, root=root, default_device=default_device)


def parse_document(source: str | Path) -> LayoutDocument:
    """Parse a layout file (path or open stream) into a validated document.

    Deterministic: identical bytes yield structurally identical documents.
    Malformed JSON raises :class:`ParseError`; a well-formed file that breaks
    an invariant (duplicate id, negative size, unknown key) raises
    :class:`ValidationError` with the path to the offending node.
    """
    if hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        label = getattr(source, "name", "<stream>")
    else:
        path = Path(source)
        label = str(path)
        try:
            text = path.read_text("utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read layout file {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{label}: invalid JSON: {exc}") from None
    return document_from_data(data)


def select_elements(
    doc: LayoutDocument, selection: ElementSelection | None = None
) -> list[LayoutNode]:
    """Pick the nodes to score, in depth-first document order.

    Default rule: every leaf with positive area. Containers (nodes with
    children) are skipped unless ``include_containers``. A node's explicit
    ``tappable`` flag overrides everything: ``true`` always includes it
    (even zero-area nodes, which then score 0), ``false`` always excludes.
    """
    if selection is None:
        selection = ElementSelection()
    selected: list[LayoutNode] = []
    for node in doc.walk():
        if selection.explicit_only:
            include = node.tappable is True
        elif node.tappable is False:
            include = False
        elif node.tappable is True:
            include = True
        else:
            include = selection.include_containers or node.is_leaf
            include = include and node.frame.width > 0 and node.frame.height > 0
            if include and selection.name_glob is not None:
                include = fnmatch.fnmatchcase(node.name, selection.name_glob)
        if include:
            selected.append(node)
    return selected


def bounding_rect_mm(node: LayoutNode, profile: DeviceProfile) -> PhysicalSize:
    """Physical size of a node's bounding rectangle on the given device."""
    return PhysicalSize(
        width_mm=px_to_mm(node.frame.width, profile),
        height_mm=px_to_mm(node.frame.height, profile),
    )
