"""tappy: predict tap success rates of smartphone UI elements from their size."""

__version__ = "0.1.0"

from .devices import DeviceProfile, DeviceRegistry, load_registry, mm_to_px, px_to_mm
from .errors import (
    DomainError,
    ParseError,
    SelectionError,
    TappyError,
    UnattainableRateError,
    UnknownDeviceError,
    ValidationError,
)
from .layout import (
    ElementSelection,
    LayoutDocument,
    LayoutNode,
    bounding_rect_mm,
    parse_document,
    select_elements,
)
from .model import (
    DEFAULT_COEFFICIENTS,
    ModelCoefficients,
    PhysicalSize,
    Prediction,
    erf,
    min_square_size_for_rate,
    min_width_for_rate,
    rate_ceiling,
    sigma_x,
    sigma_y,
    success_rate,
)
from .report import AnalysisReport, ElementPrediction, analyze_document, render_report

__all__ = [
    "DEFAULT_COEFFICIENTS",
    "AnalysisReport",
    "DeviceProfile",
    "DeviceRegistry",
    "DomainError",
    "ElementPrediction",
    "ElementSelection",
    "LayoutDocument",
    "LayoutNode",
    "ModelCoefficients",
    "ParseError",
    "PhysicalSize",
    "Prediction",
    "SelectionError",
    "TappyError",
    "UnattainableRateError",
    "UnknownDeviceError",
    "ValidationError",
    "__version__",
    "analyze_document",
    "bounding_rect_mm",
    "erf",
    "load_registry",
    "min_square_size_for_rate",
    "min_width_for_rate",
    "mm_to_px",
    "parse_document",
    "px_to_mm",
    "rate_ceiling",
    "render_report",
    "select_elements",
    "sigma_x",
    "sigma_y",
    "success_rate",
]
