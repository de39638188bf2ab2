"""Success-rate model for rectangular touch targets.

Tap endpoints are modelled as independent zero-mean Gaussians per axis whose
variance grows linearly with the squared target size:

    sigma_x = sqrt(a_x * W**2 + b_x)   [mm]
    sigma_y = sqrt(a_y * H**2 + b_y)   [mm]

and a tap lands inside a centred W x H rectangle with probability

    rate = erf(W / (2*sqrt(2)*sigma_x)) * erf(H / (2*sqrt(2)*sigma_y))

Because sigma grows with the target, each erf argument tends to a finite
limit 1/(2*sqrt(2)*sqrt(a)) as the size grows, so the rate approaches an
asymptotic ceiling strictly below 1 (see :func:`rate_ceiling`).

Everything here is a pure function of its arguments; there is no module
state, so concurrent use from any number of threads is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, UnattainableRateError

__all__ = [
    "DEFAULT_COEFFICIENTS",
    "ModelCoefficients",
    "PhysicalSize",
    "Prediction",
    "erf",
    "min_square_size_for_rate",
    "min_width_for_rate",
    "rate_ceiling",
    "sigma_x",
    "sigma_y",
    "success_rate",
]

_TWO_SQRT_TWO = 2.0 * math.sqrt(2.0)

# erf(x) rounds to exactly +/-1.0 in double precision well before |x| = 6;
# beyond this point we return the saturated value outright.
_ERF_SATURATION = 6.0

# Bisection bracket for inverse sizing. 1000 mm exceeds any physical screen;
# monotonicity of the rate in the size guarantees the bracket is valid for
# every attainable target.
_BRACKET_MM = 1000.0
_SIZE_TOL_MM = 1e-6


def _require_finite(name: str, value: float) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


def _require_size(name: str, value: float) -> float:
    value = _require_finite(name, value)
    if value < 0.0:
        raise DomainError(f"{name} must be >= 0, got {value}")
    return value


@dataclass(frozen=True)
class ModelCoefficients:
    """Fitted constants of the per-axis variance model sigma**2 = a*size**2 + b.

    ``a_x`` / ``a_y`` are dimensionless slopes, ``b_x`` / ``b_y`` intercepts in
    mm**2. Intercepts must be strictly positive so sigma stays positive at
    every size; slopes may be zero (size-independent spread), which removes
    the ceiling on the corresponding axis.
    """

    a_x: float
    b_x: float
    a_y: float
    b_y: float

    def __post_init__(self) -> None:
        for name in ("a_x", "a_y"):
            value = _require_finite(name, getattr(self, name))
            if value < 0.0:
                raise DomainError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)
        for name in ("b_x", "b_y"):
            value = _require_finite(name, getattr(self, name))
            if value <= 0.0:
                raise DomainError(f"{name} must be > 0, got {value}")
            object.__setattr__(self, name, value)


#: Canonical fitted coefficients for one-finger taps on a hand-held phone.
DEFAULT_COEFFICIENTS = ModelCoefficients(a_x=0.0149, b_x=0.9414, a_y=0.0091, b_y=1.0949)


@dataclass(frozen=True)
class PhysicalSize:
    """Rendered size of an element in millimetres; the model's input domain."""

    width_mm: float
    height_mm: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "width_mm", _require_size("width_mm", self.width_mm))
        object.__setattr__(self, "height_mm", _require_size("height_mm", self.height_mm))


@dataclass(frozen=True)
class Prediction:
    """Per-axis endpoint spread and the resulting tap success rate."""

    sigma_x_mm: float
    sigma_y_mm: float
    success_rate: float

    def __post_init__(self) -> None:
        for name in ("sigma_x_mm", "sigma_y_mm"):
            value = _require_finite(name, getattr(self, name))
            if value <= 0.0:
                raise DomainError(f"{name} must be > 0, got {value}")
        rate = _require_finite("success_rate", self.success_rate)
        if not 0.0 <= rate <= 1.0:
            raise DomainError(f"success_rate must be in [0, 1], got {rate}")


def erf(x: float) -> float:
    """Gauss error function.

    Absolute error <= 1e-12 on [-6, 6]; returns +/-1.0 outright once |x|
    exceeds 6 (the double-precision value is indistinguishable from 1 well
    before that). Exactly odd by construction: the magnitude is computed
    from |x| and the sign of ``x`` reapplied.

    Raises:
        DomainError: if ``x`` is NaN or infinite.
    """
    x = _require_finite("x", x)
    ax = abs(x)
    magnitude = 1.0 if ax > _ERF_SATURATION else math.erf(ax)
    return magnitude if x >= 0 else -magnitude


def sigma_x(width_mm: float, coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS) -> float:
    """Endpoint spread along x (mm) for a target ``width_mm`` wide.

    Strictly increasing in the width, with floor sqrt(b_x) at zero width.
    """
    width_mm = _require_size("width_mm", width_mm)
    return math.sqrt(coeffs.a_x * width_mm * width_mm + coeffs.b_x)


def sigma_y(height_mm: float, coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS) -> float:
    """Endpoint spread along y (mm) for a target ``height_mm`` tall."""
    height_mm = _require_size("height_mm", height_mm)
    return math.sqrt(coeffs.a_y * height_mm * height_mm + coeffs.b_y)


def success_rate(
    size: PhysicalSize, coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS
) -> Prediction:
    """Predict the tap success rate for a rectangle of the given physical size.

    The rate is the product of the per-axis probabilities that the endpoint
    falls within the half-width / half-height of the target. A zero width or
    height collapses the product to 0: a zero-area element is unhittable.
    Strictly increasing in each dimension while the other is held fixed.
    """
    sx = sigma_x(size.width_mm, coeffs)
    sy = sigma_y(size.height_mm, coeffs)
    rate = erf(size.width_mm / (_TWO_SQRT_TWO * sx)) * erf(
        size.height_mm / (_TWO_SQRT_TWO * sy)
    )
    return Prediction(sigma_x_mm=sx, sigma_y_mm=sy, success_rate=rate)


def _axis_ceiling(slope: float) -> float:
    # Limit of erf(s / (2*sqrt(2)*sqrt(a*s**2 + b))) as s grows. A zero slope
    # sends the argument (and the factor's supremum) to 1.
    if slope == 0.0:
        return 1.0
    return erf(1.0 / (_TWO_SQRT_TWO * math.sqrt(slope)))


def rate_ceiling(coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS) -> float:
    """Supremum of the success rate over all target sizes (never reached)."""
    return _axis_ceiling(coeffs.a_x) * _axis_ceiling(coeffs.a_y)


def _require_attainable(target_rate: float, ceiling: float) -> float:
    target_rate = _require_finite("target_rate", target_rate)
    if target_rate <= 0.0 or target_rate >= ceiling:
        raise UnattainableRateError(
            f"target rate {target_rate} is unattainable: rates must lie in "
            f"(0, {ceiling:.6f})",
            ceiling=ceiling,
        )
    return target_rate


def _smallest_crossing(rate_of, target_rate: float, ceiling: float) -> float:
    """Bisect for the smallest size with rate_of(size) >= target_rate.

    ``rate_of`` must be continuous and strictly increasing on [0, 1000] mm.
    Returns the upper end of the final bracket so the rate at the result is
    guaranteed to reach the target.
    """
    lo, hi = 0.0, _BRACKET_MM
    if rate_of(hi) < target_rate:
        # The ceiling is approached asymptotically; rates between the value
        # at the bracket top and the ceiling have no physically meaningful
        # size, so they are reported as unattainable too.
        raise UnattainableRateError(
            f"target rate {target_rate} is unattainable: not reached by any "
            f"size up to {_BRACKET_MM:.0f} mm (ceiling {ceiling:.6f})",
            ceiling=ceiling,
        )
    while hi - lo > _SIZE_TOL_MM:
        mid = 0.5 * (lo + hi)
        if rate_of(mid) >= target_rate:
            hi = mid
        else:
            lo = mid
    return hi


def min_square_size_for_rate(
    target_rate: float, coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS
) -> float:
    """Smallest square side (mm) whose predicted success rate reaches the target.

    Found by bisection on [0, 1000] mm to within 1e-6 mm; valid because the
    rate is strictly increasing in the side length.

    Raises:
        UnattainableRateError: if ``target_rate`` is not in (0, ceiling),
            carrying the ceiling value.
    """
    ceiling = rate_ceiling(coeffs)
    target_rate = _require_attainable(target_rate, ceiling)

    def rate_of(side: float) -> float:
        return success_rate(PhysicalSize(side, side), coeffs).success_rate

    return _smallest_crossing(rate_of, target_rate, ceiling)


def min_width_for_rate(
    target_rate: float,
    height_mm: float,
    coeffs: ModelCoefficients = DEFAULT_COEFFICIENTS,
) -> float:
    """Smallest width (mm) reaching the target rate at a fixed positive height.

    The height factor alone caps the attainable product, so the effective
    ceiling here is erf-limit(a_x) * erf(H / (2*sqrt(2)*sigma_y(H))).

    Raises:
        DomainError: if ``height_mm`` is not strictly positive.
        UnattainableRateError: if the target exceeds the capped ceiling.
    """
    height_mm = _require_size("height_mm", height_mm)
    if height_mm == 0.0:
        raise DomainError("height_mm must be > 0, got 0.0")
    y_factor = erf(height_mm / (_TWO_SQRT_TWO * sigma_y(height_mm, coeffs)))
    ceiling = _axis_ceiling(coeffs.a_x) * y_factor
    target_rate = _require_attainable(target_rate, ceiling)

    def rate_of(width: float) -> float:
        return success_rate(PhysicalSize(width, height_mm), coeffs).success_rate

    return _smallest_crossing(rate_of, target_rate, ceiling)
