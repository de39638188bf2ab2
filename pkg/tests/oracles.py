"""Independent oracles for the test suite.

Nothing here touches tappy's own code paths: expected values come from
first-principles evaluations (arbitrary-precision Maclaurin series, direct
Monte-Carlo simulation, plain bisection on the series evaluation) so the
assertions stay meaningful.
"""

from __future__ import annotations

import math

import numpy as np
from mpmath import mp, mpf

DEFAULT_A_X = 0.0149
DEFAULT_B_X = 0.9414
DEFAULT_A_Y = 0.0091
DEFAULT_B_Y = 1.0949

TWO_SQRT_TWO = 2.0 * math.sqrt(2.0)


def erf_series(x: float, dps: int = 50) -> float:
    """Error function via its Maclaurin series, summed in high precision.

    erf(x) = 2/sqrt(pi) * sum_{n>=0} (-1)^n x^(2n+1) / (n! (2n+1))

    The series alternates with huge cancellation for large |x|, so terms are
    accumulated at ``dps`` decimal digits until they stop mattering; the
    result is then rounded once to a double.
    """
    with mp.workdps(dps):
        xm = mpf(x)
        total = mpf(0)
        cutoff = mpf(10) ** (-(dps - 5))
        n = 0
        while True:
            term = (-1) ** n * xm ** (2 * n + 1) / (mp.factorial(n) * (2 * n + 1))
            total += term
            if n > 5 and abs(term) < cutoff:
                break
            n += 1
        return float(2 / mp.sqrt(mp.pi) * total)


def erf_series_40(x: float) -> float:
    """The 40-term Maclaurin partial sum in plain float64.

    Adequate for |x| up to about 3 (truncation < 1e-12, cancellation mild);
    use :func:`erf_series` for anything larger.
    """
    total = 0.0
    for n in range(40):
        total += (-1.0) ** n * x ** (2 * n + 1) / (math.factorial(n) * (2 * n + 1))
    return 2.0 / math.sqrt(math.pi) * total


def series_success_rate(
    width_mm: float,
    height_mm: float,
    a_x: float = DEFAULT_A_X,
    b_x: float = DEFAULT_B_X,
    a_y: float = DEFAULT_A_Y,
    b_y: float = DEFAULT_B_Y,
    erf_fn=erf_series,
) -> float:
    """Success rate evaluated straight from the formula with a series erf."""
    sigma_x = math.sqrt(a_x * width_mm * width_mm + b_x)
    sigma_y = math.sqrt(a_y * height_mm * height_mm + b_y)
    return erf_fn(width_mm / (TWO_SQRT_TWO * sigma_x)) * erf_fn(
        height_mm / (TWO_SQRT_TWO * sigma_y)
    )


def mc_success_rate(
    width_mm: float,
    height_mm: float,
    n_samples: int = 10**8,
    seed: int = 0,
    batch: int = 10**7,
) -> float:
    """Monte-Carlo success rate with the default coefficients.

    Samples independent Gaussian endpoint pairs with the per-axis sigmas and
    counts how often both |x| < W/2 and |y| < H/2. Deterministic for a given
    seed. Standard error at n = 1e8 is below 5e-5 for any rate.
    """
    sigma_x = math.sqrt(DEFAULT_A_X * width_mm * width_mm + DEFAULT_B_X)
    sigma_y = math.sqrt(DEFAULT_A_Y * height_mm * height_mm + DEFAULT_B_Y)
    half_w = 0.5 * width_mm / sigma_x
    half_h = 0.5 * height_mm / sigma_y
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = n_samples
    while remaining > 0:
        size = min(batch, remaining)
        x = rng.standard_normal(size)
        y = rng.standard_normal(size)
        hits += int(np.count_nonzero((np.abs(x) < half_w) & (np.abs(y) < half_h)))
        remaining -= size
    return hits / n_samples


def bisect_min_square(target_rate: float, tol: float = 1e-9) -> float:
    """Smallest square side reaching ``target_rate``, by bisection on the
    series evaluation. Independent of the implementation under test."""
    lo, hi = 0.0, 1000.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if series_success_rate(mid, mid) >= target_rate:
            hi = mid
        else:
            lo = mid
    return hi


def bisect_min_width(target_rate: float, height_mm: float, tol: float = 1e-9) -> float:
    """Fixed-height variant of :func:`bisect_min_square`."""
    lo, hi = 0.0, 1000.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if series_success_rate(mid, height_mm) >= target_rate:
            hi = mid
        else:
            lo = mid
    return hi


# Values frozen from the oracles above (and re-derivable by running them);
# quoted to 16 significant digits.
ERF_1 = 0.8427007929497149
SIGMA_X_9 = 1.465708020036733        # sqrt(0.0149 * 81 + 0.9414)
SIGMA_Y_9 = 1.3535139452550904       # sqrt(0.0091 * 81 + 1.0949)
RATE_9_9 = 0.9969774545648988
RATE_100_100 = 0.9999554069896414
RATE_CEILING = 0.9999578346261075    # erf-limit product for the defaults
X_AXIS_CEILING = 0.9999579939613602  # erf(1 / (2*sqrt(2)*sqrt(0.0149)))
Y_FACTOR_H9 = 0.9991147975397268     # erf(9 / (2*sqrt(2)*sigma_y(9)))
MIN_SQUARE_50 = 2.180103865092161
MIN_SQUARE_95 = 5.177482049536587
MIN_WIDTH_90_H9 = 3.4950073291229994
CLOSED_FORM_FLAT_50 = 2.1035917203304501  # 2*sqrt(2)*erfinv(sqrt(0.5))
PX100_AT_460_3_MM = 16.565217391304348    # 100 * 3 / 460 * 25.4
