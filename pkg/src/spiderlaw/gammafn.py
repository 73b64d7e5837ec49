"""Gamma function via a Lanczos approximation.

The g=7, n=9 coefficient set gives better than 1e-13 relative accuracy over
the arguments used here (moderate positive reals, plus the reflection branch
for arguments below 1/2).
"""
from __future__ import annotations

import math

from .errors import ParameterDomainError

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def gamma(x: float) -> float:
    """Gamma(x) for real x; poles at non-positive integers are rejected."""
    x = float(x)
    if not math.isfinite(x):
        raise ParameterDomainError(f"gamma argument must be finite: {x}")
    if x <= 0.0 and x == math.floor(x):
        raise ParameterDomainError(f"gamma pole at non-positive integer: {x}")
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    series = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    try:
        return _SQRT_TWO_PI * t ** (x + 0.5) * math.exp(-t) * series
    except OverflowError:
        return math.inf
