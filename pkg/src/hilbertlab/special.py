"""Gamma and Beta functions on the positive real axis.

Lanczos approximation (g = 7, nine coefficients) with the reflection formula
below 1/2.  Relative accuracy is a few ulps over the range used by the
library, comfortably inside the 1e-13 target.
"""

from __future__ import annotations

import math

__all__ = ["DomainError", "gamma_fn", "lgamma_fn", "beta_fn", "DEFAULT_REL_TOL"]

DEFAULT_REL_TOL = 1e-13

_G = 7.0
_COEFFS = (
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
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


class DomainError(ValueError):
    """Argument outside the domain where a quantity is defined."""


def _lanczos_sum(x: float) -> float:
    # x is the shifted argument (z - 1)
    acc = _COEFFS[0]
    for k, c in enumerate(_COEFFS[1:], start=1):
        acc += c / (x + k)
    return acc


def gamma_fn(x: float) -> float:
    """Gamma function for real ``x`` away from the non-positive integers."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    if x > 171.6:
        return math.inf
    y = x - 1.0
    t = y + _G + 0.5
    # split the power to stay finite up to x ~ 171
    half = t ** (0.5 * (y + 0.5))
    return math.sqrt(2.0 * math.pi) * half * (half * math.exp(-t)) * _lanczos_sum(y)


def lgamma_fn(x: float) -> float:
    """``log |Gamma(x)|`` for real ``x > 0``."""
    x = float(x)
    if x <= 0.0:
        raise DomainError("lgamma_fn is only provided for x > 0")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - lgamma_fn(1.0 - x)
    y = x - 1.0
    t = y + _G + 0.5
    return _HALF_LOG_2PI + (y + 0.5) * math.log(t) - t + math.log(_lanczos_sum(y))


def beta_fn(a: float, b: float) -> float:
    """Euler Beta function ``B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)``.

    Parameters
    ----------
    a, b : float
        Strictly positive arguments.

    Raises
    ------
    DomainError
        If ``a <= 0`` or ``b <= 0``.
    """
    a = float(a)
    b = float(b)
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"beta_fn needs a > 0 and b > 0, got ({a}, {b})")
    if a + b < 150.0:
        # symmetric ordering keeps beta(a, b) == beta(b, a) bit-for-bit
        lo, hi = (a, b) if a <= b else (b, a)
        return gamma_fn(lo) * (gamma_fn(hi) / gamma_fn(lo + hi))
    lo, hi = (a, b) if a <= b else (b, a)
    return math.exp(lgamma_fn(lo) + lgamma_fn(hi) - lgamma_fn(lo + hi))
