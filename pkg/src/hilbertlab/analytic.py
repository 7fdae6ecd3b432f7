"""Analytic functions on the unit disk.

Every function object evaluates through ``value(z, omz)`` where ``omz`` is
the complement ``1 - z`` supplied by the caller.  Quadrature rules that
cluster nodes at the boundary point 1 know ``1 - z`` to full relative
precision, while recomputing it from ``z`` would not; passing it explicitly
lets the singular factors ``(1 - z)^e`` stay accurate down to ``|1 - z|``
far below machine epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .special import DomainError

DEFAULT_DEGREE = 2048  # truncation degree for coefficient-form experiments

__all__ = [
    "DEFAULT_DEGREE",
    "DomainError",
    "ParameterRangeError",
    "cpow",
    "PowerSeries",
    "AnalyticFn",
    "Series",
    "BergmanTest",
    "HardyTest",
    "HinfTest",
    "GFunction",
    "ClosedForm",
    "evaluate",
    "make_test_fn",
    "omega",
    "g_exponent",
]


class ParameterRangeError(ValueError):
    """A parameter lies outside the admissible interval of a construction."""


def cpow(base, exponent: float):
    """Principal-branch power ``exp(exponent * (ln|base| + i Arg base))``.

    ``Arg`` takes values in ``(-pi, pi]``; a negative real base with a signed
    zero imaginary part is treated as lying on the upper side of the cut.
    Scalars give a Python ``complex``, arrays give a complex ndarray.
    """
    scalar = np.isscalar(base)
    b = np.asarray(base, dtype=complex) + 0j  # turns -0.0 imaginary parts into +0.0
    zero = b == 0
    if np.any(zero):
        if exponent <= 0:
            raise DomainError("cpow: zero base with non-positive exponent")
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(zero, 0j, np.exp(exponent * np.log(np.where(zero, 1.0, b))))
    else:
        out = np.exp(exponent * np.log(b))
    return complex(out) if scalar else out


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor series ``sum_{n<=N} coeffs[n] z**n``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("PowerSeries needs a non-empty 1-D coefficient list")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        # Horner; z = 0 returns coeffs[0] exactly
        z = np.asarray(z, dtype=complex)
        acc = np.full(z.shape, self.coeffs[-1], dtype=complex)
        for a in self.coeffs[-2::-1]:
            acc = acc * z + a
        return complex(acc) if acc.ndim == 0 else acc

    @classmethod
    def fit(cls, points, values) -> "PowerSeries":
        """Interpolate ``N + 1`` values at distinct points by a degree-N series."""
        points = np.asarray(points, dtype=complex)
        values = np.asarray(values, dtype=complex)
        if points.shape != values.shape or points.ndim != 1:
            raise ValueError("points and values must be 1-D arrays of equal length")
        vander = np.vander(points, points.size, increasing=True)
        return cls(np.linalg.solve(vander, values))

    def l2_norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


class AnalyticFn:
    """Base class of the analytic functions handled by the library.

    Subclasses implement ``value(z, omz)``.  ``singular_exponent`` is ``e``
    when ``|f(z)|`` behaves like ``|1 - z|^(-e)`` near the boundary point 1,
    and ``None`` when ``f`` is regular on the closed disk.
    """

    singular_exponent: float | None = None
    boundary_ok: bool = True

    def value(self, z, omz):
        raise NotImplementedError

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.value(z, 1.0 - z)
        return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class Series(AnalyticFn):
    series: PowerSeries

    singular_exponent = None

    def value(self, z, omz):
        return self.series(z)


@dataclass(frozen=True)
class BergmanTest(AnalyticFn):
    """``2^(-alpha/p) (1 - z)^(-(c + alpha/p))``, the A^p test family."""

    p: float
    alpha: float
    c: float

    @property
    def exponent(self) -> float:
        return self.c + self.alpha / self.p

    @property
    def singular_exponent(self) -> float:
        return self.exponent

    def value(self, z, omz):
        return 2.0 ** (-self.alpha / self.p) * cpow(omz, -self.exponent)


@dataclass(frozen=True)
class HardyTest(AnalyticFn):
    """``(1 - z)^(-c)``, the H^p test family (admissible for ``c < 1/p``)."""

    p: float
    c: float

    @property
    def singular_exponent(self) -> float:
        return self.c

    def value(self, z, omz):
        return cpow(omz, -self.c)


def g_exponent(alpha: float, p0: float, g_kind: str) -> float:
    """Exponent ``a`` with ``|g(z)| ~ |1 - z|^(-a)``."""
    if g_kind == "scaled":
        return alpha / p0
    if g_kind == "plain":
        return alpha
    raise ValueError(f"unknown g_kind {g_kind!r}")


def _g_value(omz, alpha: float, p0: float, g_kind: str):
    if g_kind == "scaled":
        return cpow(2.0 * omz, -alpha / p0)
    return cpow(omz, -g_exponent(alpha, p0, g_kind))


@dataclass(frozen=True)
class GFunction(AnalyticFn):
    """``(2(1 - z))^(-alpha/p0)`` (scaled) or ``(1 - z)^(-alpha)`` (plain)."""

    alpha: float
    p0: float = 1.0
    g_kind: str = "scaled"

    @property
    def singular_exponent(self) -> float:
        return g_exponent(self.alpha, self.p0, self.g_kind)

    def value(self, z, omz):
        return _g_value(omz, self.alpha, self.p0, self.g_kind)


@dataclass(frozen=True)
class HinfTest(AnalyticFn):
    """``z^n g(z) (1 - z)^c`` with ``g`` built for H^infinity (``p0 = 1``)."""

    alpha: float
    c: float
    n: int
    g_kind: str = "scaled"

    @property
    def singular_exponent(self) -> float:
        return g_exponent(self.alpha, 1.0, self.g_kind) - self.c

    def value(self, z, omz):
        z = np.asarray(z, dtype=complex)
        return z**self.n * _g_value(omz, self.alpha, 1.0, self.g_kind) * cpow(omz, self.c)


@dataclass(frozen=True)
class ClosedForm(AnalyticFn):
    """Library-internal function given by a vectorised ``func(z, omz)``."""

    name: str
    func: Callable = field(compare=False)
    singular_exponent: float | None = None
    boundary_ok: bool = True

    def value(self, z, omz):
        return self.func(np.asarray(z, dtype=complex), np.asarray(omz, dtype=complex))


def evaluate(f: AnalyticFn, z):
    """Value of ``f`` at points of the open unit disk."""
    za = np.asarray(z, dtype=complex)
    if np.any(np.abs(za) >= 1.0):
        raise DomainError("evaluate: points must satisfy |z| < 1")
    if isinstance(f, PowerSeries):
        return f(za) if za.ndim else f(complex(za))
    out = f.value(za, 1.0 - za)
    return complex(out) if np.ndim(out) == 0 else out


def omega(p: float, alpha: float) -> float:
    """Lower end of the admissible c-interval for the standard-weight A^p family."""
    return 0.5 * (max(1.0 - alpha, 1.0) / p + 2.0 / p)


def make_test_fn(kind: str, **params) -> AnalyticFn:
    """Build a member of one of the test families.

    ``bergman``: ``p``, ``alpha``, ``c`` with ``Omega < c < 2/p`` and
    ``-1 < alpha < p - 2``.  ``hinf``: ``alpha``, ``n``, ``c`` with
    ``0 < c <= 1/n`` (``g_kind`` optional).  ``hardy``: ``p``, ``c`` with
    ``0 < c < 1/p``.
    """
    if kind == "bergman":
        p, alpha, c = float(params["p"]), float(params["alpha"]), float(params["c"])
        if not p > 1:
            raise ParameterRangeError(f"bergman test family needs p > 1, got p={p}")
        if not -1.0 < alpha < p - 2.0:
            raise ParameterRangeError(
                f"bergman test family needs -1 < alpha < p - 2, got alpha={alpha}, p={p}"
            )
        lo, hi = omega(p, alpha), 2.0 / p
        if not lo < c < hi:
            raise ParameterRangeError(
                f"bergman test family needs c in (Omega, 2/p) = ({lo:.6g}, {hi:.6g}), got c={c}"
            )
        return BergmanTest(p, alpha, c)
    if kind == "hinf":
        alpha, c, n = float(params["alpha"]), float(params["c"]), int(params["n"])
        g_kind = params.get("g_kind", "scaled")
        if n < 1:
            raise ParameterRangeError(f"hinf test family needs n >= 1, got n={n}")
        if not 0.0 < alpha < 1.0:
            raise ParameterRangeError(f"hinf test family needs 0 < alpha < 1, got alpha={alpha}")
        if not 0.0 < c <= 1.0 / n:
            raise ParameterRangeError(
                f"hinf test family needs c in (0, 1/n] = (0, {1.0 / n:.6g}], got c={c}"
            )
        g_exponent(alpha, 1.0, g_kind)
        return HinfTest(alpha, c, n, g_kind)
    if kind == "hardy":
        p, c = float(params["p"]), float(params["c"])
        if not 1.0 < p < np.inf:
            raise ParameterRangeError(f"hardy test family needs 1 < p < inf, got p={p}")
        if not 0.0 < c < 1.0 / p:
            raise ParameterRangeError(
                f"hardy test family needs c in (0, 1/p) = (0, {1.0 / p:.6g}), got c={c}"
            )
        return HardyTest(p, c)
    raise ValueError(f"unknown test family {kind!r}")
