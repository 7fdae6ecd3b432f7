"""The Hilbert matrix and kernel integral operators, and the Möbius family.

For ``t`` in (0, 1) the maps ``phi_t(z) = t / (1 - (1 - t) z)`` fix the
boundary point 1 and send the disk onto the disk with centre ``1/(2 - t)``
and radius ``(1 - t)/(2 - t)``.  Writing ``x_z(t) = phi_t(z)`` turns the
defining integral ``int_0^1 f(x) K(z, x) dx`` into
``int_0^1 T_t(z) f(phi_t(z)) dt`` with ``T_t(z) = K(z, x_z(t)) x_z'(t)``;
both forms are implemented.

All maps accept the exact complement ``omz = 1 - z`` and return exact
complements of their outputs, so values close to the boundary point 1 keep
full relative accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .analytic import DEFAULT_DEGREE, AnalyticFn, PowerSeries, Series
from .quadrature import DEFAULT_CONFIG, QuadConfig, integrate_01
from .special import DomainError

__all__ = [
    "KernelSpec",
    "HILBERT",
    "MobiusData",
    "mobius_family",
    "hilbert_apply_series",
    "kernel_apply",
    "weighted_comp_apply",
]


def _hilbert_K(z, x):
    return 1.0 / (1.0 - z * x)


def _hilbert_T(z, omz, t, s):
    # 1 / (1 - (1 - t) z) written without cancellation near z = 1
    return 1.0 / (omz + t * z)


@dataclass(frozen=True)
class KernelSpec:
    """A kernel ``K(z, x)`` with an optional closed form for ``T_t(z)``.

    ``T`` has signature ``T(z, omz, t, s)`` with ``s = 1 - t``.  Without it the
    generic ``K(z, phi_t(z)) * x_z'(t)`` is used.
    """

    name: str
    K: Callable = field(compare=False)
    T: Callable | None = field(default=None, compare=False)
    bounded: bool = False

    def transfer(self, z, omz, t, s):
        if self.T is not None:
            return self.T(z, omz, t, s)
        den = omz + t * z  # 1 - (1 - t) z
        x = t / den
        return self.K(z, x) * omz / (den * den)


HILBERT = KernelSpec("hilbert", _hilbert_K, _hilbert_T, bounded=False)


@dataclass(frozen=True)
class MobiusData:
    """The map ``phi_t`` with its weight ``w_t = phi_t / t`` and ``T_t``."""

    t: float
    kernel: KernelSpec = HILBERT
    omt: float | None = None

    def __post_init__(self):
        if self.omt is None:
            object.__setattr__(self, "omt", 1.0 - self.t)
        # with an exact complement t itself may round to 1
        if not (0.0 < self.t <= 1.0 and 0.0 < self.omt <= 1.0):
            raise DomainError(f"Möbius family needs 0 < t < 1, got t={self.t}")

    @property
    def center(self) -> float:
        return 1.0 / (1.0 + self.omt)

    @property
    def radius(self) -> float:
        return self.omt / (1.0 + self.omt)

    @property
    def angular_derivative(self) -> float:
        """``phi_t'(1) = (1 - t)/t``."""
        return self.omt / self.t

    def _den(self, z, omz):
        return omz + self.t * z

    def phi(self, z, omz=None):
        z = np.asarray(z, dtype=complex)
        omz = 1.0 - z if omz is None else omz
        return self.t / self._den(z, omz)

    def phi_pair(self, z, omz=None):
        """``(phi_t(z), 1 - phi_t(z))``, both without cancellation."""
        z = np.asarray(z, dtype=complex)
        omz = 1.0 - z if omz is None else np.asarray(omz, dtype=complex)
        den = self._den(z, omz)
        return self.t / den, self.omt * omz / den

    def w(self, z, omz=None):
        z = np.asarray(z, dtype=complex)
        omz = 1.0 - z if omz is None else omz
        return 1.0 / self._den(z, omz)

    def T(self, z, omz=None):
        z = np.asarray(z, dtype=complex)
        omz = 1.0 - z if omz is None else omz
        return self.kernel.transfer(z, omz, self.t, self.omt)


def mobius_family(t: float, K: KernelSpec = HILBERT, omt: float | None = None) -> MobiusData:
    return MobiusData(float(t), K, omt)


def hilbert_apply_series(f: PowerSeries, N_out: int = DEFAULT_DEGREE) -> PowerSeries:
    """Apply the truncated Hilbert matrix ``1/(n + m + 1)`` to the coefficients."""
    if N_out < 0:
        raise ValueError("N_out must be non-negative")
    n = np.arange(N_out + 1)[:, None]
    m = np.arange(f.coeffs.size)[None, :]
    return PowerSeries((1.0 / (n + m + 1.0)) @ f.coeffs)


def _as_fn(f) -> AnalyticFn:
    if isinstance(f, PowerSeries):
        return Series(f)
    return f


def _endpoint_hint(f: AnalyticFn) -> float:
    e = getattr(f, "singular_exponent", None)
    return -max(float(e), 0.0) if e is not None else 0.0


def kernel_apply(K: KernelSpec, f, z, form: str = "direct", cfg: QuadConfig | None = None,
                 omz=None) -> complex:
    """``I_K(f)(z)`` by the direct integral or by the Möbius representation.

    Raises ``QuadratureError`` when the rule does not reach the tolerance.
    """
    cfg = cfg or DEFAULT_CONFIG
    f = _as_fn(f)
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("kernel_apply needs |z| < 1")
    omz = 1.0 - z if omz is None else complex(omz)
    hint = _endpoint_hint(f)
    if form == "direct":
        def integrand(x, omx):
            return f.value(x + 0j, omx + 0j) * K.K(z, x)
    elif form == "representation":
        def integrand(t, s):
            den = omz + t * z
            return K.transfer(z, omz, t, s) * f.value(t / den, s * omz / den)
    else:
        raise ValueError(f"unknown form {form!r}")
    est = integrate_01(integrand, (0.0, hint), cfg, complement=True).require()
    return complex(est.value)


def weighted_comp_apply(psi, phi, f, z, omz=None) -> complex:
    """``psi(z) * f(phi(z))``.

    ``phi`` is a ``MobiusData`` (its exact complement is used) or a callable;
    ``psi`` is an ``AnalyticFn``, a callable of ``z``, or the tag ``"w_t"``
    meaning the weight of the Möbius map ``phi``.
    """
    f = _as_fn(f)
    z = complex(z)
    omz = 1.0 - z if omz is None else complex(omz)
    if isinstance(phi, MobiusData):
        x, omx = phi.phi_pair(z, omz)
    else:
        x = complex(phi(z))
        omx = 1.0 - x
    if isinstance(psi, str):
        if psi != "w_t" or not isinstance(phi, MobiusData):
            raise ValueError("the 'w_t' tag needs a MobiusData map")
        weight = phi.w(z, omz)
    elif isinstance(psi, AnalyticFn):
        weight = psi.value(np.asarray(z), np.asarray(omz))
    else:
        weight = psi(z)
    return complex(weight * f.value(np.asarray(x), np.asarray(omx)))
