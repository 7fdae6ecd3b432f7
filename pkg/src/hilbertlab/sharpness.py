"""Where norm and essential norm part ways, and two explicit estimates.

``B_t(f) = int_{phi_t(D)} |z|^(p-4) |f|^p dA/pi`` over the image disk of the
Möbius map gives the lower bound
``||w_t C_{phi_t}|| >= (t^(2-p)/(1-t)^2 B_t(f))^(1/p)``; whenever
``B_t(1) > 1`` this beats the essential norm ``t^(2/p-1)/(1-t)^(2/p)``.  As
``t -> 0`` the image disks fill ``B(1/2, 1/2)`` and ``B_t(1)`` increases to
``beta((p-1)/2, 1/2) / (pi (p-2))``, which exceeds 1 exactly for ``p < p0``.

Also here: the circle integral ``int dtheta / |1 - r e^(i theta)|^q`` against
its two-sided ``(1-r)^(1-q)`` bounds, and the pointwise majorant of
``||w_t C_{phi_t}||`` on ``H^infinity`` with the weight ``(1 - |z|)^alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect, brentq, minimize_scalar

from .analytic import AnalyticFn, ClosedForm, ParameterRangeError
from .essnorm import wco_essnorm
from .limits import radial_limit
from .operators import MobiusData
from .quadrature import (
    DEFAULT_CONFIG,
    NormEstimate,
    QuadConfig,
    circle_integral,
    disk_integral,
    integrate_01,
    integrate_interval,
)
from .special import beta_fn

__all__ = [
    "BtReport",
    "Lemma61Report",
    "bt_value",
    "bt_report",
    "sup_bt_closed_form",
    "h_function",
    "find_p0",
    "counterexample_check",
    "certificate",
    "find_tp",
    "strict_gap",
    "m_bound",
    "M_bound",
    "lemma61_check",
    "hinf_walpha_profile",
    "hinf_walpha_upper",
    "hinf_walpha_norm",
]


@dataclass(frozen=True)
class BtReport:
    p: float
    t: float
    bt_value: NormEstimate
    closed_form_sup: float
    exceeds_one: bool


@dataclass(frozen=True)
class Lemma61Report:
    r: float
    q: float
    Q_L: float
    Q_U: float
    exact_integral: NormEstimate
    scaled: float
    lower: float
    upper: float

    @property
    def holds(self) -> bool:
        return self.lower <= self.scaled <= self.upper


def _check_p(p):
    if not p > 2.0:
        raise ParameterRangeError(f"B_t needs p > 2, got p={p}")


def bt_value(p: float, t: float, f: AnalyticFn | None = None, cfg: QuadConfig | None = None) -> NormEstimate:
    """``B_t(f)``; ``f = None`` means the constant function 1."""
    _check_p(p)
    m = MobiusData(float(t))
    if f is None:
        def F(z):
            return np.ones(np.shape(z))
    else:
        def F(z):
            return np.abs(f.value(z, 1.0 - z)) ** p
    return disk_integral(F, m.center, m.radius, cfg, singular_point=0j, singular_power=p - 4.0)


def sup_bt_closed_form(p: float) -> float:
    """``sup_t B_t(1) = beta((p-1)/2, 1/2) / (pi (p-2))``; ``inf`` for ``p <= 2``."""
    if not p > 2.0:
        return math.inf
    return beta_fn(0.5 * (p - 1.0), 0.5) / (math.pi * (p - 2.0))


def bt_report(p: float, t: float, cfg: QuadConfig | None = None) -> BtReport:
    est = bt_value(p, t, None, cfg)
    return BtReport(p, t, est, sup_bt_closed_form(p), bool(float(est.value) > 1.0))


def h_function(p: float) -> float:
    return sup_bt_closed_form(p) - 1.0


def find_p0(tol: float = 1e-10) -> float:
    """Root of the decreasing function ``h`` on ``[2.1, 4]`` by bisection."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    a, b = 2.1, 4.0
    if not h_function(a) > 0.0 > h_function(b):
        raise ArithmeticError("h does not change sign on [2.1, 4]")
    return float(bisect(h_function, a, b, xtol=tol, rtol=4.0 * np.finfo(float).eps, maxiter=500))


def counterexample_check(p: float, t: float, cfg: QuadConfig | None = None) -> bool:
    """True iff ``B_t(1) > 1``, i.e. ``||w_t C_{phi_t}||`` strictly exceeds its essential norm."""
    return bt_report(p, t, cfg).exceeds_one and bt_value(p, t, None, cfg).require().converged


def certificate(p: float, t: float, cfg: QuadConfig | None = None) -> float:
    """The lower bound ``t^(2/p-1)(1-t)^(-2/p) B_t(1)^(1/p)`` for ``||w_t C_{phi_t}||``."""
    b = float(bt_value(p, t, None, cfg).require().value)
    return wco_essnorm(t, 2.0 / p) * b ** (1.0 / p)


def find_tp(p: float, cfg: QuadConfig | None = None, xtol: float = 1e-8) -> float:
    """The ``t`` where ``B_t(1)`` falls to 1 (only for ``p < p0``)."""
    if sup_bt_closed_form(p) <= 1.0:
        raise ParameterRangeError(f"B_t(1) <= 1 for all t when p >= p0, got p={p}")

    def g(t):
        return float(bt_value(p, t, None, cfg).require().value) - 1.0

    lo = 1e-6
    if g(lo) <= 0.0:
        raise ArithmeticError("B_t(1) is not above 1 at t = 1e-6")
    return float(brentq(g, lo, 0.999, xtol=xtol))


def strict_gap(p: float, cfg: QuadConfig | None = None):
    """``int_0^1 max{essential norm, certificate} dt - ||H||_e`` on ``A^p``.

    Above ``t_p`` the maximum is the essential norm itself, so only
    ``(0, t_p)`` contributes.  Returns ``(gap, t_p, estimate)``.
    """
    cfg = cfg or DEFAULT_CONFIG
    s = 2.0 / p
    tp = find_tp(p, cfg)

    def excess(ts):
        out = []
        for t in np.atleast_1d(ts):
            b = float(bt_value(p, float(t), None, cfg).require().value)
            out.append(wco_essnorm(float(t), s) * (max(b, 1.0) ** (1.0 / p) - 1.0))
        return np.array(out)

    est = integrate_interval(excess, 0.0, tp, (s - 1.0, 0.0), cfg)
    return float(est.value), tp, est


# ---------------------------------------------------------------------------
# circle integrals of the Poisson-type kernel


def m_bound(q: float) -> float:
    return min(0.5 * beta_fn(0.5 * (q - 1.0), 0.5), 0.5 * math.pi)


def M_bound(q: float) -> float:
    return max(0.5 * beta_fn(0.5 * (q - 1.0), 0.5), 0.5 * math.pi)


def lemma61_check(r: float, q: float, Q_L: float, Q_U: float, cfg: QuadConfig | None = None,
                  eps: float | None = None) -> Lemma61Report:
    """``int_0^(2pi) |1 - r e^(i theta)|^(-q) dtheta`` scaled by ``(1-r)^(q-1)``.

    ``eps = 1 - r`` may be given to keep the distance to the circle exact.
    """
    if not 1.0 < Q_L <= q <= Q_U < math.inf:
        raise ParameterRangeError("lemma61_check needs 1 < Q_L <= q <= Q_U < inf")
    eps = 1.0 - r if eps is None else float(eps)
    if not 0.0 < eps <= 1.0:
        raise ParameterRangeError("lemma61_check needs 0 <= r < 1")
    kernel = ClosedForm("1/(1-z)", lambda z, omz: 1.0 / omz, 1.0, boundary_ok=False)
    est = circle_integral(kernel, q=q, cfg=cfg, eps=eps, singular=-1.0)
    value = float(est.value)
    return Lemma61Report(1.0 - eps, q, Q_L, Q_U, est, eps ** (q - 1.0) * value,
                         2.0 * m_bound(Q_U), 4.0 * M_bound(Q_L))


# ---------------------------------------------------------------------------
# the H^infinity chain with the weight (1 - |z|)^alpha


def hinf_walpha_profile(t: float, alpha: float, eps, omt: float | None = None):
    """``(1/(1-(1-t)x))^(1-alpha) ((1-x)/(1-(1-t)x-t))^alpha`` at ``x = 1 - eps``.

    Uses ``1 - (1-t)x = t + (1-t) eps`` and ``1 - (1-t)x - t = (1-t) eps``.
    """
    eps = np.asarray(eps, dtype=float)
    omt = 1.0 - t if omt is None else omt
    den = t + omt * eps
    # the second quotient is exactly 1/(1-t) for every x; eps cancels
    return den ** (alpha - 1.0) * omt ** (-alpha)


def hinf_walpha_upper(t: float, alpha: float, cfg: QuadConfig | None = None, check: bool = True,
                      omt: float | None = None) -> float:
    """Supremum over ``0 <= x < 1`` of the majorant of ``||w_t C_{phi_t}||``.

    A bounded scalar search on ``log(1 - x)`` and the radial limit ``x -> 1``
    are both taken; the larger is returned.  With ``check`` it must agree
    with ``t^(alpha-1)/(1-t)^alpha`` to 1e-8.  ``omt = 1 - t`` may be given
    exactly.  ``cfg`` is accepted for interface uniformity; the searches
    have fixed tolerances.
    """
    omt = 1.0 - t if omt is None else float(omt)
    if not (0.0 < t and 0.0 < omt) or not 0.0 < alpha < 1.0:
        raise ParameterRangeError("hinf_walpha_upper needs 0 < t < 1 and 0 < alpha < 1")
    # the profile varies on the scale 1 - x ~ t/(1-t), so both searches are scaled by it
    scale = t / omt
    lt = math.log(scale)
    res = minimize_scalar(lambda le: -float(hinf_walpha_profile(t, alpha, math.exp(le), omt)),
                          bounds=(min(lt, 0.0) - 60.0, 0.0), method="bounded", options={"xatol": 1e-12})
    limit, _err = radial_limit(lambda e: float(hinf_walpha_profile(t, alpha, e, omt)), 0.5 * min(scale, 1.0), 40)
    value = max(-res.fun, limit)
    if check:
        closed = t ** (alpha - 1.0) * omt ** (-alpha)
        if abs(value - closed) > 1e-8 * closed:
            raise ArithmeticError(f"hinf_walpha_upper cross-check failed: {value} vs {closed}")
    return float(value)


def hinf_walpha_norm(alpha: float, cfg: QuadConfig | None = None) -> NormEstimate:
    """``int_0^1 hinf_walpha_upper(t) dt``, expected ``pi / sin(alpha pi)``."""
    def f(ts, ss):
        return np.array([hinf_walpha_upper(float(t), alpha, cfg, check=False, omt=float(s))
                         for t, s in zip(np.atleast_1d(ts), np.atleast_1d(ss))])
    return integrate_01(f, (alpha - 1.0, -alpha), cfg, complement=True)
