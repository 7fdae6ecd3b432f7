"""Norms in weighted Bergman, weighted sup-norm and Hardy spaces.

Radial weights are evaluated from ``eps = 1 - |z|`` so that the factors
``(1 - |z|^2)^alpha`` and ``(1 - |z|)^alpha`` stay accurate at the boundary.
Norms of functions singular at the boundary point 1 use the quadrature
schemes graded towards that point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .analytic import AnalyticFn, ClosedForm, PowerSeries, Series, cpow
from .limits import richardson
from .quadrature import (
    DEFAULT_CONFIG,
    NormEstimate,
    QuadConfig,
    circle_integral,
    disk_integral,
)
from .special import DomainError

__all__ = [
    "RadialWeight",
    "SpaceTag",
    "bergman_norm",
    "bergman_integral",
    "hinf_norm",
    "hardy_norm",
    "eval_functional_surrogate",
    "brezis_lieb_gap",
]


@dataclass(frozen=True)
class RadialWeight:
    """``standard``: ``M (1 - |z|^2)^alpha``; ``boundary``: ``M (1 - |z|)^alpha``; ``unit``: 1.

    With ``normalized=True`` the constant ``M`` makes ``v dA/pi`` a
    probability measure; otherwise ``M = 1`` and ``sup v = v(0) = 1``.
    """

    kind: str = "standard"
    alpha: float = 0.0
    normalized: bool = True

    def __post_init__(self):
        if self.kind == "standard":
            if not self.alpha > -1.0:
                raise DomainError("standard weight needs alpha > -1")
        elif self.kind == "boundary":
            if not self.alpha > 0.0:
                raise DomainError("boundary weight needs alpha > 0")
        elif self.kind == "unit":
            object.__setattr__(self, "alpha", 0.0)
        else:
            raise ValueError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def standard(cls, alpha: float, normalized: bool = True) -> "RadialWeight":
        return cls("standard", float(alpha), normalized)

    @classmethod
    def boundary(cls, alpha: float, normalized: bool = False) -> "RadialWeight":
        return cls("boundary", float(alpha), normalized)

    @classmethod
    def unit(cls) -> "RadialWeight":
        return cls("unit", 0.0, True)

    @property
    def M(self) -> float:
        if not self.normalized:
            return 1.0
        if self.kind == "standard":
            return 1.0 + self.alpha
        if self.kind == "boundary":
            return 0.5 * (self.alpha + 1.0) * (self.alpha + 2.0)
        return 1.0

    def from_eps(self, eps):
        """Weight at ``|z| = 1 - eps``."""
        eps = np.asarray(eps, dtype=float)
        if self.kind == "standard":
            return self.M * (eps * (2.0 - eps)) ** self.alpha
        if self.kind == "boundary":
            return self.M * eps**self.alpha
        return np.ones_like(eps)

    def __call__(self, z):
        out = self.from_eps(1.0 - np.abs(np.asarray(z, dtype=complex)))
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SpaceTag:
    space: str
    p: float | None = None
    weight: RadialWeight | None = None

    def __post_init__(self):
        if self.space == "bergman":
            if self.p is None or not self.p > 1:
                raise DomainError("bergman space needs p > 1")
            if self.weight is None:
                object.__setattr__(self, "weight", RadialWeight.standard(0.0))
        elif self.space == "hardy":
            if self.p is None or not 1 < self.p < math.inf:
                raise DomainError("hardy space needs 1 < p < inf")
        elif self.space == "hinf":
            if self.weight is None:
                raise DomainError("hinf space needs a weight")
        else:
            raise ValueError(f"unknown space {self.space!r}")


def _as_fn(f) -> AnalyticFn:
    return Series(f) if isinstance(f, PowerSeries) else f


def _singular(f) -> float | None:
    e = getattr(f, "singular_exponent", None)
    return None if e is None else float(e)


def bergman_integral(f, p: float, w: RadialWeight, cfg: QuadConfig | None = None) -> NormEstimate:
    """``int_D |f|^p v dA/pi``."""
    cfg = cfg or DEFAULT_CONFIG
    f = _as_fn(f)
    e = _singular(f)
    a = w.alpha
    if e is not None and e * p >= 2.0 + a:
        return NormEstimate(math.inf, math.inf, False, 0, diverged=True)
    extra_boundary = w.kind == "boundary"

    if e is not None:
        # regular part |f (1 - z)^e|^p; the factor |1 - z|^(-e p) is applied by the rule
        def F(z, off):
            v = np.abs(f.value(z, -off) * cpow(-off, e)) ** p
            if extra_boundary:
                v = v * (1.0 + np.abs(z)) ** (-a)
            return v
        est = disk_integral(F, 0j, 1.0, cfg, singular_point=1.0, boundary_power=a,
                            pass_offset=True, singular_power=-e * p)
    else:
        def F(z):
            v = np.abs(f.value(z, 1.0 - z)) ** p
            if extra_boundary:
                v = v * (1.0 + np.abs(z)) ** (-a)
            return v
        est = disk_integral(F, 0j, 1.0, cfg, boundary_power=a)
    return NormEstimate(w.M * est.value, w.M * est.err, est.converged, est.evaluations)


def _root(est: NormEstimate, p: float) -> NormEstimate:
    if est.diverged:
        return est
    val = float(np.real(est.value))
    root = val ** (1.0 / p)
    err = est.err / (p * val ** (1.0 - 1.0 / p)) if val > 0 else est.err ** (1.0 / p)
    return NormEstimate(root, err, est.converged, est.evaluations)


def bergman_norm(f, p: float, w: RadialWeight | None = None, cfg: QuadConfig | None = None) -> NormEstimate:
    """``(int_D |f|^p v dA/pi)^(1/p)``; flagged divergent when non-integrable."""
    if not p > 1:
        raise DomainError("bergman_norm needs p > 1")
    w = w or RadialWeight.standard(0.0)
    return _root(bergman_integral(f, p, w, cfg), p)


def _abs_on_grid(f, eps, theta):
    r = 1.0 - eps
    z = r[:, None] * np.exp(1j * theta)[None, :]
    half = 0.5 * theta
    omz = eps[:, None] + r[:, None] * (2.0 * np.sin(half) * (np.sin(half) - 1j * np.cos(half)))[None, :]
    return np.abs(f.value(z, omz))


def hinf_norm(f, w: RadialWeight, cfg: QuadConfig | None = None, *, min_eps: float = 2.0**-40):
    """``sup_D |f| v`` by a polar grid search and refinement along the best ray.

    Returns ``(NormEstimate, maximiser)``.  The maximiser is ``None`` when the
    sup is approached at the boundary.
    """
    cfg = cfg or DEFAULT_CONFIG
    f = _as_fn(f)
    n_t = cfg.angular_points
    n_r = cfg.radial_points
    theta = 2.0 * math.pi * np.arange(n_t) / n_t
    inner = np.linspace(1.0, 0.5, n_r // 4, endpoint=False)
    outer = np.geomspace(0.5, min_eps, n_r - n_r // 4)
    eps = np.concatenate([inner, outer])
    vals = _abs_on_grid(f, eps, theta) * w.from_eps(eps)[:, None]
    evals = vals.size
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    th = theta[j]
    best = float(vals[i, j])

    def along(e):
        e = np.atleast_1d(np.asarray(e, dtype=float))
        return (_abs_on_grid(f, e, np.array([th]))[:, 0] * w.from_eps(e))

    if i == eps.size - 1:
        # maximum at the innermost ring: probe the ray further in
        probe_eps = min_eps * 2.0 ** (-8.0 * np.arange(1, 6))
        probe = along(probe_eps)
        evals += probe.size
        seq = np.concatenate([[best], probe])
        if np.all(np.diff(seq) > 0) and seq[-1] > seq[0] * (1.0 + 1e-8):
            return NormEstimate(math.inf, math.inf, False, evals, diverged=True), None
        return NormEstimate(float(max(seq.max(), best)), float(abs(seq[-1] - seq[-2])), True, evals), None
    lo_e = eps[min(i + 1, eps.size - 1)]
    hi_e = eps[max(i - 1, 0)]
    if hi_e > lo_e:
        res = minimize_scalar(lambda le: -float(along(math.exp(le))[0]),
                              bounds=(math.log(lo_e), math.log(hi_e)), method="bounded",
                              options={"xatol": 1e-12})
        evals += int(res.nfev)
        if -res.fun > best:
            best = float(-res.fun)
            r_star = 1.0 - math.exp(res.x)
        else:
            r_star = 1.0 - eps[i]
    else:
        r_star = 1.0 - eps[i]
    return NormEstimate(best, 0.0, True, evals), complex(r_star * np.exp(1j * th))


def hardy_norm(f, p: float, cfg: QuadConfig | None = None, method: str = "boundary") -> NormEstimate:
    """``sup_r (M_p(f, r))`` with ``M_p^p = (1/2pi) int |f(r e^{i theta})|^p``.

    ``boundary`` integrates the boundary function directly (the increasing
    means converge to it); ``ladder`` evaluates the means on
    ``r_k = 1 - 2^-k``, ``k <= 30`` and extrapolates.
    """
    if not 1.0 < p < math.inf:
        raise DomainError("hardy_norm needs 1 < p < inf")
    cfg = cfg or DEFAULT_CONFIG
    f = _as_fn(f)
    e = _singular(f)
    if e is not None and e * p >= 1.0:
        return NormEstimate(math.inf, math.inf, False, 0, diverged=True)
    if method == "boundary" and getattr(f, "boundary_ok", True):
        est = circle_integral(f, q=p, cfg=cfg, eps=0.0, boundary=True)
        mean = NormEstimate(est.value / (2.0 * math.pi), est.err / (2.0 * math.pi),
                            est.converged, est.evaluations)
        return _root(mean, p)
    if method not in ("boundary", "ladder"):
        raise ValueError(f"unknown method {method!r}")
    means, evals, ok = [], 0, True
    for k in range(1, 31):
        est = circle_integral(f, q=p, cfg=cfg, eps=2.0 ** (-k))
        means.append(est.value / (2.0 * math.pi))
        evals += est.evaluations
        ok = ok and est.converged
    means = np.maximum.accumulate(np.asarray(means))
    exps = None
    if e is not None and e > 0:
        exps = [1.0 - e * p]
    limit, err = richardson(means, 2.0, exps)
    limit = max(limit, float(means[-1]))
    return _root(NormEstimate(limit, err, ok, evals), p)


def eval_functional_surrogate(z, p: float, alpha: float, eps=None):
    """``(1 - |z|^2)^(-(2 + alpha)/p)``, meaningful only inside quotients.

    ``eps = 1 - |z|`` may be supplied for accuracy near the boundary.
    """
    if eps is None:
        r = np.abs(np.asarray(z, dtype=complex))
        if np.any(r >= 1.0):
            raise DomainError("surrogate needs |z| < 1")
        base = 1.0 - r * r
    else:
        eps = np.asarray(eps, dtype=float)
        base = eps * (2.0 - eps)
    out = base ** (-(2.0 + alpha) / p)
    return float(out) if np.ndim(out) == 0 else out


def brezis_lieb_gap(f, n: int, p: float, w: RadialWeight, cfg: QuadConfig | None = None) -> float:
    """``| ||f + z^n||^p - ||z^n||^p - ||f||^p |`` in ``A^p_v``."""
    f = _as_fn(f)
    fn = ClosedForm(f"f+z^{n}", lambda z, omz: f.value(z, omz) + z**n, _singular(f))
    zn = Series(PowerSeries(np.eye(n + 1)[n]))
    a = bergman_integral(fn, p, w, cfg).value
    b = bergman_integral(zn, p, w, cfg).value
    c = bergman_integral(f, p, w, cfg).value
    return abs(a - b - c)
