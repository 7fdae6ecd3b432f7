"""Essential norms of the Hilbert matrix operator and the machinery behind them.

Closed forms, the multiplier ``C_c`` with ``I_K(f_c) = f_c * C_c``, the
lower-bound sweeps with test functions that concentrate at the boundary
point 1, essential norms of the weighted composition operators
``w_t C_{phi_t}`` and numerical audits of the integrability conditions used
in the upper-bound argument.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .analytic import (
    BergmanTest,
    ClosedForm,
    ParameterRangeError,
    cpow,
    g_exponent,
    make_test_fn,
    omega,
)
from .limits import radial_limit
from .operators import HILBERT, KernelSpec
from .quadrature import (
    DEFAULT_CONFIG,
    NormEstimate,
    QuadConfig,
    QuadratureError,
    circle_integral,
    integrate_01,
    integrate_01_batch,
    integrate_interval,
)
from .spaces import RadialWeight, bergman_integral, eval_functional_surrogate

__all__ = [
    "EssNormQuery",
    "SweepResult",
    "ConditionAuditReport",
    "essnorm_formula",
    "essnorm_status",
    "multiplier_Cc",
    "multiplier_Ccn",
    "lower_bound_sweep",
    "wco_essnorm",
    "sup_wt_profile",
    "sup_wt_maximizer",
    "condition_audit",
    "CONDITIONS",
]

ZETA = 0.1  # radius of the neighbourhood B(1, zeta) probed by the kernel audits
CONDITIONS = ("CUBA", "CUB2A", "CUBH", "CUB2H", "CKA", "CKA-", "CEVA", "CEVH", "CAIA")


@dataclass(frozen=True)
class EssNormQuery:
    """Space family and parameters: ``bergman`` (p, alpha), ``hinf`` (alpha), ``hardy`` (p)."""

    space: str
    p: float | None = None
    alpha: float = 0.0
    kernel: KernelSpec = HILBERT

    def __post_init__(self):
        if self.space == "bergman":
            if self.p is None or not self.alpha > -1.0 or not self.p > 2.0 + self.alpha:
                raise ParameterRangeError(
                    f"bergman essential norm needs alpha > -1 and p > 2 + alpha, got p={self.p}, alpha={self.alpha}"
                )
        elif self.space == "hinf":
            if not 0.0 < self.alpha < 1.0:
                raise ParameterRangeError(f"hinf essential norm needs 0 < alpha < 1, got alpha={self.alpha}")
        elif self.space == "hardy":
            if self.p is None or not 1.0 < self.p < math.inf:
                raise ParameterRangeError(f"hardy essential norm needs 1 < p < inf, got p={self.p}")
        else:
            raise ValueError(f"unknown space {self.space!r}")

    @property
    def exponent(self) -> float:
        """``s`` with essential norm ``int_0^1 t^(s-1) (1-t)^(-s) dt = pi / sin(pi s)``."""
        if self.space == "bergman":
            return (2.0 + self.alpha) / self.p
        if self.space == "hinf":
            return self.alpha
        return 1.0 / self.p


@dataclass(frozen=True)
class SweepResult:
    space: str
    grid: tuple
    values: tuple
    target: float

    @property
    def ratios(self) -> np.ndarray:
        return np.array([float(v.value) for v in self.values])


@dataclass(frozen=True)
class ConditionAuditReport:
    condition: str
    bound: NormEstimate
    parameters: dict = field(default_factory=dict)
    finite: bool = False
    status: str = "audited"
    details: dict = field(default_factory=dict)


def _beta_integral(s: float, cfg=None) -> NormEstimate:
    return integrate_01(lambda t, u: t ** (s - 1.0) * u ** (-s), (s - 1.0, -s), cfg, complement=True)


def essnorm_formula(q: EssNormQuery, check: bool = True) -> float:
    """Closed-form essential norm ``pi / sin(pi s)`` of the Hilbert matrix.

    ``s = (2 + alpha)/p`` on ``A^p_alpha``, ``alpha`` on ``H^infinity_alpha``
    and ``1/p`` on ``H^p``.  With ``check`` the value is compared against the
    defining beta integral.
    """
    if q.kernel is not HILBERT:
        raise ValueError("closed forms are available for the Hilbert kernel only")
    s = q.exponent
    value = math.pi / math.sin(math.pi * s)
    if check:
        est = _beta_integral(s)
        if not (est.converged and abs(est.value - value) <= 1e-8 * max(1.0, value)):
            raise ArithmeticError(f"beta-integral cross-check failed: {est.value} vs {value}")
    return value


def essnorm_status(q: EssNormQuery) -> str:
    if q.kernel is not HILBERT:
        return "unaudited"
    if q.space == "bergman" and q.alpha < 0.0:
        return "lower bound only"
    return "exact"


# ---------------------------------------------------------------------------
# multipliers


def _cc_integrand(K, e, z, omz):
    # ((1 - t z')/s)^e T_t with  (1/(1-t) - z) = (1 - (1-t) z)/(1-t)
    def f(t, s):
        den = omz + t * z
        return cpow(den / s, e) * K.transfer(z, omz, t, s)
    return f


def multiplier_Cc(K: KernelSpec, c: float, z, cfg: QuadConfig | None = None, *, alpha: float = 0.0,
                  p0: float = 1.0, g_kind: str = "scaled", omz=None, chunk: int = 4096):
    """``C_c(z) = int_0^1 (1/(1-t) - z)^c g(phi_t(z))/g(z) T_t(z) dt``.

    ``g`` is ``(2(1-z))^(-alpha/p0)`` (scaled) or ``(1-z)^(-alpha)``.  Since
    ``(1 - phi_t)/(1 - z) = (1-t)/(1 - (1-t) z)`` the two factors combine into
    one power of ``(1 - (1-t) z)/(1 - t)``.  Arrays of points are integrated
    together with a shared rule.
    """
    cfg = cfg or DEFAULT_CONFIG
    e = c + g_exponent(alpha, p0, g_kind)
    if not e < 1.0:
        raise ParameterRangeError("multiplier integral diverges for c + a >= 1")
    scalar = np.ndim(z) == 0
    za = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    oa = 1.0 - za if omz is None else np.atleast_1d(np.asarray(omz, dtype=complex)).ravel()
    if scalar:
        est = integrate_01(_cc_integrand(K, e, complex(za[0]), complex(oa[0])), (0.0, -e), cfg,
                           complement=True).require()
        return complex(est.value)
    out = np.empty(za.shape, dtype=complex)
    ok = True
    for i in range(0, za.size, chunk):
        zz = za[i:i + chunk, None]
        oo = oa[i:i + chunk, None]
        vals, _, conv = integrate_01_batch(_cc_integrand(K, e, zz, oo), (0.0, -e), cfg)
        out[i:i + chunk] = vals
        ok = ok and conv
    if not ok:
        raise QuadratureError("multiplier quadrature did not converge on all points")
    return out.reshape(np.shape(z))


def multiplier_Ccn(c: float, n: int, eps, alpha: float, cfg: QuadConfig | None = None,
                   g_kind: str = "scaled") -> NormEstimate:
    """``C_{c,n}(r)`` for the Hilbert kernel at ``r = 1 - eps``.

    ``int_0^1 (1/(1-t) - r)^(-c) (phi_t(r)/r)^n g(phi_t(r))/g(r) T_t(r) dt``
    with ``g`` the H^infinity function of exponent ``alpha``.
    """
    cfg = cfg or DEFAULT_CONFIG
    a = g_exponent(alpha, 1.0, g_kind)
    eps = float(eps)
    r = 1.0 - eps

    def f(t, s):
        den = eps + t * r  # 1 - (1-t) r
        with np.errstate(divide="ignore"):
            log_v = (a - c) * np.log(den / s) + n * np.log(t / (r * den)) - np.log(den)
        return np.exp(log_v)

    return integrate_01(f, (0.0, c - a), cfg, complement=True)


# ---------------------------------------------------------------------------
# lower-bound sweeps


def _combine_ratio(num: NormEstimate, den: NormEstimate, p: float) -> NormEstimate:
    if num.diverged or den.diverged:
        return NormEstimate(math.inf, math.inf, False, num.evaluations + den.evaluations, diverged=True)
    ratio = (float(num.value) / float(den.value)) ** (1.0 / p)
    rel = num.err / abs(num.value) + den.err / abs(den.value)
    return NormEstimate(ratio, ratio * rel / p, num.converged and den.converged,
                        num.evaluations + den.evaluations)


def _bergman_ratio(p, alpha, c, cfg):
    f = make_test_fn("bergman", p=p, alpha=alpha, c=c)
    w = RadialWeight.standard(alpha)

    def fc_times_cc(z, omz):
        return f.value(z, omz) * multiplier_Cc(HILBERT, c, z, cfg, alpha=alpha, p0=p, omz=omz)

    image = ClosedForm("f_c C_c", fc_times_cc, f.singular_exponent)
    return _combine_ratio(bergman_integral(image, p, w, cfg), bergman_integral(f, p, w, cfg), p)


def _hardy_ratio(p, c, cfg):
    f = make_test_fn("hardy", p=p, c=c)

    def fc_times_cc(z, omz):
        return f.value(z, omz) * multiplier_Cc(HILBERT, c, z, cfg, omz=omz)

    image = ClosedForm("f_c C_c", fc_times_cc, f.singular_exponent)
    num = circle_integral(image, q=p, cfg=cfg, eps=0.0, boundary=True)
    den = circle_integral(f, q=p, cfg=cfg, eps=0.0, boundary=True)
    return _combine_ratio(num, den, p)


def _hinf_value(alpha, n, cfg):
    c = 1.0 / (2.0 * n)
    gamma = float(n) ** -2
    make_test_fn("hinf", alpha=alpha, c=c, n=n)
    eps = gamma * 2.0 ** (-np.arange(0, 41, 2.0))
    ests = [multiplier_Ccn(c, n, e, alpha, cfg) for e in eps]
    vals = np.array([float(e.value) for e in ests])
    k = int(np.argmin(vals))
    best = ests[k]
    lo = math.log(eps[min(k + 1, eps.size - 1)])
    hi = math.log(eps[max(k - 1, 0)])
    evals = sum(e.evaluations for e in ests)
    if hi > lo:
        res = minimize_scalar(lambda le: float(multiplier_Ccn(c, n, math.exp(le), alpha, cfg).value),
                              bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
        if res.fun < best.value:
            best = NormEstimate(float(res.fun), best.err, best.converged, evals)
    return NormEstimate(float(best.value), best.err, all(e.converged for e in ests), evals)


def _map(fn, items, workers):
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))  # results keep the grid order


def lower_bound_sweep(q: EssNormQuery, grid, cfg: QuadConfig | None = None, workers: int = 1) -> SweepResult:
    """Ratios ``||I(f)|| / ||f||`` along a test-function grid.

    ``bergman`` and ``hardy`` grids are values of ``c``; for ``hinf`` the grid
    lists integers ``n`` and the value is ``inf |C_{c_n,n}(r)|`` over the window
    ``1 - n^-2 < r < 1`` with ``c_n = 1/(2n)``.
    """
    cfg = cfg or DEFAULT_CONFIG
    grid = tuple(grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("sweep grid must be strictly increasing")
    target = essnorm_formula(q)
    if q.space == "bergman":
        hi = 2.0 / q.p
        if any(c >= hi for c in grid):
            raise ParameterRangeError(f"sweep grid must stay below the divergence endpoint 2/p = {hi:.6g}")
        values = _map(lambda c: _bergman_ratio(q.p, q.alpha, c, cfg), grid, workers)
    elif q.space == "hardy":
        hi = 1.0 / q.p
        if any(c >= hi or c <= 0 for c in grid):
            raise ParameterRangeError(f"hardy sweep grid must lie in (0, 1/p) = (0, {hi:.6g})")
        values = _map(lambda c: _hardy_ratio(q.p, c, cfg), grid, workers)
    else:
        if any(int(n) != n or n < 1 for n in grid):
            raise ParameterRangeError("hinf sweep grid must list positive integers n")
        values = _map(lambda n: _hinf_value(q.alpha, int(n), cfg), grid, workers)
    return SweepResult(q.space, grid, tuple(values), target)


# ---------------------------------------------------------------------------
# weighted composition operators


def _wco_quotient(t, omt, s, eps):
    # |w_t(r)| * surrogate(phi_t(r)) / surrogate(r) at r = 1 - eps, with the
    # surrogate exponent chosen so that (2 + alpha)/p = s
    den = t + omt * eps  # 1 - (1 - t) r
    om_phi = omt * eps / den  # 1 - phi_t(r)
    ratio = eval_functional_surrogate(None, 2.0 / s, 0.0, eps=om_phi) / eval_functional_surrogate(
        None, 2.0 / s, 0.0, eps=eps)
    return ratio / den


def wco_essnorm(t: float, s: float, method: str = "closed_form", cfg: QuadConfig | None = None,
                omt: float | None = None) -> float:
    """Essential norm of ``w_t C_{phi_t}`` with exponent ``s = (2 + alpha)/p``: ``t^(s-1)/(1-t)^s``."""
    omt = 1.0 - t if omt is None else omt
    if not (0.0 < t and 0.0 < omt) or not s > 0:
        raise ParameterRangeError("wco_essnorm needs 0 < t < 1 and s > 0")
    if method == "closed_form":
        return t ** (s - 1.0) * omt ** (-s)
    if method == "radial_quotient":
        value, _err = radial_limit(lambda e: _wco_quotient(t, omt, s, e), 0.5, 30)
        return value
    raise ValueError(f"unknown method {method!r}")


def sup_wt_maximizer(t: float, alpha: float) -> float:
    s = 1.0 - t
    return (s - alpha) / (s * (1.0 - alpha)) if t < 1.0 - alpha else 0.0


def sup_wt_profile(t: float, alpha: float, check: bool = True) -> float:
    """``sup_{0<=x<1} (1-x)^alpha / (1 - (1-t) x)``."""
    if not 0.0 < t < 1.0 or not 0.0 < alpha < 1.0:
        raise ParameterRangeError("sup_wt_profile needs 0 < t < 1 and 0 < alpha < 1")
    if t < 1.0 - alpha:
        value = (1.0 - alpha) ** (1.0 - alpha) * alpha**alpha * t ** (alpha - 1.0) * (1.0 - t) ** (-alpha)
    else:
        value = 1.0
    if check:
        res = minimize_scalar(lambda x: -((1.0 - x) ** alpha) / (1.0 - (1.0 - t) * x),
                              bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-12})
        numeric = max(-res.fun, 1.0)
        if abs(numeric - value) > 1e-9 * value:
            raise ArithmeticError(f"sup_wt_profile cross-check failed: {numeric} vs {value}")
    return value


# ---------------------------------------------------------------------------
# condition audits


def _report(cid, est, params, details=None):
    finite = bool(est.converged and not est.diverged and math.isfinite(float(np.real(est.value))))
    return ConditionAuditReport(cid, est, params, finite, "audited", details or {})


def _cub2h_majorant(alpha, cfg):
    k = (1.0 - alpha) ** (1.0 - alpha) * alpha**alpha
    split = 1.0 - alpha  # the two arguments of the max touch here

    def f(t, s):
        return 2.0**alpha * np.maximum(1.0, k * t ** (alpha - 1.0) * s ** (-alpha))

    left = integrate_interval(lambda t: f(t, 1.0 - t), 0.0, split, (alpha - 1.0, 0.0), cfg)
    right = integrate_interval(f, split, 1.0, (0.0, -alpha), cfg, complement=True)
    return _sum(left, right)


def _sum(a: NormEstimate, b: NormEstimate) -> NormEstimate:
    if a.diverged or b.diverged:
        return NormEstimate(math.inf, math.inf, False, a.evaluations + b.evaluations, diverged=True)
    return NormEstimate(float(a.value) + float(b.value), a.err + b.err, a.converged and b.converged,
                        a.evaluations + b.evaluations)


def _cuba_majorant(p, alpha, cfg):
    def f(t, s):
        lead = np.maximum(t ** ((1.0 + alpha) / p - 1.0), t ** (1.0 / p - 1.0) * (1.0 + s) ** (alpha / p))
        return lead * s ** (-(2.0 + alpha) / p)

    lo = min((1.0 + alpha) / p - 1.0, 1.0 / p - 1.0)
    return integrate_01(f, (lo, -(2.0 + alpha) / p), cfg, complement=True)


def condition_audit(cid: str, cfg: QuadConfig | None = None, kernel: KernelSpec = HILBERT, **params):
    """Numerical audit of one condition for the Hilbert kernel and standard weights.

    ``CUBH``/``CUB2H`` take ``alpha``; ``CUBA``, ``CKA``, ``CUB2A``, ``CKA-`` and
    ``CAIA`` take ``p`` and ``alpha``; ``CEVA``/``CEVH`` take ``t`` and ``alpha``.
    """
    cfg = cfg or DEFAULT_CONFIG
    if cid not in CONDITIONS:
        raise ValueError(f"unknown condition {cid!r}")
    if kernel is not HILBERT:
        return ConditionAuditReport(cid, NormEstimate(math.nan, math.inf, False, 0), dict(params),
                                    False, "unaudited")
    alpha = float(params.get("alpha", 0.0))
    if cid == "CUBH":
        est = integrate_01(lambda t, s: (t * s) ** (-alpha), (-alpha, -alpha), cfg, complement=True)
        return _report(cid, est, {"alpha": alpha})
    if cid == "CUB2H":
        if not 0.0 < alpha < 1.0:
            raise ParameterRangeError("CUB2H audit needs 0 < alpha < 1")
        return _report(cid, _cub2h_majorant(alpha, cfg), {"alpha": alpha})
    if cid in ("CEVA", "CEVH"):
        t = float(params["t"])
        omt = 1.0 - t
        t_lim, t_err = radial_limit(lambda e: 1.0 / (t + omt * e), 0.5, 30)
        w_lim, w_err = radial_limit(lambda e: ((e * (2.0 - e)) / _one_minus_sq_phi(t, omt, e)) ** alpha, 0.5, 30)
        ok = abs(t_lim - 1.0 / t) <= 1e-8 and abs(w_lim - (t / omt) ** alpha) <= 1e-6
        est = NormEstimate(t_lim, t_err, ok, 62)
        return ConditionAuditReport(cid, est, {"t": t, "alpha": alpha}, ok, "audited",
                                    {"T_limit": t_lim, "T_expected": 1.0 / t,
                                     "weight_limit": w_lim, "weight_expected": (t / omt) ** alpha})
    p = float(params["p"])
    Om = omega(p, alpha)
    base = {"p": p, "alpha": alpha, "Omega": Om}
    if cid in ("CUBA", "CKA"):
        return _report(cid, _cuba_majorant(p, alpha, cfg), base)
    if cid == "CUB2A":
        # follows from CUB2H for any 0 < alpha' < 1/p through the inclusions of the spaces
        a2 = 1.0 / (2.0 * p)
        return _report(cid, _cub2h_majorant(a2, cfg), {**base, "alpha_prime": a2})
    if cid == "CKA-":
        return _report(cid, _c_infinity(p, alpha, Om, cfg), {**base, "zeta": ZETA})
    # CAIA: f_c in A^p_alpha for Omega < c < 2/p with norms blowing up at 2/p
    hi = 2.0 / p
    cs = [hi - (hi - Om) * 2.0 ** (-k) for k in range(1, 5)]
    w = RadialWeight.standard(alpha)
    norms = [bergman_integral(make_test_fn("bergman", p=p, alpha=alpha, c=c), p, w, cfg) for c in cs]
    endpoint = bergman_integral(BergmanTest(p, alpha, hi), p, w, cfg)
    vals = [float(n.value) ** (1.0 / p) for n in norms]
    ok = all(n.converged for n in norms) and all(b > a for a, b in zip(vals, vals[1:])) and endpoint.diverged
    est = NormEstimate(vals[-1], norms[-1].err, ok, sum(n.evaluations for n in norms))
    return ConditionAuditReport(cid, est, {**base, "c_grid": cs}, ok, "audited",
                                {"norms": vals, "endpoint_diverged": endpoint.diverged})


def _one_minus_sq_phi(t, omt, eps):
    den = t + omt * eps
    om_phi = omt * eps / den
    return om_phi * (2.0 - om_phi)


def _c_infinity(p, alpha, Om, cfg):
    rho = ZETA * np.array([0.02, 0.1, 0.3, 0.6, 0.95])
    psi = np.pi + np.linspace(-0.5 * np.pi, 0.5 * np.pi, 13)[1:-1]
    off = (rho[:, None] * np.exp(1j * psi)[None, :]).ravel()
    z = 1.0 + off
    inside = np.abs(z) < 1.0
    z, omz = z[inside], -off[inside]
    hi = 2.0 / p
    cs = Om + (hi - Om) * np.array([0.05, 0.25, 0.5, 0.75, 0.95])
    best = 0.0
    for c in cs:
        vals = multiplier_Cc(HILBERT, float(c), z, cfg, alpha=alpha, p0=p, omz=omz)
        best = max(best, float(np.max(np.abs(vals))))
    return NormEstimate(best, 0.0, True, int(z.size * cs.size))
