"""Invariant and acceptance suites shared by the test-suite and the CLI.

Every check returns ``Check`` records with the measured quantity, its
reference and the tolerance used, so a failing item says by how much it
missed.  ``SUITES`` maps suite names to callables ``suite(seed) -> list``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .analytic import (
    BergmanTest,
    ClosedForm,
    PowerSeries,
    Series,
    cpow,
    evaluate,
    make_test_fn,
    omega,
)
from .essnorm import (
    EssNormQuery,
    condition_audit,
    essnorm_formula,
    lower_bound_sweep,
    multiplier_Cc,
    sup_wt_profile,
    wco_essnorm,
)
from .operators import HILBERT, MobiusData, hilbert_apply_series, kernel_apply, weighted_comp_apply
from .quadrature import circle_integral, disk_integral, integrate_01
from .sharpness import (
    bt_value,
    counterexample_check,
    find_p0,
    hinf_walpha_norm,
    hinf_walpha_upper,
    lemma61_check,
    strict_gap,
    sup_bt_closed_form,
)
from .spaces import RadialWeight, bergman_integral, bergman_norm, brezis_lieb_gap, hardy_norm, hinf_norm
from .special import beta_fn, gamma_fn

__all__ = ["Check", "SUITES", "ACCEPTANCE", "run_suite", "criterion"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float = math.nan
    reference: float = math.nan
    tol: float = math.nan

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: value={self.value:.15g} reference={self.reference:.15g} tol={self.tol:.3g}"


def _close(name, value, reference, tol, relative=False) -> Check:
    value = float(value)
    scale = max(1.0, abs(reference)) if relative else 1.0
    return Check(name, bool(abs(value - reference) <= tol * scale), value, float(reference), tol)


def _flag(name, ok, value=math.nan, reference=math.nan, tol=math.nan) -> Check:
    return Check(name, bool(ok), float(value), float(reference), tol)


SAMPLE_POINTS = (0.0, 0.3, 0.5j, -0.4 + 0.2j, 0.9)
BL_FUNCTION = ClosedForm("4/(2-z)", lambda z, omz: 4.0 / (1.0 + omz))


def _random_polys(rng, count=6, max_degree=8):
    out = []
    for _ in range(count):
        deg = int(rng.integers(0, max_degree + 1))
        out.append(PowerSeries(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)))
    return out


def _disk_points(rng, n, rmax):
    r = rmax * np.sqrt(rng.uniform(0.0, 1.0, n))
    return r * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))


# ---------------------------------------------------------------------------
# acceptance criteria


def criterion_1(seed=0):
    checks = []
    for p, a in ((4, 0), (3, 0), (6, 1), (5, 0.5)):
        q = EssNormQuery("bergman", p, a)
        s = q.exponent
        value = essnorm_formula(q)
        closed = math.pi / math.sin((2 + a) * math.pi / p)
        beta = integrate_01(lambda t, u: t ** (s - 1) * u ** (-s), (s - 1, -s), complement=True).value
        checks.append(_close(f"bergman p={p} alpha={a} closed form", value, closed, 1e-12, True))
        checks.append(_close(f"bergman p={p} alpha={a} beta integral", value, beta, 1e-8))
    for a in (0.25, 0.5, 0.75):
        checks.append(_close(f"hinf alpha={a}", essnorm_formula(EssNormQuery("hinf", alpha=a)),
                             math.pi / math.sin(a * math.pi), 1e-12, True))
    for p in (2, 3, 4):
        checks.append(_close(f"hardy p={p}", essnorm_formula(EssNormQuery("hardy", p)),
                             math.pi / math.sin(math.pi / p), 1e-12, True))
    return checks


def criterion_2(seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for poly in _random_polys(rng):
        f = Series(poly)
        for z in SAMPLE_POINTS:
            d = kernel_apply(HILBERT, f, z, "direct")
            r = kernel_apply(HILBERT, f, z, "representation")
            worst = max(worst, abs(d - r))
    return [_flag("direct vs representation, degree <= 8, 5 points", worst <= 1e-8, worst, 0.0, 1e-8)]


def _multiplier_grid():
    for alpha, p in ((0.0, 4.0), (0.0, 3.0), (1.0, 4.0), (1.0, 5.0)):
        Om = omega(p, alpha)
        for c in (Om + 0.01, 0.5 * (Om + 2.0 / p), 2.0 / p - 0.01):
            yield alpha, p, c


def criterion_3(seed=0):
    rng = np.random.default_rng(seed)
    checks = []
    for alpha, p, c in _multiplier_grid():
        f = make_test_fn("bergman", p=p, alpha=alpha, c=c)
        zs = _disk_points(rng, 20, 0.95)
        C = multiplier_Cc(HILBERT, c, zs, alpha=alpha, p0=p)
        worst = 0.0
        for z, cc in zip(zs, C):
            fz = evaluate(f, z)
            worst = max(worst, abs(kernel_apply(HILBERT, f, z) - fz * cc) / (1.0 + abs(fz)))
        checks.append(_flag(f"I(f_c) = f_c C_c, p={p:g} alpha={alpha:g} c={c:.4f}", worst <= 1e-7,
                            worst, 0.0, 1e-7))
    return checks


SWEEPS = (
    ("bergman", EssNormQuery("bergman", 4.0, 0.0), (0.40, 0.45, 0.49), True),
    ("hardy", EssNormQuery("hardy", 2.0), (0.30, 0.40, 0.45), True),
    ("hinf", EssNormQuery("hinf", alpha=0.5), (8, 32, 128), False),
)


def criterion_4(seed=0):
    checks = []
    for name, q, grid, known in SWEEPS:
        res = lower_bound_sweep(q, grid)
        vals = res.ratios
        gaps = np.abs(vals - math.pi)
        checks.append(_flag(f"{name} sweep strictly increasing", np.all(np.diff(vals) > 0), vals[-1]))
        checks.append(_flag(f"{name} sweep gap to pi shrinking", np.all(np.diff(gaps) < 0), gaps[-1]))
        checks.append(_flag(f"{name} sweep final value within 10% of pi",
                            abs(vals[-1] - math.pi) <= 0.1 * math.pi, vals[-1], math.pi, 0.1))
        checks.append(_flag(f"{name} sweep converged", all(v.converged for v in res.values)))
        if known:
            checks.append(_flag(f"{name} sweep never exceeds pi + 5e-3", np.all(vals <= math.pi + 5e-3),
                                vals.max(), math.pi, 5e-3))
    return checks


WCO_T = tuple(round(0.1 * k, 1) for k in range(1, 10))
WCO_S = (0.3, 0.5, 0.75)


def criterion_5(seed=0):
    worst = 0.0
    for t in WCO_T:
        for s in WCO_S:
            c = wco_essnorm(t, s, "closed_form")
            r = wco_essnorm(t, s, "radial_quotient")
            worst = max(worst, abs(r - c))
    checks = [_flag("radial quotient vs closed form on the 9x3 grid", worst <= 1e-6, worst, 0.0, 1e-6)]
    for p, a in ((4, 0), (3, 0), (6, 1), (5, 0.5)):
        s = (2.0 + a) / p
        avg = integrate_01(lambda t, u: np.array([wco_essnorm(float(x), s, omt=float(y)) for x, y in zip(t, u)]),
                           (s - 1.0, -s), complement=True).value
        checks.append(_close(f"average of wco essential norms, p={p} alpha={a}", avg,
                             essnorm_formula(EssNormQuery("bergman", p, a)), 1e-8))
    return checks


def criterion_6(seed=0):
    p0 = find_p0(1e-10)
    checks = [_close("p0", p0, 2.703, 5e-3),
              _close("sup B_t(1) at p=4", sup_bt_closed_form(4.0), 0.25, 1e-12)]
    bt = bt_value(2.5, 1e-4)
    checks.append(_close("B_t(1) at p=2.5, t=1e-4 vs closed-form sup", bt.value, sup_bt_closed_form(2.5), 1e-3))
    checks.append(_flag("counterexample p=2.5, t=0.01", counterexample_check(2.5, 0.01)))
    for t in (0.01, 0.1, 0.5):
        checks.append(_flag(f"no counterexample p=2.9, t={t}", not counterexample_check(2.9, t)))
    return checks


CIRCLE_R = (0.0, 0.5, 0.9, 0.99, None)  # None stands for 1 - 2^-20
CIRCLE_Q = (1.6, 2.0, 2.5, 3.0)


def criterion_7(seed=0):
    checks = []
    bad, worst = 0, 0.0
    for r in CIRCLE_R:
        eps = 2.0**-20 if r is None else 1.0 - r
        for q in CIRCLE_Q:
            rep = lemma61_check(1.0 - eps, q, 1.5, 3.0, eps=eps)
            bad += (not rep.holds) or (not rep.exact_integral.converged)
            if q == 2.0:
                closed = 2.0 * math.pi / (eps * (2.0 - eps))
                worst = max(worst, abs(rep.exact_integral.value - closed) / closed)
    checks.append(_flag("2 m_3 <= scaled <= 4 M_1.5 on the 5x4 grid", bad == 0, bad, 0, 0))
    checks.append(_flag("q=2 Poisson closed form", worst <= 1e-8, worst, 0.0, 1e-8))
    return checks


def criterion_8(seed=0):
    checks = []
    for a in (0.25, 0.5, 0.75):
        worst = 0.0
        for t in (0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
            v = hinf_walpha_upper(t, a, check=False)
            closed = t ** (a - 1.0) * (1.0 - t) ** (-a)
            worst = max(worst, abs(v - closed) / closed)
        checks.append(_flag(f"pointwise sup, alpha={a}", worst <= 1e-8, worst, 0.0, 1e-8))
        checks.append(_close(f"integral over t, alpha={a}", hinf_walpha_norm(a).value,
                             math.pi / math.sin(a * math.pi), 1e-8))
    return checks


def criterion_9(seed=0):
    h_half = condition_audit("CUBH", alpha=0.5)
    h_one = condition_audit("CUBH", alpha=1.0)
    cuba = condition_audit("CUBA", p=4.0, alpha=0.0)
    return [
        _flag("CUBH alpha=1/2 finite", h_half.finite),
        _close("CUBH alpha=1/2 value", h_half.bound.value, math.pi, 1e-8),
        _flag("CUBH alpha=1 divergent", (not h_one.finite) and h_one.bound.diverged),
        _flag("CUBA p=4 alpha=0 finite", cuba.finite),
        _close("CUBA p=4 alpha=0 value", cuba.bound.value, beta_fn(0.25, 0.5), 1e-8),
    ]


def criterion_10(seed=0):
    checks = []
    for p in (2.0, 3.0):
        for a in (0.0, 1.0):
            w = RadialWeight.standard(a)
            norm_p = float(bergman_integral(BL_FUNCTION, p, w).value)
            g16 = brezis_lieb_gap(BL_FUNCTION, 16, p, w)
            g64 = brezis_lieb_gap(BL_FUNCTION, 64, p, w)
            checks.append(_flag(f"n=64 within 2% of ||f||^p, p={p:g} alpha={a:g}", g64 <= 0.02 * norm_p,
                                g64 / norm_p, 0.0, 0.02))
            checks.append(_flag(f"gap decreases n=16 -> 64, p={p:g} alpha={a:g}", g64 < g16, g64, g16))
    return checks


ACCEPTANCE = {
    1: ("essential-norm closed forms", criterion_1, 1.0),
    2: ("path-deformation identity", criterion_2, 5.0),
    3: ("multiplier identity", criterion_3, 30.0),
    4: ("lower-bound sweeps", criterion_4, 120.0),
    5: ("weighted-composition essential norms", criterion_5, 10.0),
    6: ("sharpness suite", criterion_6, 60.0),
    7: ("circle-integral bounds", criterion_7, 10.0),
    8: ("H-infinity chain with (1-|z|)^alpha", criterion_8, 5.0),
    9: ("condition audits", criterion_9, 5.0),
    10: ("Brezis-Lieb property", criterion_10, 60.0),
}


def criterion(k: int, seed: int = 0):
    """Run acceptance criterion ``k``; returns ``(checks, seconds, budget)``."""
    _title, fn, budget = ACCEPTANCE[k]
    start = time.perf_counter()
    checks = fn(seed)
    return checks, time.perf_counter() - start, budget


# ---------------------------------------------------------------------------
# module invariants


def suite_analytic_core(seed=0):
    rng = np.random.default_rng(seed)
    checks = []
    worst = 0.0
    for _ in range(50):
        a, b, c = rng.uniform(0.1, 5.0, 3)
        lhs = beta_fn(a, b) * beta_fn(a + b, c)
        rhs = beta_fn(b, c) * beta_fn(a, b + c)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    checks.append(_flag("beta associativity identity", worst <= 1e-12, worst, 0.0, 1e-12))
    worst = 0.0
    for _ in range(50):
        a, b = rng.uniform(0.1, 5.0, 2)
        worst = max(worst, abs(beta_fn(a, b) - gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b)) / beta_fn(a, b))
    checks.append(_flag("beta vs gamma ratio", worst <= 1e-12, worst, 0.0, 1e-12))
    f = BergmanTest(4.0, 1.0, 0.45)
    zs = _disk_points(rng, 200, 0.999)
    exact = np.all(f.value(zs, 1.0 - zs) == 2.0 ** (-0.25) * cpow(1.0 - zs, -(0.45 + 0.25)))
    checks.append(_flag("BergmanTest definition bit-for-bit", exact))
    poly = PowerSeries(rng.normal(size=9) + 1j * rng.normal(size=9))
    pts = _disk_points(rng, 9, 0.9)
    fit = PowerSeries.fit(pts, poly(pts))
    err = float(np.max(np.abs(fit.coeffs - poly.coeffs)))
    checks.append(_flag("series fit round trip", err <= 1e-10, err, 0.0, 1e-10))
    return checks


def suite_quadrature(seed=0):
    checks = []
    worst = 0.0
    grid = (-0.9, -0.5, 0.0, 0.5, 1.0)
    for a in grid:
        for b in grid:
            v = integrate_01(lambda t, s: t**a * s**b, (a, b), complement=True).value
            worst = max(worst, abs(v - beta_fn(a + 1, b + 1)) / beta_fn(a + 1, b + 1))
    checks.append(_flag("t^a (1-t)^b vs beta", worst <= 1e-9, worst, 0.0, 1e-9))

    def F(z):
        return np.abs(z) ** 2 * (1.0 + np.real(z))
    full = disk_integral(F).value
    halves = disk_integral(F, sector=(0.0, math.pi)).value + disk_integral(F, sector=(math.pi, 2 * math.pi)).value
    checks.append(_close("disk integral additive over half disks", halves, full, 1e-9))
    return checks


def suite_spaces(seed=0):
    rng = np.random.default_rng(seed)
    checks = []
    w = RadialWeight.standard(0.7)
    mass = bergman_integral(Series(PowerSeries([1.0])), 2.0, w).value
    checks.append(_close("normalized standard weight has mass 1", mass, 1.0, 1e-9))
    bad = 0
    for poly in _random_polys(rng, 4, 5):
        f = Series(poly)
        n2 = bergman_norm(f, 2.0, w).value
        n3 = bergman_norm(f, 3.0, w).value
        n4 = bergman_norm(f, 4.0, w).value
        bad += not (n2 <= n3 * (1 + 1e-9) and n3 <= n4 * (1 + 1e-9))
    checks.append(_flag("norm monotone in p", bad == 0, bad, 0, 0))
    worst = 0.0
    for poly in _random_polys(rng, 4, 12):
        h = hardy_norm(Series(poly), 2.0).value
        worst = max(worst, abs(h - math.sqrt(poly.l2_norm_sq())))
    checks.append(_flag("Parseval for hardy_norm", worst <= 1e-9, worst, 0.0, 1e-9))
    worst = 0.0
    for kind, a in (("standard", 0.5), ("boundary", 0.5)):
        wt = RadialWeight(kind, a, normalized=False)
        f = make_test_fn("bergman", p=4.0, alpha=0.0, c=0.45)
        grid_val = hinf_norm(f, wt)[0].value
        def on_ray(le):
            e = math.exp(le)
            return -float(np.abs(f.value(1.0 - e, e)) * wt.from_eps(e))
        eps = np.geomspace(1.0, 1e-12, 4000)
        k = int(np.argmin([on_ray(math.log(e)) for e in eps]))
        lo, hi = math.log(eps[min(k + 1, eps.size - 1)]), math.log(eps[max(k - 1, 0)])
        ray = -minimize_scalar(on_ray, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}).fun
        worst = max(worst, abs(grid_val - ray) / ray)
    checks.append(_flag("hinf sup equals radial sup", worst <= 1e-8, worst, 0.0, 1e-8))
    checks.extend(criterion_10(seed))
    return checks


def suite_operators(seed=0):
    rng = np.random.default_rng(seed)
    checks = list(criterion_2(seed))
    worst = 0.0
    for poly in _random_polys(rng, 4):
        image = hilbert_apply_series(poly, 4000)
        for z in (0.0, 0.3, 0.5j, -0.4 + 0.2j, 0.6):
            worst = max(worst, abs(image(z) - kernel_apply(HILBERT, Series(poly), z)))
    checks.append(_flag("matrix form vs direct integral", worst <= 1e-8, worst, 0.0, 1e-8))
    worst = 0.0
    f = Series(PowerSeries([1.0, -0.5, 0.25, 2.0]))
    for z in SAMPLE_POINTS:
        rep = kernel_apply(HILBERT, f, z, "representation")
        avg = integrate_01(lambda t, s: np.array([weighted_comp_apply("w_t", MobiusData(float(x), omt=float(y)), f, z)
                                                 for x, y in zip(t, s)]), complement=True).value
        worst = max(worst, abs(rep - avg))
    checks.append(_flag("representation is the average of w_t C_phi_t", worst <= 1e-10, worst, 0.0, 1e-10))
    bad = 0
    for t in (0.1, 0.5, 0.9):
        m = MobiusData(t)
        zs = _disk_points(rng, 10_000, 1.0 - 1e-12)
        bad += int(np.sum(np.abs(m.phi(zs) - m.center) >= m.radius + 1e-12))
    checks.append(_flag("phi_t(D) inside the image disk", bad == 0, bad, 0, 0))
    return checks


def suite_essnorm(seed=0):
    checks = list(criterion_1(seed))
    checks.extend(criterion_3(seed))
    checks.extend(criterion_4(seed))
    checks.extend(criterion_5(seed))
    for t in (0.1, 0.5, 0.9):
        rep = condition_audit("CEVA", t=t, alpha=1.0)
        checks.append(_flag(f"radial limits of T_t and weight quotient, t={t}", rep.finite,
                            rep.details["T_limit"], rep.details["T_expected"], 1e-8))
    for a, t in ((0.5, 0.25), (0.5, 0.75), (0.5, 0.5)):
        checks.append(_flag(f"sup profile alpha={a} t={t}", sup_wt_profile(t, a) > 0))
    checks.extend(criterion_9(seed))
    return checks


def suite_sharpness(seed=0):
    checks = list(criterion_6(seed))
    for p in (2.2, 2.5, 2.7, 3.0, 4.0):
        checks.append(_close(f"B_t(1) at t=1e-4 vs closed form, p={p}", bt_value(p, 1e-4).value,
                             sup_bt_closed_form(p), 1e-3))
    vals = [bt_value(2.5, t).value for t in (1e-3, 0.01, 0.1, 0.5, 0.9)]
    checks.append(_flag("B_t(1) non-increasing in t", all(b <= a for a, b in zip(vals, vals[1:]))))
    gap, _tp, _est = strict_gap(2.5)
    checks.append(_flag("strict inequality margin at p=2.5", gap >= 1e-3, gap, 1e-3))
    checks.extend(criterion_7(seed))
    checks.extend(criterion_8(seed))
    return checks


def suite_acceptance(seed=0):
    out = []
    for k in ACCEPTANCE:
        checks, _secs, _budget = criterion(k, seed)
        out.extend(Check(f"[{k}] {c.name}", c.passed, c.value, c.reference, c.tol) for c in checks)
    return out


SUITES = {
    "analytic_core": suite_analytic_core,
    "quadrature": suite_quadrature,
    "spaces": suite_spaces,
    "operators": suite_operators,
    "essnorm": suite_essnorm,
    "sharpness": suite_sharpness,
    "acceptance": suite_acceptance,
}


def run_suite(name: str, seed: int = 0):
    """Checks of one suite, or of every module suite for ``all``."""
    if name == "all":
        out = []
        for key, fn in SUITES.items():
            if key != "acceptance":
                out.extend(fn(seed))
        return out
    return SUITES[name](seed)
