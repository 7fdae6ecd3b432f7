"""Numerical integration on (0, 1), over disks and over circles.

The one-dimensional workhorse is the tanh-sinh (double-exponential) rule on
``(0, 1)``.  Its nodes are produced together with their exact complements
``1 - t``, so integrands with endpoint singularities ``t^a (1 - t)^b``
(``a, b > -1``) are integrated to near machine precision without ever
forming ``1 - t`` by subtraction.

Disk integrals use one of two product schemes.  Without a singular point,
polar coordinates about the disk centre with a Gauss-Jacobi radial rule
absorb a (possibly fractional) power of the distance to the boundary
circle.  With a singular point, polar coordinates about that point
put the singularity at ``rho = 0`` where the factor ``rho`` of the area
element tames it, and double-exponential rules in both variables handle
the remaining endpoint behaviour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .special import DomainError

__all__ = [
    "QuadConfig",
    "NormEstimate",
    "QuadratureError",
    "de_rule",
    "integrate_01",
    "integrate_01_batch",
    "integrate_interval",
    "disk_integral",
    "circle_integral",
]

_U_MAX = 6.0  # |u| cut-off of the tanh-sinh parametrisation, t ~ 1e-275 there


class QuadratureError(RuntimeError):
    """A rule failed to meet its tolerance within the configured budget."""


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances and resolution limits shared by all integrators."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_level: int = 12
    angular_points: int = 512
    radial_points: int = 256

    def __post_init__(self):
        if not (self.abs_tol >= 0 and self.rel_tol >= 0):
            raise ValueError("tolerances must be non-negative")
        if self.max_level < 3:
            raise ValueError("max_level must be at least 3")
        if self.angular_points < 8 or self.radial_points < 8:
            raise ValueError("angular_points and radial_points must be at least 8")

    def tol(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def with_(self, **changes) -> "QuadConfig":
        return replace(self, **changes)

    @classmethod
    def from_mapping(cls, mapping) -> "QuadConfig":
        known = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for key, raw in mapping.items():
            if key not in known:
                raise ValueError(f"unknown quadrature setting {key!r}")
            kwargs[key] = int(raw) if key in ("max_level", "angular_points", "radial_points") else float(raw)
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path) -> "QuadConfig":
        """Read ``key = value`` lines; ``#`` starts a comment."""
        mapping = {}
        for line in Path(path).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            mapping[key] = value
        return cls.from_mapping(mapping)


DEFAULT_CONFIG = QuadConfig()


@dataclass(frozen=True)
class NormEstimate:
    """A numerically computed quantity with its error estimate."""

    value: float | complex
    err: float
    converged: bool
    evaluations: int
    diverged: bool = False

    def __float__(self) -> float:
        return float(np.real(self.value))

    def require(self) -> "NormEstimate":
        """Return self, raising ``QuadratureError`` if not converged."""
        if self.diverged:
            return self
        if not self.converged:
            raise QuadratureError(
                f"integration did not converge (value={self.value!r}, err={self.err:.3g})"
            )
        return self


def _diverged() -> NormEstimate:
    return NormEstimate(math.inf, math.inf, False, 0, diverged=True)


# ---------------------------------------------------------------------------
# tanh-sinh on (0, 1)


@lru_cache(maxsize=64)
def _de_nodes(level: int, odd_only: bool):
    h = 2.0 ** (-level)
    kmax = int(math.ceil(_U_MAX / h))
    k = np.arange(-kmax, kmax + 1)
    if odd_only:
        k = k[k % 2 != 0]
    u = k * h
    x = math.pi * np.sinh(u)
    t = 1.0 / (1.0 + np.exp(-x))
    s = 1.0 / (1.0 + np.exp(x))
    w = h * math.pi * np.cosh(u) * t * s
    keep = (t > 0) & (s > 0) & (w > 0)
    out = (t[keep], s[keep], w[keep])
    for a in out:
        a.setflags(write=False)
    return out


def de_rule(level: int):
    """Full tanh-sinh rule on (0, 1) with step ``2^-level``.

    Returns ``(t, s, w)`` with ``s = 1 - t`` to full relative precision.
    """
    return _de_nodes(int(level), False)


def _finite(vals) -> bool:
    return bool(np.all(np.isfinite(vals)))


def integrate_01(f, hints=(0.0, 0.0), cfg: QuadConfig | None = None, *, complement=False,
                 min_level: int = 3) -> NormEstimate:
    """Integrate ``f`` over ``(0, 1)`` with the tanh-sinh rule.

    Parameters
    ----------
    f : callable
        Vectorised integrand, called as ``f(t)`` or, with ``complement=True``,
        as ``f(t, s)`` where ``s = 1 - t`` exactly.  Complex values are fine.
    hints : (a, b)
        Endpoint exponents, ``f ~ t^a`` at 0 and ``(1 - t)^b`` at 1.  An
        exponent ``<= -1`` means the integral diverges and no nodes are
        evaluated.
    """
    cfg = cfg or DEFAULT_CONFIG
    a, b = hints
    if a <= -1.0 or b <= -1.0:
        return _diverged()

    def call(t, s):
        return np.asarray(f(t, s) if complement else f(t))

    t, s, w = _de_nodes(0, False)
    vals = call(t, s)
    evals = t.size
    if not _finite(vals):
        return NormEstimate(math.nan, math.inf, False, evals)
    f_lo, f_hi = vals.ravel()[0], vals.ravel()[-1]  # nodes at u = -U_MAX and +U_MAX
    total = np.sum(w * vals)
    prev = total + _tails(f_lo, f_hi, a, b, 0)
    err = math.inf
    for level in range(1, cfg.max_level + 1):
        t, s, w = _de_nodes(level, True)
        vals = call(t, s)
        evals += t.size
        if not _finite(vals):
            return NormEstimate(_clean(prev), math.inf, False, evals)
        total = 0.5 * total + np.sum(w * vals)
        cur = total + _tails(f_lo, f_hi, a, b, level)
        err = float(abs(cur - prev))
        prev = cur
        if level >= min_level and err <= cfg.tol(cur):
            return NormEstimate(_clean(cur), err, True, evals)
    return NormEstimate(_clean(prev), err, False, evals)


def _tails(f_lo, f_hi, a, b, level):
    """End correction for declared endpoint powers ``t^a``, ``(1-t)^b``.

    The rule is a trapezoid sum in the tanh-sinh variable cut at
    ``|u| = _U_MAX``; the outermost node keeps half its weight and the mass
    beyond it is added in closed form with the regular part frozen there.
    Negligible unless an exponent is close to -1.
    """
    t, s, _ = _de_nodes(0, False)
    edge = 2.0 ** (-level) * math.pi * math.cosh(_U_MAX) * t[0] * s[0]  # same at both ends
    extra = 0.0
    if a != 0.0:
        extra += f_lo * (t[0] / (1.0 + a) - 0.5 * edge)
    if b != 0.0:
        extra += f_hi * (s[-1] / (1.0 + b) - 0.5 * edge)
    return extra


def integrate_01_batch(f, hints=(0.0, 0.0), cfg: QuadConfig | None = None, *,
                       min_level: int = 3, max_level: int | None = None):
    """Vectorised tanh-sinh integration of a family of integrands.

    ``f(t, s)`` receives node arrays of shape ``(1, n)`` and returns an array
    of shape ``(m, n)``, one row per integrand.  Refinement stops once every
    row meets the tolerance.  Returns ``(values, errors, converged)``.
    """
    cfg = cfg or DEFAULT_CONFIG
    a, b = hints
    if a <= -1.0 or b <= -1.0:
        raise ValueError("non-integrable endpoint exponent")
    top = cfg.max_level if max_level is None else max_level
    t, s, w = _de_nodes(0, False)
    vals = np.asarray(f(t[None, :], s[None, :]))
    f_lo, f_hi = vals[:, 0], vals[:, -1]
    total = vals @ w
    prev = total + _tails(f_lo, f_hi, a, b, 0)
    err = np.full(total.shape, np.inf)
    for level in range(1, top + 1):
        t, s, w = _de_nodes(level, True)
        total = 0.5 * total + np.asarray(f(t[None, :], s[None, :])) @ w
        cur = total + _tails(f_lo, f_hi, a, b, level)
        err = np.abs(cur - prev)
        prev = cur
        ok = bool(np.all(err <= np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(cur))))
        if level >= min_level and ok:
            return cur, err, True
    return prev, err, ok


def _clean(x):
    x = complex(x)
    return x.real if x.imag == 0.0 else x


def integrate_interval(f, lo: float, hi: float, hints=(0.0, 0.0), cfg=None, *,
                       complement=False) -> NormEstimate:
    """Integrate over ``(lo, hi)``; with ``complement`` ``f`` gets ``(x, hi - x)``."""
    span = hi - lo
    if complement:
        g = lambda t, s: span * np.asarray(f(lo + span * t, span * s))
    else:
        g = lambda t, s: span * np.asarray(f(lo + span * t))
    est = integrate_01(g, hints, cfg, complement=True)
    return est


# ---------------------------------------------------------------------------
# disk integrals


@lru_cache(maxsize=64)
def _jacobi01(n: int, beta: float):
    # nodes/weights for int_0^1 g(y) (1 - y)^beta dy
    x, w = roots_jacobi(n, beta, 0.0)
    return (1.0 + x) / 2.0, (1.0 - x) / 2.0, w * 2.0 ** (-beta - 1.0)


@lru_cache(maxsize=64)
def _legendre01(n: int):
    x, w = roots_legendre(n)
    return (1.0 + x) / 2.0, (1.0 - x) / 2.0, w / 2.0


def _check_disk(center, radius):
    if not radius > 0:
        raise DomainError("disk radius must be positive")
    if abs(center) + radius > 1.0 + 1e-14:
        raise DomainError("disk must be contained in the closed unit disk")


def _centred(F, c, R, beta, n_r, n_t, sector, radial_range, pass_offset):
    # radial variable x = r / R with weight (1 - x^2)^beta = (1 - x)^beta (1 + x)^beta
    x0, x1 = radial_range[0] / R, radial_range[1] / R
    if x1 >= 1.0:
        y, ys, wy = _jacobi01(n_r, float(beta))
        x = x0 + (1.0 - x0) * y
        omx = (1.0 - x0) * ys
        wx = wy * (1.0 - x0) ** (1.0 + beta)
    else:
        y, ys, wy = _legendre01(n_r)
        x = x0 + (x1 - x0) * y
        omx = 1.0 - x
        wx = wy * (x1 - x0) * omx**beta
    wx = wx * (1.0 + x) ** beta * x
    th0, th1 = sector
    if np.isclose(th1 - th0, 2.0 * math.pi, rtol=0, atol=1e-15):
        th = th0 + 2.0 * math.pi * np.arange(n_t) / n_t
        wt = np.full(n_t, 2.0 * math.pi / n_t)
    else:
        g, gs, wg = _legendre01(n_t)
        th = th0 + (th1 - th0) * g
        wt = wg * (th1 - th0)
    offs = R * x[:, None] * np.exp(1j * th)[None, :]
    z = c + offs
    vals = F(z, offs) if pass_offset else F(z)
    # dA = R^2 x dx dtheta, normalised by pi
    total = np.sum(wx[:, None] * wt[None, :] * vals) * R * R / math.pi
    return total, x.size * th.size


def _mirror_de(level, half_width):
    # symmetric DE nodes on (-hw, hw), given by offsets phi = hw * (1 - s) and the exact
    # distance to the endpoint hw * s
    t, s, w = _de_nodes(level, False)
    # use t in (0,1) for phi in (0, hw), mirrored
    phi = np.concatenate([-half_width * t[::-1], half_width * t])
    gap = np.concatenate([half_width * s[::-1], half_width * s])  # hw - |phi|
    wt = np.concatenate([w[::-1], w]) * half_width
    return phi, gap, wt


def _singular_scheme(F, c, R, beta, sp, level, pass_offset, sigma=0.0):
    """Polar coordinates about ``sp``; returns (sum, evaluations).

    The integrand is ``F(z) |z - sp|^sigma (1 - |z - c|^2/R^2)^beta``.  When
    ``sp`` lies in the closed disk every ray starts at ``rho = 0`` and the
    power ``rho^gamma`` collected there (area element, ``sigma`` and, on the
    boundary circle, the vanishing part of the boundary weight) is removed
    by the substitution ``rho = rho_hi * tau^(1/(gamma+1))``.
    """
    rel = c - sp  # vector from singular point to centre
    d = abs(rel)
    psi0 = math.atan2(rel.imag, rel.real) if d > 0 else 0.0
    tr, ts, tw = _de_nodes(level, False)
    gapR = d - R
    on_boundary = abs(gapR) <= 1e-13 * R
    if d < R or on_boundary:
        if on_boundary:
            hw = 0.5 * math.pi
            phi, gphi, wpsi = _mirror_de(level, hw)
            psi = psi0 + phi
            rho_hi = 2.0 * R * np.sin(gphi)  # chord length 2R cos(phi)
            rho_back = None
        else:
            n = 12 * 2**level
            psi = 2.0 * math.pi * np.arange(n) / n
            wpsi = np.full(n, 2.0 * math.pi / n)
            bcoef = -d * np.cos(psi - psi0)  # Re((sp - c) e^{-i psi})
            D = (d - R) * (d + R)  # negative
            disc = np.sqrt(bcoef * bcoef - D)
            rho_hi = np.where(bcoef > 0, -D / (bcoef + disc), disc - bcoef)
            rho_back = D / rho_hi  # the negative root behind sp
        gamma = 1.0 + sigma + (beta if on_boundary else 0.0)
        kappa = 1.0 / (gamma + 1.0)
        with np.errstate(divide="ignore"):
            log_tau = np.where(tr < 0.5, np.log(tr), np.log1p(-ts))
        # rho / rho_hi; clamped so that the regular part is sampled just off
        # the singular point instead of at an underflowed offset
        frac = np.maximum(np.exp(kappa * log_tau), 1e-100)
        rho = rho_hi[:, None] * frac[None, :]
        weight = (wpsi * rho_hi ** (gamma + 1.0) / (gamma + 1.0))[:, None] * tw[None, :]
        if beta != 0.0:
            upper = rho_hi[:, None] * (-np.expm1(kappa * log_tau))[None, :]  # rho_hi - rho
            if on_boundary:
                weight = weight * (upper / (R * R)) ** beta
            else:
                weight = weight * ((rho - rho_back[:, None]) * upper / (R * R)) ** beta
    else:
        hw = math.asin(R / d)
        phi, gphi, wpsi = _mirror_de(level, hw)
        aphi = np.abs(phi)
        # R^2 - d^2 sin^2 = (R - d sin|phi|)(R + d sin|phi|)
        lo_fac = 2.0 * d * np.cos(0.5 * (hw + aphi)) * np.sin(0.5 * gphi)
        q = np.sqrt(lo_fac * (R + d * np.sin(aphi)))
        rho_hi = d * np.cos(phi) + q
        rho_lo = gapR * (d + R) / rho_hi
        length = 2.0 * q
        psi = psi0 + phi
        rho = rho_lo[:, None] + length[:, None] * tr[None, :]
        weight = wpsi[:, None] * length[:, None] * tw[None, :] * rho ** (1.0 + sigma)
        if beta != 0.0:
            gaps = length[:, None] ** 2 * (tr * ts)[None, :]  # (rho - rho_lo)(rho_hi - rho)
            weight = weight * (gaps / (R * R)) ** beta
    offs = rho * np.exp(1j * psi)[:, None]
    z = sp + offs
    # nodes whose weight or offset underflows carry no mass and are skipped
    mask = (weight > 0.0) & (rho > 0.0)
    z, offs, weight = z[mask], offs[mask], weight[mask]
    vals = F(z, offs) if pass_offset else F(z)
    return np.sum(weight * vals) / math.pi, z.size


def disk_integral(F, center=0j, radius=1.0, cfg: QuadConfig | None = None, *,
                  singular_point=None, boundary_power: float = 0.0,
                  sector=(0.0, 2.0 * math.pi), radial_range=None,
                  pass_offset: bool = False, singular_power: float = 0.0,
                  levels=(2, 7)) -> NormEstimate:
    """``(1/pi) * int_D F(z) (1 - |z - c|^2/R^2)^beta dA(z)`` over ``D = D(c, R)``.

    Parameters
    ----------
    F : callable
        Vectorised integrand ``F(z)``; with ``pass_offset`` it is called as
        ``F(z, z - z0)`` where ``z0`` is the singular point (or the centre),
        the offset being known to full relative precision.
    singular_point : complex, optional
        Point (inside, on the boundary or outside the disk) where ``F`` is
        singular.  Selects the polar scheme about that point.
    singular_power : float
        With a singular point ``z0`` the integrand is ``F(z) |z - z0|^sigma``;
        the power is applied analytically, so ``F`` only carries the regular
        part and strong singularities (``sigma`` close to ``-2``) stay exact.
    boundary_power : float
        Exponent ``beta > -1`` of the distance-to-boundary weight.
    sector, radial_range
        Restrict the centred scheme to an annular sector about the centre.

    The estimate is refined by doubling the resolution until two successive
    values agree to ``max(abs_tol, rel_tol * |value|)``.
    """
    cfg = cfg or DEFAULT_CONFIG
    c = complex(center)
    R = float(radius)
    _check_disk(c, R)
    if boundary_power <= -1.0:
        return _diverged()
    evals = 0
    if singular_point is None:
        rr = (0.0, R) if radial_range is None else tuple(map(float, radial_range))
        if not 0.0 <= rr[0] < rr[1] <= R:
            raise DomainError("radial_range must satisfy 0 <= r0 < r1 <= radius")
        n_r, n_t = max(cfg.radial_points // 8, 8), max(cfg.angular_points // 8, 8)
        prev, e = _centred(F, c, R, boundary_power, n_r, n_t, sector, rr, pass_offset)
        evals += e
        err = math.inf
        while n_r < cfg.radial_points or n_t < cfg.angular_points:
            n_r, n_t = min(2 * n_r, cfg.radial_points), min(2 * n_t, cfg.angular_points)
            cur, e = _centred(F, c, R, boundary_power, n_r, n_t, sector, rr, pass_offset)
            evals += e
            err = float(abs(cur - prev))
            prev = cur
            if not np.isfinite(cur):
                return NormEstimate(_clean(cur), math.inf, False, evals)
            if err <= cfg.tol(cur):
                return NormEstimate(_clean(cur), err, True, evals)
        return NormEstimate(_clean(prev), err, err <= cfg.tol(prev), evals)
    if radial_range is not None or sector != (0.0, 2.0 * math.pi):
        raise ValueError("sector/radial_range are only supported without a singular point")
    sp = complex(singular_point)
    dist = abs(c - sp)
    if dist <= R * (1.0 + 1e-13):
        on_b = abs(dist - R) <= 1e-13 * R
        if singular_power + (boundary_power if on_b else 0.0) <= -2.0:
            return _diverged()
    lmin, lmax = levels
    prev, e = _singular_scheme(F, c, R, boundary_power, sp, lmin, pass_offset, singular_power)
    evals += e
    err = math.inf
    for level in range(lmin + 1, lmax + 1):
        cur, e = _singular_scheme(F, c, R, boundary_power, sp, level, pass_offset, singular_power)
        evals += e
        if not np.isfinite(cur):
            return NormEstimate(_clean(cur), math.inf, False, evals)
        err = float(abs(cur - prev))
        prev = cur
        if err <= cfg.tol(cur):
            return NormEstimate(_clean(cur), err, True, evals)
    return NormEstimate(_clean(prev), err, False, evals)


# ---------------------------------------------------------------------------
# circle integrals


def _circle_value(f, r, eps, theta, half):
    # points r e^{i theta} with exact 1 - z = eps + r (1 - e^{i theta})
    z = r * np.exp(1j * theta)
    sh, ch = np.sin(half), np.cos(half)
    omz = eps + r * (2.0 * sh * (sh - 1j * ch))
    if callable(getattr(f, "value", None)):
        return f.value(z, omz)
    return f(z, omz)


def circle_integral(f, r=None, q: float = 2.0, cfg: QuadConfig | None = None, *,
                    eps=None, singular=None, boundary: bool = False) -> NormEstimate:
    """``int_0^{2 pi} |f(r e^{i theta})|^q d theta``.

    ``f`` is an ``AnalyticFn`` or a callable ``f(z, omz)``.  The radius can be
    given as ``r`` or through ``eps = 1 - r`` (exact).  When ``f`` is
    singular at 1 the angle is graded towards 0 by a mirrored
    double-exponential rule; otherwise the periodic trapezoid rule is used.
    ``boundary=True`` admits ``r = 1`` for functions integrable there.
    """
    cfg = cfg or DEFAULT_CONFIG
    if eps is None:
        if r is None:
            raise ValueError("give r or eps")
        r = float(r)
        eps = 1.0 - r
    else:
        eps = float(eps)
        r = 1.0 - eps
    if not (0.0 <= r <= 1.0) or (r == 1.0 and not boundary):
        raise DomainError("circle_integral needs 0 <= r < 1")
    if singular is None:
        singular = getattr(f, "singular_exponent", None) is not None
    if singular and r > 0.0:
        def g(t, s):
            theta = math.pi * t
            half = 0.5 * theta
            v = np.abs(_circle_value(f, r, eps, theta, half)) ** q
            v2 = np.abs(_circle_value(f, r, eps, -theta, -half)) ** q
            return math.pi * (v + v2)
        expo = getattr(f, "singular_exponent", 0.0) or 0.0
        hint = -q * expo if eps == 0.0 else 0.0
        return integrate_01(g, (hint, 0.0), cfg, complement=True)
    n = 64
    theta = 2.0 * math.pi * np.arange(n) / n
    prev = np.mean(np.abs(_circle_value(f, r, eps, theta, 0.5 * theta)) ** q) * 2.0 * math.pi
    evals = n
    err = math.inf
    while n < cfg.angular_points * 64:
        theta = math.pi / n + 2.0 * math.pi * np.arange(n) / n  # midpoints of the previous grid
        new = np.mean(np.abs(_circle_value(f, r, eps, theta, 0.5 * theta)) ** q) * 2.0 * math.pi
        evals += n
        cur = 0.5 * (prev + new)
        n *= 2
        err = abs(cur - prev)
        prev = cur
        if n >= 256 and err <= cfg.tol(cur):
            return NormEstimate(float(cur), float(err), True, evals)
    return NormEstimate(float(prev), float(err), False, evals)
