import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hilbertlab.analytic import ClosedForm
from hilbertlab.quadrature import (
    DEFAULT_CONFIG,
    NormEstimate,
    QuadConfig,
    QuadratureError,
    circle_integral,
    disk_integral,
    integrate_01,
    integrate_interval,
)
from hilbertlab.special import beta_fn

POLE = ClosedForm("1/(1-z)", lambda z, omz: 1.0 / omz, 1.0, boundary_ok=False)


def test_integrate_01_examples():
    est = integrate_01(lambda t, s: (t * s) ** -0.5, (-0.5, -0.5), complement=True)
    assert est.converged
    assert abs(est.value - math.pi) <= 1e-10
    est = integrate_01(lambda t, s: t**-0.5 * s**-0.5, (-0.5, -0.5), complement=True)
    assert abs(est.value - math.pi) <= 1e-10
    assert abs(integrate_01(lambda t: np.ones_like(t)).value - 1.0) <= 1e-14


@pytest.mark.parametrize("a", [0.05, 0.3, 0.5, 0.9, 1.5, 4.0])
@pytest.mark.parametrize("b", [0.05, 0.25, 0.75, 2.0])
def test_integrate_01_beta_grid(a, b):
    est = integrate_01(lambda t, s: t ** (a - 1) * s ** (b - 1), (a - 1, b - 1), complement=True)
    assert est.converged
    assert est.value == pytest.approx(beta_fn(a, b), rel=1e-9)


def test_integrate_01_divergent_flag():
    est = integrate_01(lambda t: 1.0 / t, (-1.0, 0.0))
    assert est.diverged and est.value == math.inf
    assert est.require() is est


def test_require_raises():
    with pytest.raises(QuadratureError):
        NormEstimate(1.0, 1.0, False, 1).require()


def test_integrate_interval_complex():
    est = integrate_interval(lambda x: np.exp(1j * x), 0.0, math.pi)
    assert abs(est.value - 2j) <= 1e-12


@given(st.floats(0.1, 3.0), st.floats(0.1, 3.0))
@settings(max_examples=40, deadline=None)
def test_beta_integral_property(a, b):
    est = integrate_01(lambda t, s: t ** (a - 1) * s ** (b - 1), (a - 1, b - 1), complement=True)
    assert est.value == pytest.approx(beta_fn(a, b), rel=1e-8)


def test_disk_examples():
    assert disk_integral(lambda z: np.ones(np.shape(z))).value == pytest.approx(1.0, abs=1e-12)
    assert disk_integral(lambda z: np.abs(z) ** 2).value == pytest.approx(0.5, abs=1e-12)
    # weight (1 - |z|^2)^beta integrates to 1/(beta + 1)
    est = disk_integral(lambda z: np.ones(np.shape(z)), boundary_power=0.5)
    assert est.value == pytest.approx(1.0 / 1.5, rel=1e-12)


def test_disk_singular_power_closed_form():
    p = 2.5
    est = disk_integral(lambda z: np.ones(np.shape(z)), 0.5, 0.5, singular_point=0j, singular_power=p - 4)
    assert est.converged
    assert est.value == pytest.approx(beta_fn(0.75, 0.5) / (math.pi * 0.5), rel=1e-9)


def test_disk_singular_interior_point():
    # int |z - 0.3|^(-1) over the unit disk equals int |z|^(-1) over the disk shifted; check against polar
    est = disk_integral(lambda z: np.ones(np.shape(z)), 0j, 1.0, singular_point=0j, singular_power=-1.0)
    assert est.value == pytest.approx(2.0, rel=1e-10)


def test_circle_examples():
    assert circle_integral(lambda z, omz: np.ones(np.shape(z)), r=0.7, q=1).value == pytest.approx(2 * math.pi)
    assert circle_integral(POLE, r=0.5, q=2).value == pytest.approx(8 * math.pi / 3, rel=1e-10)
    assert circle_integral(POLE, r=0.9, q=2).value == pytest.approx(2 * math.pi / 0.19, rel=1e-10)


@pytest.mark.parametrize("k", [5, 15, 30])
def test_circle_near_boundary(k):
    eps = 2.0**-k
    r = 1.0 - eps
    est = circle_integral(POLE, q=2, eps=eps, singular=-1.0)
    assert est.value == pytest.approx(2 * math.pi / (eps * (1.0 + r)), rel=1e-8)


def test_config_from_file(tmp_path):
    path = tmp_path / "q.cfg"
    path.write_text("# settings\nabs_tol = 1e-12\nmax_level = 9  # fewer levels\n")
    cfg = QuadConfig.from_file(path)
    assert cfg.abs_tol == 1e-12 and cfg.max_level == 9
    assert cfg.rel_tol == DEFAULT_CONFIG.rel_tol
    path.write_text("bogus = 1\n")
    with pytest.raises(ValueError):
        QuadConfig.from_file(path)
    with pytest.raises(ValueError):
        QuadConfig(max_level=2)
