import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hilbertlab.analytic import ClosedForm, PowerSeries, Series
from hilbertlab.limits import radial_limit
from hilbertlab.operators import (
    HILBERT,
    KernelSpec,
    MobiusData,
    hilbert_apply_series,
    kernel_apply,
    mobius_family,
    weighted_comp_apply,
)
from hilbertlab.special import DomainError

ONE = Series(PowerSeries([1.0]))
ID = Series(PowerSeries([0.0, 1.0]))


def test_mobius_examples():
    m = mobius_family(0.5)
    assert m.phi(0.0) == pytest.approx(0.5)
    assert m.angular_derivative == pytest.approx(1.0)
    assert m.center == pytest.approx(2 / 3) and m.radius == pytest.approx(1 / 3)
    assert mobius_family(0.25).angular_derivative == pytest.approx(3.0)
    assert m.T(0.0) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        mobius_family(1.0)


@given(st.floats(0.01, 0.99), st.floats(0, 2 * math.pi))
@settings(max_examples=100, deadline=None)
def test_image_disk(t, th):
    m = mobius_family(t)
    w = m.phi(np.exp(1j * th) * (1 - 1e-12))
    assert abs(abs(w - m.center) - m.radius) <= 1e-9


def test_transfer_equals_weight():
    m = mobius_family(0.3)
    z = np.array([0.0, 0.5, -0.2 + 0.7j])
    assert np.allclose(m.T(z), m.w(z), rtol=1e-15)
    generic = KernelSpec("hilbert-generic", HILBERT.K)
    g = MobiusData(0.3, generic)
    assert np.allclose(g.T(z), m.w(z), rtol=1e-13)


def test_hilbert_series_examples():
    n = np.arange(10)
    assert np.allclose(hilbert_apply_series(PowerSeries([1.0]), 9).coeffs, 1 / (n + 1))
    assert np.allclose(hilbert_apply_series(PowerSeries([0.0, 1.0]), 9).coeffs, 1 / (n + 2))
    assert np.allclose(hilbert_apply_series(PowerSeries([1.0, 1.0]), 9).coeffs, 1 / (n + 1) + 1 / (n + 2))


def test_kernel_apply_examples():
    assert kernel_apply(HILBERT, ONE, 0.0) == pytest.approx(1.0, abs=1e-14)
    assert kernel_apply(HILBERT, ONE, 0.5) == pytest.approx(2 * math.log(2), abs=1e-12)
    f = ClosedForm("(1-x)^-0.4", lambda z, omz: omz**-0.4, 0.4)
    assert kernel_apply(HILBERT, f, 0.0) == pytest.approx(1 / 0.6, abs=1e-10)
    with pytest.raises(DomainError):
        kernel_apply(HILBERT, ONE, 1.0)
    with pytest.raises(ValueError):
        kernel_apply(HILBERT, ONE, 0.0, form="bogus")


@pytest.mark.parametrize("z", [0.3, 0.5j, -0.4 + 0.2j, 0.9, 0.99])
def test_kernel_apply_matrix_agrees(z):
    f = PowerSeries([1.0, -0.5, 0.25j, 0.1])
    series = hilbert_apply_series(f, 4000)
    ref = complex(series(z))
    for form in ("direct", "representation"):
        assert abs(kernel_apply(HILBERT, f, z, form) - ref) <= 1e-8 * (1 if abs(z) < 0.95 else 1e3)


def test_log_closed_form():
    for z in (0.2, -0.5, 0.3 + 0.6j):
        ref = -cmath.log(1 - z) / z
        assert abs(kernel_apply(HILBERT, ONE, z, "representation") - ref) <= 1e-12


def test_weighted_comp_examples():
    m = mobius_family(0.5)
    assert weighted_comp_apply("w_t", m, ONE, 0.0) == pytest.approx(1.0)
    assert weighted_comp_apply("w_t", m, ID, 0.0) == pytest.approx(0.5)
    q = mobius_family(0.25)
    lim, _ = radial_limit(lambda e: weighted_comp_apply("w_t", q, ONE, 1 - e, omz=e).real, 0.5, 20)
    assert lim == pytest.approx(4.0, abs=1e-9)
    at = weighted_comp_apply("w_t", q, ONE, 1 - 2.0**-20, omz=2.0**-20)
    assert at.real == pytest.approx(4.0, rel=1e-5)
    with pytest.raises(ValueError):
        weighted_comp_apply("w_t", lambda z: z / 2, ONE, 0.0)


def test_hilbert_series_default_degree():
    assert hilbert_apply_series(PowerSeries([1.0])).degree == 2048
