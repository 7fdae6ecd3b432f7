import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hilbertlab.analytic import ClosedForm, HardyTest, PowerSeries, Series, make_test_fn
from hilbertlab.spaces import (
    RadialWeight,
    SpaceTag,
    bergman_integral,
    bergman_norm,
    brezis_lieb_gap,
    eval_functional_surrogate,
    hardy_norm,
    hinf_norm,
)
from hilbertlab.special import DomainError
from hilbertlab.verify import BL_FUNCTION

ONE = Series(PowerSeries([1.0]))
ZED = Series(PowerSeries([0.0, 1.0]))


def test_bergman_examples():
    assert bergman_norm(ONE, 2).value == pytest.approx(1.0, abs=1e-12)
    assert bergman_norm(ZED, 2).value == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert bergman_norm(ZED, 2, RadialWeight.standard(1.0)).value == pytest.approx(math.sqrt(1 / 3), abs=1e-12)


def test_bergman_singular_oracle():
    # |1-z|^(-4c) = |(1-z)^(-2c)|^2, whose coefficient sum is Gamma(2-4c)/Gamma(2-2c)^2
    c = 0.45
    f = make_test_fn("bergman", p=4, alpha=0, c=c)
    est = bergman_integral(f, 4, RadialWeight.standard(0.0))
    assert est.converged
    ref = math.gamma(2 - 4 * c) / math.gamma(2 - 2 * c) ** 2
    assert est.value == pytest.approx(ref, rel=1e-8)


def test_bergman_divergent():
    est = bergman_norm(ClosedForm("pole", lambda z, omz: omz**-0.5, 0.5), 4)
    assert est.diverged and est.value == math.inf


def test_hinf_examples():
    est, where = hinf_norm(ONE, RadialWeight.standard(0.5, normalized=False))
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert abs(where) < 1e-12
    g = ClosedForm("(1-z)^-1/2", lambda z, omz: omz**-0.5, 0.5)
    est, where = hinf_norm(g, RadialWeight.boundary(0.5))
    assert est.value == pytest.approx(1.0, abs=1e-9)
    # the profile is constant along [0, 1), so any maximiser on that ray is valid
    assert where is None or abs(where.imag) < 1e-12
    est, _ = hinf_norm(ZED, RadialWeight.unit())
    assert est.value == pytest.approx(1.0, abs=1e-12)


def test_hinf_interior_maximum():
    # |z| (1 - |z|^2) peaks at |z| = 1/sqrt(3)
    est, where = hinf_norm(ZED, RadialWeight.standard(1.0, normalized=False))
    assert est.value == pytest.approx(2 / (3 * math.sqrt(3)), rel=1e-10)
    assert abs(where) == pytest.approx(1 / math.sqrt(3), abs=1e-5)


def test_hardy_examples():
    assert hardy_norm(ONE, 2).value == pytest.approx(1.0, abs=1e-12)
    zn = Series(PowerSeries(np.eye(6)[5]))
    assert hardy_norm(zn, 4).value == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("c", [0.1, 0.3, 0.45])
def test_hardy_coefficient_oracle(c):
    # sum_n (Gamma(n+c)/(Gamma(c) n!))^2 = Gamma(1-2c)/Gamma(1-c)^2
    ref = math.sqrt(math.gamma(1 - 2 * c) / math.gamma(1 - c) ** 2)
    assert hardy_norm(HardyTest(2, c), 2).value == pytest.approx(ref, rel=1e-9)


def test_hardy_frozen_value():
    assert hardy_norm(HardyTest(2, 0.3), 2).value == pytest.approx(1.1473691917295, rel=1e-12)


def test_hardy_truncated_coefficient_sum():
    c = 0.3
    n = np.arange(1_000_000, dtype=float)
    from scipy.special import gammaln
    a = np.exp(gammaln(n + c) - gammaln(c) - gammaln(n + 1))
    partial = float(np.sum(a * a))
    tail = 1.0 / (math.gamma(c) ** 2 * (1 - 2 * c)) * 1e6 ** (2 * c - 1)  # sum n^(2c-2)/Gamma(c)^2
    assert math.sqrt(partial + tail) == pytest.approx(hardy_norm(HardyTest(2, c), 2).value, rel=1e-6)


def test_hardy_ladder_agrees():
    f = Series(PowerSeries([1.0, 0.5, 0.25]))
    ref = math.sqrt(1 + 0.25 + 0.0625)
    assert hardy_norm(f, 2, method="ladder").value == pytest.approx(ref, rel=1e-8)


def test_hardy_divergent():
    assert hardy_norm(HardyTest(2, 0.49), 4).diverged


@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=8))
@settings(max_examples=30, deadline=None)
def test_parseval(coeffs):
    c = np.array(coeffs, dtype=complex)
    f = Series(PowerSeries(c))
    ref2 = float(np.sum(np.abs(c) ** 2))
    est = hardy_norm(f, 2)
    assert est.value**2 == pytest.approx(ref2, rel=1e-9, abs=1e-12)
    # A^2 with alpha = 0: sum |a_n|^2/(n+1)
    bref = float(np.sum(np.abs(c) ** 2 / (np.arange(c.size) + 1)))
    assert bergman_norm(f, 2).value ** 2 == pytest.approx(bref, rel=1e-9, abs=1e-12)


def test_bergman_norm_increases_in_p():
    f = Series(PowerSeries([1.0, 0.7, -0.3j]))
    vals = [bergman_norm(f, p).value for p in (1.5, 2, 3, 4, 6)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_surrogate():
    assert eval_functional_surrogate(0.0, 4, 0) == 1.0
    assert eval_functional_surrogate(0.5, 4, 0) == pytest.approx(0.75**-0.5)
    with pytest.raises(DomainError):
        eval_functional_surrogate(1.0, 4, 0)
    t, p, a = 0.3, 4.0, 0.0
    for k in (10, 20, 30):
        eps = 2.0**-k
        den = t + (1 - t) * eps
        q = eval_functional_surrogate(None, p, a, eps=(1 - t) * eps / den) / eval_functional_surrogate(None, p, a, eps=eps)
        assert q == pytest.approx((t / (1 - t)) ** ((2 + a) / p), rel=2 * eps / t + 1e-12)


def test_weights():
    assert RadialWeight.standard(1.0).M == 2.0
    assert RadialWeight.boundary(1.0, normalized=True).M == 3.0
    assert RadialWeight.standard(0.5, normalized=False)(0.0) == 1.0
    with pytest.raises(DomainError):
        RadialWeight.standard(-1.0)
    with pytest.raises(DomainError):
        SpaceTag("bergman", 1.0)
    with pytest.raises(DomainError):
        SpaceTag("hinf")


def test_brezis_lieb_small_at_64():
    w = RadialWeight.standard(0.0)
    norm_p = float(bergman_integral(BL_FUNCTION, 3.0, w).value)
    g16 = brezis_lieb_gap(BL_FUNCTION, 16, 3.0, w)
    g64 = brezis_lieb_gap(BL_FUNCTION, 64, 3.0, w)
    assert g64 < g16
    assert g64 <= 0.02 * norm_p


def test_brezis_lieb_exact_for_p2():
    # at p = 2 the cross term is 2 Re <f, z^n> = 2 a_n/(n+1); for f = 1 it vanishes
    w = RadialWeight.standard(0.0)
    assert brezis_lieb_gap(ONE, 8, 2.0, w) == pytest.approx(0.0, abs=1e-12)
