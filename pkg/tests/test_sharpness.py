import math

import numpy as np
import pytest

from hilbertlab.analytic import ParameterRangeError
from hilbertlab.sharpness import (
    M_bound,
    bt_report,
    bt_value,
    certificate,
    counterexample_check,
    find_p0,
    h_function,
    hinf_walpha_norm,
    hinf_walpha_profile,
    hinf_walpha_upper,
    lemma61_check,
    m_bound,
    strict_gap,
    sup_bt_closed_form,
)
from hilbertlab.special import beta_fn

# B_t(1) cross-checked against an independent arbitrary-precision polar integration
BT_ORACLE = [
    (2.5, 0.01, 1.296901162313386),
    (2.5, 0.1, 0.850951331598388),
    (2.5, 0.5, 0.22065922438070942),
    (2.9, 0.01, 0.698725415460776),
    (3.0, 0.3, 0.3103388047665601),
]


@pytest.mark.parametrize("p,t,ref", BT_ORACLE)
def test_bt_oracle(p, t, ref):
    est = bt_value(p, t)
    assert est.converged
    assert est.value == pytest.approx(ref, rel=1e-10)


def test_bt_p4_is_area():
    # at p = 4 the weight is 1 and B_t(1) is the normalised area of the image disk
    for t in (0.01, 0.5):
        r = (1 - t) / (2 - t)
        assert bt_value(4.0, t).value == pytest.approx(r * r, rel=1e-12)


def test_bt_in_range_and_monotone():
    vals = [bt_value(2.5, t).value for t in (0.5, 0.1, 0.01, 0.001)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert 1.0 < vals[2] < sup_bt_closed_form(2.5)


def test_sup_closed_form():
    assert sup_bt_closed_form(2.5) == pytest.approx(beta_fn(0.75, 0.5) / (0.5 * math.pi), rel=1e-14)
    assert sup_bt_closed_form(2.5) == pytest.approx(1.52551952700363, rel=1e-12)
    assert abs(sup_bt_closed_form(4.0) - 0.25) <= 1e-12
    assert sup_bt_closed_form(2.0) == math.inf
    with pytest.raises(ParameterRangeError):
        bt_value(2.0, 0.5)


def test_p0():
    p0 = find_p0(1e-10)
    assert abs(p0 - 2.703) <= 5e-3
    assert abs(h_function(p0)) <= 1e-9
    assert p0 == pytest.approx(2.70342334265297, abs=1e-9)


def test_counterexamples():
    assert counterexample_check(2.5, 0.01)
    assert not counterexample_check(2.5, 0.9)
    for t in (0.01, 0.1, 0.5):
        assert not counterexample_check(2.9, t)
    rep = bt_report(2.5, 0.01)
    assert rep.exceeds_one and rep.closed_form_sup == sup_bt_closed_form(2.5)


def test_certificate_beats_essential_norm():
    from hilbertlab.essnorm import wco_essnorm
    assert certificate(2.5, 0.01) > wco_essnorm(0.01, 0.8)


def test_strict_gap_frozen():
    gap, tp, est = strict_gap(2.5)
    assert est.converged
    assert tp == pytest.approx(0.057789486390016395, rel=1e-7)
    assert gap == pytest.approx(0.009350933886489965, rel=1e-6)
    assert gap > 1e-3
    assert bt_value(2.5, tp).value == pytest.approx(1.0, abs=1e-8)


def test_circle_bounds_examples():
    rep = lemma61_check(0.5, 2.0, 1.5, 3.0)
    assert rep.exact_integral.value == pytest.approx(8 * math.pi / 3, rel=1e-10)
    assert rep.scaled == pytest.approx(4 * math.pi / 3, rel=1e-10)
    rep = lemma61_check(0.0, 2.0, 1.5, 3.0)
    assert rep.scaled == pytest.approx(2 * math.pi, rel=1e-12)
    rep = lemma61_check(0.99, 2.5, 1.5, 3.0)
    assert rep.holds
    assert rep.lower == pytest.approx(2 * m_bound(3.0)) and rep.lower == pytest.approx(2.0)
    assert rep.upper == pytest.approx(4 * M_bound(1.5))
    with pytest.raises(ParameterRangeError):
        lemma61_check(0.5, 4.0, 1.5, 3.0)


@pytest.mark.parametrize("k", [20, 30])
def test_circle_bounds_near_boundary(k):
    eps = 2.0**-k
    rep = lemma61_check(1 - eps, 2.0, 1.5, 3.0, eps=eps)
    assert rep.exact_integral.converged
    assert rep.exact_integral.value == pytest.approx(2 * math.pi / (eps * (2 - eps)), rel=1e-8)


def test_hinf_walpha_examples():
    assert hinf_walpha_upper(0.5, 0.5) == pytest.approx(2.0, rel=1e-10)
    assert hinf_walpha_upper(0.3, 0.25) == pytest.approx(2.69702237190074, rel=1e-10)
    assert hinf_walpha_norm(0.5).value == pytest.approx(math.pi, rel=1e-8)
    eps = np.geomspace(1e-12, 1, 7)
    prof = hinf_walpha_profile(0.3, 0.25, eps)
    assert np.all(prof <= hinf_walpha_upper(0.3, 0.25) * (1 + 1e-14))
    with pytest.raises(ParameterRangeError):
        hinf_walpha_upper(0.5, 1.0)
