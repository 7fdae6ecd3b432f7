import math

import numpy as np
import pytest
from scipy.special import gammaln, hyp2f1

from hilbertlab.analytic import ParameterRangeError
from hilbertlab.essnorm import (
    EssNormQuery,
    condition_audit,
    essnorm_formula,
    essnorm_status,
    lower_bound_sweep,
    multiplier_Cc,
    sup_wt_maximizer,
    sup_wt_profile,
    wco_essnorm,
)
from hilbertlab.operators import HILBERT
from hilbertlab.special import beta_fn


def test_formula_examples():
    assert essnorm_formula(EssNormQuery("bergman", 4, 0)) == pytest.approx(math.pi, rel=1e-15)
    assert essnorm_formula(EssNormQuery("hinf", alpha=0.5)) == pytest.approx(math.pi, rel=1e-15)
    assert essnorm_formula(EssNormQuery("bergman", 3, 0)) == pytest.approx(2 * math.pi / math.sqrt(3), rel=1e-14)
    assert essnorm_formula(EssNormQuery("hardy", 2)) == pytest.approx(math.pi, rel=1e-15)


def test_query_ranges():
    with pytest.raises(ParameterRangeError):
        EssNormQuery("bergman", 2.0, 0.0)
    with pytest.raises(ParameterRangeError):
        EssNormQuery("hinf", alpha=1.0)
    with pytest.raises(ParameterRangeError):
        EssNormQuery("hardy", 1.0)


def test_status():
    assert essnorm_status(EssNormQuery("bergman", 4, 0)) == "exact"
    assert essnorm_status(EssNormQuery("bergman", 4, -0.5)) == "lower bound only"


def test_multiplier_at_origin():
    for c in (0.1, 0.4, 0.45):
        assert multiplier_Cc(HILBERT, c, 0.0) == pytest.approx(1 / (1 - c), rel=1e-12)


@pytest.mark.parametrize("z", [0.3, -0.6, 0.2 + 0.5j, 0.95])
@pytest.mark.parametrize("c", [0.2, 0.49])
def test_multiplier_hypergeometric(z, c):
    # with g = 1 the multiplier is 2F1(1-c, 1-c; 2-c; z)/(1-c)
    if isinstance(z, complex):
        # the series sum_n (1-c)_n/(n+1-c) z^n, convergent well inside the disk
        n = np.arange(400)
        a = np.exp(gammaln(n + 1 - c) - gammaln(1 - c) - gammaln(n + 1))
        ref = complex(np.sum(a / (n + 1 - c) * z**n))
    else:
        ref = hyp2f1(1 - c, 1 - c, 2 - c, z) / (1 - c)
    assert abs(multiplier_Cc(HILBERT, c, z) - ref) <= 1e-10 * abs(ref)


def test_multiplier_vectorised_matches_scalar():
    zs = np.array([0.1, 0.5j, -0.3 + 0.3j])
    vec = multiplier_Cc(HILBERT, 0.45, zs, alpha=1.0, p0=4.0)
    for z, v in zip(zs, vec):
        assert abs(v - multiplier_Cc(HILBERT, 0.45, complex(z), alpha=1.0, p0=4.0)) <= 1e-12


def test_multiplier_divergent():
    with pytest.raises(ParameterRangeError):
        multiplier_Cc(HILBERT, 1.0, 0.0)


def test_sweep_hinf_and_grid_validation():
    res = lower_bound_sweep(EssNormQuery("hinf", alpha=0.5), (8, 32, 128))
    assert np.all(np.diff(res.ratios) > 0)
    assert np.all(res.ratios < math.pi)
    assert res.ratios == pytest.approx([2.30579169, 2.64858437, 2.86749378], rel=1e-7)
    with pytest.raises(ParameterRangeError):
        lower_bound_sweep(EssNormQuery("bergman", 4, 0), (0.4, 0.5))
    with pytest.raises(ValueError):
        lower_bound_sweep(EssNormQuery("hardy", 2), (0.4, 0.3))


def test_sweep_hardy_frozen():
    res = lower_bound_sweep(EssNormQuery("hardy", 2), (0.30, 0.45), workers=2)
    assert np.all(np.diff(res.ratios) > 0)
    assert res.ratios[-1] == pytest.approx(2.807609402886652, rel=1e-8)


def test_wco_examples():
    assert wco_essnorm(0.5, 0.5) == pytest.approx(2.0)
    assert wco_essnorm(0.25, 0.5) == pytest.approx(4 / math.sqrt(3))
    assert wco_essnorm(0.5, 0.5, "radial_quotient") == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(ParameterRangeError):
        wco_essnorm(1.0, 0.5)


def test_sup_profile_examples():
    assert sup_wt_profile(0.25, 0.5) == pytest.approx(2 / math.sqrt(3), rel=1e-12)
    assert sup_wt_maximizer(0.25, 0.5) == pytest.approx(2 / 3)
    assert sup_wt_profile(0.75, 0.5) == 1.0
    assert sup_wt_maximizer(0.75, 0.5) == 0.0
    assert sup_wt_profile(0.5, 0.5) == pytest.approx(1.0)


def test_audits():
    assert condition_audit("CUBH", alpha=0.5).bound.value == pytest.approx(math.pi, rel=1e-9)
    assert not condition_audit("CUBH", alpha=1.0).finite
    cuba = condition_audit("CUBA", p=4.0, alpha=0.0)
    assert cuba.finite and cuba.bound.value == pytest.approx(beta_fn(0.25, 0.5), rel=1e-9)
    assert condition_audit("CUB2H", alpha=0.5).bound.value == pytest.approx(2.221441469079184, rel=1e-9)
    assert condition_audit("CUB2A", p=4.0, alpha=0.0).bound.value == pytest.approx(6.141999257272898, rel=1e-9)
    assert condition_audit("CKA", p=4.0, alpha=1.0).bound.value == pytest.approx(8.148169572535895, rel=1e-9)
    assert condition_audit("CKA-", p=4.0, alpha=0.0).bound.value == pytest.approx(3.1614180508395258, rel=1e-9)
    for t in (0.1, 0.5, 0.9):
        rep = condition_audit("CEVA", t=t, alpha=0.5)
        assert rep.finite and rep.bound.value == pytest.approx(1 / t, rel=1e-8)
    with pytest.raises(ValueError):
        condition_audit("NOPE")


def test_caia_audit():
    rep = condition_audit("CAIA", p=4.0, alpha=1.0)
    assert rep.finite
    assert rep.details["endpoint_diverged"]
    norms = rep.details["norms"]
    assert all(b > a for a, b in zip(norms, norms[1:]))
