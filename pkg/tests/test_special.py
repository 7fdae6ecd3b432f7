import math

import pytest
from hypothesis import given, settings, strategies as st

from hilbertlab.special import DomainError, beta_fn, gamma_fn, lgamma_fn

pos = st.floats(min_value=0.05, max_value=40.0, allow_nan=False)


@pytest.mark.parametrize("a,b,expected", [(0.5, 0.5, math.pi), (1.0, 1.0, 1.0), (1.5, 0.5, math.pi / 2)])
def test_beta_examples(a, b, expected):
    assert beta_fn(a, b) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0.01, 0.3, 0.5, 1.0, 2.5, 7.25, 30.0, 150.0])
def test_gamma_matches_stdlib(x):
    assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-13)


@pytest.mark.parametrize("x", [-0.5, -2.25])
def test_gamma_reflection_negative(x):
    assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-13)


def test_lgamma_matches_stdlib():
    for x in (0.1, 0.75, 3.0, 100.0, 1e4):
        assert lgamma_fn(x) == pytest.approx(math.lgamma(x), rel=1e-13, abs=1e-13)


def test_domain_errors():
    with pytest.raises(DomainError):
        beta_fn(0.0, 1.0)
    with pytest.raises(DomainError):
        beta_fn(1.0, -0.5)
    with pytest.raises(DomainError):
        gamma_fn(-2.0)


@given(pos, pos)
@settings(max_examples=200, deadline=None)
def test_beta_symmetric(a, b):
    assert beta_fn(a, b) == pytest.approx(beta_fn(b, a), rel=1e-13)


@given(pos, pos, pos)
@settings(max_examples=200, deadline=None)
def test_beta_associativity(a, b, c):
    lhs = beta_fn(a, b) * beta_fn(a + b, c)
    rhs = beta_fn(b, c) * beta_fn(a, b + c)
    assert lhs == pytest.approx(rhs, rel=1e-11)


@given(st.floats(min_value=0.05, max_value=20.0), st.floats(min_value=0.05, max_value=20.0))
@settings(max_examples=200, deadline=None)
def test_beta_against_stdlib_gamma(a, b):
    ref = math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
    assert beta_fn(a, b) == pytest.approx(ref, rel=1e-12)
