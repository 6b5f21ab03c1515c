import math

import pytest
from hypothesis import given, settings, strategies as st

from marcumq.core import mixture_q
from marcumq.errors import DomainError, ToleranceError
from marcumq.oracle import oracle_q, quadrature_pq

from test_core import MARCUM


def test_central_closed_form():
    assert oracle_q((1, 0, 1)).value == pytest.approx(math.exp(-1), rel=1e-13)


@pytest.mark.parametrize("mu,x,y,q,p,f", MARCUM)
def test_quadrature_frozen(mu, x, y, q, p, f):
    r = quadrature_pq((mu, x, y))
    small, exact = (r.q, q) if q < p else (r.p, p)
    assert small.to_float() == pytest.approx(exact, rel=1e-11)
    assert r.abs_error_est >= 0.0


def test_report_method():
    r = oracle_q((1, 1, 16))
    assert r.method == "quadrature-oracle"
    assert r.value == pytest.approx(2.2868163509128361307e-5, rel=1e-11)


def test_tolerance_floor():
    with pytest.raises((ToleranceError, DomainError)):
        oracle_q((1, 1, 1), target_abs_err=1e-16)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.5, max_value=50.0), st.floats(min_value=0.0, max_value=100.0),
       st.floats(min_value=1e-3, max_value=100.0))
def test_quadrature_matches_mixture(mu, x, y):
    assert abs(quadrature_pq((mu, x, y)).q.to_float() - mixture_q((mu, x, y)).value) <= 1e-12
