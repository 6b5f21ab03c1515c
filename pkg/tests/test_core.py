import math

import pytest
from hypothesis import given, settings, strategies as st

from marcumq.core import (MarcumPoint, c_coefficient, dq_dx, dq_dy, f_kernel, f_kernel_signed,
                          is_q_positive_guaranteed, marcum_p, marcum_pq_scaled, marcum_q,
                          mixture_q, q_positivity_threshold)
from marcumq.errors import DomainError
from marcumq.incgamma import incgamma_regularized

import reference as ref

# (mu, x, y, Q, P, F_mu), mpmath at 40 digits
MARCUM = [
    (1, 1, 1, 0.65425416127683551977, 0.34574583872316448023, 0.21526928924893765916),
    (1, 1, 16, 2.2868163509128361307e-5, 0.99997713183649087164, 6.6217995267802430812e-5),
    (2, 3, 4, 0.58051574891229320426, 0.41948425108770679574, 0.14060798808875083905),
    (16, 16, 64, 8.1605675601495164975e-5, 0.99991839432439850484, 4.9614072009444341659e-5),
    (16, 1, 1, 0.99999999999999271473, 7.2852686313544159311e-15, 6.8595654615407061603e-15),
    (0.5, 10, 3, 0.97844518195469845209, 0.021554818045301547907, 0.011535183029287121247),
    (2.5, 50, 100, 3.5243878099594200627e-5, 0.9999647561219004058, 1.4690516534971435266e-5),
    (40, 5, 90, 2.2423367961103273509e-7, 0.99999977576632038897, 1.9536161460903843906e-7),
    (1, 100, 5, 1.0, 1.1163975589777700076e-28, 8.7654343118837158633e-29),
    (7.5, 20, 28, 0.44399320402377405284, 0.55600679597622594716, 0.057626280208400318997),
]

points = st.tuples(st.floats(min_value=0.5, max_value=50.0), st.floats(min_value=0.0, max_value=100.0),
                   st.floats(min_value=1e-2, max_value=100.0))


@pytest.mark.parametrize("mu,x,y,q,p,f", MARCUM)
def test_frozen_values(mu, x, y, q, p, f):
    pt = MarcumPoint(mu, x, y)
    assert marcum_q(pt).value == pytest.approx(q, rel=1e-12)
    assert marcum_p(pt).value == pytest.approx(p, rel=1e-12)
    assert f_kernel(pt).to_float() == pytest.approx(f, rel=1e-12)
    ps, qs = marcum_pq_scaled(pt)
    assert ps.to_float() == pytest.approx(p, rel=1e-12)
    assert qs.to_float() == pytest.approx(q, rel=1e-12)


def test_kernel_central_examples():
    assert f_kernel((0, 0, 1)).to_float() == pytest.approx(math.exp(-1), rel=1e-15)
    assert f_kernel((1, 0, 2)).to_float() == pytest.approx(2 * math.exp(-2), rel=1e-15)
    with pytest.raises(DomainError):
        f_kernel((-1.5, 1, 1))


def test_kernel_mu_minus_one():
    assert ref.rel(f_kernel((-1, 2, 3)).to_float(), ref.f_kernel(-1, 2, 3)) < 1e-12


def test_c_coefficient_examples():
    assert c_coefficient((1, 0, 2), 0) == 2.0
    # c_1(1,1) = I_1(2)/I_0(2)
    assert c_coefficient((1, 1, 1), 0) == pytest.approx(0.69777465796400798201, rel=1e-13)
    assert c_coefficient((5, 3, 1e-12), 0) < 1e-5
    with pytest.raises(DomainError):
        c_coefficient((1, 0, 2), -1)
    with pytest.raises(DomainError):
        c_coefficient((0.5, 1, 2), -1)


def test_central_closed_forms():
    assert marcum_p((1, 0, 1)).value == pytest.approx(1 - math.exp(-1), rel=1e-14)
    assert marcum_q((1, 0, 2)).value == pytest.approx(math.exp(-2), rel=1e-14)
    assert marcum_q((3, 5, 1e-300)).value == 1.0


def test_p_refuses_mu_zero():
    with pytest.raises(DomainError, match="mu=0"):
        marcum_p((0, 1, 1))


def test_report_fields():
    r = marcum_p((1, 1, 1))
    assert r.method == "series-F" and r.terms_used > 0 and r.abs_error_est < 1e-13
    assert marcum_q((16, 16, 64)).method == "series-poisson"
    assert marcum_q((1, 1, 1)).method in ("complement", "series-poisson")


def test_mu_zero_identity():
    # Q_0 + P_0 is not 1: the mixture for mu = 0 misses the x-mass e^-x
    x, y = 1.3, 0.7
    q0 = mixture_q((0.0, x, y)).value
    p0 = sum(math.exp(-x) * x ** k / math.factorial(k) * incgamma_regularized(k, y)[0]
             for k in range(1, 60))
    assert q0 + p0 == pytest.approx(1 - math.exp(-x), rel=1e-13)


def test_negative_order_mixture():
    for mu, x, y in ((-0.5, 2, 3), (-1.5, 0.5, 4), (-0.3, 0, 1)):
        v = mixture_q((mu, x, y)).value
        assert v == pytest.approx(float(ref.marcum_q(mu, x, y)), rel=1e-11, abs=1e-15)


def test_derivatives():
    f11 = f_kernel((1, 1, 1)).to_float()
    assert dq_dy((2, 1, 1)) == pytest.approx(-f11, rel=1e-14)
    assert dq_dx((1, 1, 1)) == pytest.approx(f11, rel=1e-14)
    h = 1e-4
    fd = (marcum_q((2, 3, 4 + h)).value - marcum_q((2, 3, 4 - h)).value) / (2 * h)
    assert dq_dy((2, 3, 4)) == pytest.approx(fd, abs=1e-6)
    fd = (marcum_q((2, 3 + h, 4)).value - marcum_q((2, 3 - h, 4)).value) / (2 * h)
    assert dq_dx((2, 3, 4)) == pytest.approx(fd, abs=1e-6)
    with pytest.raises(DomainError):
        dq_dy((1, 1, 1))


def test_positivity_threshold():
    assert q_positivity_threshold(-0.5, 1.0) == pytest.approx((math.sqrt(4.25) - 0.5) / 2, rel=1e-14)
    ls = [q_positivity_threshold(-1e-9, y) for y in (1, 10, 100, 1000)]
    assert all(a > b > 0 for a, b in zip(ls, ls[1:]))
    big_l = q_positivity_threshold(-0.5, 10.0)
    assert mixture_q((-0.5, big_l + 0.01, 10.0)).value > 0
    for bad in ((-1.0, 1.0), (0.0, 1.0), (-0.5, 0.0)):
        with pytest.raises(DomainError):
            q_positivity_threshold(*bad)


def test_positivity_predicate():
    assert is_q_positive_guaranteed((-1.5, 2, 3))
    assert is_q_positive_guaranteed((0.5, 0, 1))
    assert not is_q_positive_guaranteed((-0.5, 0, 1))
    assert mixture_q((-0.5, 0, 1)).value < 0
    # even bands [-2k, -2k+1], inclusive
    assert is_q_positive_guaranteed((-2.0, 0.1, 0.5))
    assert is_q_positive_guaranteed((-1.0, 0.1, 0.5))


def test_point_validation():
    for bad in ((1, -1, 1), (1, 1, 0), (math.nan, 1, 1), (1, math.inf, 1)):
        with pytest.raises(DomainError):
            MarcumPoint(*bad)


@settings(max_examples=150, deadline=None)
@given(points)
def test_complementarity(pt):
    p = MarcumPoint(*pt)
    assert abs(marcum_p(p).value + marcum_q(p).value - 1.0) <= 1e-12


@settings(max_examples=150, deadline=None)
@given(points)
def test_q_recurrence(pt):
    mu, x, y = pt
    q0, q1 = marcum_q((mu, x, y)).value, marcum_q((mu + 1, x, y)).value
    assert abs(q1 - q0 - f_kernel((mu, x, y)).to_float()) <= 1e-12 * max(1.0, q0)
    p0, p1 = marcum_p((mu, x, y)).value, marcum_p((mu + 1, x, y)).value
    assert abs(p0 - p1 - f_kernel((mu, x, y)).to_float()) <= 1e-12 * max(1.0, p0)


@settings(max_examples=100, deadline=None)
@given(points)
def test_three_term_recurrence(pt):
    mu, x, y = pt
    mu += 1.0
    c = c_coefficient((mu, x, y))
    for fn in (marcum_q, marcum_p):
        ym, y0, yp = (fn((mu + d, x, y)).value for d in (-1, 0, 1))
        terms = (yp, -(1 + c) * y0, c * ym)
        assert abs(math.fsum(terms)) <= 1e-11 * max(1.0, *map(abs, terms))


@settings(max_examples=100, deadline=None)
@given(points, st.floats(min_value=0.01, max_value=5.0))
def test_monotonicity(pt, d):
    mu, x, y = pt
    q = marcum_q((mu, x, y)).value
    assert marcum_q((mu, x + d, y)).value >= q - 1e-15
    assert marcum_q((mu + d, x, y)).value >= q - 1e-15
    assert marcum_q((mu, x, y + d)).value <= q + 1e-15


@settings(max_examples=60, deadline=None)
@given(points)
def test_against_mpmath(pt):
    mu, x, y = pt
    q = ref.marcum_q(mu, x, y)
    # take the smaller one directly; 1 - q would lose digits
    small, exact = (marcum_q(pt).value, q) if q < 0.5 else (marcum_p(pt).value, ref.marcum_p(mu, x, y))
    if exact > 1e-280:
        assert ref.rel(small, exact) < 1e-11


def test_central_limit_matches_gamma():
    for mu, y in ((0.7, 0.3), (5, 4.5), (30, 60)):
        assert marcum_q((mu, 0, y)).value == pytest.approx(incgamma_regularized(mu, y)[1], abs=1e-15)
        assert marcum_q((mu, 1e-295, y)).value == pytest.approx(incgamma_regularized(mu, y)[1], abs=1e-15)


def test_eps_environment(monkeypatch):
    monkeypatch.setenv("MARCUM_EPS", "1e-6")
    loose = marcum_p((2, 3, 4))
    monkeypatch.delenv("MARCUM_EPS")
    tight = marcum_p((2, 3, 4))
    assert loose.terms_used < tight.terms_used
    assert loose.value == pytest.approx(tight.value, abs=1e-5)


def test_signed_kernel_matches():
    assert f_kernel_signed(2.0, 3.0, 4.0) == pytest.approx(f_kernel((2, 3, 4)).to_float(), rel=1e-14)
