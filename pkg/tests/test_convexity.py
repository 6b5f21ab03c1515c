import pytest
from hypothesis import given, settings, strategies as st

from marcumq.convexity import (d2q_dx2_classify, d2q_dy2_classify, find_inflection,
                               inflection_bracket)
from marcumq.core import MarcumPoint, c_coefficient
from marcumq.errors import DomainError, NoInflectionError, ToleranceError
from marcumq.harness import check_inflection


def test_x_classification_examples():
    assert d2q_dx2_classify((1, 0.3, 1.5)).sign == "negative"
    assert d2q_dx2_classify((1, 1, 5)).sign == "positive"
    r = d2q_dx2_classify((1, 3.2, 5))
    assert r.sign == "indeterminate" and r.bracket == (3.0, 3.5)
    edge = d2q_dx2_classify((1, 0, 2))
    assert edge.sign == "negative" and edge.boundary
    assert not d2q_dx2_classify((1, 0.1, 2)).boundary
    with pytest.raises(DomainError):
        d2q_dx2_classify((-0.5, 1, 1))


def test_y_classification_examples():
    assert d2q_dy2_classify((2, 1, 5)).sign == "positive"
    assert d2q_dy2_classify((2, 3, 2.9)).sign == "negative"
    r = d2q_dy2_classify((2, 3, 3.8))
    assert r.sign == "indeterminate" and r.bracket == (3.5, 4.0)
    # below mu = 3/2 only the weaker edge x + mu - 2 is available
    assert d2q_dy2_classify((1.2, 3, 2.5)).bracket == pytest.approx((2.2, 3.2))
    with pytest.raises(DomainError):
        d2q_dy2_classify((0.5, 1, 1))


def test_find_inflection_examples():
    x_star = find_inflection((1, 0, 5), "x")
    assert 3.0 <= x_star <= 3.5
    assert c_coefficient((1, x_star, 5), 1) == pytest.approx(1.0, abs=1e-9)
    y_star = find_inflection((2, 3, 1), "y")
    assert 3.5 <= y_star <= 4.0
    assert c_coefficient((2, 3, y_star), -1) == pytest.approx(1.0, abs=1e-9)


def test_no_inflection_cases():
    with pytest.raises(NoInflectionError):
        find_inflection((1, 0, 0.5), "y")
    with pytest.raises(NoInflectionError):
        find_inflection((0.5, 1, 1), "y")
    with pytest.raises(NoInflectionError):
        find_inflection((2, 0, 3), "x")       # y <= mu + 1
    with pytest.raises(NoInflectionError):
        find_inflection((1, 0.5, 1), "y")     # c_0(x, 0+) = 1/x > 1 for x < 1
    with pytest.raises(ToleranceError):
        find_inflection((1, 0, 5), "x", tol=1e-13)
    with pytest.raises(DomainError):
        inflection_bracket((1, 0, 5), "z")


def test_tolerance_respected():
    coarse = find_inflection((1, 0, 5), "x", tol=1e-3)
    fine = find_inflection((1, 0, 5), "x", tol=1e-12)
    assert abs(coarse - fine) <= 1e-3


def test_finite_difference_confirmation():
    for mu, fixed, axis in ((1, 5, "x"), (2, 3, "y"), (7.5, 20, "x"), (12, 4, "y")):
        problem, root, (lo, hi) = check_inflection(mu, fixed, axis)
        assert problem is None and lo <= root <= hi


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.0, max_value=30.0), st.floats(min_value=1.0 + 1e-6, max_value=60.0))
def test_x_root_inside_bracket(mu, excess):
    y = mu + excess
    lo, hi = inflection_bracket((mu, 0, y), "x")
    r = find_inflection((mu, 0, y), "x")
    assert lo <= r <= hi


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1.0, max_value=30.0), st.floats(min_value=1.0, max_value=40.0))
def test_y_root_inside_bracket(mu, x):
    if mu == 1.0 and x <= 1.0:
        # c_0(x, 0+) = 1/x >= 1 and c grows with y: no sign change
        with pytest.raises(NoInflectionError):
            find_inflection((mu, x, 1), "y")
        return
    lo, hi = inflection_bracket((mu, x, 1), "y")
    r = find_inflection((mu, x, 1), "y")
    assert lo <= r <= hi


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1.0, max_value=30.0), st.floats(min_value=0.0, max_value=40.0),
       st.floats(min_value=1e-2, max_value=60.0))
def test_classification_matches_sign(mu, x, y):
    p = MarcumPoint(mu, x, y)
    r = d2q_dx2_classify(p)
    s = c_coefficient(p, 1) - 1.0
    if r.sign != "indeterminate" and not r.boundary and abs(s) > 1e-14:
        assert (s > 0) == (r.sign == "positive")
    if not (p.is_central and mu == 1.0):
        r = d2q_dy2_classify(p)
        s = c_coefficient(p, -1) - 1.0
        if r.sign != "indeterminate" and abs(s) > 1e-14:
            assert (s > 0) == (r.sign == "positive")
