"""Sign of the second derivatives of ``Q_mu`` and location of inflection points.

``d2Q/dx2 = (c_{mu+1} - 1) F_mu`` and ``d2Q/dy2 = (c_{mu-1} - 1) F_{mu-2}``, with
``F > 0``, so the sign is that of ``c - 1``.  ``c_nu(x, y)`` decreases in ``x``
and increases in ``y``; it exceeds 1 when ``y > x + nu`` and is below 1 when
``y < x + nu - 1`` (``nu >= 0``) or ``y < x + nu - 1/2`` (``nu >= 1/2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import MarcumPoint, _as_point, c_coefficient
from .errors import DomainError, NoInflectionError, ToleranceError

DEFAULT_TOL = 1e-10
MIN_TOL = 1e-12
SIGNS = ("negative", "positive", "indeterminate")
_MIN_Y = 1e-300
_ROUNDING = 16.0 * 2.0 ** -52


@dataclass(frozen=True)
class SignRegion:
    sign: str
    bracket: Optional[tuple[float, float]] = None
    boundary: bool = False  # the point sits where the derivative vanishes (x = 0, y = mu + 1)


def d2q_dx2_classify(p: MarcumPoint | tuple) -> SignRegion:
    """Sign of ``d2Q/dx2``; an indeterminate result carries the bracket for the inflection ``x*``."""
    p = _as_point(p)
    mu, x, y = p.mu, p.x, p.y
    if mu < 0.0:
        raise DomainError(f"x-convexity classification needs mu >= 0, got mu={mu}")
    if y <= mu + 1.0:
        return SignRegion("negative", None, x == 0.0 and y == mu + 1.0)
    if x > y - mu - 0.5:
        return SignRegion("negative")
    if x < y - mu - 1.0:
        return SignRegion("positive")
    return SignRegion("indeterminate", (y - mu - 1.0, y - mu - 0.5))


def _y_negative_edge(mu: float, x: float) -> float:
    return x + mu - 1.5 if mu >= 1.5 else x + mu - 2.0


def d2q_dy2_classify(p: MarcumPoint | tuple) -> SignRegion:
    """Sign of ``d2Q/dy2`` for ``mu >= 1``; indeterminate results carry the bracket for ``y*``."""
    p = _as_point(p)
    mu, x, y = p.mu, p.x, p.y
    if mu < 1.0:
        raise DomainError(f"y-convexity classification needs mu >= 1, got mu={mu}")
    lo, hi = _y_negative_edge(mu, x), x + mu - 1.0
    if y > hi:
        return SignRegion("positive")
    if y < lo:
        return SignRegion("negative")
    return SignRegion("indeterminate", (lo, hi))


def inflection_bracket(p: MarcumPoint | tuple, axis: str) -> tuple[float, float]:
    """Interval guaranteed to hold the inflection along ``axis``; the other coordinate of ``p`` is fixed.

    Raises :class:`NoInflectionError` when no sign change is guaranteed.
    """
    p = _as_point(p)
    mu = p.mu
    if axis == "x":
        if mu < 0.0:
            raise DomainError(f"x-axis inflection needs mu >= 0, got mu={mu}")
        if p.y <= mu + 1.0:
            raise NoInflectionError(
                f"d2Q/dx2 < 0 for all x when y={p.y} <= mu+1={mu + 1.0}; no inflection in x")
        return max(0.0, p.y - mu - 1.0), p.y - mu - 0.5
    if axis == "y":
        if mu < 1.0:
            raise NoInflectionError(
                f"y-axis inflection refused for mu={mu} < 1: the sign of d2Q/dy2 may change twice")
        if p.x == 0.0 and mu == 1.0:
            raise NoInflectionError("Q_1(0, y) = exp(-y) is convex in y; no inflection")
        return max(0.0, _y_negative_edge(mu, p.x)), p.x + mu - 1.0
    raise DomainError(f"axis must be 'x' or 'y', got {axis!r}")


def find_inflection(p: MarcumPoint | tuple, axis: str, tol: float = DEFAULT_TOL) -> float:
    """Inflection coordinate along ``axis`` by bisection on ``c - 1``, to within ``tol``.

    The coordinate of ``p`` along ``axis`` is ignored.
    """
    p = _as_point(p)
    if not tol >= MIN_TOL:
        raise ToleranceError(f"tol={tol} below the {MIN_TOL} floor")
    lo, hi = inflection_bracket(p, axis)
    mu = p.mu
    if axis == "x":
        def g(v: float) -> float:  # decreasing in x
            return c_coefficient(MarcumPoint(mu, v, p.y), 1) - 1.0
        sign = -1.0
    else:
        def g(v: float) -> float:  # increasing in y
            return c_coefficient(MarcumPoint(mu, p.x, v), -1) - 1.0
        sign = 1.0
        if lo <= 0.0:
            # the bracket reaches y = 0; walk down until c - 1 is negative
            lo = hi
            while lo > _MIN_Y and g(lo) >= 0.0:
                lo *= 0.5
            if lo <= _MIN_Y:
                raise NoInflectionError(f"c_(mu-1) >= 1 down to y=0 at mu={mu}, x={p.x}; no inflection")
    glo, ghi = sign * g(lo), sign * g(hi)
    # a root within rounding of an end point (c - 1 off by a few ulps) is that end point
    if 0.0 < glo <= _ROUNDING:
        return lo
    if -_ROUNDING <= ghi < 0.0:
        return hi
    if glo > 0.0 or ghi < 0.0:
        raise NoInflectionError(
            f"c - 1 does not change sign on [{lo}, {hi}] (values {glo:.3g}, {ghi:.3g})")
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = sign * g(mid)
        if gm == 0.0:
            return mid
        if gm < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
