"""Incomplete gamma functions, regularized and unnormalized.

``P(a, y) = gamma(a, y) / Gamma(a)`` and ``Q(a, y) = Gamma(a, y) / Gamma(a)``.
The smaller of the pair is always computed directly so it keeps full relative
accuracy; the other one is its complement.  Unnormalized values come back as
:class:`LogScaled` because ``Gamma(a)`` and ``y**a`` overflow quickly.
"""

from __future__ import annotations

import math

from ._special import (exprel, gamma1pm1_over, gamma1p_scaled, gamma_scaled,
                       power_exp_over_gamma, pow_scaled, rgamma)
from .errors import ConvergenceError, DomainError
from .logscaled import ONE, ZERO, LogScaled

MAX_ITER = 100_000
_TINY = 1e-300


def _check(a: float, y: float) -> None:
    if not (math.isfinite(a) and math.isfinite(y)):
        raise DomainError(f"non-finite argument a={a!r}, y={y!r}")
    if y < 0.0:
        raise DomainError(f"argument y={y} must be nonnegative")


def _lower_series(a: float, y: float) -> float:
    # sum_k y^k / ((a+1)_k), so that P(a, y) = y^a e^-y / Gamma(a+1) * sum
    s = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= y / (a + k)
        s += term
        if term <= 1e-17 * s:
            return s
        if k > MAX_ITER:
            raise ConvergenceError(f"gamma series did not converge (a={a}, y={y})")


def _upper_cf(a: float, y: float) -> float:
    """``Gamma(a, y) * exp(y) * y**-a`` from the Legendre continued fraction."""
    b = y + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    h = d
    for i in range(1, MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if d == 0.0:
            d = _TINY
        c = b + an / c
        if c == 0.0:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= 1e-16:
            return h
    raise ConvergenceError(f"gamma continued fraction did not converge (a={a}, y={y})")


def _upper_small_a(a: float, y: float) -> float:
    """``Gamma(a, y)`` for ``-1/2 < a <= 1`` and ``0 < y <= 1.5``.

    ``Gamma(a, y) = (Gamma(1+a) - 1)/a - (y**a - 1)/a - y**a sum_{k>=1} (-y)^k / (k! (a+k))``;
    at ``a = 0`` this is the exponential integral ``E1(y)``.
    """
    ly = math.log(y)
    head = gamma1pm1_over(a)
    head -= ly * exprel(a * ly)
    s = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= -y / k
        piece = term / (a + k)
        s += piece
        if abs(piece) <= 1e-17 * abs(s):
            break
    return head - math.exp(a * ly) * s


def _regularized(a: float, y: float) -> tuple[LogScaled, LogScaled, bool]:
    """``(P, Q, p_direct)`` for ``a > 0``; ``p_direct`` tells which one was summed."""
    if y == 0.0:
        return ZERO, ONE, True
    if a <= 1.0 and y <= 1.5:
        q = a * _upper_small_a(a, y) / gamma1p_scaled(a).to_float()
        p = power_exp_over_gamma(a, y) * LogScaled.from_float(_lower_series(a, y))
        if p.to_float() < 0.5:
            return p, LogScaled.from_float(max(0.0, 1.0 - p.to_float())), True
        return LogScaled.from_float(max(0.0, 1.0 - q)), LogScaled.from_float(q), False
    if y < a + 1.0:
        p = power_exp_over_gamma(a, y) * LogScaled.from_float(_lower_series(a, y))
        return p, LogScaled.from_float(max(0.0, 1.0 - p.to_float())), True
    q = power_exp_over_gamma(a, y) * LogScaled.from_float(a * _upper_cf(a, y))
    return LogScaled.from_float(max(0.0, 1.0 - q.to_float())), q, False


def incgamma_regularized(a: float, y: float) -> tuple[float, float]:
    """``(P(a, y), Q(a, y))`` for ``a > 0``, ``y >= 0``."""
    _check(a, y)
    if a <= 0.0:
        raise DomainError(f"regularized incomplete gamma needs a > 0, got a={a}")
    p, q, _ = _regularized(a, y)
    return p.to_float(), q.to_float()


def incgamma_regularized_scaled(a: float, y: float) -> tuple[LogScaled, LogScaled]:
    """Like :func:`incgamma_regularized` but without underflow of the small side."""
    _check(a, y)
    if a <= 0.0:
        raise DomainError(f"regularized incomplete gamma needs a > 0, got a={a}")
    p, q, _ = _regularized(a, y)
    return p, q


def gamma_lower(a: float, y: float) -> LogScaled:
    """Unnormalized ``gamma(a, y)`` for ``a > 0``."""
    _check(a, y)
    if a <= 0.0:
        raise DomainError(f"gamma(a, y) needs a > 0, got a={a}")
    p, q, direct = _regularized(a, y)
    if direct:
        # y^a e^-y / a * sum, skipping the round trip through Gamma(a)
        return pow_scaled(y, a) * LogScaled.from_log(-y) * LogScaled.from_float(
            _lower_series(a, y) / a) if y > 0.0 else ZERO
    return gamma_scaled(a) * p


def gamma_upper(a: float, y: float) -> LogScaled:
    """Unnormalized ``Gamma(a, y)`` for any real ``a`` and ``y > 0``.

    Orders ``a <= 0`` use the continued fraction when ``y >= 1`` and otherwise
    start from ``Gamma(b, y)`` with ``b = a + n`` in ``(-1/2, 1/2]`` and apply the
    downward recurrence ``Gamma(b-1, y) = (y**(b-1) e**-y - Gamma(b, y)) / (1-b)``,
    in which both pieces are positive.
    """
    _check(a, y)
    if y == 0.0:
        if a <= 0.0:
            raise DomainError(f"Gamma(a, 0) is infinite for a={a} <= 0")
        return gamma_scaled(a)
    if a > 0.0:
        if a <= 1.0 and y <= 1.5:
            return LogScaled.from_float(_upper_small_a(a, y))
        if y >= a + 1.0:
            return pow_scaled(y, a) * LogScaled.from_log(-y) * LogScaled.from_float(_upper_cf(a, y))
        _, q, _ = _regularized(a, y)
        return gamma_scaled(a) * q
    if y >= 1.0:
        return pow_scaled(y, a) * LogScaled.from_log(-y) * LogScaled.from_float(_upper_cf(a, y))
    n = math.ceil(-a)
    b = a + n
    if b > 0.5:  # the downward step from b near 1 cancels; start just below 0 instead
        n -= 1
        b = a + n
    g = LogScaled.from_float(_upper_small_a(b, y))
    ey = LogScaled.from_log(-y)
    for _ in range(n):
        g = (pow_scaled(y, b - 1.0) * ey - g) / LogScaled.from_float(1.0 - b)
        b -= 1.0
    return g


def q_regularized_signed(a: float, y: float) -> float:
    """``Gamma(a, y) / Gamma(a)`` for any real ``a``; zero at the poles of ``Gamma``.

    Negative for some non-integer ``a < 0``; only the Poisson mixture for
    negative Marcum orders needs this.
    """
    if a > 0.0:
        return incgamma_regularized(a, y)[1]
    r = rgamma(a)
    if r == 0.0:
        return 0.0
    return gamma_upper(a, y).to_float() * r


def gamma_ratio_h(a: float, y: float) -> float:
    """``h_a(y) = gamma(a, y) / gamma(a-1, y)`` for ``a > 1``."""
    _check(a, y)
    if a <= 1.0 or y <= 0.0:
        raise DomainError(f"h_a(y) needs a > 1 and y > 0, got a={a}, y={y}")
    return gamma_lower(a, y).ratio(gamma_lower(a - 1.0, y))


def gamma_ratio_H(a: float, y: float) -> float:
    """``H_a(y) = Gamma(a, y) / Gamma(a-1, y)`` for any real ``a`` and ``y > 0``."""
    _check(a, y)
    if y <= 0.0:
        raise DomainError(f"H_a(y) needs y > 0, got y={y}")
    return gamma_upper(a, y).ratio(gamma_upper(a - 1.0, y))
