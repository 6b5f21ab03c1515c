"""Scaled modified Bessel functions of the first kind and their ratios.

Everything here returns ``exp(-t) * I_nu(t)`` (never the unscaled function) or
the ratio ``g_nu(t) = I_nu(t) / I_{nu-1}(t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ._special import gamma1p_scaled, pow_scaled
from .errors import ConvergenceError, DomainError
from .logscaled import ONE, ZERO, LogScaled

# Below max(SERIES_T_MIN, nu) the power series is used; above it the Hankel
# expansion at the fractional order is lifted by a chain of ratios.
SERIES_T_MIN = 30.0
CF_TOL = 1e-15
CF_MAX_ITER = 100_000
_TINY = 1e-300


def _check(nu: float, t: float, nu_min: float) -> None:
    if not (math.isfinite(nu) and math.isfinite(t)):
        raise DomainError(f"non-finite argument nu={nu!r}, t={t!r}")
    if nu < nu_min:
        raise DomainError(f"order nu={nu} below {nu_min}")
    if t < 0.0:
        raise DomainError(f"argument t={t} must be nonnegative")


def _series(nu: float, t: float) -> LogScaled:
    # exp(-t) (t/2)^nu / Gamma(nu+1) * sum_k (t^2/4)^k / (k! (nu+1)_k); all terms positive
    q = 0.25 * t * t
    s = 1.0
    term = 1.0
    k = 0
    extra = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        s += term
        if term <= 1e-17 * s:
            break
        if s > 1e280:
            s = math.ldexp(s, -900)
            term = math.ldexp(term, -900)
            extra += 900
    pref = pow_scaled(0.5 * t, nu) * LogScaled.from_log(-t) / gamma1p_scaled(nu)
    return pref * LogScaled.normalize(s, extra)


def _hankel(nu: float, t: float) -> float:
    # large-argument expansion of exp(-t) I_nu(t); only used for |nu| < 1, t >= 30
    mu4 = 4.0 * nu * nu
    s = 1.0
    term = 1.0
    k = 0
    prev = math.inf
    while True:
        k += 1
        term *= -(mu4 - (2 * k - 1) ** 2) / (8.0 * k * t)
        if abs(term) >= prev:
            break
        s += term
        prev = abs(term)
        if prev < 1e-17 * abs(s):
            break
    return s / math.sqrt(2.0 * math.pi * t)


def _cf_reciprocal(nu: float, t: float, tol: float, max_iter: int) -> float:
    """Value of ``2nu/t + 1/(2(nu+1)/t + 1/(...))`` = ``I_{nu-1}/I_nu`` by modified Lentz."""
    b = 2.0 * nu / t
    f = b if b != 0.0 else _TINY
    c = f
    d = 0.0
    for j in range(1, max_iter + 1):
        b = 2.0 * (nu + j) / t
        d = b + d
        if d == 0.0:
            d = _TINY
        c = b + 1.0 / c
        if c == 0.0:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) <= tol:
            return f
    raise ConvergenceError(
        f"Bessel ratio continued fraction did not converge (nu={nu}, t={t})")


def bessel_ratio(nu: float, t: float, *, tol: float = CF_TOL,
                 max_iter: int = CF_MAX_ITER) -> float:
    """``g_nu(t) = I_nu(t) / I_{nu-1}(t)`` for ``nu >= 0``, ``t > 0``.

    Evaluated from the continued fraction generated by the three-term
    recurrence of ``I_nu``; the order ``nu + 1`` fraction is computed first so
    the leading partial denominator never vanishes.
    """
    _check(nu, t, 0.0)
    if t == 0.0:
        raise DomainError("bessel_ratio requires t > 0")
    g_next = 1.0 / _cf_reciprocal(nu + 1.0, t, tol, max_iter)
    return 1.0 / (2.0 * nu / t + g_next)


def ratio_sequence(nu: float, count: int, t: float, *, tol: float = CF_TOL,
                   max_iter: int = CF_MAX_ITER) -> list[float]:
    """``[g_nu(t), g_{nu+1}(t), ..., g_{nu+count-1}(t)]``.

    The top ratio comes from the continued fraction and the rest from the
    backward recurrence ``g_v = 1 / (2v/t + g_{v+1})``, which is stable because
    ``I_v`` is the minimal solution.
    """
    if count <= 0:
        return []
    top = nu + count - 1
    g = bessel_ratio(top, t, tol=tol, max_iter=max_iter)
    out = [0.0] * count
    out[-1] = g
    for i in range(count - 2, -1, -1):
        g = 1.0 / (2.0 * (nu + i) / t + g)
        out[i] = g
    return out


def bessel_i_scaled(nu: float, t: float) -> LogScaled:
    """``exp(-t) * I_nu(t)`` for ``nu >= -1``, ``t >= 0``, as a :class:`LogScaled`."""
    _check(nu, t, -1.0)
    if nu < 0.0 and nu == math.floor(nu):
        nu = -nu  # I_{-n} = I_n
    if t == 0.0:
        if nu == 0.0:
            return ONE
        if nu > 0.0:
            return ZERO
        raise DomainError(f"I_nu(0) is infinite for nu={nu} in (-1, 0)")
    if t < max(SERIES_T_MIN, nu):
        return _series(nu, t)
    if nu < 1.0:
        return LogScaled.from_float(_hankel(nu, t))
    n = int(math.floor(nu))
    nu0 = nu - n
    base = LogScaled.from_float(_hankel(nu0, t))
    # I_nu / I_nu0 = prod_{j=1..n} g_{nu0+j}
    mant = 1.0
    exp2 = 0
    for g in ratio_sequence(nu0 + 1.0, n, t):
        mant *= g
        if mant < 1e-280:
            m, e = math.frexp(mant)
            mant, exp2 = m, exp2 + e
    return base * LogScaled.normalize(mant, exp2)


@dataclass(frozen=True)
class RatioBoundPair:
    """Closed-form brackets for ``g_nu(t)``.

    ``lower < g_nu(t) < upper_general`` for ``nu >= 0``; for ``nu >= 1/2`` the
    sharper ``upper_half_shift`` also holds.
    """

    lower: float
    upper_general: float
    upper_half_shift: Optional[float]


def _t_over_f(lam: float, t: float) -> float:
    # t / (lam + sqrt(lam^2 + t^2)) without cancellation when lam < 0
    r = math.hypot(lam, t)
    if lam >= 0.0:
        return t / (lam + r)
    return (r - lam) / t


def bessel_ratio_bounds(nu: float, t: float) -> RatioBoundPair:
    _check(nu, t, 0.0)
    if t == 0.0:
        raise DomainError("bessel_ratio_bounds requires t > 0")
    half = _t_over_f(nu - 0.5, t) if nu >= 0.5 else None
    return RatioBoundPair(_t_over_f(nu, t), _t_over_f(nu - 1.0, t), half)
