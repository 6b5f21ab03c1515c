"""Extended-precision reference values computed with mpmath, independent of the package."""

from __future__ import annotations

import mpmath as mp

DPS = 30


def _mpf(*vals):
    return [mp.mpf(v) for v in vals]


def marcum_q(mu: float, x: float, y: float) -> mp.mpf:
    """Poisson mixture of regularized upper incomplete gammas."""
    with mp.workdps(DPS):
        mu, x, y = _mpf(mu, x, y)
        if x == 0:
            return mp.gammainc(mu, y, mp.inf, regularized=True)
        return _mixture(mu, x, lambda a: mp.gammainc(a, y, mp.inf, regularized=True))


def marcum_p(mu: float, x: float, y: float) -> mp.mpf:
    with mp.workdps(DPS):
        mu, x, y = _mpf(mu, x, y)
        if x == 0:
            return mp.gammainc(mu, 0, y, regularized=True)
        return _mixture(mu, x, lambda a: mp.gammainc(a, 0, y, regularized=True))


def _mixture(mu, x, term):
    s = mp.mpf(0)
    w = mp.exp(-x)
    k = 0
    while True:
        t = w * term(mu + k)
        s += t
        k += 1
        w *= x / k
        if k > x + 10 and t < s * mp.mpf(10) ** (-DPS + 3):
            return s


def f_kernel(mu: float, x: float, y: float) -> mp.mpf:
    with mp.workdps(DPS):
        mu, x, y = _mpf(mu, x, y)
        if x == 0:
            return y ** mu * mp.exp(-y) / mp.gamma(mu + 1)
        return (y / x) ** (mu / 2) * mp.exp(-x - y) * mp.besseli(mu, 2 * mp.sqrt(x * y))


def bessel_i_scaled(nu: float, t: float) -> mp.mpf:
    with mp.workdps(DPS):
        nu, t = _mpf(nu, t)
        return mp.exp(-t) * mp.besseli(nu, t)


def gamma_lower(a: float, y: float) -> mp.mpf:
    with mp.workdps(DPS):
        return mp.gammainc(mp.mpf(a), 0, mp.mpf(y))


def gamma_upper(a: float, y: float) -> mp.mpf:
    with mp.workdps(DPS):
        return mp.gammainc(mp.mpf(a), mp.mpf(y), mp.inf)


def rel(value: float, ref) -> float:
    ref = mp.mpf(ref)
    if ref == 0:
        return abs(value)
    return float(abs((mp.mpf(value) - ref) / ref))
