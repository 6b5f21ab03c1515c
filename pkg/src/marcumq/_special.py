"""Small numerical helpers: accurate log-gamma pieces and Poisson-type prefactors."""

from __future__ import annotations

import math

from scipy.special import zetac

from .logscaled import LogScaled

EULER_GAMMA = 0.57721566490153286061
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# (zeta(k) - 1) / k with alternating sign, for the Taylor series of lgamma(1 + a)
_LG1P_COEF = [(-1) ** k * float(zetac(k)) / k for k in range(2, 80)]


def lgamma1p(a: float) -> float:
    """``log Gamma(1 + a)`` with full relative accuracy for small ``|a|``."""
    if abs(a) > 0.5:
        return math.lgamma(1.0 + a)
    s = 0.0
    p = a
    for c in _LG1P_COEF:
        p *= a
        term = c * p
        s += term
        if abs(term) < 1e-18 * (abs(s) + abs(a)):
            break
    return -math.log1p(a) + a * (1.0 - EULER_GAMMA) + s


def gamma1pm1_over(a: float) -> float:
    """``(Gamma(1 + a) - 1) / a``; continuous at ``a = 0`` where it equals ``-gamma``."""
    if abs(a) < 1e-8:  # Taylor term; keeps subnormal a from losing digits
        return -EULER_GAMMA + a * (0.5 * EULER_GAMMA ** 2 + math.pi ** 2 / 12.0)
    return math.expm1(lgamma1p(a)) / a


def exprel(z: float) -> float:
    """``(exp(z) - 1) / z``, equal to 1 at ``z = 0``."""
    if abs(z) < 1e-8:
        return 1.0 + 0.5 * z
    return math.expm1(z) / z


def stirlerr(a: float) -> float:
    """``lgamma(a + 1) - ((a + 1/2) log a - a + log(2 pi)/2)`` for ``a > 0``."""
    if a >= 15.0:
        a2 = 1.0 / (a * a)
        return (1.0 / 12.0 - a2 * (1.0 / 360.0 - a2 * (1.0 / 1260.0 - a2 * (
            1.0 / 1680.0 - a2 / 1188.0)))) / a
    return math.lgamma(a + 1.0) - ((a + 0.5) * math.log(a) - a + HALF_LOG_2PI)


def _phi(a: float, y: float) -> float:
    # a*log(a/y) - a + y >= 0, evaluated without cancellation near a = y
    d = (a - y) / y
    if abs(d) < 0.5:
        return y * ((1.0 + d) * math.log1p(d) - d)
    return a * math.log(a / y) - a + y


def log_gamma_prefactor(a: float, y: float) -> float:
    """``log(y**a * exp(-y) / Gamma(a + 1))`` for ``a > -1`` and ``y > 0``.

    For ``a = k`` integer and ``y = x`` this is the log of the Poisson mass at ``k``.
    """
    if y == 0.0:
        return 0.0 if a == 0.0 else -math.inf
    if a < 1.0:
        return a * math.log(y) - y - lgamma1p(a)
    return -_phi(a, y) - 0.5 * math.log(a) - HALF_LOG_2PI - stirlerr(a)


def rgamma(a: float) -> float:
    """``1 / Gamma(a)``, zero at the poles."""
    if a <= 0.0 and a == math.floor(a):
        return 0.0
    if a > 171.0:
        return math.exp(-math.lgamma(a))
    return 1.0 / math.gamma(a)


_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitter
_SQRT_HALF = math.sqrt(0.5)


def pow_scaled(base: float, p: float) -> LogScaled:
    """``base ** p`` for ``base > 0`` without the ``p * log(base)`` error growth.

    ``base = m * 2**e`` is split so that ``e * p`` is carried exactly in two
    doubles; only ``m ** p`` with ``m`` near one goes through ``math.pow``.
    """
    if base <= 0.0:
        if base == 0.0 and p > 0.0:
            return LogScaled.normalize(0.0)
        raise ValueError(f"pow_scaled needs a positive base, got {base!r}")
    m, e = math.frexp(base)
    if m < _SQRT_HALF:
        m *= 2.0
        e -= 1
    c = _SPLIT * p
    p_hi = c - (c - p)
    p_lo = p - p_hi
    ep_hi = e * p_hi
    k = math.floor(ep_hi)
    frac = (ep_hi - k) + e * p_lo
    # math.pow stays in range for |p| < 2000 since |log2 m| <= 1/2
    chunks = max(1, int(abs(p) // 1500) + 1)
    step = p / chunks
    out = LogScaled.normalize(math.pow(2.0, frac), int(k))
    for _ in range(chunks):
        out = out * LogScaled.normalize(math.pow(m, step))
    return out


def gamma1p_scaled(a: float) -> LogScaled:
    """``Gamma(1 + a)`` for ``a > -1``; ``a`` is never rounded into ``1 + a``."""
    if a <= -1.0:
        raise ValueError("gamma1p_scaled needs a > -1")
    if a >= 15.0:
        return (pow_scaled(a, a) * LogScaled.from_float(math.sqrt(a)) * LogScaled.from_log(-a)
                * LogScaled.from_float(math.sqrt(2.0 * math.pi))
                * LogScaled.from_log(stirlerr(a)))
    if a >= 1.0:
        return LogScaled.from_float(a * math.gamma(a))
    return LogScaled.from_log(lgamma1p(a))


def gamma_scaled(z: float) -> LogScaled:
    """``Gamma(z)`` for ``z > 0`` as a :class:`LogScaled`."""
    if z <= 0.0:
        raise ValueError("gamma_scaled needs z > 0")
    if z < 1.0:
        return gamma1p_scaled(z) / z
    return gamma1p_scaled(z - 1.0)


def power_exp_over_gamma(a: float, y: float) -> LogScaled:
    """``y**a * exp(-y) / Gamma(a + 1)`` for ``a > -1``, ``y >= 0``."""
    if y == 0.0:
        return LogScaled.normalize(1.0 if a == 0.0 else 0.0)
    return pow_scaled(y, a) * LogScaled.from_log(-y) / gamma1p_scaled(a)
