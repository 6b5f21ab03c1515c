"""Reference values of ``P_mu`` and ``Q_mu`` by numerical integration.

The oracle integrates the defining density directly with QUADPACK and
scipy's own Bessel routines, so it shares no code path with the series
evaluators in :mod:`marcumq.core`; it only borrows ``mixture_q`` for the
internal cross-check.

Only the smaller tail is integrated: ``Q`` over ``[y, inf)`` when
``y >= x + mu`` and ``P`` over ``[0, y]`` otherwise, the latter with an
algebraic weight that absorbs the ``t**(mu-1)`` behaviour at the origin.
Each integrand is divided by its value at ``y`` so tails far below the
double range still integrate to a relative-accurate result.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate, special

from .core import EvalReport, MarcumPoint, _as_point, mixture_q
from .errors import DomainError, ToleranceError
from .logscaled import LogScaled

QUAD_EPSREL = 1e-13
QUAD_LIMIT = 400
_HYP_SWITCH = 0.25  # below this x*t use 0F1 instead of ive


@dataclass(frozen=True)
class QuadratureResult:
    p: LogScaled
    q: LogScaled
    direct: str  # "P" or "Q": which tail was integrated
    abs_error_est: float  # absolute error estimate of the integrated tail


def _log_h(t: float, mu: float, x: float) -> float:
    """``log`` of the density divided by ``t**(mu-1)``."""
    v = mu - 1.0
    if x == 0.0:
        return -t - math.lgamma(mu)
    z = x * t
    if z < _HYP_SWITCH:
        # I_v(s) / (s/2)^v = 0F1(; v+1; s^2/4) / Gamma(v+1)
        return math.log(special.hyp0f1(mu, z)) - math.lgamma(mu) - x - t
    s = 2.0 * math.sqrt(z)
    iv = special.ive(v, s)
    return math.log(iv) + s - v * math.log(0.5 * s) - x - t


def _log_density(t: float, mu: float, x: float) -> float:
    return (mu - 1.0) * math.log(t) + _log_h(t, mu, x)


def _integrate_q(mu: float, x: float, y: float) -> tuple[LogScaled, float]:
    s0 = _log_density(y, mu, x)

    def g(t: float) -> float:
        return math.exp(_log_density(t, mu, x) - s0)

    # the density decays at least like exp(-(sqrt t - sqrt x)^2); split where
    # it is negligible so the infinite piece is tiny
    root = math.sqrt(y) + 40.0
    far = max(root * root, 2.0 * y)
    pieces = []
    errs = []
    for lo, hi in ((y, far), (far, math.inf)):
        val, err = integrate.quad(g, lo, hi, epsabs=0.0, epsrel=QUAD_EPSREL,
                                  limit=QUAD_LIMIT)
        pieces.append(val)
        errs.append(err)
    scale = LogScaled.from_log(s0)
    total = math.fsum(pieces)
    return scale * LogScaled.from_float(total), (scale * LogScaled.from_float(sum(errs))).to_float()


def _integrate_p(mu: float, x: float, y: float) -> tuple[LogScaled, float]:
    # P = y^mu * int_0^1 u^(mu-1) h(y u) du; h peaks near t = x
    s0 = max(_log_h(y, mu, x), _log_h(min(x, y), mu, x))

    def g(u: float) -> float:
        return math.exp(_log_h(y * u, mu, x) - s0)

    val, err = integrate.quad(g, 0.0, 1.0, weight="alg", wvar=(mu - 1.0, 0.0),
                              epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    scale = LogScaled.from_log(s0 + mu * math.log(y))
    return scale * LogScaled.from_float(val), (scale * LogScaled.from_float(err)).to_float()


def quadrature_pq(p: MarcumPoint | tuple) -> QuadratureResult:
    """``P`` and ``Q`` for ``mu > 0``; the smaller tail is integrated directly."""
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"the oracle needs mu > 0, got mu={p.mu}")
    mu, x, y = p.mu, p.x, p.y
    if p.is_central:
        x = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if y >= x + mu:
            q, err = _integrate_q(mu, x, y)
            return QuadratureResult(LogScaled.from_float(max(0.0, 1.0 - q.to_float())), q, "Q", err)
        pp, err = _integrate_p(mu, x, y)
        return QuadratureResult(pp, LogScaled.from_float(max(0.0, 1.0 - pp.to_float())), "P", err)


def oracle_q(p: MarcumPoint | tuple, target_abs_err: float = 1e-13) -> EvalReport:
    """``Q_mu(x, y)`` by quadrature, cross-checked against the Poisson mixture.

    Raises :class:`ToleranceError` when the quadrature error estimate or the
    disagreement with the mixture exceeds ``target_abs_err``.
    """
    p = _as_point(p)
    if target_abs_err < 1e-14:
        raise DomainError(f"target_abs_err={target_abs_err} below the 1e-14 floor")
    res = quadrature_pq(p)
    value = res.q.to_float()
    mix = mixture_q(p)
    gap = abs(value - mix.value)
    err = max(res.abs_error_est, gap)
    if err > target_abs_err:
        raise ToleranceError(
            f"oracle at {p}: quadrature {value!r} vs mixture {mix.value!r} "
            f"(error {err:.3g} > {target_abs_err:.3g})")
    return EvalReport(value, err, 0, "quadrature-oracle", res.q if res.direct == "Q" else None)
