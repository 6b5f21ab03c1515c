"""Generalized Marcum functions ``Q_mu(x, y)`` and ``P_mu(x, y)``.

``Q_mu(x, y) = x**((1-mu)/2) * int_y^inf t**((mu-1)/2) e**(-t-x) I_{mu-1}(2 sqrt(x t)) dt``
and ``P = 1 - Q`` for ``mu > 0``.  At ``mu = 0`` the complement relation
breaks (``Q_0 + P_0 = 1 - exp(-x)``), so ``P`` is only evaluated for ``mu > 0``.

With ``x = 0`` the functions reduce to the regularized incomplete gamma
functions ``Q(mu, y)`` and ``P(mu, y)``.  Writing ``Q(x, y) = Qt(sqrt(2x), sqrt(2y))``
recovers the classical two-argument notation, and ``1 - Q`` is the CDF of a
noncentral chi-square with ``2 mu`` degrees of freedom and non-centrality ``2x``
evaluated at ``2y``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

from ._special import pow_scaled, power_exp_over_gamma, rgamma
from .bessel import SERIES_T_MIN, bessel_i_scaled, bessel_ratio, ratio_sequence
from .errors import ConvergenceError, DomainError
from .incgamma import incgamma_regularized_scaled, q_regularized_signed
from .logscaled import ONE, ZERO, LogScaled

DEFAULT_EPS = 1e-14
DEFAULT_MAX_TERMS = 1_000_000
# below this x the (y/x)^(mu/2) factor is meaningless and the central limit is exact
CENTRAL_X = 1e-290

METHODS = ("series-F", "series-poisson", "complement", "quadrature-oracle", "central")


def default_eps() -> float:
    """Series tolerance; ``MARCUM_EPS`` in the environment overrides the default."""
    raw = os.environ.get("MARCUM_EPS")
    if not raw:
        return DEFAULT_EPS
    try:
        eps = float(raw)
    except ValueError:
        raise DomainError(f"MARCUM_EPS={raw!r} is not a number") from None
    if not (0.0 < eps < 1.0):
        raise DomainError(f"MARCUM_EPS={raw!r} must lie in (0, 1)")
    return eps


@dataclass(frozen=True)
class MarcumPoint:
    """Order ``mu``, non-centrality ``x >= 0`` and threshold ``y > 0``."""

    mu: float
    x: float
    y: float

    def __post_init__(self) -> None:
        for name in ("mu", "x", "y"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise DomainError(f"{name}={v!r} must be a finite real")
        if self.x < 0.0:
            raise DomainError(f"x={self.x} must be nonnegative")
        if self.y <= 0.0:
            raise DomainError(f"y={self.y} must be positive")

    @property
    def is_central(self) -> bool:
        return self.x < CENTRAL_X

    @property
    def t(self) -> float:
        """Bessel argument ``2 sqrt(x y)``."""
        return 2.0 * math.sqrt(self.x * self.y)

    def shifted(self, dmu: float) -> "MarcumPoint":
        return MarcumPoint(self.mu + dmu, self.x, self.y)


@dataclass(frozen=True)
class EvalReport:
    value: float
    abs_error_est: float
    terms_used: int
    method: str
    # same value without underflow; None when the float is exact enough
    scaled: Optional[LogScaled] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not self.abs_error_est >= 0.0:
            raise ValueError("abs_error_est must be nonnegative")

    @property
    def as_scaled(self) -> LogScaled:
        if self.scaled is not None:
            return self.scaled
        return LogScaled.from_float(self.value)


def _as_point(p: MarcumPoint | tuple) -> MarcumPoint:
    return p if isinstance(p, MarcumPoint) else MarcumPoint(*p)


# density kernel -------------------------------------------------------------

def _kernel_series(mu: float, x: float, y: float) -> LogScaled:
    # y^mu e^(-x-y) / Gamma(mu+1) * sum_k (xy)^k / (k! (mu+1)_k), for mu > -1
    z = x * y
    s = 1.0
    term = 1.0
    k = 0
    extra = 0
    while z > 0.0:
        k += 1
        term *= z / (k * (mu + k))
        s += term
        if term <= 1e-17 * s:
            break
        if s > 1e280:
            s = math.ldexp(s, -900)
            term = math.ldexp(term, -900)
            extra += 900
    return power_exp_over_gamma(mu, y) * LogScaled.from_log(-x) * LogScaled.normalize(s, extra)


def _kernel(mu: float, x: float, y: float) -> LogScaled:
    if mu < -1.0:
        raise DomainError(f"F_mu needs mu >= -1, got mu={mu}")
    if x < CENTRAL_X:
        if mu == -1.0:
            return ZERO
        return power_exp_over_gamma(mu, y)
    if mu == -1.0:
        # I_{-1} = I_1, hence F_{-1} = (x/y) F_1
        return _kernel(1.0, x, y) * LogScaled.from_float(x / y)
    t = 2.0 * math.sqrt(x * y)
    if t < max(SERIES_T_MIN, mu):
        return _kernel_series(mu, x, y)
    # e^(-x-y) I_mu(t) = e^(-(sqrt x - sqrt y)^2) * e^(-t) I_mu(t)
    d = (x - y) / (math.sqrt(x) + math.sqrt(y))
    half = 0.5 * mu
    return (pow_scaled(y, half) / pow_scaled(x, half) * LogScaled.from_log(-d * d)
            * bessel_i_scaled(mu, t))


def f_kernel(p: MarcumPoint | tuple) -> LogScaled:
    """``F_mu(x, y) = (y/x)**(mu/2) e**(-x-y) I_mu(2 sqrt(x y))`` for ``mu >= -1``.

    At ``x = 0`` this is the limit ``y**mu e**-y / Gamma(mu+1)``.
    """
    p = _as_point(p)
    return _kernel(p.mu, p.x, p.y)


def f_kernel_signed(mu: float, x: float, y: float) -> float:
    """``F_mu`` for ``mu >= -2`` as a signed float.

    Orders in ``[-2, -1)`` can make ``I_mu`` negative; they come from
    ``F_{v-1} = (x/y) F_{v+1} + (v/y) F_v`` with ``v = mu + 1`` in ``[-1, 0)``.
    """
    if mu >= -1.0:
        return _kernel(mu, x, y).to_float()
    if mu < -2.0:
        raise DomainError(f"F_mu needs mu >= -2, got mu={mu}")
    v = mu + 1.0
    if x < CENTRAL_X:
        return math.pow(y, mu) * math.exp(-y) * rgamma(mu + 1.0)
    return (x / y) * _kernel(v + 1.0, x, y).to_float() + (v / y) * _kernel(v, x, y).to_float()


def c_coefficient(p: MarcumPoint | tuple, shift: int = 0) -> float:
    """``c_{mu+shift}(x, y) = sqrt(y/x) I_nu(2 sqrt(xy)) / I_{nu-1}(2 sqrt(xy))``.

    Equal to ``F_nu / F_{nu-1}``; at ``x = 0`` it is ``y / nu``.
    """
    p = _as_point(p)
    nu = p.mu + shift
    if nu < 0.0:
        raise DomainError(f"c_nu needs nu >= 0, got nu={nu}")
    if p.is_central:
        if nu == 0.0:
            raise DomainError("c_0(0, y) is infinite")
        return p.y / nu
    return math.sqrt(p.y / p.x) * bessel_ratio(nu, p.t)


def _c_chunk(p: MarcumPoint, nu: float, count: int) -> list[float]:
    """``[c_nu, ..., c_{nu+count-1}]`` at ``(x, y)``."""
    if p.is_central:
        return [p.y / (nu + i) for i in range(count)]
    s = math.sqrt(p.y / p.x)
    return [s * g for g in ratio_sequence(nu, count, p.t)]


# P by the F-series ----------------------------------------------------------

def _p_series(p: MarcumPoint, eps: float, max_terms: int) -> tuple[LogScaled, LogScaled, int]:
    """``P_mu = sum_k F_{mu+k}`` as ``(value, tail_bound, terms)``.

    Terms grow by ``c_{mu+k+1}``, which decreases in the order; once it is
    below one the remainder is at most ``term * c / (1 - c)``.
    """
    f0 = _kernel(p.mu, p.x, p.y)
    if f0.is_zero:
        return ZERO, ZERO, 1
    s = 1.0
    term = 1.0
    extra = 0
    k = 0
    chunk = 32
    cs: list[float] = []
    idx = 0
    while True:
        if idx == len(cs):
            cs = _c_chunk(p, p.mu + k + 1.0, chunk)
            idx = 0
            chunk = min(2 * chunk, 4096)
        c = cs[idx]
        idx += 1
        if c < 1.0:
            tail = term * c / (1.0 - c)
            if tail <= eps * s:
                break
        term *= c
        s += term
        k += 1
        if k >= max_terms:
            raise ConvergenceError(f"F-series exceeded {max_terms} terms at {p}")
        if s > 1e280:
            s = math.ldexp(s, -900)
            term = math.ldexp(term, -900)
            extra += 900
    value = f0 * LogScaled.normalize(s, extra)
    tail_bound = f0 * LogScaled.normalize(tail, extra)
    return value, tail_bound, k + 1


def _central_report(mu: float, y: float, want_q: bool) -> EvalReport:
    pp, qq = incgamma_regularized_scaled(mu, y)
    v = qq if want_q else pp
    f = v.to_float()
    return EvalReport(f, 4e-15 * f, 1, "central", v)


def marcum_p(p: MarcumPoint | tuple, *, eps: Optional[float] = None,
             max_terms: int = DEFAULT_MAX_TERMS) -> EvalReport:
    """``P_mu(x, y)`` for ``mu > 0`` from the series of densities ``F_{mu+k}``."""
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(
            f"P_mu is only defined for mu > 0 (got mu={p.mu}); at mu = 0 it is "
            "discontinuous and Q_0 + P_0 = 1 - exp(-x)")
    if p.is_central:
        return _central_report(p.mu, p.y, want_q=False)
    eps = default_eps() if eps is None else eps
    value, tail, n = _p_series(p, eps, max_terms)
    v = value.to_float()
    err = tail.to_float() + 2e-15 * v
    return EvalReport(min(v, 1.0), err, n, "series-F", value)


# Q by the Poisson mixture ---------------------------------------------------

def mixture_q(p: MarcumPoint | tuple, *, eps: Optional[float] = None,
              max_terms: int = DEFAULT_MAX_TERMS) -> EvalReport:
    """``Q_mu(x, y) = e**-x sum_k x**k / k! Q(mu+k, y)`` for ``mu > -2``.

    The remainder after term ``k`` is bounded geometrically with ratio
    ``x/(k+1) * (1 + y/(mu+k))``, which dominates ``w_{k+1} Q_{mu+k+1} / (w_k Q_{mu+k})``
    once ``mu + k >= 1``.
    """
    p = _as_point(p)
    mu, x, y = p.mu, p.x, p.y
    if mu <= -2.0:
        raise DomainError(f"Poisson mixture needs mu > -2, got mu={mu}")
    eps = default_eps() if eps is None else eps
    signed = 0.0  # contributions of orders <= 0, which may be negative
    k = 0
    while mu + k <= 0.0:
        w = power_exp_over_gamma(float(k), x).to_float()
        signed += w * q_regularized_signed(mu + k, y)
        k += 1
    a = mu + k
    _, q = incgamma_regularized_scaled(a, y)
    d = power_exp_over_gamma(a, y)  # Q(a+1, y) - Q(a, y)
    terms: list[LogScaled] = []
    running = ZERO
    tail = ZERO
    while True:
        w = power_exp_over_gamma(float(k), x) if x > 0.0 else (ONE if k == 0 else ZERO)
        term = w * q
        terms.append(term)
        running = running + term
        if x == 0.0:
            break
        if a >= 1.0 and k + 1 > x:
            r = x / (k + 1.0) * (1.0 + y / a)
            if r < 1.0:
                tail = term * LogScaled.from_float(r / (1.0 - r))
                if tail.is_zero or (not running.is_zero and tail.ratio(running) <= eps):
                    break
        if len(terms) >= max_terms:
            raise ConvergenceError(f"Poisson mixture exceeded {max_terms} terms at {p}")
        q = q + d
        d = d * LogScaled.from_float(y / (a + 1.0))
        a += 1.0
        k += 1
    total = _sum_scaled(terms)
    if signed != 0.0:
        v = total.to_float() + signed
        return EvalReport(v, abs(signed) * 1e-14 + 1e-15 * abs(v), len(terms) + k,
                          "series-poisson", None)
    v = total.to_float()
    return EvalReport(v, tail.to_float() + 4e-15 * v, len(terms), "series-poisson", total)


def _sum_scaled(terms: list[LogScaled]) -> LogScaled:
    nz = [t for t in terms if not t.is_zero]
    if not nz:
        return ZERO
    top = max(t.exponent for t in nz)
    s = math.fsum(math.ldexp(t.mantissa, t.exponent - top) for t in nz)
    return LogScaled.normalize(s, top)


def marcum_q(p: MarcumPoint | tuple, *, eps: Optional[float] = None,
             max_terms: int = DEFAULT_MAX_TERMS) -> EvalReport:
    """``Q_mu(x, y)``, choosing the evaluation that avoids cancellation.

    For ``mu > 0`` and ``y < x + mu`` (roughly where ``Q > 1/2``) the answer is
    ``1 - P`` with ``P`` from the F-series; otherwise the Poisson mixture is
    summed directly.  ``mu`` may go down to ``-2`` through the mixture.
    """
    p = _as_point(p)
    if p.mu <= -2.0:
        raise DomainError(f"Q_mu is evaluated for mu > -2, got mu={p.mu}")
    if p.is_central:
        if p.mu > 0.0:
            return _central_report(p.mu, p.y, want_q=True)
        v = q_regularized_signed(p.mu, p.y)
        return EvalReport(v, 1e-14 * abs(v), 1, "central", None)
    if p.mu > 0.0 and p.y < p.x + p.mu:
        rep = marcum_p(p, eps=eps, max_terms=max_terms)
        v = 1.0 - rep.value
        return EvalReport(v, rep.abs_error_est + 1.2e-16, rep.terms_used, "complement", None)
    return mixture_q(p, eps=eps, max_terms=max_terms)


def marcum_pq_scaled(p: MarcumPoint | tuple) -> tuple[LogScaled, LogScaled]:
    """``(P, Q)`` for ``mu > 0`` with the smaller one computed directly."""
    p = _as_point(p)
    if p.is_central:
        return incgamma_regularized_scaled(p.mu, p.y)
    q = marcum_q(p)
    if q.method == "complement":
        pr = marcum_p(p)
        return pr.as_scaled, q.as_scaled
    qs = q.as_scaled
    return LogScaled.from_float(max(0.0, 1.0 - q.value)), qs


# derivatives ----------------------------------------------------------------

def dq_dy(p: MarcumPoint | tuple) -> float:
    """``dQ_mu/dy = Q_{mu-1} - Q_mu = -F_{mu-1}`` for ``mu > 1``."""
    p = _as_point(p)
    if p.mu <= 1.0:
        raise DomainError(f"dq_dy needs mu > 1, got mu={p.mu}")
    return -_kernel(p.mu - 1.0, p.x, p.y).to_float()


def dq_dx(p: MarcumPoint | tuple) -> float:
    """``dQ_mu/dx = Q_{mu+1} - Q_mu = F_mu`` for ``mu > 0``."""
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"dq_dx needs mu > 0, got mu={p.mu}")
    return _kernel(p.mu, p.x, p.y).to_float()


# positivity for negative orders ---------------------------------------------

def q_positivity_threshold(mu0: float, y: float) -> float:
    """``L_{mu0}(y)``: ``x >= L`` makes ``Q_mu(x, y) > 0`` for every ``mu >= mu0``."""
    if not (math.isfinite(mu0) and math.isfinite(y)):
        raise DomainError("non-finite argument")
    if not (-1.0 < mu0 < 0.0):
        raise DomainError(f"mu0={mu0} must lie in (-1, 0)")
    if y <= 0.0:
        raise DomainError(f"y={y} must be positive")
    return (math.hypot(y - mu0 - 2.0, 2.0 * math.sqrt(y)) - y - mu0) / (2.0 * y)


def _in_even_band(mu: float) -> bool:
    # mu in [-2k, -2k+1] for some integer k >= 1 (endpoints included)
    s = -mu
    if s < 1.0:
        return False
    return math.floor(s) % 2 == 1 or s == math.floor(s)


def is_q_positive_guaranteed(p: MarcumPoint | tuple) -> bool:
    """True when one of the sufficient conditions for ``Q_mu(x, y) > 0`` holds.

    False means "no guarantee", not "negative".
    """
    p = _as_point(p)
    mu, x, y = p.mu, p.x, p.y
    if mu > 0.0:
        return True
    if mu >= -2.0 and x * y >= 1.0:
        return True
    if _in_even_band(mu):
        # at x = 0 integer orders give Q = 0 exactly
        return x > 0.0 or mu != math.floor(mu)
    if mu == 0.0:
        return x > 0.0
    if -1.0 < mu < 0.0:
        return x >= q_positivity_threshold(mu, y)
    return False
