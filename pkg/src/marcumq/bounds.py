"""Bounds for ``P_mu``, ``Q_mu`` and the ratios ``P_{mu+1}/P_mu``, ``Q_{mu+1}/Q_mu``.

Every bound is returned as a :class:`BoundEvaluation` carrying its own
validity flag; outside the validity region the number is still reported but
carries no guarantee.  Region boundaries (for instance ``y == x + mu``) count
as outside.

Bounds on ``Q`` that are naturally bounds on ``P`` (and vice versa) also carry
the complementary quantity computed directly, so a tiny ``P`` hidden behind
``Q = 1 - P`` keeps its digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .core import (MarcumPoint, _as_point, _c_chunk, _kernel, c_coefficient,
                   f_kernel_signed, marcum_p, marcum_q)
from .errors import DomainError, InvalidRegionError
from .incgamma import incgamma_regularized, incgamma_regularized_scaled
from ._special import power_exp_over_gamma
from .logscaled import ONE, ZERO, LogScaled

SIDES = ("lower", "upper")
TARGETS = ("Q", "P", "ratioP", "ratioQ")
Q_BOUND_IDS = ("MES1", "MES2", "MES3", "MAS1", "MAS2", "MAS3")


@dataclass(frozen=True)
class BoundEvaluation:
    id: str
    side: str
    target: str
    value: float
    valid: bool
    condition: str
    # the value without underflow, when it is a nonnegative quantity computed directly
    scaled: Optional[LogScaled] = None
    # 1 - value computed directly: the matching bound on the complementary function
    complement: Optional[LogScaled] = None

    def __post_init__(self) -> None:
        if self.side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}, got {self.side!r}")
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")

    @property
    def complement_side(self) -> str:
        return "upper" if self.side == "lower" else "lower"


@dataclass(frozen=True)
class RatioBoundsN:
    """``l^(n) < P_{mu+1}/P_mu < u^(n)``."""

    n: int
    lower: float
    upper: float


def _f(p: MarcumPoint, dmu: float = 0.0) -> LogScaled:
    return _kernel(p.mu + dmu, p.x, p.y)


def _inv_c(p: MarcumPoint, nu: float) -> float:
    """``1 / c_nu``; zero for the infinite ``c_0(0, y)``."""
    if p.is_central:
        return nu / p.y
    return 1.0 / c_coefficient(p.shifted(nu - p.mu))


def _eval(id_: str, side: str, target: str, value: float, valid: bool, cond: str,
          scaled: Optional[LogScaled] = None,
          complement: Optional[LogScaled] = None) -> BoundEvaluation:
    return BoundEvaluation(id_, side, target, value, bool(valid), cond, scaled, complement)


def _with_complement(id_: str, side: str, target: str, comp: LogScaled, valid: bool,
                     cond: str) -> BoundEvaluation:
    # the bound is 1 - comp on the target; comp itself bounds the complement
    return _eval(id_, side, target, 1.0 - comp.to_float(), valid, cond, None, comp)


def _direct(id_: str, side: str, target: str, val: LogScaled, valid: bool,
            cond: str) -> BoundEvaluation:
    return _eval(id_, side, target, val.to_float(), valid, cond, val,
                 LogScaled.from_float(max(0.0, 1.0 - val.to_float())))


# ratio bounds ---------------------------------------------------------------

def ratio_p_simple(p: MarcumPoint | tuple) -> tuple[BoundEvaluation, BoundEvaluation]:
    """``c/(1+c) < P_{mu+1}/P_mu < min(1, c)`` with ``c = c_{mu+1}``; ``(lower, upper)``."""
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"ratio bounds for P need mu > 0, got mu={p.mu}")
    c = c_coefficient(p, 1)
    cond = "mu > 0"
    return (_eval("RP_LOWER_CF1", "lower", "ratioP", c / (1.0 + c), True, cond),
            _eval("RP_UPPER_MIN", "upper", "ratioP", min(1.0, c), True, cond))


def _rel_f(p: MarcumPoint, count: int) -> list[LogScaled]:
    """``[F_mu, ..., F_{mu+count-1}] / F_mu`` as LogScaled products of ``c``."""
    out = [ONE]
    if count <= 1:
        return out
    cs = _c_chunk(p, p.mu + 1.0, count - 1)
    acc = ONE
    for c in cs:
        acc = acc * LogScaled.from_float(c)
        out.append(acc)
    return out


def _lsum(vals: list[LogScaled]) -> LogScaled:
    nz = [v for v in vals if not v.is_zero]
    if not nz:
        return ZERO
    top = max(v.exponent for v in nz)
    return LogScaled.normalize(math.fsum(math.ldexp(v.mantissa, v.exponent - top) for v in nz), top)


def ratio_p_convergent(p: MarcumPoint | tuple, n: int) -> RatioBoundsN:
    """Partial-sum brackets ``l^(n) < P_{mu+1}/P_mu < u^(n)``.

    ``l = sum_{k=0..n} F_{mu+k+1} / sum_{k=0..n+1} F_{mu+k}`` and
    ``u = sum_{k=0..n} F_{mu+k+1} / sum_{k=0..n} F_{mu+k}``; ``l^(n)`` is also the
    n-th approximant of the continued fraction generated by the recurrence.
    """
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"ratio bounds for P need mu > 0, got mu={p.mu}")
    if n < 0:
        raise DomainError(f"n={n} must be nonnegative")
    r = _rel_f(p, n + 2)
    num = _lsum(r[1:])
    lower = num.ratio(_lsum(r))
    upper = num.ratio(_lsum(r[:-1]))
    return RatioBoundsN(n, lower, upper)


def ratio_p_cf_upper(p: MarcumPoint | tuple, k: int = 0) -> float:
    """Continued fraction for ``P_{mu+1}/P_mu`` cut after ``k+1`` levels with the tail
    replaced by its upper bound ``c_{mu+k+2}``.

    For ``k = 0`` this is ``c_{mu+1} / (1 + c_{mu+1} - c_{mu+2})``.
    """
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"ratio bounds for P need mu > 0, got mu={p.mu}")
    if k < 0:
        raise DomainError(f"k={k} must be nonnegative")
    cs = _c_chunk(p, p.mu + 1.0, k + 2)
    tail = cs[-1]
    for c in reversed(cs[:-1]):
        den = 1.0 + c - tail
        if not den > 0.0:
            raise InvalidRegionError(f"continued fraction denominator {den} <= 0 at {p}")
        tail = c / den
    return tail


def ratio_q_bounds(p: MarcumPoint | tuple) -> tuple[BoundEvaluation, BoundEvaluation]:
    """``max(1, c_mu) < Q_{mu+1}/Q_mu < 1 + c_mu``; ``(lower, upper)``.

    The lower bound needs ``mu >= 0``; the upper one ``mu >= 1``, or ``mu >= 0``
    when ``x y >= 1``.
    """
    p = _as_point(p)
    if p.mu < 0.0:
        raise DomainError(f"ratio bounds for Q need mu >= 0, got mu={p.mu}")
    if p.is_central and p.mu == 0.0:
        c = math.inf
    else:
        c = c_coefficient(p, 0)
    up_ok = p.mu >= 1.0 or (p.x * p.y >= 1.0)
    return (_eval("RQ_LOWER_MAX", "lower", "ratioQ", max(1.0, c), True, "mu >= 0"),
            _eval("RQ_UPPER_FWD", "upper", "ratioQ", 1.0 + c, up_ok,
                  "mu >= 1, or mu >= 0 with x*y >= 1"))


# bounds on Q ----------------------------------------------------------------

def _signed_f(p: MarcumPoint, nu: float) -> float:
    return f_kernel_signed(nu, p.x, p.y)


def q_bound(id_: str, p: MarcumPoint | tuple) -> BoundEvaluation:
    """One of the six summary bounds on ``Q_mu(x, y)``.

    ====  =====  ==========================================  =====================================
    id    side   formula                                      region
    ====  =====  ==========================================  =====================================
    MES1  lower  ``1 - F_mu / (1 - c_{mu+1})``                ``mu > 0, y < x + mu + 1/2``
    MES2  upper  ``F_mu / (c_mu - 1)``                        ``mu >= 0, y > x + mu``
    MES3  upper  ``F_{mu-1} / (1 - 1/c_{mu-1})``              ``mu >= 1, y > x + mu - 1``
    MAS1  upper  ``1 - (1 + c_{mu+1}) F_mu``                  ``mu > 0``
    MAS2  lower  ``F_{mu-1}``                                 ``mu >= 1`` (``mu >= -1`` if ``xy >= 1``)
    MAS3  lower  ``F_{mu-1} + F_{mu-2}``                      ``mu >= 2`` (``mu >= 0`` if ``xy >= 1``)
    ====  =====  ==========================================  =====================================
    """
    p = _as_point(p)
    mu, x, y = p.mu, p.x, p.y
    nan = math.nan
    if id_ == "MES1":
        cond = "mu > 0 and y < x + mu + 1/2"
        valid = mu > 0.0 and y < x + mu + 0.5
        if mu <= -1.0:
            return _eval(id_, "lower", "Q", nan, False, cond)
        c = c_coefficient(p, 1)
        if c >= 1.0:
            return _eval(id_, "lower", "Q", -math.inf, False, cond)
        comp = _f(p) / LogScaled.from_float(1.0 - c)
        return _with_complement(id_, "lower", "Q", comp, valid, cond)
    if id_ == "MES2":
        cond = "mu >= 0 and y > x + mu"
        valid = mu >= 0.0 and y > x + mu and not (p.is_central and mu == 0.0)
        if mu < 0.0 or (p.is_central and mu == 0.0):
            return _eval(id_, "upper", "Q", nan, False, cond)
        c = c_coefficient(p, 0)
        if c <= 1.0:
            return _eval(id_, "upper", "Q", math.inf, False, cond)
        return _direct(id_, "upper", "Q", _f(p) / LogScaled.from_float(c - 1.0), valid, cond)
    if id_ == "MES3":
        cond = "mu >= 1 and y > x + mu - 1"
        valid = mu >= 1.0 and y > x + mu - 1.0
        if mu < 1.0:
            return _eval(id_, "upper", "Q", nan, False, cond)
        ic = _inv_c(p, mu - 1.0)
        if ic >= 1.0:
            return _eval(id_, "upper", "Q", math.inf, False, cond)
        return _direct(id_, "upper", "Q", _f(p, -1.0) / LogScaled.from_float(1.0 - ic), valid, cond)
    if id_ == "MAS1":
        cond = "mu > 0"
        if mu <= -1.0:
            return _eval(id_, "upper", "Q", nan, False, cond)
        c = c_coefficient(p, 1)
        comp = _f(p) * LogScaled.from_float(1.0 + c)
        return _with_complement(id_, "upper", "Q", comp, mu > 0.0, cond)
    if id_ == "MAS2":
        cond = "mu >= 1, or mu >= -1 with x*y >= 1"
        valid = mu >= 1.0 or (mu >= -1.0 and x * y >= 1.0)
        if mu < -1.0:
            return _eval(id_, "lower", "Q", nan, False, cond)
        if mu >= 0.0:
            return _direct(id_, "lower", "Q", _f(p, -1.0), valid, cond)
        return _eval(id_, "lower", "Q", _signed_f(p, mu - 1.0), valid, cond)
    if id_ == "MAS3":
        cond = "mu >= 2, or mu >= 0 with x*y >= 1"
        valid = mu >= 2.0 or (mu >= 0.0 and x * y >= 1.0)
        if mu < 0.0:
            return _eval(id_, "lower", "Q", nan, False, cond)
        if mu >= 2.0:
            f1 = _f(p, -1.0)
            return _direct(id_, "lower", "Q", f1 * LogScaled.from_float(1.0 + _inv_c(p, mu - 1.0)),
                           valid, cond)
        if mu >= 1.0:
            return _direct(id_, "lower", "Q", _f(p, -1.0) + _f(p, -2.0), valid, cond)
        v = _signed_f(p, mu - 1.0) + _signed_f(p, mu - 2.0)
        return _eval(id_, "lower", "Q", v, valid, cond)
    raise DomainError(f"unknown Q bound id {id_!r}; expected one of {Q_BOUND_IDS}")


# bounds on P ----------------------------------------------------------------

def p_bound_mes1(p: MarcumPoint | tuple) -> BoundEvaluation:
    """``P_mu < F_mu / (1 - c_{mu+1})``, the P-side reading of MES1."""
    p = _as_point(p)
    cond = "mu > 0 and y < x + mu + 1/2"
    valid = p.mu > 0.0 and p.y < p.x + p.mu + 0.5
    c = c_coefficient(p, 1)
    if c >= 1.0:
        return _eval("P_UPPER_MES1", "upper", "P", math.inf, False, cond)
    return _direct("P_UPPER_MES1", "upper", "P", _f(p) / LogScaled.from_float(1.0 - c), valid, cond)


def p_bound_mas1(p: MarcumPoint | tuple) -> BoundEvaluation:
    """``P_mu > (1 + c_{mu+1}) F_mu``, the P-side reading of MAS1."""
    p = _as_point(p)
    return _direct("P_LOWER_MAS1", "lower", "P", _f(p) * LogScaled.from_float(1.0 + c_coefficient(p, 1)),
                   p.mu > 0.0, "mu > 0")


def p_bound_better(p: MarcumPoint | tuple) -> BoundEvaluation:
    """``P_mu < (1 + c_{mu+1} / (1 - c_{mu+2})) F_mu`` for ``y < x + mu + 3/2``."""
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"P bounds need mu > 0, got mu={p.mu}")
    cond = "mu > 0 and y < x + mu + 3/2"
    valid = p.y < p.x + p.mu + 1.5
    c1, c2 = _c_chunk(p, p.mu + 1.0, 2)
    if c2 >= 1.0:
        return _eval("P_UPPER_BETTER", "upper", "P", math.inf, False, cond)
    return _direct("P_UPPER_BETTER", "upper", "P",
                   _f(p) * LogScaled.from_float(1.0 + c1 / (1.0 - c2)), valid, cond)


def p_upper_superior(p: MarcumPoint | tuple, n: int) -> BoundEvaluation:
    """``U^(n) = F_mu * sum_{k=0..n} F_{mu+k} / (F_mu - F_{mu+n+1})`` if ``F_mu > F_{mu+n+1}``."""
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"P bounds need mu > 0, got mu={p.mu}")
    if n < 0:
        raise DomainError(f"n={n} must be nonnegative")
    r = _rel_f(p, n + 2)
    cond = f"F_mu > F_(mu+{n + 1})"
    last = r[-1]
    if last >= ONE:
        return _eval("P_UPPER_SUPERIOR", "upper", "P", math.inf, False, cond)
    s = _lsum(r[:-1])
    val = _f(p) * s / (ONE - last)
    return _direct("P_UPPER_SUPERIOR", "upper", "P", val, True, cond)


InnerBound = Callable[[MarcumPoint], BoundEvaluation]


def _inner_zero(p: MarcumPoint) -> BoundEvaluation:
    return _direct("ZERO", "lower", "P", ZERO, True, "always")


def _inner_exact(p: MarcumPoint) -> BoundEvaluation:
    rep = marcum_p(p)
    return _direct("EXACT", "lower", "P", rep.as_scaled, True, "identity")


def inner_superior(q: int) -> InnerBound:
    def inner(p: MarcumPoint) -> BoundEvaluation:
        return p_upper_superior(p, q)
    return inner


INNER_BOUNDS: dict[str, InnerBound] = {
    "zero": _inner_zero,
    "mas1": p_bound_mas1,
    "mes1": p_bound_mes1,
    "betterlo": p_bound_better,
    "superior": inner_superior(0),
    "exact": _inner_exact,
}


def p_bound_sequence(p: MarcumPoint | tuple, n: int,
                     inner: Union[str, InnerBound] = "zero") -> BoundEvaluation:
    """``B^(n) = B_{mu+n+1} + sum_{k=0..n} F_{mu+k}`` for an inner bound ``B`` on ``P``.

    The result has the side of the inner bound and its validity at order
    ``mu + n + 1``.  With the zero lower bound this is the plain partial sum.
    """
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"P bounds need mu > 0, got mu={p.mu}")
    if n < 0:
        raise DomainError(f"n={n} must be nonnegative")
    name = inner if isinstance(inner, str) else getattr(inner, "__name__", "custom")
    fn = INNER_BOUNDS[inner] if isinstance(inner, str) else inner
    b = fn(p.shifted(n + 1.0))
    f0 = _f(p)
    partial = f0 * _lsum(_rel_f(p, n + 1))
    cond = f"inner {b.id} valid at mu+{n + 1}: {b.condition}"
    if b.scaled is None:
        return _eval(f"P_SEQ_{name.upper()}", b.side, "P", math.inf, False, cond)
    return _direct(f"P_SEQ_{name.upper()}", b.side, "P", partial + b.scaled, b.valid, cond)


def p_bounds_gamma_series(p: MarcumPoint | tuple, n: int) -> tuple[BoundEvaluation, BoundEvaluation]:
    """Truncations of ``P_mu(x, y) = e**-x sum_k x**k/k! P(mu+k, y)``; ``(lower, upper)``.

    The upper bound ``1 - e**-x sum_{k<=n} x**k/k! Q(mu+k, y)`` is evaluated as
    ``sum_{k<=n} w_k P(mu+k, y) + Pr[N > n]`` with ``N ~ Poisson(x)``, which is the
    same number without cancellation.
    """
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"P bounds need mu > 0, got mu={p.mu}")
    if n < 0:
        raise DomainError(f"n={n} must be nonnegative")
    lower_terms = []
    q_terms = []
    for k in range(n + 1):
        w = power_exp_over_gamma(float(k), p.x) if p.x > 0.0 else (ONE if k == 0 else ZERO)
        pk, qk = incgamma_regularized_scaled(p.mu + k, p.y)
        lower_terms.append(w * pk)
        q_terms.append(w * qk)
    low = _lsum(lower_terms)
    tail = (LogScaled.from_float(incgamma_regularized(n + 1.0, p.x)[0]) if p.x > 0.0 else ZERO)
    up = low + tail
    q_sum = _lsum(q_terms)
    cond = "mu > 0"
    # complements: 1 - low = sum w_k Q(mu+k, y) + Pr[N > n], 1 - up = sum w_k Q(mu+k, y)
    lower = _eval("P_LOWER_GSERIES", "lower", "P", low.to_float(), True, cond, low, q_sum + tail)
    upper = _eval("P_UPPER_GSERIES", "upper", "P", up.to_float(), True, cond, up, q_sum)
    return lower, upper


# Turan-type determinants ----------------------------------------------------

def _pq_triplet(p: MarcumPoint, target: str) -> tuple[float, float]:
    """``(D, scale)`` with ``D = f_{mu+1}^2 - f_mu f_{mu+2}`` and ``scale = f_{mu+1}^2``."""
    vals = []
    for d in (0.0, 1.0, 2.0):
        q = p.shifted(d)
        vals.append(marcum_p(q).as_scaled if target == "P" else marcum_q(q).as_scaled)
    a = vals[1] * vals[1]
    b = vals[0] * vals[2]
    if a.is_zero:
        return 0.0, 0.0
    rel = 1.0 - b.ratio(a)
    return rel * a.to_float(), rel


def turan_noncentral_relative(p: MarcumPoint | tuple, target: str) -> float:
    """``(f_{mu+1}^2 - f_mu f_{mu+2}) / f_{mu+1}^2`` for ``f = P`` or ``f = Q``.

    When ``f`` is close to one the determinant is rebuilt from the other
    function: ``D_Q = D_P + F_mu - F_{mu+1}``, where both pieces are positive.
    """
    p = _as_point(p)
    if p.mu <= 0.0:
        raise DomainError(f"Turan determinant needs mu > 0, got mu={p.mu}")
    if target not in ("P", "Q"):
        raise DomainError(f"target must be 'P' or 'Q', got {target!r}")
    q0 = marcum_q(p)
    q_small = q0.value <= 0.5
    if (target == "Q") == q_small:
        _, rel = _pq_triplet(p, target)
        return rel
    other = "P" if target == "Q" else "Q"
    vals = []
    for d in (0.0, 1.0, 2.0):
        q = p.shifted(d)
        vals.append(marcum_p(q).as_scaled if other == "P" else marcum_q(q).as_scaled)
    d_other = vals[1] * vals[1]
    prod = vals[0] * vals[2]
    # F_mu - F_{mu+1} = F_mu (1 - c_{mu+1}); D_target = D_other + sign * F_mu (1 - c)
    c = c_coefficient(p, 1)
    fm = _f(p).to_float()
    diff_other = d_other.to_float() - prod.to_float()
    if target == "Q":
        d = diff_other + fm * (1.0 - c)
    else:
        d = diff_other - fm * (1.0 - c)
    own = (1.0 - vals[1].to_float())
    if own <= 0.0:
        return 0.0
    return d / (own * own)


def turan_noncentral_check(p: MarcumPoint | tuple, target: str) -> float:
    """Turan determinant ``f_{mu+1}^2 - f_mu f_{mu+2}`` for ``f = P`` or ``f = Q``; positive."""
    p = _as_point(p)
    rel = turan_noncentral_relative(p, target)
    f1 = marcum_p(p.shifted(1.0)).value if target == "P" else marcum_q(p.shifted(1.0)).value
    return rel * f1 * f1
