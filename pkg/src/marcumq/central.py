"""Bounds and inequalities for the incomplete gamma functions ``gamma(a, y)``, ``Gamma(a, y)``.

These are the ``x -> 0`` limits of the Marcum bounds together with a few
classical bounds they are compared against.  All bounds are on the
unnormalized functions; ``r_a = (a+1)/(a+2)`` and ``L_a = y - a - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ._special import gamma_scaled, pow_scaled
from .errors import DomainError
from .incgamma import gamma_lower, gamma_ratio_H, gamma_ratio_h, gamma_upper
from .logscaled import LogScaled

CENTRAL_IDS = ("l1", "l2", "l3", "u1", "u2", "u3", "L1", "L2", "L3", "U1",
               "l_comb", "L_comb", "UQ", "lH", "LH", "b1_merkle",
               "h_upper", "h_lower_Lh", "H_upper", "p_ratio")
CENTRAL_TARGETS = ("gamma_lower_inc", "gamma_upper_inc", "ratio_h", "ratio_H")
L1_SERIES_TERMS = 2


@dataclass(frozen=True)
class GammaPoint:
    a: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.y)):
            raise DomainError(f"non-finite argument a={self.a!r}, y={self.y!r}")
        if self.y <= 0.0:
            raise DomainError(f"y={self.y} must be positive")


@dataclass(frozen=True)
class CentralBoundEvaluation:
    id: str
    side: str
    target: str
    value: float
    valid: bool
    condition: str
    scaled: Optional[LogScaled] = None


def _as_gpoint(g) -> GammaPoint:
    return g if isinstance(g, GammaPoint) else GammaPoint(*g)


def _base(a: float, y: float) -> LogScaled:
    """``y**a * exp(-y)``."""
    return pow_scaled(y, a) * LogScaled.from_log(-y)


def _plus_root(s: float, q: float) -> float:
    """``s + sqrt(s*s + q)`` for ``q >= 0`` without cancellation when ``s < 0``."""
    r = math.sqrt(s * s + q)
    if s >= 0.0:
        return s + r
    return q / (r - s)


def _mk(id_: str, side: str, target: str, val: Optional[LogScaled], valid: bool,
        cond: str, raw: Optional[float] = None) -> CentralBoundEvaluation:
    if val is None:
        v = math.nan if raw is None else raw
        return CentralBoundEvaluation(id_, side, target, v, bool(valid), cond, None)
    return CentralBoundEvaluation(id_, side, target, val.to_float(), bool(valid), cond, val)


def _l1(a: float, y: float, terms: int) -> LogScaled:
    # y^a e^-y sum_{j<terms} y^j / (a (a+1) ... (a+j)): leading terms of the series for gamma(a, y)
    s = 0.0
    t = 1.0 / a
    for j in range(terms):
        if j:
            t *= y / (a + j)
        s += t
    return _base(a, y) * LogScaled.from_float(s)


def _l2(a: float, y: float) -> LogScaled:
    r = (a + 1.0) / (a + 2.0)
    big_l = y - a - 1.0
    br = 2.0 * r + _plus_root(big_l, 4.0 * r * y)
    return _base(a, y) * LogScaled.from_float(br / (2.0 * a * r))


def _u1(a: float, y: float) -> Optional[LogScaled]:
    den = a + 1.0 - y
    if den <= 0.0:
        return None
    return _base(a, y) * LogScaled.from_float((a + 1.0) / (a * den))


def _big_l1(a: float, y: float) -> LogScaled:
    big_a = 0.0 if a < 2.0 else 1.0
    return _base(a - 1.0, y) * LogScaled.from_float(1.0 + big_a * (a - 1.0) / y)


def _big_l2(a: float, y: float) -> LogScaled:
    # 2 y^a e^-y / (y + 1 - a + sqrt((y-a-1)^2 + 4y)); (y-a-1)^2 + 4y = (y+1-a)^2 + 4a
    s = y + 1.0 - a
    q = (y - a - 1.0) ** 2 + 4.0 * y
    r = math.sqrt(q)
    den = s + r if s >= 0.0 else (q - s * s) / (r - s)
    return _base(a, y) * LogScaled.from_float(2.0 / den)


def _big_u1(a: float, y: float) -> Optional[LogScaled]:
    den = y + 1.0 - a
    if den <= 0.0:
        return None
    return _base(a, y) / LogScaled.from_float(den)


def _merkle(a: float, y: float) -> LogScaled:
    r = a / (a + 1.0)  # r_{a-1}
    big_l = y - a      # L_{a-1}
    return _base(a - 1.0, y) * LogScaled.from_float(_plus_root(big_l, 4.0 * r * y) / (2.0 * r))


def _pos_diff(big: LogScaled, small: Optional[LogScaled]) -> Optional[LogScaled]:
    if small is None or not big > small:
        return None
    return big - small


def _uq_excess(y: float) -> tuple[float, float]:
    """``(y - 1 + e**-y, 1 - (1 + y) e**-y)`` without cancellation."""
    if y < 1.0:
        num = 0.0
        den = 0.0
        term = 1.0
        for k in range(1, 40):
            term *= -y / k
            if k >= 2:
                num += term
                den += (k - 1) * term
            if abs(term) < 1e-18 * abs(num):
                break
        return num, den
    e = math.exp(-y)
    return y - 1.0 + e, 1.0 - (1.0 + y) * e


def central_bound(id_: str, g, *, terms: int = L1_SERIES_TERMS) -> CentralBoundEvaluation:
    """Evaluate bound ``id_`` at ``g = (a, y)``; outside its region ``valid`` is False.

    ``terms`` only affects ``l1``, the truncated power series of ``gamma(a, y)``
    (two terms is the classical form).
    """
    g = _as_gpoint(g)
    a, y = g.a, g.y
    gl, gu = "gamma_lower_inc", "gamma_upper_inc"
    if id_ == "l1":
        if a <= 0.0:
            return _mk(id_, "lower", gl, None, False, "a > 0")
        if terms < 1:
            raise DomainError(f"terms={terms} must be positive")
        return _mk(id_, "lower", gl, _l1(a, y, terms), True, "a > 0")
    if id_ == "l2":
        if a <= 0.0:
            return _mk(id_, "lower", gl, None, False, "a > 0")
        return _mk(id_, "lower", gl, _l2(a, y), True, "a > 0")
    if id_ == "u1":
        cond = "a > 0 and y < a + 1"
        if a <= 0.0:
            return _mk(id_, "upper", gl, None, False, cond)
        v = _u1(a, y)
        return _mk(id_, "upper", gl, v, v is not None, cond, math.inf)
    if id_ == "L1":
        cond = "a >= 1 (A = 0 if a < 2, else 1)"
        return _mk(id_, "lower", gu, _big_l1(a, y), a >= 1.0, cond)
    if id_ == "L2":
        return _mk(id_, "lower", gu, _big_l2(a, y), True, "any real a")
    if id_ == "U1":
        cond = "a >= 1 and y > a - 1"
        v = _big_u1(a, y)
        return _mk(id_, "upper", gu, v, a >= 1.0 and v is not None, cond, math.inf)
    if id_ == "b1_merkle":
        cond = "a > 1"
        if a <= 1.0:
            return _mk(id_, "lower", gl, None, False, cond)
        return _mk(id_, "lower", gl, _merkle(a, y), True, cond)
    if id_ == "UQ":
        cond = "a >= 1"
        v = pow_scaled(y, a - 1.0) * LogScaled.from_float(-math.expm1(-y) / a) if a > 0.0 else None
        return _mk(id_, "upper", gl, v, a >= 1.0, cond)
    if id_ in ("u2", "u3", "L3", "l3", "l_comb", "L_comb") and a <= 0.0:
        return _mk(id_, "upper" if id_[0] == "u" else "lower",
                   gu if id_[0] == "L" else gl, None, False, "a > 0")
    if id_ == "u2":
        v = _pos_diff(gamma_scaled(a), _big_l2(a, y))
        return _mk(id_, "upper", gl, v, True, "a > 0", -math.inf)
    if id_ == "u3":
        cands = [c for c in (_u1(a, y), _pos_diff(gamma_scaled(a), _big_l2(a, y))) if c is not None]
        if not cands:
            return _mk(id_, "upper", gl, None, False, "a > 0", math.inf)
        return _mk(id_, "upper", gl, min(cands), True, "a > 0")
    if id_ == "l3":
        cond = "a >= 1 (zero unless y > a - 1)"
        v = _pos_diff(gamma_scaled(a), _big_u1(a, y))
        return _mk(id_, "lower", gl, v if v is not None else LogScaled.from_float(0.0),
                   a >= 1.0, cond)
    if id_ == "L3":
        cond = "a > 0 (zero unless y < a + 1)"
        v = _pos_diff(gamma_scaled(a), _u1(a, y))
        return _mk(id_, "lower", gu, v if v is not None else LogScaled.from_float(0.0), True, cond)
    if id_ == "l_comb":
        cands = [_l2(a, y)]
        if a >= 1.0:
            v = _pos_diff(gamma_scaled(a), _big_u1(a, y))
            if v is not None:
                cands.append(v)
        if terms > L1_SERIES_TERMS:
            cands.append(_l1(a, y, terms))
        return _mk(id_, "lower", gl, max(cands), True, "a > 0")
    if id_ == "L_comb":
        cands = [_big_l2(a, y)]
        v = _pos_diff(gamma_scaled(a), _u1(a, y))
        if v is not None:
            cands.append(v)
        return _mk(id_, "lower", gu, max(cands), True, "a > 0")
    if id_ == "lH":
        cond = "a > 1"
        if a <= 1.0:
            return _mk(id_, "lower", gl, None, False, cond)
        d = math.exp(-math.lgamma(1.0 + a) / a)
        return _mk(id_, "lower", gl,
                   gamma_scaled(a) * LogScaled.from_log(a * math.log(-math.expm1(-d * y))), True, cond)
    if id_ == "LH":
        cond = "a > 1"
        if a <= 1.0:
            return _mk(id_, "lower", gu, None, False, cond)
        frac = -math.expm1(a * math.log1p(-math.exp(-y)))
        return _mk(id_, "lower", gu, gamma_scaled(a) * LogScaled.from_float(frac), True, cond)
    if id_ in ("h_upper", "h_lower_Lh"):
        cond = "a > 1"
        if a <= 1.0:
            return _mk(id_, "upper" if id_ == "h_upper" else "lower", "ratio_h", None, False, cond)
        s = y + a + math.sqrt((y - a) ** 2 + 4.0 * a * y / (a + 1.0))
        if id_ == "h_upper":
            return _mk(id_, "upper", "ratio_h", LogScaled.from_float(0.5 * (1.0 - 1.0 / a ** 2) * s),
                       True, cond)
        return _mk(id_, "lower", "ratio_h", LogScaled.from_float(2.0 * (a - 1.0) * y / s), True, cond)
    if id_ == "H_upper":
        v = 0.5 * (y + a + math.hypot(y - a, 2.0 * math.sqrt(y)))
        return _mk(id_, "upper", "ratio_H", LogScaled.from_float(v), True, "any real a")
    if id_ == "p_ratio":
        cond = "a > 1"
        if a <= 1.0:
            return _mk(id_, "upper", "ratio_h", None, False, cond)
        return _mk(id_, "upper", "ratio_h", LogScaled.from_float((a - 1.0) * y / a), True, cond)
    raise DomainError(f"unknown central bound id {id_!r}; expected one of {CENTRAL_IDS}")


def exact_value(target: str, a: float, y: float) -> LogScaled:
    """The quantity a central bound refers to, from :mod:`marcumq.incgamma`."""
    if target == "gamma_lower_inc":
        return gamma_lower(a, y)
    if target == "gamma_upper_inc":
        return gamma_upper(a, y)
    if target == "ratio_h":
        return LogScaled.from_float(gamma_ratio_h(a, y))
    if target == "ratio_H":
        return LogScaled.from_float(gamma_ratio_H(a, y))
    raise DomainError(f"unknown target {target!r}")


def turan_gamma_check(g, which: str) -> tuple[float, float, float]:
    """``(ratio, lower_ref, upper_ref)`` for ``f(a)**2 / (f(a+1) f(a-1))``.

    ``lower_incomplete`` (``f = gamma``, ``a > 1``): ``1 - 1/a < ratio < 1 - 1/a**2``.
    ``upper_incomplete`` (``f = Gamma``, any real ``a``): ``ratio < 1``, and
    ``ratio > (a-1)/a`` when ``a > 1`` (otherwise ``lower_ref`` is ``-inf``).
    """
    g = _as_gpoint(g)
    a, y = g.a, g.y
    if which == "lower_incomplete":
        if a <= 1.0:
            raise DomainError(f"lower-incomplete Turan ratio needs a > 1, got a={a}")
        f0, f1, f2 = gamma_lower(a - 1.0, y), gamma_lower(a, y), gamma_lower(a + 1.0, y)
        lo, hi = 1.0 - 1.0 / a, 1.0 - 1.0 / (a * a)
    elif which == "upper_incomplete":
        f0, f1, f2 = gamma_upper(a - 1.0, y), gamma_upper(a, y), gamma_upper(a + 1.0, y)
        lo, hi = ((a - 1.0) / a if a > 1.0 else -math.inf), 1.0
    else:
        raise DomainError(f"which must be 'lower_incomplete' or 'upper_incomplete', got {which!r}")
    return (f1 * f1).ratio(f0 * f2), lo, hi


def uq_threshold(y: float) -> float:
    """``(y - 1 + e**-y) / (1 - (y+1) e**-y)``; the denominator is positive for every ``y > 0``."""
    if not (y > 0.0 and math.isfinite(y)):
        raise DomainError(f"y={y} must be positive and finite")
    num, den = _uq_excess(y)
    return num / den


def uq_crossing(a: float, y: float) -> bool:
    """True iff ``u1`` is strictly sharper than the ``UQ`` bound at ``(a, y)``."""
    return a > uq_threshold(y)


MONOTONE_FAMILIES = {
    # family: (expected direction in a, minimum a (exclusive) or None)
    "p_a": ("increasing", 1.0),
    "h_a": ("increasing", 1.0),
    "H_a": ("increasing", None),
    "h_over_am1": ("decreasing", 1.0),
    "H_over_am1": ("decreasing", 1.0),
}


def _family_value(family: str, a: float, y: float) -> float:
    if family == "p_a":
        return a / (a - 1.0) * gamma_ratio_h(a, y)
    if family == "h_a":
        return gamma_ratio_h(a, y)
    if family == "H_a":
        return gamma_ratio_H(a, y)
    if family == "h_over_am1":
        return gamma_ratio_h(a, y) / (a - 1.0)
    return gamma_ratio_H(a, y) / (a - 1.0)


def monotonicity_probe(family: str, a1: float, a2: float, y: float) -> tuple[float, float]:
    """Evaluate a ratio family at ``a1 < a2``; see ``MONOTONE_FAMILIES`` for the expected order."""
    if family not in MONOTONE_FAMILIES:
        raise DomainError(f"unknown family {family!r}; expected one of {sorted(MONOTONE_FAMILIES)}")
    if not a1 < a2:
        raise DomainError(f"need a1 < a2, got {a1}, {a2}")
    if not y > 0.0:
        raise DomainError(f"y={y} must be positive")
    lo = MONOTONE_FAMILIES[family][1]
    if lo is not None and a1 <= lo:
        raise DomainError(f"family {family} needs a > {lo}, got a1={a1}")
    return _family_value(family, a1, y), _family_value(family, a2, y)
