"""Table reports and randomized verification sweeps.

Random points come from numpy's ``PCG64`` bit generator seeded explicitly
(``numpy.random.Generator(numpy.random.PCG64(seed))``), so a suite run is
reproducible from ``(suite, points, seed)`` alone.  Points are drawn in one
vectorized call per coordinate before any evaluation happens.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from typing import Callable, Iterable, Optional, Union

import numpy as np

from . import bounds as B
from .bounds import BoundEvaluation
from .central import (CENTRAL_IDS, CentralBoundEvaluation, central_bound, exact_value,
                      monotonicity_probe, MONOTONE_FAMILIES, turan_gamma_check)
from .convexity import (NoInflectionError, d2q_dx2_classify, d2q_dy2_classify,
                        find_inflection, inflection_bracket)
from .core import (MarcumPoint, c_coefficient, f_kernel, marcum_p, marcum_q, mixture_q)
from .errors import DomainError, InvalidRegionError, MarcumError
from .incgamma import gamma_lower, incgamma_regularized
from .logscaled import LogScaled
from .oracle import quadrature_pq

PRNG = "PCG64"
SUITES = ("complementarity", "recurrences", "bound-validity", "ratio-monotonicity",
          "turan", "convexity", "central-dominance", "convergence")

NONCENTRAL_SLACK = 1e-11
CENTRAL_SLACK = 1e-12
ORACLE_AGREEMENT = 1e-12
RECURRENCE_TOL = 1e-12
GAMMA_RECURRENCE_TOL = 1e-11
LIMIT_TOL = 1e-13
TURAN_SLACK = 1e-12
# l_comb < lH is tolerated only inside |y - a| <= this gap with y < 6.5
LCOMB_EXCEPTION_GAP = 1.0
LCOMB_EXCEPTION_YMAX = 6.5
CONVERGENCE_POINT = (2.0, 3.0, 4.0)
CONVERGENCE_NS = tuple(range(21))
SEQUENCE_NS = (0, 1, 5, 20)
GSERIES_NS = (0, 5, 10)
CF_KS = (0, 1, 5)
INNER_PAIRS = ("zero", "mas1", "mes1", "betterlo", "superior")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


# table reports -----------------------------------------------------------------

# table label -> summary-bound id
OWN_BOUNDS = (("US1A", "MES3"), ("US1B", "MES2"), ("US2", "MAS1"), ("LS1", "MAS3"), ("LS2", "MES1"))


@dataclass(frozen=True)
class PresetCell:
    mu: float
    x: float
    y: float
    q_smaller: bool  # the row is marked as one where Q < P
    published: dict[str, str]  # table label -> printed relative error


def _cells(mu: float, rows: Iterable[tuple]) -> tuple[PresetCell, ...]:
    return tuple(PresetCell(mu, x, y, bold, dict(vals)) for x, y, bold, vals in rows)


TABLE_PRESETS: dict[str, tuple[PresetCell, ...]] = {
    "table1": _cells(1.0, [
        (1.0, 1.0, False, {"US2": "0.1", "LS2": "0.1"}),
        (1.0, 4.0, True, {"US1A": "0.09", "LS1": "0.1"}),
        (1.0, 16.0, True, {"US1A": "0.05", "LS1": "0.01", "US1B": "0.06"}),
        (4.0, 1.0, False, {"LS2": "0.04", "US2": "0.08"}),
        (4.0, 4.0, False, {"US2": "0.8"}),
        (4.0, 16.0, True, {"US1A": "0.04", "LS1": "0.3", "US1B": "0.1"}),
        (16.0, 1.0, False, {"LS2": "0.007", "US2": "0.04"}),
        (16.0, 4.0, False, {"LS2": "0.04", "US2": "0.2"}),
        (16.0, 16.0, False, {"US2": "2"}),
        (16.0, 32.0, True, {"US1A": "0.1", "LS1": "0.8", "US1B": "0.2"}),
    ]),
    "table2": _cells(16.0, [
        (1.0, 1.0, False, {"LS2": "0.0002", "US2": "0.003"}),
        (1.0, 16.0, True, {"US2": "1.5", "LS1": "0.8"}),
        (1.0, 32.0, True, {"US1A": "0.05", "LS1": "0.3", "US1B": "0.1"}),
        (1.0, 64.0, True, {"LS1": "0.08", "US1A": "0.007", "US1B": "0.03"}),
        (16.0, 1.0, False, {"LS2": "0.0002", "US2": "0.03"}),
        (16.0, 16.0, False, {"LS2": "0.05", "US2": "0.5"}),
        (16.0, 32.0, True, {"US2": "0.9", "LS1": "3"}),
        (16.0, 64.0, True, {"US1A": "0.04", "LS1": "0.6", "US1B": "0.07"}),
        (32.0, 1.0, False, {"LS2": "0.0002", "US2": "0.003"}),
        (32.0, 16.0, False, {"LS2": "0.02", "US2": "0.3"}),
        (32.0, 32.0, False, {"LS2": "0.1", "US2": "1"}),
        (32.0, 64.0, True, {"US1A": "0.2", "LS1": "2", "US1B": "0.2"}),
    ]),
}


@dataclass(frozen=True)
class TableEntry:
    bound_id: str  # table label
    source_id: str  # summary-bound id
    side: str  # side with respect to Q
    value: float  # the bound on Q
    relative_error: float
    rounded: float
    valid: bool
    published: Optional[str] = None


@dataclass(frozen=True)
class TableRow:
    mu: float
    x: float
    y: float
    q_oracle: float
    p_oracle: float
    smaller_target: str
    entries: list[TableEntry]
    marked_q_smaller: Optional[bool] = None


def round_sig1(v: float) -> float:
    """``v`` rounded to one significant digit."""
    if v == 0.0 or not math.isfinite(v):
        return v
    return float(f"{v:.0e}")


def rounding_interval(printed: str) -> tuple[float, float]:
    """Values that display as ``printed``: half a unit in its last digit either side."""
    d = Decimal(printed)
    half = float(Decimal(5).scaleb(d.as_tuple().exponent - 1))
    return float(d) - half, float(d) + half


def matches_printed(v: float, printed: str) -> bool:
    lo, hi = rounding_interval(printed)
    return lo <= v <= hi


def table_relative_error(bound: LogScaled | float, exact: LogScaled) -> float:
    """``|b - f| / min(b, f)``: the error of ``b`` relative to the smaller of ``b`` and ``f``."""
    if isinstance(bound, float):
        if not bound > 0.0:
            return math.inf
        bound = LogScaled.from_float(bound)
    if bound.is_zero:
        return math.inf
    r = bound.ratio(exact)
    return abs(r - 1.0) / min(r, 1.0)


def table_row(mu: float, x: float, y: float, marked: Optional[bool] = None,
              published: Optional[dict[str, str]] = None) -> TableRow:
    """Own-bound relative errors at one point, measured on the smaller of ``P`` and ``Q``."""
    p = MarcumPoint(mu, x, y)
    res = quadrature_pq(p)
    q_small = res.q <= res.p
    exact = res.q if q_small else res.p
    entries = []
    for label, src in OWN_BOUNDS:
        e = B.q_bound(src, p)
        if q_small:
            b = e.scaled if e.scaled is not None else e.value
        else:
            b = e.complement if e.complement is not None else 1.0 - e.value
        err = table_relative_error(b, exact)
        entries.append(TableEntry(label, src, e.side, e.value, err, round_sig1(err), e.valid,
                                  (published or {}).get(label)))
    return TableRow(mu, x, y, res.q.to_float(), res.p.to_float(), "Q" if q_small else "P",
                    entries, marked)


def table_rows(preset: Optional[str] = None, mu: Optional[float] = None,
               xs: Iterable[float] = (), ys: Iterable[float] = ()) -> list[TableRow]:
    if preset is not None:
        if preset not in TABLE_PRESETS:
            raise DomainError(f"unknown preset {preset!r}; expected one of {sorted(TABLE_PRESETS)}")
        return [table_row(c.mu, c.x, c.y, c.q_smaller, c.published) for c in TABLE_PRESETS[preset]]
    if mu is None:
        raise DomainError("either a preset or mu with x and y lists is required")
    return [table_row(mu, x, y) for x in xs for y in ys]


# bound catalogues ----------------------------------------------------------------

AnyBound = Union[BoundEvaluation, CentralBoundEvaluation]


def _ratio_n(p: MarcumPoint, n: int) -> list[BoundEvaluation]:
    r = B.ratio_p_convergent(p, n)
    cond = "mu > 0"
    return [BoundEvaluation(f"RP_LOWER_N{n}", "lower", "ratioP", r.lower, True, cond),
            BoundEvaluation(f"RP_UPPER_N{n}", "upper", "ratioP", r.upper, True, cond)]


def _ratio_cf(p: MarcumPoint, k: int) -> BoundEvaluation:
    cond = "positive continued-fraction denominators"
    try:
        return BoundEvaluation(f"RP_UPPER_CF{k}", "upper", "ratioP", B.ratio_p_cf_upper(p, k), True, cond)
    except InvalidRegionError:
        return BoundEvaluation(f"RP_UPPER_CF{k}", "upper", "ratioP", math.nan, False, cond)


def _tag(e: BoundEvaluation, suffix: str) -> BoundEvaluation:
    return BoundEvaluation(f"{e.id}_{suffix}", e.side, e.target, e.value, e.valid, e.condition,
                           e.scaled, e.complement)


def noncentral_catalogue(target: str, p: MarcumPoint, ns: Iterable[int] = (0,),
                         gseries_ns: Optional[Iterable[int]] = None) -> list[BoundEvaluation]:
    """Every noncentral bound on ``target``; families indexed by ``n`` are evaluated at each of ``ns``
    (the incomplete-gamma series truncations at ``gseries_ns`` when given)."""
    ns = tuple(ns)
    gns = ns if gseries_ns is None else tuple(gseries_ns)
    if target == "Q":
        return [B.q_bound(i, p) for i in B.Q_BOUND_IDS]
    if target == "P":
        out = [B.p_bound_mes1(p), B.p_bound_mas1(p), B.p_bound_better(p)]
        for n in ns:
            out.append(_tag(B.p_upper_superior(p, n), f"N{n}"))
            for inner in INNER_PAIRS:
                out.append(_tag(B.p_bound_sequence(p, n, inner), f"N{n}"))
        for n in gns:
            out.extend(_tag(e, f"N{n}") for e in B.p_bounds_gamma_series(p, n))
        return out
    if target == "ratioP":
        out = list(B.ratio_p_simple(p))
        for n in ns:
            out.extend(_ratio_n(p, n))
            out.append(_ratio_cf(p, n))
        return out
    if target == "ratioQ":
        return list(B.ratio_q_bounds(p))
    raise DomainError(f"unknown noncentral target {target!r}")


CENTRAL_TARGET_ALIASES = {"gamma": "gamma_lower_inc", "Gamma": "gamma_upper_inc",
                          "ratio_h": "ratio_h", "ratio_H": "ratio_H"}


def central_catalogue(target: str, a: float, y: float, terms: int = 2) -> list[CentralBoundEvaluation]:
    full = CENTRAL_TARGET_ALIASES.get(target, target)
    out = []
    for id_ in CENTRAL_IDS:
        e = central_bound(id_, (a, y), terms=terms)
        if e.target == full:
            out.append(e)
    if not out:
        raise DomainError(f"unknown central target {target!r}")
    return out


# verification ------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    point: dict[str, float]
    bound_id: str
    margin: float


@dataclass
class VerifyReport:
    suite: str
    seed: int
    points: int
    violations: list[Violation] = field(default_factory=list)
    exception_regions: dict[str, dict] = field(default_factory=dict)
    stats: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        viol = sorted(self.violations, key=lambda v: (v.bound_id, sorted(v.point.items())))
        return _jsonable({"suite": self.suite, "prng": PRNG, "seed": self.seed,
                          "points": self.points, "passed": self.passed,
                          "violation_count": len(viol),
                          "violations": [asdict(v) for v in viol],
                          "exception_regions": self.exception_regions, "stats": self.stats})


def _jsonable(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    return obj


def _margin(side: str, b: LogScaled | float, f: LogScaled | float, slack: float) -> Optional[float]:
    """Relative violation size of ``b`` as a ``side`` bound on ``f``, or None if it holds."""
    if isinstance(f, float):
        f = LogScaled.from_float(f)
    if isinstance(b, float):
        if math.isnan(b):
            return math.inf
        if b < 0.0 or b == math.inf:
            return None if (b < 0.0) == (side == "lower") else math.inf
        b = LogScaled.from_float(b)
    if f.is_zero:
        return None if (side == "upper" or b.is_zero) else math.inf
    r = b.ratio(f)
    if side == "lower":
        return r - 1.0 if r > 1.0 + slack else None
    return 1.0 - r if r < 1.0 - slack else None


def _pq_margin(e: BoundEvaluation, p_exact: LogScaled, q_exact: LogScaled, slack: float) -> Optional[float]:
    # compare on the smaller of P and Q so tiny tails keep their digits
    own, other = (q_exact, p_exact) if e.target == "Q" else (p_exact, q_exact)
    if own <= other:
        b = e.scaled if e.scaled is not None else e.value
        return _margin(e.side, b, own, slack)
    b = e.complement if e.complement is not None else 1.0 - e.value
    return _margin(e.complement_side, b, other, slack)


def _pt(**kw: float) -> dict[str, float]:
    return {k: float(v) for k, v in kw.items()}


def _noncentral_points(rng: np.random.Generator, n: int, mu_lo: float = 0.5, mu_hi: float = 50.0,
                       x_max: float = 100.0, y_max: float = 100.0, near: float = 0.5) -> list[tuple]:
    """Uniform boxes, with a fraction ``near`` of the ``y`` values drawn around ``y = x + mu``."""
    mu = rng.uniform(mu_lo, mu_hi, n)
    x = rng.uniform(0.0, x_max, n)
    x[rng.random(n) < 0.05] = 0.0
    yu = y_max * (1.0 - rng.random(n))
    z = rng.standard_normal(n)
    pick = rng.random(n) < near
    yn = x + mu + z * np.sqrt(2.0 * (x + mu) + 1.0)
    y = np.where(pick, yn, yu)
    y = np.where(y > 1e-3, y, 1e-3 + rng.random(n))
    return [(float(a), float(b), float(c)) for a, b, c in zip(mu, x, y)]


def _central_points(rng: np.random.Generator, n: int, a_max: float = 100.0,
                    y_max: float = 200.0) -> list[tuple]:
    """Half uniform, half log-uniform in ``a in (0, a_max]``, ``y in (0, y_max]``."""
    au = a_max * (1.0 - rng.random(n))
    al = np.exp(rng.uniform(math.log(1e-3), math.log(a_max), n))
    yu = y_max * (1.0 - rng.random(n))
    yl = np.exp(rng.uniform(math.log(1e-3), math.log(y_max), n))
    half = np.arange(n) % 2 == 0
    a = np.where(half, au, al)
    y = np.where(half, yu, yl)
    return [(float(u), float(v)) for u, v in zip(a, y)]


def _guard(report: VerifyReport, point: dict, bound_id: str, fn: Callable[[], Optional[float]]) -> None:
    try:
        m = fn()
    except (MarcumError, ArithmeticError, ValueError) as exc:
        report.violations.append(Violation(point, f"{bound_id}:error:{type(exc).__name__}", math.inf))
        return
    if m is not None:
        report.violations.append(Violation(point, bound_id, m))


def _suite_complementarity(report: VerifyReport, rng: np.random.Generator) -> None:
    worst_pq = worst_oracle = 0.0
    for mu, x, y in _noncentral_points(rng, report.points):
        pt = _pt(mu=mu, x=x, y=y)
        p = MarcumPoint(mu, x, y)
        try:
            pv = marcum_p(p).value
            mix = mixture_q(p).value
            quad = quadrature_pq(p).q.to_float()
        except (MarcumError, ArithmeticError, ValueError) as exc:
            report.violations.append(Violation(pt, f"evaluation:error:{type(exc).__name__}", math.inf))
            continue
        d1 = abs(pv + mix - 1.0)
        d2 = abs(quad - mix)
        worst_pq, worst_oracle = max(worst_pq, d1), max(worst_oracle, d2)
        if d1 > ORACLE_AGREEMENT:
            report.violations.append(Violation(pt, "P+Q=1", d1))
        if d2 > ORACLE_AGREEMENT:
            report.violations.append(Violation(pt, "quadrature-vs-mixture", d2))
    report.stats.update(max_abs_p_plus_q_minus_1=worst_pq, max_abs_quadrature_minus_mixture=worst_oracle)


def _limit_checks(report: VerifyReport, mu: float, y: float) -> None:
    pt = _pt(mu=mu, y=y)
    central = incgamma_regularized(mu, y)[1]

    def q_limit() -> Optional[float]:
        d = max(abs(marcum_q((mu, 0.0, y)).value - central),
                abs(quadrature_pq((mu, 0.0, y)).q.to_float() - central))
        return d if d > ORACLE_AGREEMENT else None

    def c_limit() -> Optional[float]:
        d = abs(c_coefficient((mu, 1e-280, y)) / (y / mu) - 1.0)
        return d if d > LIMIT_TOL else None

    def f_limit() -> Optional[float]:
        logf = mu * math.log(y) - y - math.lgamma(mu + 1.0)
        d = abs(f_kernel((mu, 1e-280, y)).ratio(LogScaled.from_log(logf)) - 1.0)
        return d if d > LIMIT_TOL else None

    _guard(report, pt, "Q(x=0)=central", q_limit)
    _guard(report, pt, "c(0+,y)=y/mu", c_limit)
    _guard(report, pt, "F(0,y)=y^mu e^-y/Gamma(mu+1)", f_limit)


def _suite_recurrences(report: VerifyReport, rng: np.random.Generator) -> None:
    pts = _noncentral_points(rng, report.points)
    gpts = _central_points(rng, report.points)
    for (mu, x, y), (a, gy) in zip(pts, gpts):
        pt = _pt(mu=mu, x=x, y=y)

        def q_step() -> Optional[float]:
            d = abs(marcum_q((mu + 1.0, x, y)).value - marcum_q((mu, x, y)).value
                    - f_kernel((mu, x, y)).to_float())
            return d if d > RECURRENCE_TOL else None

        _guard(report, pt, "Q(mu+1)-Q(mu)=F(mu)", q_step)
        _limit_checks(report, mu, y)
        a1 = a + 1.0  # keeps a - 1 > 0

        def gamma_step() -> Optional[float]:
            g0, g1, g2 = gamma_lower(a1 - 1.0, gy), gamma_lower(a1, gy), gamma_lower(a1 + 1.0, gy)
            terms = [g2.to_float() / g1.to_float(), -(a1 + gy), (a1 - 1.0) * gy * g0.ratio(g1)]
            d = abs(math.fsum(terms)) / max(abs(t) for t in terms)
            return d if d > GAMMA_RECURRENCE_TOL else None

        _guard(report, _pt(a=a1, y=gy), "gamma three-term recurrence", gamma_step)


def _noncentral_validity(report: VerifyReport, rng: np.random.Generator) -> None:
    for mu, x, y in _noncentral_points(rng, report.points):
        pt = _pt(mu=mu, x=x, y=y)
        p = MarcumPoint(mu, x, y)
        try:
            r0 = quadrature_pq(p)
            r1 = quadrature_pq(p.shifted(1.0))
            evals = (noncentral_catalogue("Q", p) + noncentral_catalogue("P", p, SEQUENCE_NS, GSERIES_NS)
                     + noncentral_catalogue("ratioQ", p))
            evals += list(B.ratio_p_simple(p))
            for n in SEQUENCE_NS:
                evals += _ratio_n(p, n)
            evals += [_ratio_cf(p, k) for k in CF_KS]
        except (MarcumError, ArithmeticError, ValueError) as exc:
            report.violations.append(Violation(pt, f"evaluation:error:{type(exc).__name__}", math.inf))
            continue
        ratio_p = r1.p.ratio(r0.p)
        ratio_q = r1.q.ratio(r0.q)
        for e in evals:
            if not e.valid:
                continue
            if e.target in ("P", "Q"):
                m = _pq_margin(e, r0.p, r0.q, NONCENTRAL_SLACK)
            else:
                m = _margin(e.side, e.value, ratio_p if e.target == "ratioP" else ratio_q,
                            NONCENTRAL_SLACK)
            if m is not None:
                report.violations.append(Violation(pt, e.id, m))


def _central_validity(report: VerifyReport, rng: np.random.Generator) -> None:
    for a, y in _central_points(rng, report.points):
        pt = _pt(a=a, y=y)
        exact: dict[str, LogScaled] = {}
        for id_ in CENTRAL_IDS:
            for terms in ((2, 6) if id_ in ("l1", "l_comb") else (2,)):
                e = central_bound(id_, (a, y), terms=terms)
                if not e.valid:
                    continue
                name = id_ if terms == 2 else f"{id_}({terms})"

                def margin(e=e) -> Optional[float]:
                    if e.target not in exact:
                        exact[e.target] = exact_value(e.target, a, y)
                    b = e.scaled if e.scaled is not None else e.value
                    return _margin(e.side, b, exact[e.target], CENTRAL_SLACK)

                _guard(report, pt, name, margin)


def _suite_bound_validity(report: VerifyReport, rng: np.random.Generator) -> None:
    _noncentral_validity(report, rng)
    _central_validity(report, rng)


def _suite_ratio_monotonicity(report: VerifyReport, rng: np.random.Generator) -> None:
    n = report.points
    fams = sorted(MONOTONE_FAMILIES)
    fam_idx = rng.integers(0, len(fams), n)
    a1 = rng.uniform(1.001, 60.0, n)
    da = rng.uniform(0.01, 40.0, n)
    ys = np.exp(rng.uniform(math.log(1e-2), math.log(200.0), n))
    neg = rng.uniform(-5.0, 1.0, n)
    for i in range(n):
        fam = fams[fam_idx[i]]
        lo = neg[i] if fam == "H_a" and i % 3 == 0 else a1[i]
        hi = lo + da[i]
        y = float(ys[i])
        pt = _pt(a1=lo, a2=hi, y=y)

        def order(fam=fam, lo=float(lo), hi=float(hi), y=y) -> Optional[float]:
            v1, v2 = monotonicity_probe(fam, lo, hi, y)
            rel = (v2 - v1) / max(abs(v1), abs(v2))
            if MONOTONE_FAMILIES[fam][0] == "decreasing":
                rel = -rel
            return -rel if rel < -TURAN_SLACK else None

        _guard(report, pt, fam, order)
    # c_nu(x, y) decreases in x and increases in y
    mus = rng.uniform(0.0, 50.0, n)
    xs = rng.uniform(0.0, 100.0, n)
    yv = rng.uniform(0.01, 100.0, n)
    dd = rng.uniform(0.01, 5.0, n)
    for i in range(n):
        mu, x, y, d = float(mus[i]), float(xs[i]), float(yv[i]), float(dd[i])
        pt = _pt(mu=mu, x=x, y=y, step=d)

        def in_x(mu=mu, x=x, y=y, d=d) -> Optional[float]:
            c1, c2 = c_coefficient((mu, x, y), 1), c_coefficient((mu, x + d, y), 1)
            return (c2 - c1) / c1 if c2 > c1 * (1.0 + TURAN_SLACK) else None

        def in_y(mu=mu, x=x, y=y, d=d) -> Optional[float]:
            c1, c2 = c_coefficient((mu, x, y), 1), c_coefficient((mu, x, y + d), 1)
            return (c1 - c2) / c1 if c1 > c2 * (1.0 + TURAN_SLACK) else None

        _guard(report, pt, "c decreasing in x", in_x)
        _guard(report, pt, "c increasing in y", in_y)


def _suite_turan(report: VerifyReport, rng: np.random.Generator) -> None:
    for mu, x, y in _noncentral_points(rng, report.points):
        pt = _pt(mu=mu, x=x, y=y)
        for target in ("P", "Q"):
            def det(target=target) -> Optional[float]:
                rel = B.turan_noncentral_relative((mu, x, y), target)
                return -rel if rel < -TURAN_SLACK else None
            _guard(report, pt, f"turan-{target}", det)
    n = report.points
    gpts = _central_points(rng, n)
    neg = rng.uniform(-5.0, 1.0, n)
    for i, (a, y) in enumerate(gpts):
        pt_lo = _pt(a=a + 1.0, y=y)

        def lower_inc(a=a + 1.0, y=y) -> Optional[float]:
            r, lo, hi = turan_gamma_check((a, y), "lower_incomplete")
            m = max(lo - r, r - hi) / r
            return m if m > TURAN_SLACK else None

        _guard(report, pt_lo, "turan-gamma-lower", lower_inc)
        au = float(neg[i]) if i % 4 == 0 else a
        pt_up = _pt(a=au, y=y)

        def upper_inc(a=au, y=y) -> Optional[float]:
            r, lo, hi = turan_gamma_check((a, y), "upper_incomplete")
            m = max(lo - r, r - hi) / r
            return m if m > TURAN_SLACK else None

        _guard(report, pt_up, "turan-gamma-upper", upper_inc)


FD_STEP = 1e-2
FD_OFFSETS = (0.02, 0.04, 0.06, 0.08, 0.10)


def _second_difference(q: Callable[[float], float], v: float) -> float:
    h = FD_STEP
    return (q(v + h) - 2.0 * q(v) + q(v - h)) / (h * h)


def _oracle_q(mu: float, x: float, y: float) -> float:
    return quadrature_pq((mu, x, y)).q.to_float()


def check_inflection(mu: float, fixed: float, axis: str) -> tuple[Optional[str], float, tuple[float, float]]:
    """Locate the inflection and confirm it on a 10-point straddle of oracle second differences.

    Returns ``(problem, root, bracket)`` with ``problem`` None when everything holds.
    """
    p = MarcumPoint(mu, 0.0, fixed) if axis == "x" else MarcumPoint(mu, fixed, 1.0)
    lo, hi = inflection_bracket(p, axis)
    root = find_inflection(p, axis)
    if not lo <= root <= hi:
        return "root outside bracket", root, (lo, hi)
    if axis == "x":
        def q(v: float) -> float:
            return _oracle_q(mu, v, fixed)
        before, after = 1.0, -1.0  # convex then concave in x
    else:
        def q(v: float) -> float:
            return _oracle_q(mu, fixed, v)
        before, after = -1.0, 1.0
    for d in FD_OFFSETS:
        if before * _second_difference(q, root - d) <= 0.0:
            return f"no sign {before:+.0f} at -{d}", root, (lo, hi)
        if after * _second_difference(q, root + d) <= 0.0:
            return f"no sign {after:+.0f} at +{d}", root, (lo, hi)
    return None, root, (lo, hi)


def _suite_convexity(report: VerifyReport, rng: np.random.Generator) -> None:
    n = report.points
    axis_y = np.arange(n) % 2 == 1
    mu_x = rng.uniform(0.5, 20.0, n)
    y_x = mu_x + 1.0 + rng.uniform(0.5, 30.0, n)
    mu_y = rng.uniform(1.0, 20.0, n)
    x_y = rng.uniform(1.5, 30.0, n)
    for i in range(n):
        if axis_y[i]:
            mu, fixed, axis = float(mu_y[i]), float(x_y[i]), "y"
            pt = _pt(mu=mu, x=fixed)
        else:
            mu, fixed, axis = float(mu_x[i]), float(y_x[i]), "x"
            pt = _pt(mu=mu, y=fixed)

        def run(mu=mu, fixed=fixed, axis=axis) -> Optional[float]:
            problem, _, _ = check_inflection(mu, fixed, axis)
            return math.inf if problem else None

        _guard(report, pt, f"inflection-{axis}", run)
    # the y-axis request for mu in (0, 1) must be refused
    for mu in rng.uniform(0.01, 0.99, max(1, n // 10)):
        pt = _pt(mu=float(mu), x=1.0)
        try:
            find_inflection(MarcumPoint(float(mu), 1.0, 1.0), "y")
        except NoInflectionError:
            continue
        report.violations.append(Violation(pt, "refuse-y-axis-mu<1", math.inf))
    # classification agrees with the sign of c - 1 where it is decided
    for mu, x, y in _noncentral_points(rng, n, mu_lo=1.0, mu_hi=20.0, x_max=30.0, y_max=40.0):
        pt = _pt(mu=mu, x=x, y=y)
        reg = d2q_dx2_classify((mu, x, y))
        if reg.sign != "indeterminate" and not reg.boundary:
            s = c_coefficient((mu, x, y), 1) - 1.0
            if (s > 0.0) != (reg.sign == "positive") and s != 0.0:
                report.violations.append(Violation(pt, "classify-x", abs(s)))
        reg = d2q_dy2_classify((mu, x, y))
        if reg.sign != "indeterminate" and not (mu == 1.0 and MarcumPoint(mu, x, y).is_central):
            s = c_coefficient((mu, x, y), -1) - 1.0
            if (s > 0.0) != (reg.sign == "positive") and s != 0.0:
                report.violations.append(Violation(pt, "classify-y", abs(s)))


def _region(points: list[tuple[float, float]]) -> dict:
    if not points:
        return {"count": 0}
    a = np.array(points)
    return {"count": len(points),
            "a_range": [float(a[:, 0].min()), float(a[:, 0].max())],
            "y_range": [float(a[:, 1].min()), float(a[:, 1].max())],
            "max_abs_y_minus_a": float(np.abs(a[:, 1] - a[:, 0]).max())}


def _suite_central_dominance(report: VerifyReport, rng: np.random.Generator) -> None:
    u3_bad, lc_bad, lexc, lexc6 = [], [], [], []
    for a, y in _central_points(rng, report.points):
        g = (a, y)
        pt = _pt(a=a, y=y)
        try:
            if a >= 1.0:
                u3, uq = central_bound("u3", g), central_bound("UQ", g)
                if u3.valid and u3.scaled > uq.scaled * LogScaled.from_float(1.0 + CENTRAL_SLACK):
                    u3_bad.append((a, y))
                    report.violations.append(Violation(pt, "u3<=UQ", u3.scaled.ratio(uq.scaled) - 1.0))
            if a > 1.0:
                lc, lh = central_bound("L_comb", g), central_bound("LH", g)
                r = lc.scaled.ratio(lh.scaled)
                if r < 1.0 - CENTRAL_SLACK:
                    lc_bad.append((a, y))
                    report.violations.append(Violation(pt, "L_comb>=LH", 1.0 - r))
                lh_low = central_bound("lH", g).scaled
                r2 = central_bound("l_comb", g).scaled.ratio(lh_low)
                if r2 < 1.0 - CENTRAL_SLACK:
                    lexc.append((a, y))
                    if not (abs(y - a) <= LCOMB_EXCEPTION_GAP and y < LCOMB_EXCEPTION_YMAX):
                        report.violations.append(Violation(pt, "l_comb>=lH outside exception set", 1.0 - r2))
                r6 = central_bound("l_comb", g, terms=6).scaled.ratio(lh_low)
                if r6 < 1.0 - CENTRAL_SLACK:
                    lexc6.append((a, y))
                    report.violations.append(Violation(pt, "l_comb(6 terms)>=lH", 1.0 - r6))
        except (MarcumError, ArithmeticError, ValueError) as exc:
            report.violations.append(Violation(pt, f"evaluation:error:{type(exc).__name__}", math.inf))
    report.exception_regions = {"l_comb<lH": _region(lexc), "l_comb(6 terms)<lH": _region(lexc6),
                                "u3>UQ": _region(u3_bad), "L_comb<LH": _region(lc_bad)}


def convergence_gaps(mu: float, x: float, y: float, ns: Iterable[int] = CONVERGENCE_NS) -> dict[str, list[float]]:
    """Upper-minus-lower gaps of the ratio brackets and of the ``mas1``/``mes1`` sequence pair."""
    p = MarcumPoint(mu, x, y)
    ratio, seq = [], []
    for n in ns:
        r = B.ratio_p_convergent(p, n)
        ratio.append(r.upper - r.lower)
        up = B.p_bound_sequence(p, n, "mes1")
        lo = B.p_bound_sequence(p, n, "mas1")
        seq.append(up.scaled.to_float() - lo.scaled.to_float() if up.valid and lo.valid else math.nan)
    return {"ratio": ratio, "sequence": seq}


def _suite_convergence(report: VerifyReport, rng: np.random.Generator) -> None:
    gaps = convergence_gaps(*CONVERGENCE_POINT)
    pt = _pt(mu=CONVERGENCE_POINT[0], x=CONVERGENCE_POINT[1], y=CONVERGENCE_POINT[2])
    for name, g in gaps.items():
        for n in range(1, len(g)):
            if not g[n] < g[n - 1]:
                report.violations.append(Violation({**pt, "n": float(n)}, f"{name}-gap-decreasing",
                                                   g[n] - g[n - 1]))
    if not gaps["ratio"][-1] < 1e-10:
        report.violations.append(Violation(pt, "ratio-gap-at-20", gaps["ratio"][-1]))
    report.stats.update({f"fixed_{k}_gap_n20": v[-1] for k, v in gaps.items()})
    # elsewhere: gaps never grow (beyond rounding) and brackets stay ordered
    for mu, x, y in _noncentral_points(rng, report.points, mu_hi=30.0, x_max=50.0, y_max=50.0):
        ppt = _pt(mu=mu, x=x, y=y)

        def monotone(mu=mu, x=x, y=y) -> Optional[float]:
            g = convergence_gaps(mu, x, y, (0, 1, 5, 20))["ratio"]
            worst = max((g[i] - g[i - 1]) for i in range(1, len(g)))
            if min(g) < 0.0:
                return -min(g)
            return worst if worst > 1e-15 else None

        _guard(report, ppt, "ratio-gap-nonincreasing", monotone)


_SUITE_FUNCS = {
    "complementarity": _suite_complementarity,
    "recurrences": _suite_recurrences,
    "bound-validity": _suite_bound_validity,
    "ratio-monotonicity": _suite_ratio_monotonicity,
    "turan": _suite_turan,
    "convexity": _suite_convexity,
    "central-dominance": _suite_central_dominance,
    "convergence": _suite_convergence,
}


def run_suite(suite: str, points: int, seed: int) -> VerifyReport:
    """Run one verification suite on ``points`` random points drawn with ``seed``."""
    if suite not in _SUITE_FUNCS:
        raise DomainError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if points < 0:
        raise DomainError(f"points={points} must be nonnegative")
    report = VerifyReport(suite, int(seed), int(points))
    _SUITE_FUNCS[suite](report, make_rng(seed))
    return report
