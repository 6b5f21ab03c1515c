"""Command-line interface: ``marcumq {eval,bounds,table,verify,inflection}``.

Exit codes: 0 success, 1 failed verification or numerical failure, 2 domain
error, 3 no inflection point, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from typing import Optional, Sequence

from . import harness as H
from .central import CentralBoundEvaluation
from .convexity import (DEFAULT_TOL, d2q_dx2_classify, d2q_dy2_classify, find_inflection,
                        inflection_bracket)
from .core import MarcumPoint, marcum_p, marcum_q
from .errors import DomainError, MarcumError, NoInflectionError, ToleranceError
from .incgamma import gamma_lower, gamma_upper
from .logscaled import LogScaled
from .oracle import quadrature_pq

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DOMAIN = 2
EXIT_NO_INFLECTION = 3
EXIT_USAGE = 64
CSV_HEADER = ("mu", "x", "y", "bound_id", "side", "value", "valid", "rel_err", "target")
# documented relative accuracy of the incomplete gamma evaluators
INCGAMMA_REL_ERR = 1e-13


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _dump_json(obj) -> str:
    return json.dumps(H._jsonable(obj), sort_keys=True, indent=2) + "\n"


def _csv_text(rows: list[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _point(args) -> MarcumPoint:
    for name in ("mu", "x", "y"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for this target")
    return MarcumPoint(args.mu, args.x, args.y)


def _central_args(args) -> tuple[float, float]:
    a = args.a if args.a is not None else args.mu
    if a is None or args.y is None:
        raise UsageError("--a (or --mu) and --y are required for gamma targets")
    if not args.y > 0.0:
        raise DomainError(f"y={args.y} must be positive")
    return a, args.y


# eval ----------------------------------------------------------------------------

def cmd_eval(args) -> tuple[int, str]:
    if args.func in ("Q", "P"):
        p = _point(args)
        rep = marcum_q(p) if args.func == "Q" else marcum_p(p)
        out = {"func": args.func, "mu": p.mu, "x": p.x, "y": p.y, "value": rep.value,
               "abs_error_est": rep.abs_error_est, "terms_used": rep.terms_used, "method": rep.method}
        if rep.scaled is not None and not rep.scaled.is_zero:
            out["log_value"] = rep.scaled.log()
    else:
        a, y = _central_args(args)
        v = gamma_lower(a, y) if args.func == "gamma" else gamma_upper(a, y)
        f = v.to_float()
        out = {"func": args.func, "a": a, "y": y, "value": f, "abs_error_est": INCGAMMA_REL_ERR * f,
               "terms_used": 0, "method": "incomplete-gamma",
               "log_value": v.log() if not v.is_zero else -math.inf}
    if args.format == "json":
        return EXIT_OK, _dump_json(out)
    lines = [f"{k}: {_fmt(v)}" for k, v in out.items()]
    return EXIT_OK, "\n".join(lines) + "\n"


# bounds --------------------------------------------------------------------------

NONCENTRAL_TARGETS = ("Q", "P", "ratioP", "ratioQ")
CENTRAL_TARGETS = ("gamma", "Gamma", "ratio_h", "ratio_H")


def _bound_rows(args) -> list[dict]:
    rows = []
    if args.target in NONCENTRAL_TARGETS:
        p = _point(args)
        evals = H.noncentral_catalogue(args.target, p, (args.n,))
        exact = None
        if args.oracle:
            res = quadrature_pq(p)
            if args.target in ("ratioP", "ratioQ"):
                r1 = quadrature_pq(p.shifted(1.0))
                exact = (r1.p.ratio(res.p) if args.target == "ratioP" else r1.q.ratio(res.q))
            else:
                exact = res
        for e in evals:
            rel = None
            if exact is not None:
                if e.target in ("P", "Q"):
                    own, other = (exact.q, exact.p) if e.target == "Q" else (exact.p, exact.q)
                    if own <= other:
                        b = e.scaled if e.scaled is not None else e.value
                        rel = H.table_relative_error(b, own)
                    else:
                        b = e.complement if e.complement is not None else 1.0 - e.value
                        rel = H.table_relative_error(b, other)
                else:
                    rel = H.table_relative_error(e.value, LogScaled.from_float(exact))
            rows.append({"mu": p.mu, "x": p.x, "y": p.y, "bound_id": e.id, "side": e.side,
                         "value": e.value, "valid": e.valid, "rel_err": rel, "target": e.target,
                         "condition": e.condition})
        return rows
    a, y = _central_args(args)
    evals: list[CentralBoundEvaluation] = H.central_catalogue(args.target, a, y, args.terms)
    exact = H.exact_value(evals[0].target, a, y) if args.oracle else None
    for e in evals:
        rel = None
        if exact is not None:
            rel = H.table_relative_error(e.scaled if e.scaled is not None else e.value, exact)
        # the central case is x = 0 with order mu = a
        rows.append({"mu": a, "x": 0.0, "y": y, "bound_id": e.id, "side": e.side, "value": e.value,
                     "valid": e.valid, "rel_err": rel, "target": e.target, "condition": e.condition})
    return rows


def cmd_bounds(args) -> tuple[int, str]:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    rows = _bound_rows(args)
    if args.format == "json":
        return EXIT_OK, _dump_json(rows)
    if args.format == "csv":
        return EXIT_OK, _csv_text([[r[k] if r[k] is not None else "" for k in CSV_HEADER] for r in rows])
    lines = []
    for r in rows:
        rel = "" if r["rel_err"] is None else f"  rel_err={r['rel_err']:.3g}"
        flag = "valid" if r["valid"] else "invalid"
        lines.append(f"{r['bound_id']:<22} {r['side']:<5} {r['value']!r:<24} {flag:<7}{rel}  [{r['condition']}]")
    return EXIT_OK, "\n".join(lines) + "\n"


# table ---------------------------------------------------------------------------

def _floats(text: Optional[str], flag: str) -> list[float]:
    if not text:
        raise UsageError(f"{flag} is required without --preset")
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} must be a comma-separated list of numbers") from None


def cmd_table(args) -> tuple[int, str]:
    if args.preset:
        rows = H.table_rows(preset=args.preset)
    else:
        if args.mu is None:
            raise UsageError("--mu is required without --preset")
        rows = H.table_rows(mu=args.mu, xs=_floats(args.x_list, "--x-list"),
                            ys=_floats(args.y_list, "--y-list"))
    if args.format == "json":
        return EXIT_OK, _dump_json([asdict(r) for r in rows])
    if args.format == "csv":
        out = []
        for r in rows:
            for e in r.entries:
                out.append([r.mu, r.x, r.y, e.bound_id, e.side, e.value, e.valid, e.relative_error, "Q"])
        return EXIT_OK, _csv_text(out)
    lines = []
    for r in rows:
        lines.append(f"mu={r.mu:g} x={r.x:g} y={r.y:g}  Q={r.q_oracle!r} P={r.p_oracle!r}  "
                     f"smaller={r.smaller_target}")
        for e in r.entries:
            pub = f"  published {e.published}" if e.published else ""
            flag = "" if e.valid else "  (outside validity region)"
            lines.append(f"  {e.bound_id:<5} ({e.source_id}) {e.side:<5} rel_err={e.relative_error:.3g} "
                         f"~ {e.rounded:g}{pub}{flag}")
    return EXIT_OK, "\n".join(lines) + "\n"


# verify --------------------------------------------------------------------------

def cmd_verify(args) -> tuple[int, str]:
    if args.points < 0:
        raise UsageError("--points must be nonnegative")
    report = H.run_suite(args.suite, args.points, args.seed)
    return (EXIT_OK if report.passed else EXIT_FAIL), _dump_json(report.to_dict())


# inflection ----------------------------------------------------------------------

def cmd_inflection(args) -> tuple[int, str]:
    if args.axis == "x":
        if args.y is None:
            raise UsageError("--y is required for --axis x")
        p = MarcumPoint(args.mu, 0.0 if args.x is None else args.x, args.y)
    else:
        if args.x is None:
            raise UsageError("--x is required for --axis y")
        p = MarcumPoint(args.mu, args.x, 1.0 if args.y is None else args.y)
    lo, hi = inflection_bracket(p, args.axis)
    root = find_inflection(p, args.axis, args.tol)
    at = MarcumPoint(p.mu, root, p.y) if args.axis == "x" else MarcumPoint(p.mu, p.x, root)
    region = d2q_dx2_classify(at) if args.axis == "x" else d2q_dy2_classify(at)
    out = {"mu": p.mu, "axis": args.axis, "fixed": p.y if args.axis == "x" else p.x,
           "region": region.sign, "bracket": [lo, hi], "root": root, "tol": args.tol}
    if args.format == "json":
        return EXIT_OK, _dump_json(out)
    fixed = f"y={p.y:g}" if args.axis == "x" else f"x={p.x:g}"
    return EXIT_OK, (f"mu={p.mu:g} {fixed} axis={args.axis}\nregion: {region.sign}\n"
                     f"bracket: [{lo!r}, {hi!r}]\nroot: {root!r}\n")


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="marcumq", description="Generalized Marcum functions: values, bounds, checks.")
    ap.add_argument("--out", dest="out_global", help="write the output to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def point(sp, with_a: bool = False) -> None:
        sp.add_argument("--mu", type=float)
        sp.add_argument("--x", type=float)
        sp.add_argument("--y", type=float)
        if with_a:
            sp.add_argument("--a", type=float, help="shape parameter of the incomplete gamma functions")
        sp.add_argument("--out", help="write the output to this file instead of stdout")

    sp = sub.add_parser("eval", help="evaluate Q, P, gamma or Gamma")
    point(sp, True)
    sp.add_argument("--func", choices=("Q", "P", "gamma", "Gamma"), default="Q")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(handler=cmd_eval)

    sp = sub.add_parser("bounds", help="list every bound for a target")
    point(sp, True)
    sp.add_argument("--target", choices=NONCENTRAL_TARGETS + CENTRAL_TARGETS, default="Q")
    sp.add_argument("--n", type=int, default=0, help="order of the convergent families")
    sp.add_argument("--terms", type=int, default=2, help="series terms in l1")
    sp.add_argument("--oracle", action="store_true", help="add relative errors against the oracle")
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.set_defaults(handler=cmd_bounds)

    sp = sub.add_parser("table", help="relative errors of the summary bounds on a grid")
    sp.add_argument("--preset", choices=sorted(H.TABLE_PRESETS))
    sp.add_argument("--mu", type=float)
    sp.add_argument("--x-list")
    sp.add_argument("--y-list")
    sp.add_argument("--format", choices=("text", "csv", "json"), default="csv")
    sp.add_argument("--out", help="write the output to this file instead of stdout")
    sp.set_defaults(handler=cmd_table)

    sp = sub.add_parser("verify", help="randomized property sweep")
    sp.add_argument("--suite", choices=H.SUITES, required=True)
    sp.add_argument("--points", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write the output to this file instead of stdout")
    sp.set_defaults(handler=cmd_verify)

    sp = sub.add_parser("inflection", help="inflection point of Q in x or y")
    point(sp)
    sp.add_argument("--axis", choices=("x", "y"), required=True)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(handler=cmd_inflection)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: eval, bounds, table, verify, inflection")
        code, text = args.handler(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except NoInflectionError as exc:
        print(f"no inflection: {exc}", file=sys.stderr)
        return EXIT_NO_INFLECTION
    except (DomainError, ToleranceError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except MarcumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = getattr(args, "out", None) or args.out_global
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
