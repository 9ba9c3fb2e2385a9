"""Command line front end.

Every subcommand prints one JSON document ``{"manifest": ..., "result": ...}``
(keys sorted, so identical runs differ only in ``wall_time_seconds``). With
``--out PATH`` the document is also written to PATH and, for tabular
commands, a CSV next to it (PATH with a ``.csv`` suffix).

Exit codes: 0 success, 2 input error, 3 budget refusal, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import bruijn_Z, psi_exact
from .config import ExperimentConfig, config_from_dict, load_config
from .counting import count_NF, count_NF_star, count_profile
from .dependence import DEFAULT_SEARCH_BOUND, find_relation, is_mult_dependent, mult_rank
from .errors import BudgetExceeded, DomainError
from .experiments import (
    diagonal_family,
    example13_main_term,
    gcd_value_set,
    hypersurface_count,
    nf_exponent,
    pplus_profile,
    scaling_fit,
    unit_value_points,
)
from .heights import height_growth_bound, height_growth_constant, naive_height, weil_height
from .poly import box_points, evaluate, evaluate_box, example11_family, parse_poly, total_degree

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-3/4" through as a positional value, like "-3"
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _parse_rational(text):
    if not isinstance(text, str) or any(c in text for c in ".eE"):
        raise DomainError(f"not an exact rational: {text!r} (use p/q or an integer)")
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {text!r}") from exc
    if q == 0:
        raise DomainError("zero is not allowed: dependence needs nonzero coordinates")
    return q


def _fmt(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _config(args, *, need_h=True):
    """Config from a JSON file or from inline --poly/--m/--H flags."""
    if getattr(args, "config", None):
        cfg = load_config(args.config)
    else:
        if not args.poly:
            raise DomainError("give a config file or at least one --poly")
        raw = {"polynomials": args.poly, "m": args.m}
        if args.H is not None:
            raw["H"] = args.H
        elif need_h:
            raise DomainError("--H is required without a config file")
        else:
            raw["H"] = [0]
        cfg = config_from_dict(raw)
    if getattr(args, "budget", None) is not None:
        cfg.budget = args.budget
    if getattr(args, "threads", None) is not None:
        cfg.threads = args.threads
    if getattr(args, "search_bound", None) is not None:
        cfg.search_bound = args.search_bound
    return cfg


# subcommands -------------------------------------------------------------
# Each returns (parameters, result, csv_table or None, tuples_enumerated).


def cmd_deps(args):
    nu = [_parse_rational(v) for v in args.values]
    bound = args.search_bound or DEFAULT_SEARCH_BOUND
    rel = find_relation(nu, bound)
    rank = mult_rank(nu) if len(nu) <= 20 else None
    result = {
        "values": [_fmt(q) for q in nu],
        "dependent": is_mult_dependent(nu),
        "relation": list(rel.k) if rel else None,
        "relation_norm": rel.norm if rel else None,
        "rank": rank.rank if rank else None,
        "witness": list(rank.witness) if rank and rank.witness is not None else None,
        "search_bound": rel.search_bound if rel else bound,
    }
    if (rel is not None) != result["dependent"]:
        raise AssertionError("relation search and dependence test disagree")
    return {"values": args.values, "search_bound": bound}, result, None, 0


def cmd_rank(args):
    nu = [_parse_rational(v) for v in args.values]
    rank = mult_rank(nu)
    result = {
        "values": [_fmt(q) for q in nu],
        "rank": rank.rank,
        "witness": list(rank.witness) if rank.witness is not None else None,
        "independent": rank.rank == len(nu),
    }
    return {"values": args.values}, result, None, 0


def _profile_rows(cfg, F):
    top = max(cfg.H)
    profile = count_profile(F, top, method=cfg.method, threads=cfg.threads, budget=cfg.budget)
    rows = []
    for h in sorted(set(cfg.H)):
        dec = profile.by_H[h]
        row = {
            "H": h,
            "N_F": dec.dependent_count,
            "by_rank": list(dec.counts),
            "independent": dec.independent_count,
            "zero_coordinate": dec.zero_coordinate_count,
            "total": dec.total,
        }
        if cfg.star:
            star = count_NF_star(F, h, budget=cfg.budget, search_bound=cfg.search_bound)
            row["N_F_star"] = star.count
            row["star_witnesses"] = [
                {"point": list(w.point), "values": list(w.values), "relation": list(w.relation.k)}
                for w in star.witnesses
            ]
        rows.append(row)
    return rows, (2 * top + 1) ** (F.m * F.n)


def _count_table(rows, n):
    header = ["H", "N_F"] + [f"N_F_{s}" for s in range(n)] + ["independent", "zero_coordinate", "total"]
    body = [
        [r["H"], r["N_F"], *r["by_rank"], r["independent"], r["zero_coordinate"], r["total"]]
        for r in rows
    ]
    return header, body


def cmd_count(args):
    cfg = _config(args)
    F = cfg.system()
    rows, used = _profile_rows(cfg, F)
    result = {"n": F.n, "m": F.m, "polynomials": [str(f) for f in F], "rows": rows}
    return cfg.as_dict(), result, _count_table(rows, F.n), used, cfg


def cmd_example11(args):
    F = example11_family(args.n)
    cfg = ExperimentConfig(
        polynomials=[str(f) for f in F], m=1, H=list(range(args.H + 1)),
        budget=args.budget if args.budget is not None else 10**8,
        threads=args.threads or 1,
    )
    rows, used = _profile_rows(cfg, F)
    result = {
        "n": args.n,
        "polynomials": [str(f) for f in F],
        "all_zero": all(r["N_F"] == 0 for r in rows),
        "rows": rows,
    }
    return {"n": args.n, "H": args.H, "threads": cfg.threads}, result, _count_table(rows, F.n), used


def cmd_example13(args):
    if args.n < 2 or args.H < 1:
        raise DomainError("example13 needs n >= 2 and H >= 1")
    count = count_NF(
        diagonal_family(args.n), args.H, threads=args.threads or 1,
        budget=args.budget if args.budget is not None else 10**8,
    )
    main = example13_main_term(args.n, args.H)
    result = {"n": args.n, "H": args.H, "main_term": main, "N_F": count, "ratio": count / main}
    return {"n": args.n, "H": args.H}, result, None, (2 * args.H + 1) ** args.n


def cmd_psi(args):
    value = psi_exact(args.x, args.y)
    result = {"x": args.x, "y": args.y, "psi": value}
    if 2 < args.y <= args.x:
        Z, u = bruijn_Z(args.x, args.y)
        result.update(Z=Z, u=u, log_psi_over_Z=math.log(value) / Z)
    return {"x": args.x, "y": args.y}, result, None, 0


def cmd_heights(args):
    if args.rational:
        values = [_parse_rational(q) for q in args.rational]
        heights = [
            {"value": _fmt(q), "naive": naive_height(q), "weil": weil_height(q).exact,
             "log": weil_height(q).log_value}
            for q in values
        ]
    else:
        heights = []
    result = {"rationals": heights}
    params = {"rational": args.rational or []}
    used = 0
    if args.poly:
        if args.H is None or args.H < 2:
            raise DomainError("--H >= 2 is required with --poly")
        f = parse_poly(args.poly[0], args.m)
        bound = height_growth_bound(f, args.H)
        points = [tuple(int(x) for x in p.split(",")) for p in args.u] if args.u else None
        rows = []
        worst = 1
        violations = 0
        iterator = (
            ((u, evaluate(f, u)) for u in points)
            if points is not None
            else zip(box_points(f.num_vars, args.H), evaluate_box(f, args.H))
        )
        for u, v in iterator:
            if v == 0:
                continue
            h = abs(v)
            worst = max(worst, h)
            if h > bound:
                violations += 1
            if points is not None:
                rows.append({"u": list(u), "value": v, "height": h, "within_bound": h <= bound})
        used = len(points) if points is not None else (2 * args.H + 1) ** f.num_vars
        result.update(
            polynomial=str(f), H=args.H, C_f=height_growth_constant(f, args.H),
            bound=bound, max_height=worst, violations=violations, points=rows,
        )
        params.update(poly=args.poly[0], m=args.m, H=args.H, u=args.u or [])
    return params, result, None, used


def cmd_gcdset(args):
    cfg = _config(args)
    F = cfg.system()
    H = max(cfg.H)
    gs = gcd_value_set(F, H, budget=cfg.budget)
    result = {
        "polynomials": [str(f) for f in F], "H": H, "values": gs.values,
        "vanishing_points": [list(u) for u in gs.vanishing_points],
        "pairwise_no_common_zero": gs.pairwise_coprime,
        "assertions": cfg.assertions,
    }
    table = (["gcd_value"], [[v] for v in gs.values])
    return cfg.as_dict(), result, table, (2 * H + 1) ** F.m, cfg


def cmd_pplus(args):
    cfg = _config(args)
    f = cfg.system()[0]
    H = max(cfg.H)
    prof = pplus_profile(f, H, budget=cfg.budget)
    result = {
        "polynomial": str(f), "H": H,
        "shells": [{"t": t, "min_pplus": p} for t, p in prof.shells],
        "skipped_points": [list(u) for u in prof.skipped],
        "unit_value_points": [list(u) for u in unit_value_points(f, H, budget=cfg.budget)],
    }
    table = (["shell", "min_pplus"], [[t, "" if p is None else p] for t, p in prof.shells])
    return cfg.as_dict(), result, table, (2 * H + 1) ** f.num_vars, cfg


def cmd_hypersurface(args):
    cfg = _config(args)
    if args.target is not None:
        cfg.target = args.target
    f = cfg.system()[0]
    rows = [{"H": h, "count": hypersurface_count(f, cfg.target, h, budget=cfg.budget)} for h in cfg.H]
    result = {"polynomial": str(f), "target": cfg.target, "rows": rows}
    table = (["H", "count"], [[r["H"], r["count"]] for r in rows])
    return cfg.as_dict(), result, table, sum((2 * h + 1) ** f.num_vars for h in cfg.H), cfg


def cmd_scaling(args):
    cfg = _config(args)
    F = cfg.system()
    if cfg.quantity == "count_NF":
        profile = count_profile(F, max(cfg.H), method=cfg.method, threads=cfg.threads, budget=cfg.budget)
        counts = [(h, profile.by_H[h].dependent_count) for h in cfg.H]
        used = (2 * max(cfg.H) + 1) ** (F.m * F.n)
        default_target = _safe(lambda: nf_exponent(F.m, F.n, min(total_degree(f) for f in F)))
    elif cfg.quantity == "count_NF_star":
        counts = [(h, count_NF_star(F, h, budget=cfg.budget).count) for h in cfg.H]
        used = sum((2 * h + 1) ** F.m for h in cfg.H)
        default_target = None
    else:
        f = F[0]
        counts = [(h, hypersurface_count(f, cfg.target, h, budget=cfg.budget)) for h in cfg.H]
        used = sum((2 * h + 1) ** F.m for h in cfg.H)
        default_target = None
    target = cfg.target_exponent if cfg.target_exponent is not None else default_target
    rep = scaling_fit(counts, target, min_H=cfg.min_H)
    result = {
        "quantity": cfg.quantity,
        "polynomials": [str(f) for f in F],
        "counts": [{"H": h, "count": c} for h, c in counts],
        "fit_H": rep.H_values,
        "slope": rep.slope,
        "intercept": rep.intercept,
        "target_exponent": rep.target_exponent,
        "deviation": rep.deviation,
        "residuals": rep.residuals,
    }
    lookup = dict(zip(rep.H_values, rep.residuals))
    table = (
        ["H", "count", "log_H", "log_count", "residual"],
        [[h, c, math.log(h) if h > 0 else "", math.log(c) if c > 0 else "", lookup.get(h, "")]
         for h, c in counts],
    )
    return cfg.as_dict(), result, table, used, cfg


def _safe(fn):
    try:
        return fn()
    except DomainError:
        return None


# plumbing ----------------------------------------------------------------


def _add_inline(p, *, h_list=True):
    p.add_argument("config", nargs="?", help="JSON experiment config")
    p.add_argument("--poly", action="append", help="polynomial in x0..x{m-1} (repeatable)")
    p.add_argument("--m", type=int, default=1, help="number of variables (default 1)")
    if h_list:
        p.add_argument("--H", type=int, nargs="+", help="box half-width(s)")
    else:
        p.add_argument("--H", type=int, help="box half-width")


def _add_run_flags(p):
    p.add_argument("--budget", type=int, help="max tuples to enumerate")
    p.add_argument("--threads", type=int, help="worker processes for counting (default 1)")
    p.add_argument("--out", help="write the JSON result here (and a CSV beside it)")


def build_parser():
    parser = _Parser(prog="multdep", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("deps", help="dependence test, minimal relation and rank")
    p.add_argument("values", nargs="+")
    p.add_argument("--search-bound", type=int, dest="search_bound")
    _add_run_flags(p)
    p.set_defaults(func=cmd_deps)

    p = sub.add_parser("rank", help="multiplicative rank with witness subset")
    p.add_argument("values", nargs="+")
    _add_run_flags(p)
    p.set_defaults(func=cmd_rank)

    for name, func, text in (
        ("count", cmd_count, "N_F with its rank decomposition"),
        ("gcdset", cmd_gcdset, "gcd value set of the components over the box"),
        ("pplus", cmd_pplus, "largest prime factor minima along shells"),
        ("hypersurface", cmd_hypersurface, "points of the box on f = target"),
        ("scaling", cmd_scaling, "log-log slope of a count against H"),
    ):
        p = sub.add_parser(name, help=text)
        _add_inline(p)
        _add_run_flags(p)
        p.add_argument("--search-bound", type=int, dest="search_bound")
        if name == "hypersurface":
            p.add_argument("--target", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("psi", help="count of y-smooth integers up to x")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    _add_run_flags(p)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("heights", help="heights of rationals and polynomial values")
    p.add_argument("--rational", action="append", help="rational p/q (repeatable)")
    p.add_argument("--poly", action="append")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--H", type=int)
    p.add_argument("--u", action="append", help="point as comma-separated integers (repeatable)")
    _add_run_flags(p)
    p.set_defaults(func=cmd_heights)

    p = sub.add_parser("example11", help="N_F for the primorial-shifted family, every H' <= H")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--H", type=int, default=20)
    _add_run_flags(p)
    p.set_defaults(func=cmd_example11)

    p = sub.add_parser("example13", help="N_F of (x, ..., x) over its main term")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--H", type=int, default=100)
    _add_run_flags(p)
    p.set_defaults(func=cmd_example13)
    return parser


def _csv_text(table):
    header, rows = table
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        out = args.func(args)
    except BudgetExceeded as exc:
        print(f"multdep: budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ValueError) as exc:
        print(f"multdep: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - anything else is our bug
        print(f"multdep: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    params, result, table, used = out[:4]
    cfg = out[4] if len(out) > 4 else None
    doc = {
        "manifest": {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "parameters": params,
            "library_version": __version__,
            "wall_time_seconds": round(time.perf_counter() - start, 6),
            "budget_used": used,
        },
        "result": result,
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text, file=stdout)

    json_path = getattr(args, "out", None) or (cfg.output.get("json") if cfg else None)
    csv_path = cfg.output.get("csv") if cfg and not getattr(args, "out", None) else None
    if json_path:
        json_path = Path(json_path)
        json_path.parent.mkdir(parents=True, exist_ok=True)
        json_path.write_text(text + "\n")
        if table is not None and csv_path is None:
            csv_path = json_path.with_suffix(".csv")
    if csv_path and table is not None:
        csv_path = Path(csv_path)
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        csv_path.write_text(_csv_text(table))
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
