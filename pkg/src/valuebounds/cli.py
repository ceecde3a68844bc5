"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import DEFAULT_DOMAIN_BUDGET, DEFAULT_U_BUDGET, BudgetExceeded, InputError
from .fields import FieldSpec, make_field, make_tower
from .padic import compute_U
from .plotting import PolytopePanel, plot_polytopes, plot_sweep
from .poly import ParseError, PolyVector, format_map, infer_varnames, parse_map
from .polytope import INF, format_rational, minimize_gauge, newton_polytope, parse_rational
from .valueset import (BoundsReport, prime_powers_in, random_instances, sharp_family, summarize,
                       value_set_size, variety_ord_check, verify_bounds)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

CSV_COLUMNS = ["index", "q", "n", "map", "degree", "vf_size", "mu", "U", "bound_polytope",
               "bound_mww", "bound_U", "permutation", "theorem_holds", "sharp", "degenerate_mu",
               "mww_dominated", "lemma3_holds", "lemma6_holds"]


def parse_field(text: str) -> FieldSpec:
    """'p=5,e=1' -> FieldSpec."""
    try:
        kv = dict(part.split("=", 1) for part in text.split(","))
        p = int(kv["p"])
        e = int(kv.get("e", 1))
    except (KeyError, ValueError):
        raise InputError(f"bad --field {text!r}; expected p=<int>,e=<int>") from None
    return make_field(p, e)


def parse_range(text: str) -> list[int]:
    """'2..5' or '3' -> inclusive list."""
    lo, _, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if hi else lo_i
    except ValueError:
        raise InputError(f"bad range {text!r}; expected a..b") from None
    if hi_i < lo_i:
        raise InputError(f"empty range {text!r}")
    return list(range(lo_i, hi_i + 1))


def _map_text(args) -> str:
    text = args.map if args.map is not None else (args.poly[0] if args.poly else None)
    if text is None:
        raise InputError("no map given (use --map or a positional argument)")
    return text


def _load_map(args, text: str | None = None) -> tuple[PolyVector, list[str]]:
    F = parse_field(args.field) if args.field else None
    if F is None:
        raise InputError("--field is required")
    text = text if text is not None else _map_text(args)
    ncomp = text.count(";") + 1
    names = args.vars.split(",") if args.vars else infer_varnames(text, ncomp if args.command != "mu" else 1)
    return parse_map(text, F, names), names


def _emit(args, payload: str) -> None:
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _error(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# -- commands ------------------------------------------------------------------

def run_mu(args) -> int:
    f, names = _load_map(args)
    P = newton_polytope(f)
    res = minimize_gauge(P)
    if args.format == "csv":
        _emit(args, P.to_csv())
        return EXIT_OK
    out = {"mu": format_rational(res.value),
           "witness": list(res.witness) if res.witness else None,
           "generators": [list(g) for g in P.generators]}
    if res.value == INF:
        missing = [names[i] for i in P.missing_coordinates()]
        out["degenerate"] = True
        _warn(f"degenerate polytope: variable(s) {', '.join(missing)} never occur, mu is infinite")
    _emit(args, _json(out))
    return EXIT_OK


def _report_json(rep: BoundsReport) -> dict:
    d = rep.to_dict()
    d["violations"] = rep.violations()
    return d


def run_verify(args) -> int:
    if args.from_report:
        data = json.loads(Path(args.from_report).read_text())
        old = BoundsReport.from_dict({k: v for k, v in data.items() if k != "violations"})
        f, names = old.instance(), old.varnames
    else:
        f, names = _load_map(args)
    rep = verify_bounds(f, varnames=names, budget_domain=args.budget_domain, budget_u=args.budget_u)
    _emit(args, _json(_report_json(rep)))
    return EXIT_CHECK if rep.violations() else EXIT_OK


def run_u(args) -> int:
    f, _ = _load_map(args)
    trace_fh = open(args.trace, "w") if args.trace else None
    try:
        trace = (lambda rec: trace_fh.write(json.dumps(rec) + "\n")) if trace_fh else None
        tower = make_tower(f.field, f.m, budget=args.budget_u)
        res = compute_U(f, tower, budget=args.budget_u, trace=trace)
    finally:
        if trace_fh:
            trace_fh.close()
    q, n = f.field.q, f.m
    out = res.to_dict()
    out.update({"q": q, "n": n, "bound_U": q ** n - res.U})
    _emit(args, _json(out))
    return EXIT_OK


def run_valueset(args) -> int:
    f, _ = _load_map(args)
    q, n = f.field.q, f.n
    vf = value_set_size(f, budget=args.budget_domain)
    _emit(args, _json({"vf_size": vf, "domain_size": q ** n, "permutation": vf == q ** f.m}))
    return EXIT_OK


def _sweep_reports(args) -> list[BoundsReport]:
    qs = prime_powers_in(*(lambda r: (r[0], r[-1]))(parse_range(args.q)))
    if not qs:
        raise InputError(f"no prime powers in --q {args.q}")
    kw = dict(budget_domain=args.budget_domain, budget_u=args.budget_u, with_u=not args.no_u)
    reports = []
    if args.family == "polytope-sharp":
        for q in qs:
            for a in parse_range(args.a):
                inst = sharp_family("polytope_sharp", a=a, q=q)
                reports.append(verify_bounds(inst.f, **kw))
        return reports
    for _, f in random_instances(qs, args.n, args.deg_max, args.samples, args.seed):
        reports.append(verify_bounds(f, **kw))
    return reports


def _csv_value(v):
    if isinstance(v, Fraction) or v == INF:
        return format_rational(v)
    return "" if v is None else v


def run_sweep(args) -> int:
    if args.samples < 0:
        raise InputError("--samples must be >= 0")
    reports = _sweep_reports(args)
    summary = summarize(reports)
    summary.update({"seed": args.seed, "family": args.family})
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for i, r in enumerate(reports):
            row = {"index": i, **{c: getattr(r, c) for c in CSV_COLUMNS[1:]}}
            w.writerow([_csv_value(row[c]) for c in CSV_COLUMNS])
        w.writerow(["summary"] + [f"{k}={v}" for k, v in summary.items()])
        payload = buf.getvalue()
    else:
        payload = _json({"summary": summary, "reports": [_report_json(r) for r in reports]})
    _emit(args, payload)
    if args.plot:
        plot_sweep(reports, args.plot)
    return EXIT_CHECK if summary["violations"] else EXIT_OK


def run_polytope_svg(args) -> int:
    texts = list(args.poly) or ([args.map] if args.map else [])
    if not texts:
        raise InputError("no polynomial given")
    if not args.out:
        raise InputError("--out is required for polytope-svg")
    panels = []
    for text in texts:
        f, names = _load_map(args, text)
        P = newton_polytope(f)
        if P.n != 2:
            raise InputError(f"polytope-svg supports 2 variables only, got {P.n}")
        res = minimize_gauge(P)
        if res.value == INF:
            raise InputError(f"{text!r}: mu is infinite (degenerate polytope), nothing to draw")
        dil = res.value if args.dilation in (None, "mu") else parse_rational(args.dilation)
        title = f"{format_map(f, names)}\nmu = {format_rational(res.value)}"
        panels.append(PolytopePanel(title, P, dil, res.witness))
    plot_polytopes(panels, args.out)
    return EXIT_OK


def run_variety(args) -> int:
    fs, _ = _load_map(args)
    res = variety_ord_check(fs, budget=args.budget_domain)
    _emit(args, _json(res.to_dict()))
    return EXIT_OK if res.holds else EXIT_CHECK


COMMANDS = {
    "mu": run_mu,
    "verify": run_verify,
    "u-invariant": run_u,
    "valueset": run_valueset,
    "sweep": run_sweep,
    "polytope-svg": run_polytope_svg,
    "variety-check": run_variety,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field as p=<prime>,e=<degree>")
    common.add_argument("--vars", help="comma-separated variable names")
    common.add_argument("--map", help="polynomial map, components separated by ';'")
    common.add_argument("--budget-domain", type=int, default=DEFAULT_DOMAIN_BUDGET)
    common.add_argument("--budget-u", type=int, default=DEFAULT_U_BUDGET)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="valuebounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", parents=[common], help="Newton-polytope invariant mu")
    p.add_argument("poly", nargs="*")
    p = sub.add_parser("verify", parents=[common], help="all bounds for one map")
    p.add_argument("poly", nargs="*")
    p.add_argument("--from-report", help="re-run the instance stored in a JSON report")
    p = sub.add_parser("u-invariant", parents=[common], help="the p-adic invariant U")
    p.add_argument("poly", nargs="*")
    p.add_argument("--trace", help="JSON-lines trace of every power sum")
    p = sub.add_parser("valueset", parents=[common], help="value set size by enumeration")
    p.add_argument("poly", nargs="*")
    p = sub.add_parser("sweep", parents=[common], help="bounds over random or family instances")
    p.add_argument("--q", default="2..5", help="q range a..b (prime powers only)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--deg-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--family", choices=("random", "polytope-sharp"), default="random")
    p.add_argument("--a", default="1..3", help="exponent range for polytope-sharp")
    p.add_argument("--no-u", action="store_true", help="skip the U computation")
    p.add_argument("--plot", help="also render a slack figure to this path")
    p = sub.add_parser("polytope-svg", parents=[common], help="draw 2D polytopes and a dilation")
    p.add_argument("poly", nargs="*")
    p.add_argument("--dilation", help="'mu' (default) or a rational such as 2/4")
    p = sub.add_parser("variety-check", parents=[common], help="ord_q of a zero count vs mu - m")
    p.add_argument("poly", nargs="*")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        _error(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    except (ParseError, InputError, ValueError, KeyError, OSError) as exc:
        _error(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
