"""Batch command line: ``polycoprime {verify,probability,density,census}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import census, formulas
from .verify import run_suite

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def int_str(n: int) -> str:
    if gmpy2 is not None and abs(n).bit_length() > 20000:
        return gmpy2.mpz(n).digits(10)
    return str(n)


def str_int(s: str) -> int:
    if gmpy2 is not None and len(s) > 6000:
        return int(gmpy2.mpz(s))
    return int(s)


def decimal_str(num: int, den: int, digits: int = 12) -> str:
    sign = "-" if (num < 0) != (den < 0) and num != 0 else ""
    num, den = abs(num), abs(den)
    scaled = num * 10**digits // den
    s = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def rat_record(name: str, value, mode: str = "exact", **extra) -> dict:
    if isinstance(value, formulas.TruncatedProduct):
        num, den = value.numerator, value.denominator
        if gmpy2 is not None:
            g = int(gmpy2.gcd(num, den))
            num, den = num // g, den // g
    else:
        value = Fraction(value)
        num, den = value.numerator, value.denominator
    rec = {"name": name, "num": int_str(num), "den": int_str(den),
           "decimal": decimal_str(num, den), "mode": mode}
    for k, v in extra.items():
        if v is None:
            continue
        if isinstance(v, Fraction):
            v = {"num": str(v.numerator), "den": str(v.denominator)}
        elif isinstance(v, tuple) and all(isinstance(x, Fraction) for x in v):
            v = [{"num": str(x.numerator), "den": str(x.denominator)} for x in v]
        rec[k] = v
    return rec


def record_parts(rec: dict) -> tuple[int, int]:
    return str_int(rec["num"]), str_int(rec["den"])


def record_value(rec: dict) -> Fraction:
    """Inverse of :func:`rat_record` for the value field.

    Values beyond a few thousand digits skip CPython's quadratic gcd: they
    are already in lowest terms, so gmpy2 builds the rational directly.
    """
    num, den = record_parts(rec)
    if gmpy2 is not None and den.bit_length() > 20000:
        return Fraction(gmpy2.mpq(num, den))
    return Fraction(num, den)


# --- commands ------------------------------------------------------------------

def _asym_records(prefix: str, a: formulas.AsymptoticCoeffs) -> list[dict]:
    out = [rat_record(f"{prefix} coefficient of {a.variable}^{k}", c)
           for k, c in sorted(a.terms.items())]
    for r in out:
        r["error_order"] = a.order
        if a.note:
            r["note"] = a.note
    return out


def cmd_probability(args) -> tuple[list, list | None]:
    res = []
    if args.lemma == "coprime":
        res.append(rat_record(f"setwise coprime N={args.N} q={args.q}",
                              formulas.setwise_coprime_prob(args.N, args.q)))
    if args.thm == "pairwise-asym":
        res += _asym_records(f"pairwise uniform N={args.N} N1={args.n1}",
                             formulas.pairwise_uniform_asymptotic(args.N, args.n1))
    elif args.thm == "density-asym":
        res += _asym_records(f"pairwise density N={args.N}",
                             formulas.pairwise_density_asymptotic(args.N))
    elif args.thm == "mutual-asym":
        res += _asym_records(f"mutual uniform m={args.m} N={args.N}",
                             formulas.mutual_uniform_asymptotic(args.m, args.N))
    elif args.thm == "wj-asym":
        res += _asym_records(f"W_j m={args.m} N={args.N} j={args.j}",
                             formulas.wj_asymptotic(args.m, args.N, args.j))
    if args.gl is not None:
        res.append(rat_record(f"|GL_{args.gl}(GF({args.q}))|", formulas.gl_count(args.gl, args.q)))
    if args.conclusion:
        u, d = formulas.conclusion_reference(args.q)
        res.append(rat_record(f"uniform m=2 N=2 q={args.q}", u))
        res.append(rat_record(f"density m=2 N=2 q={args.q}", d))
    if args.wj_pair:
        res.append(rat_record(f"W_j(2) m={args.m} q={args.q} j={args.j}",
                              formulas.wj_exact_pair(args.m, args.q, args.j)))
    if not res:
        raise SystemExit("probability: choose --lemma, --thm, --gl, --wj-pair or --conclusion")
    return res, None


def _product_table(tp: formulas.TruncatedProduct):
    rows = []
    partial = Fraction(1)
    for j, w, phi in tp.factors:
        if tp.J <= 12:
            partial *= w**phi
            pp = decimal_str(partial.numerator, partial.denominator)
        else:
            pp = ""
        rows.append({"j": j, "W_j num": str(w.numerator), "W_j den": str(w.denominator),
                     "phi_j": phi, "partial product": pp})
    return rows


def cmd_density(args) -> tuple[list, list | None]:
    if args.pairwise:
        tp = formulas.pairwise_density_truncated(args.N, args.q, args.J)
        rec = rat_record(f"pairwise density N={args.N} q={args.q} J={args.J}", tp, "truncated",
                         tail_bound=tp.tail_bound, J=args.J)
        return [rec], _product_table(tp)
    if args.mutual:
        provider = None
        if args.census_wj:
            def provider(j):
                return census.wj_bruteforce(args.m, args.N, args.q, j, ceiling=args.ceiling)
        tp = formulas.mutual_density_truncated(args.m, args.N, args.q, args.J, provider)
        mode = "truncated" if tp.exact else "estimate"
        rec = rat_record(f"mutual density m={args.m} N={args.N} q={args.q} J={args.J}", tp, mode,
                         tail_bound=tp.tail_bound, J=args.J)
        return [rec], _product_table(tp)
    if args.scan:
        if not args.cutoffs:
            raise SystemExit("density --scan needs --cutoffs")
        if args.m is None:
            scan = census.density_scan_polys(args.N, args.q, args.cutoffs, args.event, args.ceiling)
        else:
            samples = args.samples if args.mc else 0
            scan = census.density_scan_matrices(args.m, args.N, args.q, args.cutoffs, samples,
                                                args.seed, args.ceiling, args.workers)
        res, table = [], []
        for pt in scan.points:
            res.append(rat_record(f"scan n={pt.n}", pt.fraction, pt.mode, n=pt.n,
                                  aligned=pt.aligned, ci=pt.ci))
            table.append({"n": pt.n, "numerator": pt.fraction.numerator,
                          "denominator": pt.fraction.denominator,
                          "decimal": decimal_str(pt.fraction.numerator, pt.fraction.denominator),
                          "mode": pt.mode, "aligned": pt.aligned})
        return res, table
    raise SystemExit("density: choose --pairwise, --mutual or --scan")


def _census_record(name: str, r: census.CensusResult, ceiling) -> dict:
    ci = (r.ci_low, r.ci_high) if r.mode == "montecarlo" else None
    rec = rat_record(name, r.probability, r.mode, hits=r.hits, total=r.total, ci=ci)
    rec["seed"] = r.seed
    rec["ceiling"] = ceiling
    return rec


def cmd_census(args) -> tuple[list, list | None]:
    if args.wj or args.wj_hat:
        name = "W_hat" if args.wj_hat else "W"
        label = f"{name}_j m={args.m} N={args.N} q={args.q} j={args.j}"
        if args.mc:
            if args.wj_hat:
                raise SystemExit("census: --wj-hat has no Monte Carlo mode")
            r = census.wj_montecarlo(args.m, args.N, args.q, args.j, args.samples, args.seed,
                                     args.workers)
        else:
            fn = census.wj_hat_bruteforce if args.wj_hat else census.wj_bruteforce
            r = fn(args.m, args.N, args.q, args.j, args.ceiling, args.workers)
        return [_census_record(label, r, args.ceiling)], None
    if args.degrees is None:
        raise SystemExit("census: --degrees required")
    if args.graph:
        g = census.Graph.named(args.graph, args.N or len(args.degrees))
        r = census.count_graph_coprime(args.q, args.degrees, g, args.ceiling)
        res = [_census_record(f"graph {args.graph} degrees={args.degrees} q={args.q}", r,
                              args.ceiling)]
        if args.labeling_sum:
            res.append(rat_record("labeling sum", census.graph_labeling_sum(
                args.q, args.degrees, g, args.ceiling)))
        return res, None
    if args.setwise:
        r = census.count_setwise_coprime(args.q, args.degrees, args.ceiling)
        return [_census_record(f"setwise degrees={args.degrees} q={args.q}", r, args.ceiling)], None
    raise SystemExit("census: choose --wj, --wj-hat, --graph or --setwise")


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "csv"], default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--ceiling", type=int, default=census.CEILING)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100000)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("-q", type=int, default=2)
    common.add_argument("-N", type=int)
    common.add_argument("-m", type=int)
    common.add_argument("-j", type=int, default=1)
    common.add_argument("-J", type=int, default=12)

    p = argparse.ArgumentParser(prog="polycoprime", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", nargs="?", default="all")

    pr = sub.add_parser("probability", parents=[common])
    pr.add_argument("--lemma", choices=["coprime"])
    pr.add_argument("--thm", choices=["pairwise-asym", "density-asym", "mutual-asym", "wj-asym"])
    pr.add_argument("--n1", type=int, default=0)
    pr.add_argument("--gl", type=int)
    pr.add_argument("--wj-pair", action="store_true")
    pr.add_argument("--conclusion", action="store_true")

    d = sub.add_parser("density", parents=[common])
    d.add_argument("--pairwise", action="store_true")
    d.add_argument("--mutual", action="store_true")
    d.add_argument("--scan", action="store_true")
    d.add_argument("--cutoffs", type=_int_list)
    d.add_argument("--event", choices=["pairwise-coprime", "setwise-coprime"],
                   default="pairwise-coprime")
    d.add_argument("--mc", action="store_true", help="allow Monte Carlo above the ceiling")
    d.add_argument("--census-wj", action="store_true", help="take W_j from exhaustive census")

    c = sub.add_parser("census", parents=[common])
    c.add_argument("--wj", action="store_true")
    c.add_argument("--wj-hat", action="store_true")
    c.add_argument("--graph", choices=["complete", "path", "empty", "triangle", "disjoint"])
    c.add_argument("--labeling-sum", action="store_true")
    c.add_argument("--setwise", action="store_true")
    c.add_argument("--degrees", type=_int_list)
    c.add_argument("--mc", action="store_true")
    return p


def _defaults(args):
    if args.m is None and args.command in ("census",) and (args.wj or args.wj_hat):
        args.m = 1
    if args.N is None:
        if args.command == "census" and getattr(args, "degrees", None):
            args.N = len(args.degrees)
        else:
            args.N = 2
    if args.command == "probability" and args.m is None:
        args.m = 2


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    table = report.get("table")
    if table:
        cols = list(table[0].keys())
        w.writerow(cols)
        for row in table:
            w.writerow([row[c] for c in cols])
    else:
        w.writerow(["name", "value", "decimal", "mode"])
        for r in report["results"]:
            w.writerow([r["name"], f"{r['num']}/{r['den']}", r["decimal"], r["mode"]])
    return buf.getvalue()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _defaults(args)
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("command", "output", "out") and v is not None and v is not False}
    start = time.perf_counter()
    status = 0
    table = None
    try:
        if args.command == "verify":
            checks = run_suite(args.suite)
            results = [{"name": c.name, "passed": c.passed, "lhs": str(c.lhs), "rhs": str(c.rhs)}
                       for c in checks]
            table = results
            status = 0 if all(c.passed for c in checks) else 1
        elif args.command == "probability":
            results, table = cmd_probability(args)
        elif args.command == "density":
            results, table = cmd_density(args)
        else:
            results, table = cmd_census(args)
    except ValueError as exc:
        print(f"polycoprime {args.command}: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, "params": params, "results": results,
              "timing_ms": round((time.perf_counter() - start) * 1000, 3)}
    if table:
        report["table"] = table
    text = render(report, args.output)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
