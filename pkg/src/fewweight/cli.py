"""Command-line front end.

Exit status: 0 when every requested check matched, 1 on a verification
mismatch, 2 on a configuration error.
"""

import argparse
import json
import shlex
import sys
from pathlib import Path

import numpy as np

from . import catalog, verifier
from .codes import (build_code_direct, build_code_via_walsh, build_gold_code_via_weil,
                    defining_set_db, defining_set_gold, dual_a2, griesmer_max_d, half_set,
                    pless_check)
from .errors import FewWeightError
from .families import (check_gold_admissible, check_monomial_admissible, check_quadproduct_case,
                       predicted_distribution_lemma21, predicted_walsh_lemma26_all,
                       weil_sum_closed_table)
from .field import DEFAULT_SIZE_CAP, format_polynomial, make_field
from .walsh import (TableSpec, ZeroSpec, classify, parseval_check, spectrum_distribution,
                    tabulate, walsh_full)

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG = 0, 1, 2


class ConfigError(FewWeightError):
    pass


# ---------------------------------------------------------------------------
# function and defining-set mini languages

def parse_kv(text):
    """'name k1=v1 k2=v2' -> ('name', {k1: v1, k2: v2})."""
    words = shlex.split(text)
    if not words:
        raise ConfigError("empty specification")
    kv = {}
    for w in words[1:]:
        k, sep, v = w.partition("=")
        if not sep:
            raise ConfigError("expected key=value, got %r" % w)
        kv[k.lower()] = v
    return words[0].lower(), kv


def _require(kv, name, *keys):
    missing = [k for k in keys if k not in kv]
    if missing:
        raise ConfigError("%s needs %s" % (name, ", ".join(missing)))


def load_table(path, ctx):
    text = Path(path).read_text()
    try:
        values = json.loads(text)
    except json.JSONDecodeError:
        values = [int(t) for t in text.replace(",", " ").split()]
    return TableSpec(tuple(int(v) for v in values), str(path))


def parse_function(text, ctx):
    """A family spec object with ``evaluate``/``describe``."""
    name, kv = parse_kv(text)
    if name == "monomial24":
        _require(kv, name, "lambda")
        return check_monomial_admissible(ctx.parse_element(kv["lambda"]), ctx)
    if name == "quadprod":
        _require(kv, name, "lambda", "u", "v")
        el = {k: ctx.parse_element(kv[k]) for k in ("lambda", "u", "v")}
        return check_quadproduct_case(el["lambda"], el["u"], el["v"], ctx)
    if name == "gold":
        _require(kv, name, "lambda", "h")
        return check_gold_admissible(ctx.parse_element(kv["lambda"]), int(kv["h"]), ctx)
    if name == "table":
        _require(kv, name, "file")
        return load_table(kv["file"], ctx)
    if name == "zero":
        return ZeroSpec()
    raise ConfigError("unknown function family %r" % name)


# ---------------------------------------------------------------------------
# output helpers

def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def _emit(args, lines, payload):
    for line in lines:
        print(line)
    if args.json:
        Path(args.json).write_text(_dump(payload) + "\n")


def _ctx(args):
    return make_field(args.p, args.m, args.modulus, size_cap=args.size_cap)


def _poly(mod):
    return format_polynomial(mod)


# ---------------------------------------------------------------------------
# commands

def cmd_field_info(args):
    ctx = _ctx(args)
    g = ctx.generator
    info = {"p": ctx.p, "m": ctx.m, "q": ctx.q, "modulus": _poly(ctx.modulus),
            "modulus_coeffs": list(ctx.modulus), "generator": list(g.coeffs),
            "generator_is_x": ctx.gen == ctx.x,
            "subfields": [{"degree": k, "size": s} for k, s in ctx.subfields()]}
    lines = ["field      F_%d^%d (q = %d)" % (ctx.p, ctx.m, ctx.q),
             "modulus    %s" % info["modulus"],
             "generator  %s%s" % (list(g.coeffs), "  (x)" if info["generator_is_x"] else ""),
             "subfields  " + ", ".join("F_%d^%d" % (ctx.p, k) for k, _ in ctx.subfields())]
    _emit(args, lines, info)
    return EXIT_OK


def _prediction_diff(spec, s):
    """(label, matches, detail) for families with a closed-form spectrum, else None."""
    ctx = s.ctx
    if hasattr(spec, "square_in_f3"):
        if not spec.admissible:
            return "four-value monomial distribution", None, "lambda not admissible, no prediction"
        pred = predicted_distribution_lemma21(spec)
        got = spectrum_distribution(s)
        return "four-value monomial distribution", pred == got, ""
    if hasattr(spec, "case"):
        if spec.case == "other":
            return "quadratic-plus-product closed form", None, "trace conditions of neither case"
        pred = predicted_walsh_lemma26_all(spec)
        bad = np.nonzero(np.any(pred != s.values, axis=1))[0]
        return ("quadratic-plus-product closed form (case %s)" % spec.case, len(bad) == 0,
                "%d differing points" % len(bad) if len(bad) else "")
    if hasattr(spec, "magnitude"):
        if not spec.admissible:
            return "Weil-sum closed form", None, "lambda not admissible, no prediction"
        closed = weil_sum_closed_table(spec.lam.code, spec.h, ctx)
        # the transform at a is the Weil sum at -a
        bad = np.nonzero(np.any(closed[ctx.neg(ctx.codes())] != s.values, axis=1))[0]
        return "Weil-sum closed form", len(bad) == 0, "%d differing points" % len(bad) if len(bad) else ""
    return None


def cmd_spectrum(args):
    ctx = _ctx(args)
    spec = parse_function(args.fn, ctx)
    f = tabulate(spec, ctx)
    s = walsh_full(f)
    dist = sorted(spectrum_distribution(s).items(), key=lambda kv: kv[0].coeffs)
    cls = classify(s)
    parseval = parseval_check(s)
    lines = ["function   %s" % spec.describe(), "values     %d distinct" % len(dist)]
    lines += ["  %-24s x %d" % (z, c) for z, c in dist]
    lines += ["class      %s" % cls, "Parseval   %s" % ("ok" if parseval else "FAILED")]
    payload = {"function": spec.describe(), "modulus": list(ctx.modulus),
               "distribution": [{"value": z.to_json()["coeffs"], "count": c} for z, c in dist],
               "classification": cls.to_json(), "parseval": parseval}
    status = EXIT_OK if parseval else EXIT_MISMATCH
    diff = _prediction_diff(spec, s)
    if diff:
        label, ok, detail = diff
        verdict = "n/a" if ok is None else ("match" if ok else "MISMATCH")
        lines.append("prediction %s: %s%s" % (label, verdict, " (%s)" % detail if detail else ""))
        payload["prediction"] = {"source": label, "match": ok, "detail": detail}
        if ok is False:
            status = EXIT_MISMATCH
    _emit(args, lines, payload)
    return status


def _defining_set(spec, f, ctx, selector):
    name, kv = parse_kv(selector)
    if name == "db":
        _require(kv, "Db", "b")
        return defining_set_db(f, int(kv["b"]))
    if name == "halfset":
        return half_set(defining_set_db(f, int(kv.get("b", 0))))
    if name == "gold":
        if not hasattr(spec, "magnitude"):
            raise ConfigError("the gold defining set needs a gold function")
        return defining_set_gold(spec.lam, spec.h, ctx)
    raise ConfigError("unknown defining set %r" % selector)


def cmd_construct(args):
    ctx = _ctx(args)
    spec = parse_function(args.fn, ctx)
    is_gold = hasattr(spec, "magnitude")
    selector = args.set or ("gold" if is_gold else "Db b=0")
    f = tabulate(spec, ctx)
    D = _defining_set(spec, f, ctx, selector)
    kind = parse_kv(selector)[0]
    if len(D) == 0:
        _emit(args, ["defining set is empty; nothing to check"],
              {"set": selector, "status": "empty", "n": 0})
        return EXIT_OK
    if kind == "gold" and spec.admissible:
        code = build_gold_code_via_weil(spec.lam, spec.h, ctx)
    elif kind == "db" and ctx.p == 3 and f.even and f.table[0] == 0:
        code = build_code_via_walsh(f, int(parse_kv(selector)[1]["b"]))
    else:
        code = build_code_direct(D)
    status = EXIT_OK
    direct_ok = None
    if args.check_direct and code.route != "direct":
        direct_ok = build_code_direct(D).same_code_data(code)
        if not direct_ok:
            status = EXIT_MISMATCH
    a2 = dual_a2(D)
    pless = pless_check(code, a2)
    if not pless:
        status = EXIT_MISMATCH
    gd = griesmer_max_d(code.n, code.dimension, ctx.p)
    griesmer = "Griesmer-optimal" if gd == code.min_distance else "Griesmer bound admits d = %d" % gd
    lines = ["function   %s" % spec.describe(), "set        %s (route: %s)" % (selector, code.route),
             "code       %s%s" % (code.params(), "" if code.injective else "  (not injective)"),
             "enumerator %s" % code.enumerator(),
             "Griesmer   %s" % griesmer,
             "Pless      %s (A2 of dual = %d)" % ("ok" if pless else "FAILED", a2)]
    if direct_ok is not None:
        lines.append("direct     %s" % ("agrees" if direct_ok else "DISAGREES"))
    payload = {"function": spec.describe(), "set": selector, "route": code.route,
               "code": code.to_json(), "enumerator": str(code.enumerator()),
               "griesmer_max_d": gd, "griesmer_optimal": gd == code.min_distance,
               "pless": pless, "a2_dual": a2, "check_direct": direct_ok}
    _emit(args, lines, payload)
    return status


def cmd_verify(args):
    table = args.table.upper()
    if table not in verifier.SOURCES:
        raise ConfigError("unknown table %r (expected T1..T13)" % args.table)
    ctx = _ctx(args)
    res = verifier.sweep(table, ctx, samples=args.samples, exhaustive=args.exhaustive,
                         jobs=args.jobs, h=args.h, seed=args.seed)
    payload = res.to_json()
    if res.hypothesis:
        _emit(args, ["%s" % res.hypothesis], payload)
        return EXIT_CONFIG
    n_ok = sum(r.ok for r in res.reports)
    lines = ["%s over F_%d^%d: %d/%d instances match%s" % (
        table, ctx.p, ctx.m, n_ok, len(res.reports),
        " (exhaustive)" if res.exhaustive else " (of %d available)" % res.total_instances)]
    if table in verifier.GOLD and res.reports:
        pr = res.reports[0].prediction
        lines.append("printed multiplicities %s moment-solved %s" % (
            "equal" if pr.printed_matches_moments else "DIFFER FROM",
            sorted(pr.moment_solved.items())))
    for r in res.counterexamples:
        lines.append("COUNTEREXAMPLE %s %s: %s" % (r.verdict, r.instance, r.details))
    _emit(args, lines, payload)
    return EXIT_OK if res.passed else EXIT_MISMATCH


def cmd_examples(args):
    only = None
    if args.only:
        only = [t for o in args.only for t in o.split(",") if t]
        unknown = [o for o in only if o not in catalog.BY_ID]
        if unknown:
            raise ConfigError("unknown example(s): %s" % ", ".join(unknown))
    results = catalog.run_examples(only, cross_modulus=args.cross_modulus,
                                   check_direct=args.check_direct)
    lines = []
    for r in results:
        c = r.computed
        lines.append("%-4s %-9s %-20s %s  %s" % (
            "ok" if r.ok else "FAIL", r.name, c.params(), c.enumerator(), _poly(r.modulus)))
        if not r.ok:
            lines.append("     expected %s %s, table %s" % (list(r.part.params), r.part.enumerator,
                                                           r.table_verdict))
        if r.part.optimal_claim or r.griesmer_note == "Griesmer-optimal":
            lines.append("     %s" % r.griesmer_note)
    ids = sorted({r.example for r in results}, key=lambda i: [int(t) for t in i.split(".")])
    passed = [i for i in ids if all(r.ok for r in results if r.example == i)]
    lines.append("%d/%d examples match" % (len(passed), len(ids)))
    _emit(args, lines, {"results": [r.to_json() for r in results],
                        "matched": len(passed), "total": len(ids)})
    return EXIT_OK if len(passed) == len(ids) else EXIT_MISMATCH


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write a JSON report to PATH")
    common.add_argument("--jobs", type=int, default=verifier.default_jobs(),
                        help="worker processes (default from $%s, else 1)" % verifier.JOBS_ENV)
    common.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP,
                        help="largest field size accepted (default %(default)s)")
    fld = argparse.ArgumentParser(add_help=False)
    fld.add_argument("-p", type=int, default=3, help="characteristic (default 3)")
    fld.add_argument("-m", type=int, required=True, help="extension degree")
    fld.add_argument("--modulus", help='irreducible modulus, e.g. "x^4-x^3-1" or "[2,0,0,2,1]"')

    ap = argparse.ArgumentParser(prog="fewweight", description="Few-weight codes from functions "
                                 "with few Walsh values: construction and verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", parents=[common, fld], help="describe a finite field")
    p.set_defaults(func=cmd_field_info)

    fn_help = ('function: "monomial24 lambda=L", "quadprod lambda=L u=U v=V", '
               '"gold lambda=L h=H", "table file=PATH" or "zero"; elements as integers, '
               'a^k (generator powers) or coefficient lists')
    p = sub.add_parser("spectrum", parents=[common, fld], help="Walsh spectrum of a function")
    p.add_argument("--fn", required=True, help=fn_help)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("construct", parents=[common, fld], help="build a code and its weights")
    p.add_argument("--fn", required=True, help=fn_help)
    p.add_argument("--set", help='defining set: "Db b=B", "halfset [b=B]" or "gold" '
                   '(default: gold for gold functions, else "Db b=0")')
    p.add_argument("--check-direct", action="store_true",
                   help="cross-check against exhaustive evaluation of every codeword")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common, fld], help="sweep a weight table")
    p.add_argument("--table", required=True, help="table id T1..T13")
    p.add_argument("--samples", type=int, default=100, help="instances to sample (default 100)")
    p.add_argument("--exhaustive", action="store_true", help="every admissible instance")
    p.add_argument("--h", type=int, help="restrict Gold sweeps to one h")
    p.add_argument("--seed", type=int, default=0, help="sampler seed (default 0)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", parents=[common], help="reproduce the worked examples")
    p.add_argument("--only", action="append", help="example id(s), e.g. 2.13 (repeatable, comma lists)")
    p.add_argument("--cross-modulus", action="store_true",
                   help="rerun examples without a stated modulus under a second modulus")
    p.add_argument("--check-direct", action="store_true",
                   help="also rebuild every code by exhaustive evaluation")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (FewWeightError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
